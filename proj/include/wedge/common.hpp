#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace wedge {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;
using Complex = std::complex<double>;

/// Base of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A detected violation of the theorem's premises. Callers treat this as a
/// scientific outcome rather than a bug (the CLI maps it to exit code 2).
class HypothesisFailure : public Error {
 public:
  using Error::Error;
};

class InsufficientMeasure : public HypothesisFailure {
 public:
  using HypothesisFailure::HypothesisFailure;
};

class NoFiniteN0 : public HypothesisFailure {
 public:
  using HypothesisFailure::HypothesisFailure;
};

class OverlapMeasureZero : public HypothesisFailure {
 public:
  using HypothesisFailure::HypothesisFailure;
};

/// Too many rays whose one-variable restriction is not analytic on the
/// sampling disk; the function cannot be continuous on the wedge.
class DivergentRays : public HypothesisFailure {
 public:
  using HypothesisFailure::HypothesisFailure;
};

class DegenerateCone : public HypothesisFailure {
 public:
  using HypothesisFailure::HypothesisFailure;
};

class DuplicateNodes : public Error {
 public:
  using Error::Error;
};

class InvalidMeasure : public Error {
 public:
  using Error::Error;
};

class Unbounded : public Error {
 public:
  using Error::Error;
};

class NormTooLarge : public Error {
 public:
  using Error::Error;
};

class DomainViolation : public Error {
 public:
  using Error::Error;
};

class IllConditioned : public Error {
 public:
  using Error::Error;
};

/// Scalar-dependent helpers shared by the polynomial and interpolation code.
/// `Real` is the matching real field and `Magnitude` what |a| lands in.
template <class Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  using Real = Rational;
  using Magnitude = Rational;
  static Magnitude abs(const Rational& a) { return a < 0 ? Rational(-a) : a; }
  static bool is_zero(const Rational& a) { return a == 0; }
  static Complex to_complex(const Rational& a) {
    return {static_cast<double>(a), 0.0};
  }
};

template <>
struct ScalarTraits<Complex> {
  using Real = double;
  using Magnitude = double;
  static Magnitude abs(const Complex& a) { return std::abs(a); }
  static bool is_zero(const Complex& a) {
    return a.real() == 0.0 && a.imag() == 0.0;
  }
  static Complex to_complex(const Complex& a) { return a; }
};

template <>
struct ScalarTraits<double> {
  using Real = double;
  using Magnitude = double;
  static Magnitude abs(double a) { return std::abs(a); }
  static bool is_zero(double a) { return a == 0.0; }
  static Complex to_complex(double a) { return {a, 0.0}; }
};

}  // namespace wedge
