#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "wedge/common.hpp"

namespace wedge {

/// Exponent vector of a monomial z^I over a fixed, ordered variable set.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<unsigned> exponents)
      : exponents_(std::move(exponents)) {}

  static Monomial one(std::size_t nvars) {
    return Monomial(std::vector<unsigned>(nvars, 0u));
  }
  static Monomial variable(std::size_t nvars, std::size_t index,
                           unsigned power = 1) {
    std::vector<unsigned> e(nvars, 0u);
    e.at(index) = power;
    return Monomial(std::move(e));
  }

  std::size_t nvars() const { return exponents_.size(); }
  unsigned degree() const {
    return std::accumulate(exponents_.begin(), exponents_.end(), 0u);
  }
  unsigned operator[](std::size_t i) const { return exponents_[i]; }
  const std::vector<unsigned>& exponents() const { return exponents_; }

  Monomial operator*(const Monomial& other) const {
    if (other.nvars() != nvars()) {
      throw std::invalid_argument("monomial variable count mismatch");
    }
    std::vector<unsigned> e(exponents_);
    for (std::size_t i = 0; i < e.size(); ++i) e[i] += other.exponents_[i];
    return Monomial(std::move(e));
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<unsigned> exponents_;
};

/// Graded lexicographic order: total degree first, then the exponent of the
/// first variable, then the second, and so on.
struct GradedLexLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    const unsigned da = a.degree();
    const unsigned db = b.degree();
    if (da != db) return da < db;
    return a.exponents() < b.exponents();
  }
};

/// All monomials of total degree `degree` in `nvars` variables, ascending in
/// graded-lex order.
inline std::vector<Monomial> monomials_of_degree(std::size_t nvars,
                                                 unsigned degree) {
  std::vector<Monomial> out;
  if (nvars == 0) {
    if (degree == 0) out.emplace_back();
    return out;
  }
  std::vector<unsigned> e(nvars, 0u);
  // Enumerate compositions of `degree` into nvars parts, lex ascending.
  auto rec = [&](auto&& self, std::size_t pos, unsigned remaining) -> void {
    if (pos + 1 == nvars) {
      e[pos] = remaining;
      out.emplace_back(e);
      return;
    }
    for (unsigned k = 0; k <= remaining; ++k) {
      e[pos] = k;
      self(self, pos + 1, remaining - k);
    }
  };
  rec(rec, 0, degree);
  std::sort(out.begin(), out.end(), GradedLexLess{});
  return out;
}

/// Sparse multivariate polynomial. Values are immutable once built; every
/// operation returns a new polynomial. Zero coefficients are never stored.
template <class Scalar>
class MultiPoly {
 public:
  using scalar_type = Scalar;
  using Terms = std::map<Monomial, Scalar, GradedLexLess>;

  MultiPoly() = default;
  explicit MultiPoly(std::size_t nvars) : nvars_(nvars) {}
  MultiPoly(std::size_t nvars, Terms terms) : nvars_(nvars) {
    for (auto& [m, c] : terms) {
      if (m.nvars() != nvars) {
        throw std::invalid_argument("monomial has wrong variable count");
      }
      if (!ScalarTraits<Scalar>::is_zero(c)) terms_.emplace(m, std::move(c));
    }
  }

  static MultiPoly constant(std::size_t nvars, const Scalar& c) {
    Terms t;
    t.emplace(Monomial::one(nvars), c);
    return MultiPoly(nvars, std::move(t));
  }
  static MultiPoly variable(std::size_t nvars, std::size_t index) {
    Terms t;
    t.emplace(Monomial::variable(nvars, index), Scalar(1));
    return MultiPoly(nvars, std::move(t));
  }
  static MultiPoly monomial(const Monomial& m, const Scalar& c) {
    Terms t;
    t.emplace(m, c);
    return MultiPoly(m.nvars(), std::move(t));
  }

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Total degree; the zero polynomial reports 0.
  unsigned degree() const {
    return terms_.empty() ? 0u : terms_.rbegin()->first.degree();
  }

  Scalar coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  MultiPoly operator-() const {
    Terms t;
    for (const auto& [m, c] : terms_) t.emplace(m, -c);
    return MultiPoly(nvars_, std::move(t));
  }

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
    check_compatible(a, b);
    Terms t = a.terms_;
    for (const auto& [m, c] : b.terms_) {
      auto [it, inserted] = t.emplace(m, c);
      if (!inserted) it->second += c;
    }
    return MultiPoly(a.nvars_, std::move(t));
  }
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
    return a + (-b);
  }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    check_compatible(a, b);
    Terms t;
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        Scalar prod = ca * cb;
        auto [it, inserted] = t.emplace(ma * mb, prod);
        if (!inserted) it->second += prod;
      }
    }
    return MultiPoly(a.nvars_, std::move(t));
  }
  friend MultiPoly operator*(const Scalar& s, const MultiPoly& p) {
    Terms t;
    for (const auto& [m, c] : p.terms_) t.emplace(m, s * c);
    return MultiPoly(p.nvars_, std::move(t));
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

 private:
  static void check_compatible(const MultiPoly& a, const MultiPoly& b) {
    if (a.nvars_ != b.nvars_) {
      throw std::invalid_argument(
          "polynomials live in different variable spaces; embed first");
    }
  }

  std::size_t nvars_ = 0;
  Terms terms_;
};

template <class Scalar>
MultiPoly<Scalar> mul(const MultiPoly<Scalar>& p, const MultiPoly<Scalar>& q) {
  return p * q;
}

/// Sum of the moduli of the coefficients.
template <class Scalar>
typename ScalarTraits<Scalar>::Magnitude l1_norm(const MultiPoly<Scalar>& p) {
  using M = typename ScalarTraits<Scalar>::Magnitude;
  M total(0);
  for (const auto& [m, c] : p.terms()) total += ScalarTraits<Scalar>::abs(c);
  return total;
}

/// Re-express `p` in a space of `nvars_out` variables, sending variable i to
/// variable `offset + i`.
template <class Scalar>
MultiPoly<Scalar> embed(const MultiPoly<Scalar>& p, std::size_t nvars_out,
                        std::size_t offset) {
  if (offset + p.nvars() > nvars_out) {
    throw std::invalid_argument("embedding does not fit target space");
  }
  typename MultiPoly<Scalar>::Terms t;
  for (const auto& [m, c] : p.terms()) {
    std::vector<unsigned> e(nvars_out, 0u);
    std::copy(m.exponents().begin(), m.exponents().end(),
              e.begin() + static_cast<std::ptrdiff_t>(offset));
    t.emplace(Monomial(std::move(e)), c);
  }
  return MultiPoly<Scalar>(nvars_out, std::move(t));
}

/// Coefficient-wise conversion, e.g. certified rational to float complex.
template <class To, class From>
MultiPoly<To> convert(const MultiPoly<From>& p) {
  typename MultiPoly<To>::Terms t;
  for (const auto& [m, c] : p.terms()) {
    if constexpr (std::is_same_v<To, Complex>) {
      t.emplace(m, ScalarTraits<From>::to_complex(c));
    } else {
      t.emplace(m, static_cast<To>(c));
    }
  }
  return MultiPoly<To>(p.nvars(), std::move(t));
}

/// A polynomial whose monomials all have total degree `degree`.
template <class Scalar>
class HomogeneousPoly {
 public:
  HomogeneousPoly(MultiPoly<Scalar> base, unsigned degree)
      : base_(std::move(base)), degree_(degree) {
    for (const auto& [m, c] : base_.terms()) {
      if (m.degree() != degree_) {
        throw std::invalid_argument("monomial degree differs from declared");
      }
    }
  }

  const MultiPoly<Scalar>& base() const { return base_; }
  unsigned degree() const { return degree_; }
  std::size_t nvars() const { return base_.nvars(); }
  bool is_zero() const { return base_.is_zero(); }

 private:
  MultiPoly<Scalar> base_;
  unsigned degree_;
};

template <class Scalar>
typename ScalarTraits<Scalar>::Magnitude l1_norm(
    const HomogeneousPoly<Scalar>& h) {
  return l1_norm(h.base());
}

/// Split p into its homogeneous components; parts[d] has degree d and the
/// list runs from 0 to deg(p) with explicit zero parts.
template <class Scalar>
std::vector<HomogeneousPoly<Scalar>> homogeneous_parts(
    const MultiPoly<Scalar>& p) {
  const unsigned top = p.degree();
  std::vector<typename MultiPoly<Scalar>::Terms> buckets(top + 1);
  for (const auto& [m, c] : p.terms()) buckets[m.degree()].emplace(m, c);
  std::vector<HomogeneousPoly<Scalar>> parts;
  parts.reserve(top + 1);
  for (unsigned d = 0; d <= top; ++d) {
    parts.emplace_back(MultiPoly<Scalar>(p.nvars(), std::move(buckets[d])), d);
  }
  return parts;
}

template <class Scalar>
MultiPoly<Scalar> sum_parts(const std::vector<HomogeneousPoly<Scalar>>& parts,
                            std::size_t nvars) {
  MultiPoly<Scalar> total(nvars);
  for (const auto& h : parts) total = total + h.base();
  return total;
}

namespace detail {

template <class Vec>
using element_t = std::decay_t<decltype(std::declval<const Vec&>()[0])>;

template <class Scalar, class Elem>
using eval_result_t =
    std::conditional_t<std::is_same_v<Elem, Rational> &&
                           std::is_same_v<Scalar, Rational>,
                       Rational, Complex>;

template <class Result, class Scalar>
Result lift(const Scalar& c) {
  if constexpr (std::is_same_v<Result, Complex>) {
    return ScalarTraits<Scalar>::to_complex(c);
  } else {
    return Result(c);
  }
}

}  // namespace detail

/// Evaluate p at z. Rational polynomials at rational points stay exact;
/// everything else is evaluated in complex double precision.
template <class Scalar, class Vec>
auto eval(const MultiPoly<Scalar>& p, const Vec& z) {
  using Elem = detail::element_t<Vec>;
  using Result = detail::eval_result_t<Scalar, Elem>;
  const std::size_t n = p.nvars();
  if (static_cast<std::size_t>(z.size()) != n) {
    throw std::invalid_argument("evaluation point has wrong dimension");
  }
  // Per-variable power tables up to the largest exponent used.
  std::vector<unsigned> max_exp(n, 0u);
  for (const auto& [m, c] : p.terms()) {
    for (std::size_t i = 0; i < n; ++i) {
      max_exp[i] = std::max(max_exp[i], m[i]);
    }
  }
  std::vector<std::vector<Result>> powers(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Result zi = detail::lift<Result>(z[static_cast<std::ptrdiff_t>(i)]);
    powers[i].resize(max_exp[i] + 1);
    powers[i][0] = Result(1);
    for (unsigned k = 1; k <= max_exp[i]; ++k) {
      powers[i][k] = powers[i][k - 1] * zi;
    }
  }
  Result total(0);
  for (const auto& [m, c] : p.terms()) {
    Result term = detail::lift<Result>(c);
    for (std::size_t i = 0; i < n; ++i) {
      if (m[i] != 0) term *= powers[i][m[i]];
    }
    total += term;
  }
  return total;
}

template <class Scalar, class Vec>
auto eval(const HomogeneousPoly<Scalar>& h, const Vec& z) {
  return eval(h.base(), z);
}

}  // namespace wedge
