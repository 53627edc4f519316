#pragma once

// JSON form of MultiPoly:
//   {"nvars": n, "terms": [{"exp": [..], "re": .., "im": ..}, ...]}
// with terms in ascending graded-lex order. Rational polynomials carry
// {"exp": [..], "num": .., "den": ..}; integers that overflow int64 are
// written as decimal strings.

#include <limits>
#include <string>

#include <json.hpp>

#include "wedge/polynomial.hpp"

namespace wedge {

namespace detail {

inline nlohmann::json bigint_to_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() &&
      v <= std::numeric_limits<std::int64_t>::max()) {
    return static_cast<std::int64_t>(v);
  }
  return v.str();
}

inline BigInt bigint_from_json(const nlohmann::json& j) {
  if (j.is_string()) return BigInt(j.get<std::string>());
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  throw std::invalid_argument("expected integer or decimal string");
}

inline Monomial monomial_from_json(const nlohmann::json& term,
                                   std::size_t nvars) {
  auto e = term.at("exp").get<std::vector<unsigned>>();
  if (e.size() != nvars) {
    throw std::invalid_argument("term exponent length differs from nvars");
  }
  return Monomial(std::move(e));
}

}  // namespace detail

inline nlohmann::json to_json(const MultiPoly<Complex>& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [m, c] : p.terms()) {
    terms.push_back({{"exp", m.exponents()}, {"re", c.real()}, {"im", c.imag()}});
  }
  return {{"nvars", p.nvars()}, {"terms", std::move(terms)}};
}

inline nlohmann::json to_json(const MultiPoly<Rational>& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [m, c] : p.terms()) {
    terms.push_back({{"exp", m.exponents()},
                     {"num", detail::bigint_to_json(numerator(c))},
                     {"den", detail::bigint_to_json(denominator(c))}});
  }
  return {{"nvars", p.nvars()}, {"terms", std::move(terms)}};
}

/// Whether a serialized polynomial uses num/den coefficients.
inline bool is_rational_json(const nlohmann::json& j) {
  const auto& terms = j.at("terms");
  return !terms.empty() && terms.front().contains("num");
}

template <class Scalar>
MultiPoly<Scalar> poly_from_json(const nlohmann::json& j);

template <>
inline MultiPoly<Complex> poly_from_json<Complex>(const nlohmann::json& j) {
  const auto nvars = j.at("nvars").get<std::size_t>();
  MultiPoly<Complex>::Terms terms;
  for (const auto& term : j.at("terms")) {
    Complex c;
    if (term.contains("num")) {
      const Rational q(detail::bigint_from_json(term.at("num")),
                       detail::bigint_from_json(term.at("den")));
      c = Complex(static_cast<double>(q), 0.0);
    } else {
      c = Complex(term.at("re").get<double>(), term.value("im", 0.0));
    }
    auto [it, inserted] = terms.emplace(detail::monomial_from_json(term, nvars), c);
    if (!inserted) throw std::invalid_argument("duplicate monomial in terms");
  }
  return MultiPoly<Complex>(nvars, std::move(terms));
}

template <>
inline MultiPoly<Rational> poly_from_json<Rational>(const nlohmann::json& j) {
  const auto nvars = j.at("nvars").get<std::size_t>();
  MultiPoly<Rational>::Terms terms;
  for (const auto& term : j.at("terms")) {
    const BigInt den = detail::bigint_from_json(term.at("den"));
    if (den == 0) throw std::invalid_argument("zero denominator");
    Rational c(detail::bigint_from_json(term.at("num")), den);
    auto [it, inserted] = terms.emplace(detail::monomial_from_json(term, nvars), c);
    if (!inserted) throw std::invalid_argument("duplicate monomial in terms");
  }
  return MultiPoly<Rational>(nvars, std::move(terms));
}

}  // namespace wedge
