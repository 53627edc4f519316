#include <doctest.h>

#include <array>
#include <random>

#include "wedge/polynomial.hpp"
#include "wedge/polynomial_io.hpp"
#include "wedge/sampling.hpp"

using namespace wedge;

namespace {

using QPoly = MultiPoly<Rational>;
using CPoly = MultiPoly<Complex>;

QPoly qmono(std::vector<unsigned> e, Rational c) {
  return QPoly::monomial(Monomial(std::move(e)), c);
}

/// Random rational polynomial with small integer/2^k coefficients.
QPoly random_qpoly(Rng& rng, std::size_t n, unsigned max_deg, std::size_t terms) {
  QPoly p(n);
  for (std::size_t k = 0; k < terms; ++k) {
    std::vector<unsigned> e(n, 0);
    unsigned budget = static_cast<unsigned>(rng() % (max_deg + 1));
    for (std::size_t i = 0; i < n && budget > 0; ++i) {
      const unsigned take = i + 1 == n ? budget : static_cast<unsigned>(rng() % (budget + 1));
      e[i] = take;
      budget -= take;
    }
    const auto num = static_cast<long>(rng() % 19) - 9;
    p = p + qmono(e, Rational(num, 1L << (rng() % 4)));
  }
  return p;
}

/// Dense 2-variable oracle: coefficient grid c[i][j] of x^i y^j.
using Dense = std::array<std::array<Rational, 16>, 16>;

Dense to_dense(const QPoly& p) {
  Dense d{};
  for (const auto& [m, c] : p.terms()) d[m[0]][m[1]] = c;
  return d;
}

Dense dense_product(const Dense& a, const Dense& b) {
  Dense out{};
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      for (int k = 0; k < 8; ++k)
        for (int l = 0; l < 8; ++l) out[i + k][j + l] += a[i][j] * b[k][l];
  return out;
}

}  // namespace

TEST_CASE("l1 norm examples") {
  // 3x²y − 2y³
  const QPoly p = qmono({2, 1}, 3) - qmono({0, 3}, 2);
  CHECK(l1_norm(p) == 5);
  CHECK(l1_norm(QPoly(2)) == 0);
  CHECK(QPoly(2).is_zero());

  // (x+y)·(u−v) in disjoint variables
  const QPoly xy = QPoly::variable(2, 0) + QPoly::variable(2, 1);
  const QPoly uv = QPoly::variable(2, 0) - QPoly::variable(2, 1);
  const QPoly prod = mul(embed(xy, 4, 0), embed(uv, 4, 2));
  CHECK(l1_norm(prod) == 4);
  CHECK(prod.size() == 4);
}

TEST_CASE("canonical sparse form drops zeros") {
  const QPoly x = QPoly::variable(1, 0);
  const QPoly z = x - x;
  CHECK(z.is_zero());
  CHECK(z.size() == 0);
  CHECK(z.degree() == 0);
  QPoly::Terms t;
  t.emplace(Monomial({1u}), Rational(0));
  CHECK(QPoly(1, t).is_zero());
}

TEST_CASE("mul examples") {
  const QPoly x = QPoly::variable(1, 0);
  const QPoly one = QPoly::constant(1, 1);
  CHECK(mul(x + one, x - one) == qmono({2}, 1) - one);

  const QPoly xy = QPoly::variable(2, 0) + QPoly::variable(2, 1);
  const QPoly sq = mul(xy, xy);
  CHECK(sq == qmono({2, 0}, 1) + qmono({1, 1}, 2) + qmono({0, 2}, 1));
  CHECK(l1_norm(sq) == 4);
  CHECK(l1_norm(sq) <= l1_norm(xy) * l1_norm(xy));
  CHECK_THROWS_AS(mul(x, xy), std::invalid_argument);
}

TEST_CASE("product matches dense convolution oracle") {
  Rng rng = make_stream(11, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const QPoly a = random_qpoly(rng, 2, 7, 6);
    const QPoly b = random_qpoly(rng, 2, 7, 6);
    CHECK(to_dense(a * b) == dense_product(to_dense(a), to_dense(b)));
  }
}

TEST_CASE("l1 multiplicativity on disjoint variables, exact and float") {
  Rng rng = make_stream(12, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const QPoly p = random_qpoly(rng, 2, 6, 5);
    const QPoly q = random_qpoly(rng, 2, 6, 5);
    const QPoly pq = mul(embed(p, 4, 0), embed(q, 4, 2));
    CHECK(l1_norm(pq) == l1_norm(p) * l1_norm(q));

    const CPoly pc = convert<Complex>(p);
    const CPoly qc = convert<Complex>(q);
    const double lhs = l1_norm(mul(embed(pc, 4, 0), embed(qc, 4, 2)));
    const double rhs = l1_norm(pc) * l1_norm(qc);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, rhs));
  }
}

TEST_CASE("submultiplicativity in shared variables") {
  Rng rng = make_stream(13, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const QPoly p = random_qpoly(rng, 3, 5, 6);
    const QPoly q = random_qpoly(rng, 3, 5, 6);
    CHECK(l1_norm(p * q) <= l1_norm(p) * l1_norm(q));
  }
}

TEST_CASE("homogeneous parts") {
  // 1 + xy + x²y
  const QPoly p = QPoly::constant(2, 1) + qmono({1, 1}, 1) + qmono({2, 1}, 1);
  const auto parts = homogeneous_parts(p);
  REQUIRE(parts.size() == 4);
  CHECK(parts[0].base() == QPoly::constant(2, 1));
  CHECK(parts[1].is_zero());
  CHECK(parts[2].base() == qmono({1, 1}, 1));
  CHECK(parts[3].base() == qmono({2, 1}, 1));
  for (unsigned d = 0; d < 4; ++d) CHECK(parts[d].degree() == d);

  const QPoly h = qmono({3, 0}, 2) - qmono({1, 2}, 5);
  const auto hp = homogeneous_parts(h);
  REQUIRE(hp.size() == 4);
  for (unsigned d = 0; d < 3; ++d) CHECK(hp[d].is_zero());
  CHECK(hp[3].base() == h);

  Rng rng = make_stream(14, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const QPoly r = random_qpoly(rng, 3, 8, 10);
    CHECK(sum_parts(homogeneous_parts(r), 3) == r);
  }
  CHECK_THROWS_AS(HomogeneousPoly<Rational>(p, 2), std::invalid_argument);
}

TEST_CASE("evaluation is consistent with arithmetic") {
  Rng rng = make_stream(15, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const CPoly p = convert<Complex>(random_qpoly(rng, 3, 6, 6));
    const CPoly q = convert<Complex>(random_qpoly(rng, 3, 6, 6));
    Eigen::VectorXcd z(3);
    for (int i = 0; i < 3; ++i) z(i) = Complex(uniform(rng, -1, 1), uniform(rng, -1, 1));
    const Complex pq = eval(p * q, z);
    const Complex ref = eval(p, z) * eval(q, z);
    CHECK(std::abs(pq - ref) <= 1e-11 * std::max(1.0, std::abs(ref)));
    CHECK(std::abs(eval(p + q, z) - eval(p, z) - eval(q, z)) <= 1e-12 * (1 + std::abs(ref)));
  }
  // Exact rational evaluation.
  const QPoly p = qmono({2, 1}, 3) - qmono({0, 3}, 2);
  const std::vector<Rational> pt{Rational(1, 2), Rational(2, 3)};
  CHECK(eval(p, pt) == Rational(3, 4) * Rational(2, 3) - 2 * Rational(8, 27));
}

TEST_CASE("homogeneous scaling law and pointwise l1 bound") {
  Rng rng = make_stream(16, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const unsigned d = static_cast<unsigned>(rng() % 9);
    CPoly::Terms t;
    for (const auto& m : monomials_of_degree(3, d)) {
      t.emplace(m, Complex(uniform(rng, -1, 1), uniform(rng, -1, 1)));
    }
    const HomogeneousPoly<Complex> h(CPoly(3, t), d);
    Eigen::VectorXcd z(3);
    for (int i = 0; i < 3; ++i) z(i) = Complex(uniform(rng, -1, 1), uniform(rng, -1, 1));
    const Complex s(uniform(rng, -2, 2), uniform(rng, -2, 2));
    const Complex lhs = eval(h, Eigen::VectorXcd(s * z));
    const Complex rhs = std::pow(s, static_cast<int>(d)) * eval(h, z);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
    const double zinf = z.cwiseAbs().maxCoeff();
    CHECK(std::abs(eval(h, z)) <= l1_norm(h) * std::pow(zinf, d) * (1 + 1e-12));
  }
}

TEST_CASE("monomial enumeration") {
  CHECK(monomials_of_degree(3, 4).size() == 15);
  CHECK(monomials_of_degree(1, 7).size() == 1);
  CHECK(monomials_of_degree(0, 0).size() == 1);
  CHECK(monomials_of_degree(0, 2).empty());
  const auto ms = monomials_of_degree(2, 2);
  CHECK(ms[0] == Monomial({0u, 2u}));
  CHECK(ms[2] == Monomial({2u, 0u}));
}

TEST_CASE("JSON round trip") {
  Rng rng = make_stream(17, 0);
  const QPoly p = random_qpoly(rng, 3, 6, 8) +
                  qmono({1, 0, 0}, Rational(BigInt(1) << 80, BigInt(3)));
  CHECK(poly_from_json<Rational>(to_json(p)) == p);
  CHECK(is_rational_json(to_json(p)));

  const CPoly c = convert<Complex>(random_qpoly(rng, 2, 5, 5)) +
                  CPoly::monomial(Monomial({1u, 1u}), Complex(0.25, -1.5));
  CHECK(poly_from_json<Complex>(to_json(c)) == c);

  auto dup = nlohmann::json::parse(
      R"({"nvars":1,"terms":[{"exp":[1],"re":1,"im":0},{"exp":[1],"re":2,"im":0}]})");
  CHECK_THROWS(poly_from_json<Complex>(dup));
  auto zero_den = nlohmann::json::parse(R"({"nvars":1,"terms":[{"exp":[1],"num":1,"den":0}]})");
  CHECK_THROWS(poly_from_json<Rational>(zero_den));
}
