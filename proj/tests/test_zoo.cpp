#include <doctest.h>

#include <cmath>

#include "wedge/zoo.hpp"

using namespace wedge;

namespace {

MeasureOptions quick() {
  MeasureOptions mo;
  mo.samples = 20000;
  return mo;
}

Complex at(const ZooFunction& f, Complex a, Complex b) { return f.eval(Eigen::Vector2cd(a, b)); }

}  // namespace

TEST_CASE("every zoo function passes the Cauchy-Riemann check") {
  std::vector<ZooFunction> all;
  for (const auto& name : zoo_names()) all.push_back(make_zoo(name));
  all.push_back(zoo_geom(1));
  all.push_back(zoo_geom(16));
  all.push_back(zoo_onevar(7));
  all.push_back(zoo_chebyshev(ChebyshevForm::Standard));
  for (const auto& f : all) {
    CAPTURE(f.name);
    const auto r = cauchy_riemann_check(f, 1000, 3);
    CHECK(r.points == 1000);
    CHECK(r.max_defect <= 1e-6);
    CHECK(r.passed);
  }
  // A non-analytic function fails.
  ZooFunction conj = zoo_exp(1);
  conj.eval = [](const Eigen::VectorXcd& z) { return std::conj(z(0)); };
  CHECK_FALSE(cauchy_riemann_check(conj, 100, 3).passed);
}

TEST_CASE("geometric function") {
  const auto f = zoo_geom(4);
  CHECK(f.singular_distance == doctest::Approx(0.5));
  CHECK(at(f, 0, 0) == Complex(1, 0));
  CHECK(std::abs(at(f, 0.5, 0.5 * (1 - 1e-9))) > 1e8);
  CHECK(f.profile == HypothesisProfile::OppositeOrientation);
  // The ℓ∞ distance to {zw = 1/t}: |z||w| = 1/t forces max(|z|,|w|) ≥ 1/√t.
  Rng rng = make_stream(51, 0);
  for (int k = 0; k < 200; ++k) {
    const Complex z = std::polar(uniform(rng, 0.1, 3.0), uniform(rng, 0, 2 * M_PI));
    const Complex w = 1.0 / (4.0 * z);
    CHECK(std::max(std::abs(z), std::abs(w)) >= 0.5 - 1e-12);
  }
}

TEST_CASE("sqrt branch") {
  const auto f = zoo_sqrt();
  CHECK(at(f, 1, 1) == Complex(1, 0));
  CHECK(f.singular_distance == 0.0);
  CHECK(f.profile == HypothesisProfile::TouchesAtOrigin);
  // Principal √(zw) on the positive quadrant.
  CHECK(std::abs(at(f, 0.3, 0.7) - std::sqrt(0.21)) < 1e-15);
  // Continuous along w·(1,1) as w sweeps the upper half plane.
  Complex prev = at(f, Complex(1, 1e-9), Complex(1, 1e-9));
  for (int k = 1; k <= 1000; ++k) {
    const Complex w = std::polar(1.0, M_PI * (k / 1001.0));
    const Complex cur = at(f, w, w);
    CHECK(std::abs(cur - prev) < 0.01);
    prev = cur;
  }
  // The two cubes meet only at the origin.
  CHECK(cube_overlap_measure(2, 0.0) == 0.0);
  CHECK(cube_overlap_measure(2, 0.1) == doctest::Approx(0.04));
  CHECK_THROWS_AS(restrict_to_theorem_domain(f.eval, zoo_wedge(f, quick()), f.overlap),
                  OverlapMeasureZero);
}

TEST_CASE("one-variable pole barrier") {
  const auto f = zoo_onevar(0);
  REQUIRE(f.poles.size() == 64);
  CHECK(f.poles[0] == 1.0 + 1.0 / 128);
  CHECK(f.poles[1] == -(1.0 + 1.0 / 128));
  for (double x : f.poles) {
    CHECK(std::abs(x) >= 1.0);
    CHECK(std::abs(x) <= 3.0);
  }
  CHECK(f.singular_distance >= 1.0);
  CHECK(f.singular_distance <= 1.0 + 1.0 / 64);
  // Poles sit exactly at the listed points: the residue there is 2^{-k}.
  for (std::size_t k = 0; k < 6; ++k) {
    const double eps = 1e-9;
    const Complex v = f.eval(Eigen::VectorXcd::Constant(1, Complex(f.poles[k] + eps, 0)));
    CHECK((v * eps).real() == doctest::Approx(std::ldexp(1.0, -int(k) - 1)).epsilon(1e-3));
  }
  CHECK(zoo_onevar(0).poles == zoo_onevar(0).poles);
  CHECK(zoo_onevar(1).poles != zoo_onevar(0).poles);

  const auto w = zoo_wedge(f, quick());
  const auto g = reconstruct_germ(restrict_to_theorem_domain(f.eval, w, f.overlap), w);
  CHECK(g.radius <= 1.1 * f.singular_distance);
  CHECK(g.radius == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("homogenized Chebyshev polynomials") {
  // T_3(u) = 4u³ − 3u → 4x³ − 3xt².
  const auto h3 = homogenized_chebyshev(3);
  CHECK(h3.coefficient(Monomial({3u, 0u})) == 4);
  CHECK(h3.coefficient(Monomial({1u, 2u})) == -3);
  CHECK(h3.size() == 2);
  CHECK(homogenized_chebyshev(0) == MultiPoly<Rational>::constant(2, 1));

  // t = 1 recovers T_d(cos θ) = cos(dθ).
  for (unsigned d = 0; d <= 20; ++d) {
    const auto h = convert<Complex>(homogenized_chebyshev(d));
    for (double th : {0.1, 0.7, 2.0, 3.0}) {
      CHECK(std::abs(eval(h, Eigen::Vector2d(std::cos(th), 1.0)) - std::cos(d * th)) < 1e-9);
    }
  }

  // Bounded by 1 on {0 < x < t < 1}.
  const auto w = chebyshev_wedge(quick());
  CHECK(w.measure_estimate == doctest::Approx(0.5).epsilon(0.02));
  Rng rng = make_stream(52, 0);
  std::vector<MultiPoly<Complex>> hs;
  for (unsigned d = 0; d <= 12; ++d) hs.push_back(convert<Complex>(homogenized_chebyshev(d)));
  int sampled = 0;
  double worst = 0.0;
  while (sampled < 10000) {
    const Eigen::Vector2d y(uniform01(rng), uniform01(rng));
    if (!w.contains_unit(y)) continue;
    ++sampled;
    for (const auto& h : hs) worst = std::max(worst, std::abs(eval(h, y)));
  }
  CHECK(worst <= 1.0 + 1e-12);

  // Σ_d H_d = homogenized form, and Σ_d T_d(x) t^d = standard form.
  const auto homog = zoo_chebyshev(ChebyshevForm::Homogenized);
  const auto standard = zoo_chebyshev(ChebyshevForm::Standard);
  const Eigen::Vector2cd z(Complex(0.1, 0.05), Complex(0.2, -0.03));
  Complex sum(0, 0);
  for (unsigned d = 0; d <= 80; ++d) {
    const auto h = convert<Complex>(homogenized_chebyshev(d));
    sum += eval(h, z);
  }
  CHECK(std::abs(sum - homog.eval(z)) < 1e-12);
  // Standard form against the three-term recurrence for T_d(x) t^d.
  Complex direct(0, 0);
  {
    Complex tm1(1, 0), tcur = z(0);
    direct = tm1 + tcur * z(1);
    Complex tp = z(1) * z(1);
    for (unsigned d = 2; d <= 80; ++d) {
      const Complex next = 2.0 * z(0) * tcur - tm1;
      direct += next * tp;
      tm1 = tcur;
      tcur = next;
      tp *= z(1);
    }
  }
  CHECK(std::abs(direct - standard.eval(z)) < 1e-12);

  // g(0, t) = 1/(1 + t²).
  const Complex t(0.3, 0.4);
  CHECK(std::abs(at(homog, 0, t) - 1.0 / (1.0 + t * t)) < 1e-15);
  CHECK(homog.singular_distance == doctest::Approx(std::sqrt(2.0) - 1));
  CHECK(standard.singular_distance == doctest::Approx(1 / std::sqrt(3.0)));
}

TEST_CASE("Chebyshev singularities in the poly upper half plane") {
  for (auto form : {ChebyshevForm::Homogenized, ChebyshevForm::Standard}) {
    const auto s = chebyshev_singularity_search(form, 200, 5);
    REQUIRE(s.found);
    CHECK(s.x.imag() > 0);
    CHECK(s.t.imag() > 0);
    const auto f = zoo_chebyshev(form);
    const Complex q = form == ChebyshevForm::Homogenized ? 1.0 - 2.0 * s.x + s.t * s.t
                                                   : 1.0 - 2.0 * s.x * s.t + s.t * s.t;
    CHECK(std::abs(q) < 1e-12);
    CHECK(std::abs(at(f, s.x * (1.0 + 1e-10), s.t)) > 1e6);
  }
  // The homogenized form's germ still has ℓ¹ growth √2 + 1 = 1/(√2 − 1).
  const auto f = zoo_chebyshev(ChebyshevForm::Homogenized);
  const auto w = zoo_wedge(f, quick());
  const auto g = reconstruct_germ(restrict_to_theorem_domain(f.eval, w, f.overlap), w);
  CHECK(g.radius <= 1.1 * f.singular_distance);
}

TEST_CASE("factory") {
  CHECK(make_zoo("geom", {{"t", 9}}).singular_distance == doctest::Approx(1.0 / 3));
  CHECK(make_zoo("exp", {{"n", 3}}).nvars == 3);
  CHECK(make_zoo("chebyshev", {{"standard", 1}}).params.at("standard") == 1.0);
  try {
    make_zoo("geom", {{"tt", 2}});
    FAIL("expected rejection");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("'tt'") != std::string::npos);
  }
  CHECK_THROWS_AS(make_zoo("nope"), std::invalid_argument);
  CHECK_THROWS_AS(make_zoo("exp", {{"n", 1.5}}), std::invalid_argument);
  CHECK_THROWS_AS(make_zoo("geom", {{"t", -1}}), std::invalid_argument);
}
