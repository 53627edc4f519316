#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wedge/interpolation.hpp"
#include "wedge/sampling.hpp"

using namespace wedge;

namespace {

using QPoly = MultiPoly<Rational>;

/// p restricted to {x_axis = value}, as a polynomial in the other variables.
template <class Scalar>
MultiPoly<Scalar> slice_at(const MultiPoly<Scalar>& p, std::size_t axis,
                           const typename ScalarTraits<Scalar>::Real& value) {
  typename MultiPoly<Scalar>::Terms t;
  for (const auto& [m, c] : p.terms()) {
    std::vector<unsigned> e = m.exponents();
    const unsigned k = e[axis];
    e.erase(e.begin() + static_cast<std::ptrdiff_t>(axis));
    Scalar v = c;
    for (unsigned j = 0; j < k; ++j) v *= Scalar(value);
    auto [it, ins] = t.emplace(Monomial(std::move(e)), v);
    if (!ins) it->second += v;
  }
  return MultiPoly<Scalar>(p.nvars() - 1, std::move(t));
}

QPoly random_qpoly(Rng& rng, std::size_t n, unsigned deg) {
  QPoly::Terms t;
  for (unsigned d = 0; d <= deg; ++d) {
    for (const auto& m : monomials_of_degree(n, d)) {
      if (rng() % 3 == 0) continue;
      t.emplace(m, Rational(static_cast<long>(rng() % 21) - 10, 1 + static_cast<long>(rng() % 7)));
    }
  }
  return QPoly(n, std::move(t));
}

}  // namespace

TEST_CASE("barycentric weights and evaluation") {
  const std::vector<double> nodes{0.0, 1.0, 2.0};
  const auto w = barycentric_weights(nodes);
  CHECK(w[0] == doctest::Approx(0.5));
  CHECK(w[1] == doctest::Approx(-1.0));
  CHECK(w[2] == doctest::Approx(0.5));
  // x² − 3x + 1 through the nodes.
  std::vector<double> vals;
  for (double x : nodes) vals.push_back(x * x - 3 * x + 1);
  for (double x : {-0.7, 0.3, 1.5, 4.0}) {
    CHECK(barycentric_eval<double>(nodes, w, vals, x) == doctest::Approx(x * x - 3 * x + 1));
  }
  CHECK(barycentric_eval<double>(nodes, w, vals, 1.0) == vals[1]);
  const std::vector<double> dup{0.0, 0.5, 0.5};
  CHECK_THROWS_AS(barycentric_weights(dup), DuplicateNodes);
}

TEST_CASE("exact Lagrange round trip in rational mode") {
  Rng rng = make_stream(21, 0);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 2;
    const unsigned deg = 1 + static_cast<unsigned>(rng() % 8);
    const QPoly p = random_qpoly(rng, n, deg);
    const std::size_t axis = rng() % n;
    std::vector<Rational> nodes;
    std::vector<QPoly> slices;
    for (unsigned k = 0; k <= deg; ++k) {
      nodes.emplace_back(static_cast<long>(k * 3 + 1), 37);
      slices.push_back(slice_at(p, axis, nodes.back()));
    }
    CHECK(lagrange_reconstruct<Rational>(slices, nodes, axis) == p);
  }
}

/// Nodes drawn uniformly from [lo, hi], pairwise at least `gap` apart.
std::vector<double> separated_nodes(Rng& rng, std::size_t count, double lo, double hi,
                                    double gap) {
  std::vector<double> nodes;
  while (nodes.size() < count) {
    const double v = uniform(rng, lo, hi);
    bool ok = true;
    for (double u : nodes) ok &= std::abs(u - v) >= gap;
    if (ok) nodes.push_back(v);
  }
  return nodes;
}

double max_relative_coefficient_error(const MultiPoly<Complex>& r, const MultiPoly<Complex>& p) {
  double scale = 0.0, err = 0.0;
  for (const auto& [m, c] : p.terms()) scale = std::max(scale, std::abs(c));
  for (const auto diff = r - p; const auto& [m, c] : diff.terms()) err = std::max(err, std::abs(c));
  return err / scale;
}

TEST_CASE("float Lagrange round trip at separation 0.05, degree up to 15") {
  Rng rng = make_stream(22, 0);
  double worst = 0.0;
  for (int trial = 0; trial < 60; ++trial) {
    const unsigned deg = 2 + static_cast<unsigned>(trial % 14);
    const auto p = convert<Complex>(random_qpoly(rng, 2, deg));
    const auto nodes = separated_nodes(rng, deg + 1, -1.0, 1.0, 0.05);
    std::vector<MultiPoly<Complex>> slices;
    for (double v : nodes) slices.push_back(slice_at(p, 0, v));
    worst = std::max(worst, max_relative_coefficient_error(
                                lagrange_reconstruct<Complex>(slices, nodes, 0), p));
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("float Lagrange error on packed nodes stays within the conditioning bound") {
  // Nodes packed into [0, 1] make the monomial map ill conditioned. The error
  // must stay below eps · (slice data scale) · max_k Σ_i |ℓ_ik|.
  Rng rng = make_stream(24, 0);
  for (int trial = 0; trial < 30; ++trial) {
    const unsigned deg = 2 + static_cast<unsigned>(trial % 9);
    const auto q = random_qpoly(rng, 2, deg);
    const auto p = convert<Complex>(q);
    std::vector<double> nodes;
    double x = uniform(rng, 0.0, 0.05);
    for (unsigned k = 0; k <= deg; ++k, x += 0.05 + uniform(rng, 0.0, 0.03)) nodes.push_back(x);

    // Σ_i |ℓ_ik| from the exact expansion of each basis polynomial.
    std::vector<Rational> lebesgue(deg + 1, Rational(0));
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      QPoly li = QPoly::constant(1, 1);
      for (std::size_t j = 0; j < nodes.size(); ++j) {
        if (j == i) continue;
        const Rational den = Rational(nodes[i]) - Rational(nodes[j]);
        QPoly::Terms t;
        t.emplace(Monomial({1u}), Rational(1) / den);
        t.emplace(Monomial({0u}), -Rational(nodes[j]) / den);
        li = li * QPoly(1, t);
      }
      for (const auto& [m, c] : li.terms()) lebesgue[m.exponents()[0]] += c < 0 ? Rational(-c) : c;
    }
    double amp = 0.0;
    for (const auto& v : lebesgue) amp = std::max(amp, static_cast<double>(v));
    // Largest slice coefficient magnitude, evaluated on |p|.
    QPoly::Terms abs_terms;
    for (const auto& [m, c] : q.terms()) abs_terms.emplace(m, c < 0 ? Rational(-c) : c);
    const auto abs_p = convert<Complex>(QPoly(2, abs_terms));
    double data = 0.0;
    for (double v : nodes) {
      for (const auto s = slice_at(abs_p, 0, v); const auto& [m, c] : s.terms()) data = std::max(data, std::abs(c));
    }
    std::vector<MultiPoly<Complex>> slices;
    for (double v : nodes) slices.push_back(slice_at(p, 0, v));
    const auto r = lagrange_reconstruct<Complex>(slices, nodes, 0);
    double err = 0.0;
    for (const auto diff = r - p; const auto& [m, c] : diff.terms()) err = std::max(err, std::abs(c));
    CAPTURE(deg);
    CHECK(err <= 4.0 * (deg + 1) * 0x1p-52 * data * amp);
  }
}

TEST_CASE("l1 bound from slices dominates the reconstruction") {
  Rng rng = make_stream(23, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const unsigned deg = 1 + static_cast<unsigned>(rng() % 6);
    const QPoly p = random_qpoly(rng, 2, deg);
    std::vector<Rational> nodes, bounds;
    std::vector<QPoly> slices;
    for (unsigned k = 0; k <= deg; ++k) {
      nodes.emplace_back(static_cast<long>(2 * k + 1), 2 * static_cast<long>(deg) + 2);
      slices.push_back(slice_at(p, 0, nodes.back()));
      bounds.push_back(l1_norm(slices.back()));
    }
    CHECK(l1_norm(p) <= l1_bound_from_slices<Rational>(bounds, nodes));
  }
}

TEST_CASE("constants recursion") {
  const double e = std::numbers::e;
  auto c11 = compute_constants(1, 1.0);
  CHECK(c11.K == doctest::Approx(e));
  CHECK(c11.C == doctest::Approx(4 * e));
  CHECK(c11.C <= 4 * e * (1 + 1e-15));
  CHECK(compute_constants(1, 0.5).C == doctest::Approx(8 * e));
  CHECK(compute_constants(2, 0.5).C == doctest::Approx(64 * e * e / 0.25));
  CHECK(compute_constants(3, 1.0).C == doctest::Approx(2048 * e * e * e));
  CHECK(compute_constants(3, 1.0).K == doctest::Approx(e * e * e));
  const auto c0 = compute_constants(0, 0.3);
  CHECK(c0.K == 1.0);
  CHECK(c0.C == 1.0);
  CHECK_THROWS_AS(compute_constants(2, 0.0), InvalidMeasure);
  CHECK_THROWS_AS(compute_constants(2, 1.5), InvalidMeasure);
  CHECK_THROWS_AS(compute_constants(2, -0.1), InvalidMeasure);
  // Smaller C for larger p.
  for (std::size_t n = 1; n <= 3; ++n) {
    double prev = INFINITY;
    for (double p = 0.1; p <= 1.0; p += 0.1) {
      const double c = compute_constants(n, p).C;
      CHECK(c <= prev);
      prev = c;
    }
  }
}

TEST_CASE("chain bound is dominated by K C^d") {
  for (std::size_t n = 1; n <= 3; ++n) {
    for (double p : {0.2, 0.5, 1.0}) {
      const auto bc = compute_constants(n, p);
      for (std::size_t d = 0; d <= 30; ++d) {
        CHECK(chain_bound(n, p, d) <= bc.K * std::pow(bc.C, static_cast<double>(d)) * (1 + 1e-12));
      }
    }
  }
  // One level with δ = 1/2 for d = 1: 4/(1/2) = 8.
  CHECK(lagrange_level_factor(1.0, 1) == doctest::Approx(8.0));
}

TEST_CASE("Stirling certificate") {
  for (std::size_t d = 1; d <= 30; ++d) {
    const auto s = stirling_certificate(d);
    CHECK(s.holds);
    CHECK(s.ratio == doctest::Approx(std::exp(d * std::log(double(d)) - std::lgamma(d + 1.0))));
  }
}

TEST_CASE("slice selection") {
  MeasureOptions mo;
  mo.samples = 20000;
  const RealWedge box = box_wedge(Eigen::Vector2d(1.0, 1.0), mo);
  SliceScanOptions so;
  so.grid = 256;
  so.samples_per_slice = 512;
  const auto sel = select_slices(box, 0, 6, 0.5, 1.0, so);
  REQUIRE(sel.nodes.size() == 6);
  CHECK(sel.separation == doctest::Approx(1.0 / 12.0));
  for (std::size_t i = 1; i < sel.nodes.size(); ++i) {
    CHECK(sel.nodes[i] - sel.nodes[i - 1] >= sel.separation);
  }
  for (double m : sel.slice_measures) CHECK(m >= 0.5);

  // A slab of width 0.05 cannot host 6 nodes separated by p/(2·6) = 1/24.
  auto slab = [](const Eigen::VectorXd& y) { return y(0) < 0.05; };
  const RealWedge thin = make_real_wedge(2, slab, Eigen::Vector2d(1, 1), mo);
  CHECK(thin.measure_estimate == doctest::Approx(0.05).epsilon(0.1));
  CHECK_THROWS_AS(select_slices(thin, 0, 6, 0.25, 0.5, so), InsufficientMeasure);
  // Slices of a thin horizontal band never reach measure 1/2.
  auto band = [](const Eigen::VectorXd& y) { return y(1) < 0.05; };
  const RealWedge flat = make_real_wedge(2, band, Eigen::Vector2d(1, 1), mo);
  CHECK_THROWS_AS(select_slices(flat, 0, 2, 0.5, 0.05, so), InsufficientMeasure);
}

TEST_CASE("slice selection is thread-count independent") {
  MeasureOptions mo;
  mo.samples = 20000;
  auto tri = [](const Eigen::VectorXd& y) { return y(0) + y(1) < 1.0; };
  const RealWedge w = make_real_wedge(2, tri, Eigen::Vector2d(1, 1), mo);
  SliceScanOptions a;
  a.grid = 128;
  a.samples_per_slice = 256;
  a.threads = 1;
  SliceScanOptions b = a;
  b.threads = 4;
  const auto sa = select_slices(w, 0, 4, 0.3, 0.5, a);
  const auto sb = select_slices(w, 0, 4, 0.3, 0.5, b);
  CHECK(sa.nodes == sb.nodes);
  CHECK(sa.slice_measures == sb.slice_measures);
}
