#include "wedge/zoo.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "wedge/sampling.hpp"

namespace wedge {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Eigen::VectorXd filled(std::size_t n, double v) {
  return Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n), v);
}

}  // namespace

std::string to_string(HypothesisProfile profile) {
  switch (profile) {
    case HypothesisProfile::SatisfiesCubes: return "SatisfiesCubes";
    case HypothesisProfile::OppositeOrientation: return "OppositeOrientation";
    case HypothesisProfile::TouchesAtOrigin: return "TouchesAtOrigin";
    case HypothesisProfile::OneVariableBarrier: return "OneVariableBarrier";
  }
  return "unknown";
}

bool in_poly_half_planes(const Eigen::VectorXcd& z) {
  const Eigen::ArrayXd im = z.imag().array();
  return (im > 0.0).all() || (im < 0.0).all();
}

ZooFunction zoo_geom(double t) {
  if (!(t > 0.0)) throw std::invalid_argument("geom needs t > 0");
  ZooFunction f;
  f.name = "geom";
  f.nvars = 2;
  f.params = {{"t", t}};
  f.eval = [t](const Eigen::VectorXcd& z) { return 1.0 / (1.0 - t * z(0) * z(1)); };
  f.singular_distance = 1.0 / std::sqrt(t);
  f.profile = HypothesisProfile::OppositeOrientation;
  f.domain = in_poly_half_planes;
  f.wedge_extent = filled(2, 0.8 / std::sqrt(t));
  f.overlap = 0.5 / std::sqrt(t);
  return f;
}

ZooFunction zoo_sqrt() {
  ZooFunction f;
  f.name = "sqrt";
  f.nvars = 2;
  // Each principal root is analytic off (−∞, 0], so the product is analytic
  // on Π² and −Π² and continuous on the open positive and negative quadrants.
  f.eval = [](const Eigen::VectorXcd& z) { return std::sqrt(z(0)) * std::sqrt(z(1)); };
  f.singular_distance = 0.0;
  f.profile = HypothesisProfile::TouchesAtOrigin;
  f.domain = in_poly_half_planes;
  f.wedge_extent = filled(2, 1.0);
  f.overlap = 0.0;
  return f;
}

ZooFunction zoo_onevar(std::uint64_t seed) {
  ZooFunction f;
  f.name = "onevar";
  f.nvars = 1;
  f.params = {{"seed", static_cast<double>(seed)}};
  std::vector<double> poles;
  std::vector<double> weights;
  double w = 1.0;
  for (std::size_t k = 1; k <= 64; ++k) {
    w *= 0.5;
    double x;
    if (k == 1) {
      x = 1.0 + 1.0 / 128.0;
    } else if (k == 2) {
      x = -(1.0 + 1.0 / 128.0);
    } else {
      Rng rng = make_stream(seed, k);
      const double mag = uniform(rng, 1.0, 3.0);
      x = k % 2 == 1 ? mag : -mag;
    }
    poles.push_back(x);
    weights.push_back(w);
  }
  double nearest = kInf;
  for (double x : poles) nearest = std::min(nearest, std::abs(x));
  f.eval = [poles, weights](const Eigen::VectorXcd& z) {
    Complex acc(0.0, 0.0);
    for (std::size_t k = 0; k < poles.size(); ++k) acc += weights[k] / (z(0) - poles[k]);
    return acc;
  };
  f.singular_distance = nearest;
  f.profile = HypothesisProfile::OneVariableBarrier;
  f.domain = in_poly_half_planes;
  f.wedge_extent = filled(1, 0.9);
  f.overlap = 0.5;
  f.poles = std::move(poles);
  return f;
}

namespace {

Complex chebyshev_denominator(ChebyshevForm form, Complex x, Complex t) {
  return form == ChebyshevForm::Homogenized ? 1.0 - 2.0 * x + t * t
                                      : 1.0 - 2.0 * x * t + t * t;
}

}  // namespace

ZooFunction zoo_chebyshev(ChebyshevForm form) {
  ZooFunction f;
  f.name = "chebyshev";
  f.nvars = 2;
  f.params = {{"standard", form == ChebyshevForm::Standard ? 1.0 : 0.0}};
  f.eval = [form](const Eigen::VectorXcd& z) {
    const Complex x = z(0);
    const Complex t = z(1);
    const Complex num = form == ChebyshevForm::Homogenized ? 1.0 - x : 1.0 - x * t;
    return num / chebyshev_denominator(form, x, t);
  };
  // Homogenized form: min over |t| = r of |1 + t²| is 1 − r², equal to 2r at
  // r = √2 − 1. Standard form: |1 + t²| ≤ 2r² first holds at r = 1/√3.
  f.singular_distance =
      form == ChebyshevForm::Homogenized ? std::sqrt(2.0) - 1.0 : 1.0 / std::sqrt(3.0);
  f.profile = HypothesisProfile::SatisfiesCubes;
  f.domain = [form](const Eigen::VectorXcd& z) {
    return in_poly_half_planes(z) &&
           std::abs(chebyshev_denominator(form, z(0), z(1))) > 0.05;
  };
  f.wedge_extent = filled(2, 0.3);
  f.overlap = 0.2;
  return f;
}

MultiPoly<Rational> homogenized_chebyshev(unsigned d) {
  // Ascending coefficients of T_k by T_{k+1} = 2u T_k − T_{k−1}.
  std::vector<BigInt> prev{1};
  std::vector<BigInt> cur{0, 1};
  if (d == 0) {
    cur = prev;
  } else {
    for (unsigned k = 1; k < d; ++k) {
      std::vector<BigInt> next(cur.size() + 1, 0);
      for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] += 2 * cur[i];
      for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= prev[i];
      prev = std::move(cur);
      cur = std::move(next);
    }
  }
  MultiPoly<Rational>::Terms terms;
  for (unsigned k = 0; k < cur.size(); ++k) {
    if (cur[k] == 0) continue;
    terms.emplace(Monomial({k, d - k}), Rational(cur[k]));
  }
  return MultiPoly<Rational>(2, std::move(terms));
}

RealWedge chebyshev_wedge(const MeasureOptions& options) {
  auto inside = [](const Eigen::VectorXd& y) {
    return y(0) > 0.0 && y(0) < y(1) && y(1) < 1.0;
  };
  return make_real_wedge(2, inside, Eigen::VectorXd::Ones(2), options);
}

SingularitySearch chebyshev_singularity_search(ChebyshevForm form,
                                               std::size_t starts,
                                               std::uint64_t seed) {
  SingularitySearch out;
  for (std::size_t s = 0; s < starts; ++s) {
    Rng rng = make_stream(seed, s);
    Complex x(uniform(rng, -2.0, 2.0), uniform(rng, -2.0, 2.0));
    Complex t(uniform(rng, -2.0, 2.0), uniform(rng, -2.0, 2.0));
    ++out.starts;
    for (int it = 0; it < 60; ++it) {
      const Complex q = chebyshev_denominator(form, x, t);
      if (std::abs(q) < 1e-14) break;
      const Complex qx = form == ChebyshevForm::Homogenized ? Complex(-2.0) : -2.0 * t;
      const Complex qt = form == ChebyshevForm::Homogenized ? 2.0 * t : 2.0 * t - 2.0 * x;
      const double g2 = std::norm(qx) + std::norm(qt);
      if (g2 == 0.0) break;
      // Minimal-norm solution of qx·dx + qt·dt = −q.
      x -= q * std::conj(qx) / g2;
      t -= q * std::conj(qt) / g2;
    }
    const double res = std::abs(chebyshev_denominator(form, x, t));
    const bool in_box = std::abs(x.real()) <= 2.0 && std::abs(x.imag()) <= 2.0 &&
                        std::abs(t.real()) <= 2.0 && std::abs(t.imag()) <= 2.0;
    if (res < 1e-12 && in_box && x.imag() > 0.0 && t.imag() > 0.0) {
      out.found = true;
      out.x = x;
      out.t = t;
      out.residual = res;
      return out;
    }
  }
  return out;
}

ZooFunction zoo_exp(std::size_t nvars) {
  if (nvars == 0) throw std::invalid_argument("exp needs n >= 1");
  ZooFunction f;
  f.name = "exp";
  f.nvars = nvars;
  f.params = {{"n", static_cast<double>(nvars)}};
  f.eval = [](const Eigen::VectorXcd& z) { return std::exp(z.sum()); };
  f.singular_distance = kInf;
  f.profile = HypothesisProfile::SatisfiesCubes;
  f.domain = [](const Eigen::VectorXcd&) { return true; };
  f.wedge_extent = filled(nvars, 1.0);
  f.overlap = 0.5;
  return f;
}

ZooFunction zoo_constant(Complex k, std::size_t nvars) {
  if (nvars == 0) throw std::invalid_argument("constant needs n >= 1");
  ZooFunction f;
  f.name = "constant";
  f.nvars = nvars;
  f.params = {{"k", k.real()}, {"n", static_cast<double>(nvars)}};
  f.eval = [k](const Eigen::VectorXcd&) { return k; };
  f.singular_distance = kInf;
  f.profile = HypothesisProfile::SatisfiesCubes;
  f.domain = [](const Eigen::VectorXcd&) { return true; };
  f.wedge_extent = filled(nvars, 1.0);
  f.overlap = 0.5;
  return f;
}

ZooFunction zoo_polynomial(const MultiPoly<Complex>& p) {
  if (p.nvars() == 0) throw std::invalid_argument("polynomial needs n >= 1");
  ZooFunction f;
  f.name = "serialized-poly";
  f.nvars = p.nvars();
  f.eval = [p](const Eigen::VectorXcd& z) { return eval(p, z); };
  f.singular_distance = kInf;
  f.profile = HypothesisProfile::SatisfiesCubes;
  f.domain = [](const Eigen::VectorXcd&) { return true; };
  f.wedge_extent = filled(p.nvars(), 1.0);
  f.overlap = 0.5;
  return f;
}

std::vector<std::string> zoo_names() {
  return {"chebyshev", "constant", "exp", "geom", "onevar", "sqrt"};
}

ZooParams zoo_default_params(const std::string& name) {
  if (name == "geom") return {{"t", 4.0}};
  if (name == "sqrt") return {};
  if (name == "onevar") return {{"seed", 0.0}};
  if (name == "chebyshev") return {{"standard", 0.0}};
  if (name == "exp") return {{"n", 2.0}};
  if (name == "constant") return {{"k", 1.0}, {"n", 2.0}};
  throw std::invalid_argument("unknown zoo function '" + name + "'");
}

namespace {

std::size_t count_param(const ZooParams& p, const std::string& key) {
  const double v = p.at(key);
  if (!(v >= 1.0) || v != std::floor(v) || v > 16.0) {
    throw std::invalid_argument("parameter '" + key + "' must be an integer in [1, 16]");
  }
  return static_cast<std::size_t>(v);
}

}  // namespace

ZooFunction make_zoo(const std::string& name, const ZooParams& params) {
  ZooParams p = zoo_default_params(name);
  for (const auto& [key, value] : params) {
    if (!p.contains(key)) {
      throw std::invalid_argument("unknown parameter '" + key + "' for zoo function '" +
                                  name + "'");
    }
    p[key] = value;
  }
  if (name == "geom") return zoo_geom(p.at("t"));
  if (name == "sqrt") return zoo_sqrt();
  if (name == "onevar") {
    const double s = p.at("seed");
    if (!(s >= 0.0) || s != std::floor(s)) {
      throw std::invalid_argument("parameter 'seed' must be a non-negative integer");
    }
    return zoo_onevar(static_cast<std::uint64_t>(s));
  }
  if (name == "chebyshev") {
    return zoo_chebyshev(p.at("standard") != 0.0 ? ChebyshevForm::Standard
                                                 : ChebyshevForm::Homogenized);
  }
  if (name == "exp") return zoo_exp(count_param(p, "n"));
  return zoo_constant(Complex(p.at("k"), 0.0), count_param(p, "n"));
}

CauchyRiemannReport cauchy_riemann_check(const ZooFunction& f,
                                         std::size_t points, std::uint64_t seed,
                                         double step, double tolerance) {
  CauchyRiemannReport report;
  const auto n = static_cast<Eigen::Index>(f.nvars);
  const std::size_t max_attempts = 100 * points + 100;
  for (std::size_t a = 0; a < max_attempts && report.points < points; ++a) {
    Rng rng = make_stream(seed, a);
    const double sign = uniform01(rng) < 0.5 ? 1.0 : -1.0;
    Eigen::VectorXcd z(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      z(i) = Complex(uniform(rng, -1.0, 1.0), sign * uniform(rng, 0.05, 1.0));
    }
    if (!f.domain(z)) continue;
    ++report.points;
    const double scale = std::max(1.0, std::abs(f.eval(z)));
    for (Eigen::Index j = 0; j < n; ++j) {
      Eigen::VectorXcd zp = z, zm = z, zq = z, zr = z;
      zp(j) += step;
      zm(j) -= step;
      zq(j) += Complex(0.0, step);
      zr(j) -= Complex(0.0, step);
      const Complex dx = (f.eval(zp) - f.eval(zm)) / (2.0 * step);
      const Complex dy = (f.eval(zq) - f.eval(zr)) / Complex(0.0, 2.0 * step);
      const double defect = std::abs(dx - dy) / std::max({scale, std::abs(dx)});
      report.max_defect = std::max(report.max_defect, defect);
    }
  }
  report.passed = report.points == points && report.max_defect <= tolerance;
  return report;
}

double cube_overlap_measure(std::size_t nvars, double eps) {
  return overlap_measure(nvars, eps);
}

RealWedge zoo_wedge(const ZooFunction& f, const MeasureOptions& options) {
  return box_wedge(f.wedge_extent, options);
}

}  // namespace wedge
