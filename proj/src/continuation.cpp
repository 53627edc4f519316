#include "wedge/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <utility>

#include <Eigen/SVD>

#include "wedge/sampling.hpp"

namespace wedge {

Complex probe(const RestrictedOracle& oracle, const Eigen::VectorXcd& z) {
  if (!oracle.domain_check(z)) {
    throw DomainViolation("probe point lies outside the restricted domain");
  }
  return oracle.eval(z);
}

double overlap_measure(std::size_t nvars, double overlap) {
  if (!(overlap > 0.0)) return 0.0;
  return std::pow(2.0 * overlap, static_cast<double>(nvars));
}

RestrictedOracle restrict_to_theorem_domain(ComplexFunction f, RealWedge wedge,
                                            double overlap) {
  const std::size_t n = wedge.nvars;
  if (overlap_measure(n, overlap) <= 0.0) {
    throw OverlapMeasureZero("overlap measure 0: the real neighborhood B of the "
                             "origin is empty");
  }
  auto domain = [wedge = std::move(wedge), overlap,
                 n](const Eigen::VectorXcd& z) {
    if (static_cast<std::size_t>(z.size()) != n) return false;
    const Eigen::ArrayXd im = z.imag().array();
    if ((im > 0.0).all() || (im < 0.0).all()) return true;
    if ((im != 0.0).any()) return false;
    const Eigen::VectorXd x = z.real();
    if (x.cwiseAbs().maxCoeff() < overlap) return true;
    return wedge.contains(x) || wedge.contains(-x);
  };
  return RestrictedOracle{n, std::move(f), std::move(domain)};
}

RayExpansion ray_coefficients(const RestrictedOracle& oracle,
                              const Eigen::VectorXd& x, unsigned degree,
                              double rho, const RayOptions& options) {
  if (!(rho > 0.0 && rho < 1.0)) {
    throw std::invalid_argument("rho must lie in (0, 1)");
  }
  if (static_cast<std::size_t>(x.size()) != oracle.nvars) {
    throw std::invalid_argument("ray direction has wrong dimension");
  }
  const std::size_t m =
      options.samples == 0 ? 4 * static_cast<std::size_t>(degree) + 4 : options.samples;
  if (m < static_cast<std::size_t>(degree) + 1) {
    throw std::invalid_argument("too few circle samples for the degree");
  }
  // Roots of unity; the real axis points are set exactly so that they stay
  // on ±W rather than drifting into a half plane.
  std::vector<Complex> roots(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double theta =
        2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m);
    roots[k] = Complex(std::cos(theta), std::sin(theta));
  }
  roots[0] = Complex(1.0, 0.0);
  if (m % 2 == 0) roots[m / 2] = Complex(-1.0, 0.0);

  const Eigen::VectorXcd xc = x.cast<Complex>();
  std::vector<Complex> g(m);
  for (std::size_t k = 0; k < m; ++k) g[k] = probe(oracle, (rho * roots[k]) * xc);

  RayExpansion out;
  out.coefficients.resize(degree + 1);
  double rho_pow = 1.0;
  for (unsigned d = 0; d <= degree; ++d) {
    Complex acc(0.0, 0.0);
    for (std::size_t k = 0; k < m; ++k) {
      acc += g[k] * std::conj(roots[(static_cast<std::size_t>(d) * k) % m]);
    }
    out.coefficients[d] = acc / (static_cast<double>(m) * rho_pow);
    rho_pow *= rho;
  }

  double worst = 0.0;
  for (const Complex w : {Complex(0.5 * rho, 0.0), Complex(-0.5 * rho, 0.0),
                          Complex(0.0, 0.5 * rho)}) {
    const Complex actual = probe(oracle, w * xc);
    Complex series(0.0, 0.0);
    Complex wp(1.0, 0.0);
    for (unsigned d = 0; d <= degree; ++d) {
      series += out.coefficients[d] * wp;
      wp *= w;
    }
    const double err = std::abs(series - actual) / std::max(1.0, std::abs(actual));
    worst = std::max(worst, std::isfinite(err) ? err : HUGE_VAL);
  }
  out.consistency_error = worst;
  out.converged = worst <= options.consistency_tolerance;
  return out;
}

std::size_t monomial_count(std::size_t nvars, unsigned degree) {
  if (nvars == 0) return degree == 0 ? 1 : 0;
  // binom(degree + nvars - 1, nvars - 1)
  std::size_t result = 1;
  for (std::size_t k = 1; k < nvars; ++k) {
    result = result * (degree + k) / k;
  }
  return result;
}

std::vector<Eigen::VectorXd> sample_ray_directions(const RealWedge& wedge,
                                                   std::size_t count,
                                                   std::uint64_t seed) {
  std::vector<Eigen::VectorXd> out;
  out.reserve(count);
  const std::uint64_t start = 1 + splitmix64(seed) % 1000003ULL;
  const std::uint64_t max_index = start + 1000 * std::max<std::size_t>(count, 1);
  for (std::uint64_t idx = start; idx < max_index && out.size() < count; ++idx) {
    const Eigen::VectorXd u = halton_point(idx, wedge.nvars);
    if (!wedge.contains_unit(u)) continue;
    const double box_limit = 1.0 / u.maxCoeff();
    double lo = 1.0;
    double hi = box_limit;
    if (wedge.contains_unit(u * (hi * (1.0 - 1e-12)))) {
      lo = hi;
    } else {
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (wedge.contains_unit(u * mid)) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
    }
    out.push_back(wedge.to_problem(u * ((1.0 - 1e-6) * lo)));
  }
  if (out.size() < count) {
    throw IllConditioned("wedge yields too few ray directions; is its interior empty?");
  }
  return out;
}

void fit_envelope(GermEstimate& germ, double noise_floor, double solve_noise) {
  const auto& b = germ.l1_bounds;
  const double k0 = std::max(1.0, b.empty() ? 0.0 : b[0]);
  double c = 0.0;
  bool all_noise = true;
  for (std::size_t d = 1; d < b.size(); ++d) {
    double floor = noise_floor;
    if (d < germ.conditions.size()) {
      floor = std::max(floor, solve_noise * std::numeric_limits<double>::epsilon() *
                                  germ.conditions[d]);
    }
    if (b[d] <= floor * k0) continue;
    all_noise = false;
    c = std::max(c, std::pow(b[d] / k0, 1.0 / static_cast<double>(d)));
  }
  germ.fitted_K = k0;
  germ.fitted_C = c;
  germ.infinite_radius = all_noise;
  germ.radius = (all_noise || c == 0.0) ? std::numeric_limits<double>::infinity()
                                        : 1.0 / c;

  // log b_d ≈ a + d log C_reg over d ≥ 1.
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t cnt = 0;
  for (std::size_t d = 1; d < b.size(); ++d) {
    const double xd = static_cast<double>(d);
    const double yd = std::log(std::max(b[d], 1e-300));
    sx += xd;
    sy += yd;
    sxx += xd * xd;
    sxy += xd * yd;
    ++cnt;
  }
  if (cnt >= 2) {
    const double nn = static_cast<double>(cnt);
    const double slope = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
    germ.regression_C = std::exp(slope);
  }
}

GermEstimate reconstruct_germ(const RestrictedOracle& oracle,
                              const RealWedge& wedge,
                              const GermOptions& options) {
  const std::size_t n = wedge.nvars;
  if (oracle.nvars != n) throw std::invalid_argument("oracle and wedge dimensions differ");
  const unsigned top = options.degree;
  const std::size_t needed = monomial_count(n, top);
  const std::size_t rays = options.rays == 0 ? 2 * needed : options.rays;
  if (rays < needed) {
    throw std::invalid_argument("need at least " + std::to_string(needed) +
                                " rays for degree " + std::to_string(top));
  }

  const auto directions = sample_ray_directions(wedge, rays, options.seed);
  const auto expansions = parallel_map(
      directions.size(),
      [&](std::size_t r) {
        return ray_coefficients(oracle, directions[r], top, options.rho, options.ray);
      },
      options.threads);

  std::vector<std::size_t> valid;
  for (std::size_t r = 0; r < expansions.size(); ++r) {
    if (expansions[r].converged) valid.push_back(r);
  }
  GermEstimate germ;
  germ.nvars = n;
  germ.rays_used = valid.size();
  germ.rays_rejected = expansions.size() - valid.size();
  if (valid.size() < needed) {
    throw DivergentRays(std::to_string(germ.rays_rejected) + " of " +
                        std::to_string(expansions.size()) +
                        " rays are not analytic on the sampling disk");
  }

  for (unsigned d = 0; d <= top; ++d) {
    const auto monos = monomials_of_degree(n, d);
    const auto rows = static_cast<Eigen::Index>(valid.size());
    const auto cols = static_cast<Eigen::Index>(monos.size());
    Eigen::MatrixXd a(rows, cols);
    Eigen::MatrixXd rhs(rows, 2);
    for (Eigen::Index r = 0; r < rows; ++r) {
      const auto& x = directions[valid[static_cast<std::size_t>(r)]];
      const double len = x.cwiseAbs().maxCoeff();
      const Eigen::VectorXd v = x / len;
      const double row_scale = std::pow(len, -static_cast<double>(d));
      for (Eigen::Index k = 0; k < cols; ++k) {
        const auto& mono = monos[static_cast<std::size_t>(k)];
        double val = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
          val *= std::pow(v(static_cast<Eigen::Index>(i)), static_cast<double>(mono[i]));
        }
        a(r, k) = val;
      }
      const Complex c = expansions[valid[static_cast<std::size_t>(r)]].coefficients[d];
      rhs(r, 0) = c.real() * row_scale;
      rhs(r, 1) = c.imag() * row_scale;
    }
    const Eigen::VectorXd col_norms = a.colwise().norm().transpose();
    Eigen::MatrixXd scaled = a * col_norms.cwiseInverse().asDiagonal();
    Eigen::BDCSVD<Eigen::MatrixXd> svd(scaled, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double cond = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1)
                                                : std::numeric_limits<double>::infinity();
    if (!(cond <= options.condition_limit)) {
      throw IllConditioned("degree " + std::to_string(d) +
                           " direction matrix has condition number " +
                           std::to_string(cond));
    }
    Eigen::MatrixXd sol = svd.solve(rhs);
    sol = col_norms.cwiseInverse().asDiagonal() * sol;
    const Eigen::MatrixXd resid = a * sol - rhs;
    double rhs_max = 1.0;
    double res_max = 0.0;
    for (Eigen::Index r = 0; r < rows; ++r) {
      rhs_max = std::max(rhs_max, std::hypot(rhs(r, 0), rhs(r, 1)));
      res_max = std::max(res_max, std::hypot(resid(r, 0), resid(r, 1)));
    }

    MultiPoly<Complex>::Terms terms;
    for (Eigen::Index k = 0; k < cols; ++k) {
      terms.emplace(monos[static_cast<std::size_t>(k)], Complex(sol(k, 0), sol(k, 1)));
    }
    MultiPoly<Complex> poly(n, std::move(terms));
    germ.l1_bounds.push_back(l1_norm(poly));
    germ.parts.emplace_back(std::move(poly), d);
    germ.residuals.push_back(res_max / rhs_max);
    germ.conditions.push_back(cond);
  }
  fit_envelope(germ, options.noise_floor, options.solve_noise);
  return germ;
}

double certified_radius(const BoundConstants& constants, double /*n0*/) {
  return 1.0 / constants.C;
}

double tail_bound(const BoundConstants& constants, double n0, unsigned degree,
                  double r) {
  const double q = constants.C * r;
  if (!(q < 1.0)) return std::numeric_limits<double>::infinity();
  return n0 * constants.K * std::pow(q, static_cast<double>(degree) + 1.0) / (1.0 - q);
}

SnSelection empirical_sn_selection(std::span<const SnSample> samples,
                                   const SnOptions& options) {
  if (samples.empty()) throw std::invalid_argument("no S_N samples");
  const double total = static_cast<double>(samples.size());
  double best_fraction = 0.0;
  double n_value = 1.0;
  for (unsigned k = 0; k <= options.max_doublings; ++k, n_value *= 2.0) {
    std::size_t inside = 0;
    for (const auto& s : samples) {
      const double sum = s.partial_sums.empty() ? 0.0 : s.partial_sums.back();
      if (sum <= n_value * (1.0 + options.slack)) ++inside;
    }
    const double fraction = static_cast<double>(inside) / total;
    best_fraction = fraction;
    if (fraction > 0.5) return {n_value, fraction};
  }
  char msg[160];
  std::snprintf(msg, sizeof msg, "largest N = %.0f covers only %.4f of the wedge samples",
                n_value / 2.0, best_fraction);
  throw NoFiniteN0(msg);
}

std::vector<SnSample> collect_sn_samples(const RestrictedOracle& oracle,
                                         const RealWedge& wedge,
                                         const SnSampleOptions& options) {
  const auto n = static_cast<Eigen::Index>(wedge.nvars);
  return parallel_map(
      options.samples,
      [&](std::size_t i) {
        Rng rng = make_stream(options.seed, 0x5a11ULL + i);
        Eigen::VectorXd y(n);
        bool found = false;
        for (int attempt = 0; attempt < 100000 && !found; ++attempt) {
          for (Eigen::Index k = 0; k < n; ++k) y(k) = uniform01(rng);
          found = wedge.contains_unit(y);
        }
        if (!found) throw InsufficientMeasure("could not sample a point of the wedge");
        SnSample s;
        s.point = wedge.to_problem(y);
        const auto ray = ray_coefficients(oracle, s.point, options.degree,
                                          options.rho, options.ray);
        double acc = 0.0;
        for (const auto& c : ray.coefficients) {
          acc = ray.converged ? acc + std::abs(c) : HUGE_VAL;
          s.partial_sums.push_back(acc);
        }
        return s;
      },
      options.threads);
}

RadiusReport estimate_radius(const RestrictedOracle& oracle,
                             const RealWedge& wedge,
                             const RadiusOptions& options) {
  RadiusReport report;
  const auto samples = collect_sn_samples(oracle, wedge, options.sn_samples);
  report.sn = empirical_sn_selection(samples, options.sn);
  report.germ = reconstruct_germ(oracle, wedge, options.germ);

  const double p = std::min(1.0, wedge.measure_lower);
  if (!(p > 0.0)) throw InsufficientMeasure("wedge measure lower bound is 0");
  report.constants = compute_constants(wedge.nvars, 0.5 * p);
  report.certified_radius_unit = certified_radius(report.constants, report.sn.n0);
  report.certified_radius =
      wedge.scale.minCoeff() * report.certified_radius_unit;
  report.tail_bound_half_radius =
      tail_bound(report.constants, report.sn.n0, options.germ.degree,
                 0.5 * report.certified_radius_unit);
  return report;
}

namespace {

std::string failure_kind(const HypothesisFailure& e) {
  if (dynamic_cast<const NoFiniteN0*>(&e)) return "NoFiniteN0";
  if (dynamic_cast<const DivergentRays*>(&e)) return "DivergentRays";
  if (dynamic_cast<const InsufficientMeasure*>(&e)) return "InsufficientMeasure";
  if (dynamic_cast<const OverlapMeasureZero*>(&e)) return "OverlapMeasureZero";
  if (dynamic_cast<const DegenerateCone*>(&e)) return "DegenerateCone";
  return "HypothesisFailure";
}

}  // namespace

std::vector<SweepPoint> rescaling_sweep(const ComplexFunction& f,
                                        const RealWedge& wedge, double overlap,
                                        std::span<const double> scales,
                                        const RadiusOptions& options) {
  std::vector<SweepPoint> out;
  for (const double s : scales) {
    SweepPoint pt;
    pt.scale = s;
    try {
      const RealWedge scaled = wedge.scaled(s);
      const auto oracle = restrict_to_theorem_domain(f, scaled, overlap * s);
      const auto report = estimate_radius(oracle, scaled, options);
      pt.status = "ok";
      pt.n0 = report.sn.n0;
      pt.fraction = report.sn.fraction;
      pt.radius = report.certified_radius;
      pt.fitted_radius = report.germ.radius;
      pt.fitted_C = report.germ.fitted_C;
      pt.infinite_fitted_radius = report.germ.infinite_radius;
    } catch (const HypothesisFailure& e) {
      pt.status = failure_kind(e);
      pt.message = e.what();
    }
    out.push_back(std::move(pt));
  }
  return out;
}

}  // namespace wedge
