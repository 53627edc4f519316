#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wedge/common.hpp"
#include "wedge/interpolation.hpp"
#include "wedge/polynomial.hpp"
#include "wedge/wedge_geometry.hpp"

namespace wedge {

using ComplexFunction = std::function<Complex(const Eigen::VectorXcd&)>;
using ComplexPredicate = std::function<bool(const Eigen::VectorXcd&)>;

/// A function known only on Πⁿ ∪ W ∪ B ∪ −W ∪ −Πⁿ. The module probes `eval`
/// exclusively at points where `domain_check` holds.
struct RestrictedOracle {
  std::size_t nvars = 0;
  ComplexFunction eval;
  ComplexPredicate domain_check;
};

/// Checked evaluation; throws DomainViolation outside the domain.
Complex probe(const RestrictedOracle& oracle, const Eigen::VectorXcd& z);

/// Lebesgue measure of the real neighborhood B = (−overlap, overlap)^n.
double overlap_measure(std::size_t nvars, double overlap);

/// Πⁿ ∪ W ∪ B ∪ −W ∪ −Πⁿ with B = (−overlap, overlap)^n and W in problem
/// coordinates. Throws OverlapMeasureZero when B is empty.
RestrictedOracle restrict_to_theorem_domain(ComplexFunction f, RealWedge wedge,
                                            double overlap);

struct RayOptions {
  /// Circle samples; 0 selects 4D + 4.
  std::size_t samples = 0;
  /// Relative mismatch allowed between the truncated series and the oracle
  /// at w = ±rho/2 and w = i·rho/2.
  double consistency_tolerance = 1e-6;
};

struct RayExpansion {
  /// c_d ≈ h_d(x), d = 0..D.
  std::vector<Complex> coefficients;
  double consistency_error = 0.0;
  /// False when g(w) = f(wx) is evidently not analytic on |w| ≤ rho.
  bool converged = false;
};

/// Taylor coefficients of g(w) = f(w x) from a DFT over |w| = rho.
RayExpansion ray_coefficients(const RestrictedOracle& oracle,
                              const Eigen::VectorXd& x, unsigned degree,
                              double rho, const RayOptions& options = {});

struct GermOptions {
  unsigned degree = 24;
  /// 0 selects twice the number of degree-D monomials.
  std::size_t rays = 0;
  double rho = 0.9;
  std::uint64_t seed = 0;
  std::size_t threads = 0;
  double condition_limit = 1e13;
  /// Degree d counts as noise when b_d ≤ K₀ · max(noise_floor,
  /// solve_noise · eps · cond_d). Noise degrees are left out
  /// of C; if every d ≥ 1 is noise the radius is infinite.
  double noise_floor = 1e-7;
  double solve_noise = 8.0;
  RayOptions ray;
};

struct GermEstimate {
  std::size_t nvars = 0;
  std::vector<HomogeneousPoly<Complex>> parts;
  std::vector<double> l1_bounds;
  /// Max scaled residual of each per-degree least-squares solve.
  std::vector<double> residuals;
  std::vector<double> conditions;
  double fitted_K = 1.0;
  double fitted_C = 0.0;
  /// exp(slope) of a log-linear fit of the bounds; diagnostic only.
  double regression_C = 0.0;
  double radius = std::numeric_limits<double>::infinity();
  bool infinite_radius = false;
  std::size_t rays_used = 0;
  std::size_t rays_rejected = 0;
};

/// Number of monomials of degree d in n variables.
std::size_t monomial_count(std::size_t nvars, unsigned degree);

/// Ray directions in problem coordinates: Halton points of the unit box
/// filtered by the wedge, pushed radially to (1 − 1e-6) of the wedge's
/// star-body boundary.
std::vector<Eigen::VectorXd> sample_ray_directions(const RealWedge& wedge,
                                                   std::size_t count,
                                                   std::uint64_t seed);

/// Recover h_0..h_D from ray expansions by per-degree least squares and fit
/// the exponential envelope K·C^d.
GermEstimate reconstruct_germ(const RestrictedOracle& oracle,
                              const RealWedge& wedge,
                              const GermOptions& options = {});

/// Envelope fit: K = max(1, b_0), C = max (b_d / K)^{1/d} over the degrees
/// d ≥ 1 above the noise level (see GermOptions).
void fit_envelope(GermEstimate& germ, double noise_floor, double solve_noise = 0.0);

/// Radius 1/C of the ℓ∞ ball (unit coordinates) on which the series is
/// certified, given constants from compute_constants(n, p/2).
double certified_radius(const BoundConstants& constants, double n0);

/// N₀·K·(C r)^{D+1} / (1 − C r) for r < 1/C, otherwise +inf.
double tail_bound(const BoundConstants& constants, double n0, unsigned degree,
                  double r);

struct SnSample {
  Eigen::VectorXd point;
  /// partial_sums[d] = Σ_{k≤d} |h_k(x)|; +inf when the ray diverged.
  std::vector<double> partial_sums;
};

struct SnOptions {
  /// Schedule N = 1, 2, 4, ..., 2^max_doublings.
  unsigned max_doublings = 12;
  /// Relative slack on the comparison Σ ≤ N.
  double slack = 1e-9;
};

struct SnSelection {
  double n0 = 0.0;
  double fraction = 0.0;
};

/// Smallest N₀ on the doubling schedule with more than half the samples
/// satisfying Σ_{d≤D} |h_d(x)| ≤ N₀. Throws NoFiniteN0 otherwise.
SnSelection empirical_sn_selection(std::span<const SnSample> samples,
                                   const SnOptions& options = {});

struct SnSampleOptions {
  std::size_t samples = 400;
  unsigned degree = 24;
  double rho = 0.9;
  std::uint64_t seed = 0;
  std::size_t threads = 0;
  RayOptions ray;
};

/// Uniform points of W with partial sums from their ray expansions.
std::vector<SnSample> collect_sn_samples(const RestrictedOracle& oracle,
                                         const RealWedge& wedge,
                                         const SnSampleOptions& options = {});

struct RadiusReport {
  GermEstimate germ;
  SnSelection sn;
  BoundConstants constants;
  /// 1/C in unit coordinates.
  double certified_radius_unit = 0.0;
  /// min_i scale_i / C in problem coordinates.
  double certified_radius = 0.0;
  /// Tail bound at half the certified unit radius.
  double tail_bound_half_radius = 0.0;
};

struct RadiusOptions {
  GermOptions germ;
  SnSampleOptions sn_samples;
  SnOptions sn;
};

/// Germ reconstruction, S_N selection, and certification in one pass.
RadiusReport estimate_radius(const RestrictedOracle& oracle,
                             const RealWedge& wedge,
                             const RadiusOptions& options = {});

struct SweepPoint {
  double scale = 1.0;
  /// "ok", or the hypothesis failure that stopped this scale.
  std::string status;
  std::string message;
  double n0 = 0.0;
  double fraction = 0.0;
  /// Certified radius in problem coordinates; grows with the scale once the
  /// hypotheses hold.
  double radius = 0.0;
  double fitted_radius = 0.0;
  double fitted_C = 0.0;
  bool infinite_fitted_radius = false;
};

/// Repeat estimate_radius on s·W (with B scaled alike) for every s.
std::vector<SweepPoint> rescaling_sweep(const ComplexFunction& f,
                                        const RealWedge& wedge, double overlap,
                                        std::span<const double> scales,
                                        const RadiusOptions& options = {});

}  // namespace wedge
