#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wedge/common.hpp"
#include "wedge/continuation.hpp"
#include "wedge/polynomial.hpp"
#include "wedge/wedge_geometry.hpp"

namespace wedge {

enum class HypothesisProfile {
  SatisfiesCubes,
  OppositeOrientation,
  TouchesAtOrigin,
  OneVariableBarrier,
};

std::string to_string(HypothesisProfile profile);

using ZooParams = std::map<std::string, double>;

/// Test function with known singular set.
struct ZooFunction {
  std::string name;
  std::size_t nvars = 0;
  ZooParams params;
  ComplexFunction eval;
  /// ℓ∞ distance from 0 to the singular set; +inf for entire functions.
  double singular_distance = 0.0;
  HypothesisProfile profile = HypothesisProfile::SatisfiesCubes;
  /// Where eval is declared analytic.
  ComplexPredicate domain;
  /// Suggested real wedge: box (0, extent_i) and overlap half-width.
  Eigen::VectorXd wedge_extent;
  double overlap = 0.0;
  /// Explicit poles (onevar only).
  std::vector<double> poles;
};

/// Πⁿ ∪ −Πⁿ.
bool in_poly_half_planes(const Eigen::VectorXcd& z);

/// 1/(1 − t z w).
ZooFunction zoo_geom(double t);
/// √z·√w with principal square roots.
ZooFunction zoo_sqrt();
/// Σ_{k=1}^{64} 2^{-k} / (z − x_k).
ZooFunction zoo_onevar(std::uint64_t seed);

enum class ChebyshevForm { Homogenized, Standard };

/// Homogenized form (1 − x)/(1 − 2x + t²) = Σ_d t^d T_d(x/t); standard form
/// (1 − xt)/(1 − 2xt + t²) = Σ_d T_d(x) t^d.
ZooFunction zoo_chebyshev(ChebyshevForm form);
/// t^d T_d(x/t) in variables (x, t), exact.
MultiPoly<Rational> homogenized_chebyshev(unsigned d);
/// {0 < x < t < 1}, where every homogenized T_d is bounded by 1.
RealWedge chebyshev_wedge(const MeasureOptions& options = {});

struct SingularitySearch {
  bool found = false;
  Complex x{0.0, 0.0};
  Complex t{0.0, 0.0};
  double residual = 0.0;
  std::size_t starts = 0;
};

/// Newton iteration with minimal-norm steps on the denominator from random
/// starts in [−2,2]⁴; reports the first root with Im x > 0 and Im t > 0
/// inside the box.
SingularitySearch chebyshev_singularity_search(ChebyshevForm form,
                                               std::size_t starts,
                                               std::uint64_t seed);

ZooFunction zoo_exp(std::size_t nvars);
ZooFunction zoo_constant(Complex k, std::size_t nvars);
ZooFunction zoo_polynomial(const MultiPoly<Complex>& p);

/// Names accepted by make_zoo.
std::vector<std::string> zoo_names();

/// Factory by name; unknown parameters are rejected naming the key.
ZooFunction make_zoo(const std::string& name, const ZooParams& params = {});

/// Parameters make_zoo accepts for `name`, with defaults.
ZooParams zoo_default_params(const std::string& name);

struct CauchyRiemannReport {
  std::size_t points = 0;
  double max_defect = 0.0;
  bool passed = false;
};

/// Central-difference comparison of ∂f/∂x_j and −i ∂f/∂y_j at random points
/// of Πⁿ ∪ −Πⁿ (Re in [−1,1], |Im| in [0.05,1]) inside the declared domain.
CauchyRiemannReport cauchy_riemann_check(const ZooFunction& f,
                                         std::size_t points, std::uint64_t seed,
                                         double step = 1e-5,
                                         double tolerance = 1e-6);

/// Measure of the real overlap of the two opposite-orientation cubes
/// (−1, ε)ⁿ and (−ε, 1)ⁿ, i.e. (2ε)ⁿ; 0 when they touch only at 0.
double cube_overlap_measure(std::size_t nvars, double eps);

/// The suggested wedge for f, as a box wedge.
RealWedge zoo_wedge(const ZooFunction& f, const MeasureOptions& options = {});

}  // namespace wedge
