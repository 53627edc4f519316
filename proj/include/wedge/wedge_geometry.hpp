#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wedge/common.hpp"
#include "wedge/sampling.hpp"

namespace wedge {

/// Starlike Borel subset of the positive orthant, normalized into the unit
/// box. The indicator is defined on unit coordinates y in [0,1]^n; the wedge
/// in problem coordinates is {scale ⊙ y}.
struct RealWedge {
  std::size_t nvars = 0;
  Indicator indicator;
  Eigen::VectorXd scale;
  double measure_estimate = 0.0;
  /// One-sided 99% lower bound on the unit-box measure.
  double measure_lower = 0.0;
  std::uint64_t seed = 0;

  /// Membership in unit coordinates; false outside [0,1]^n.
  bool contains_unit(const Eigen::VectorXd& y) const;
  /// Membership in problem coordinates.
  bool contains(const Eigen::VectorXd& x) const;
  Eigen::VectorXd to_problem(const Eigen::VectorXd& y) const {
    return scale.cwiseProduct(y);
  }
  /// s·W. Unit-box measure is unchanged; only the coordinate scale moves.
  RealWedge scaled(double s) const;
};

/// Build a wedge from an indicator on [0,1]^n and estimate its measure.
RealWedge make_real_wedge(std::size_t nvars, Indicator indicator,
                          Eigen::VectorXd scale, const MeasureOptions& options);

/// The open box (0, extents_1) x ... x (0, extents_n).
RealWedge box_wedge(const Eigen::VectorXd& extents,
                    const MeasureOptions& options);

struct WedgeValidation {
  double measure = 0.0;
  double measure_lower = 0.0;
  std::size_t starlike_checks = 0;
  std::size_t starlike_violations = 0;
  bool valid = false;
};

/// Positive-measure and starlike spot checks: `checks` sampled members x
/// with t uniform in (0,1) must keep t·x inside.
WedgeValidation validate_wedge(const RealWedge& wedge, std::size_t checks,
                               std::uint64_t seed);

/// Open convex cone given by a membership oracle, with distinguished
/// element `one`.
struct ConeSpec {
  std::size_t nvars = 0;
  Indicator membership;
  Eigen::VectorXd one;
  std::string kind;
};

/// Validates that `one` lies in the cone and spot-checks closure under
/// positive scaling. Throws std::invalid_argument otherwise.
ConeSpec make_cone(std::size_t nvars, Indicator membership,
                   Eigen::VectorXd one, std::string kind = "custom");

ConeSpec orthant_cone(std::size_t nvars);
ConeSpec orthant_cone(const Eigen::VectorXd& one);
/// {x : a_k · x > 0 for every row a_k}.
ConeSpec polyhedral_cone(const Eigen::MatrixXd& halfspaces,
                         const Eigen::VectorXd& one);
/// Positive definite m x m Hermitian matrices on m² real coordinates: the m
/// diagonal entries, then (Re, Im) of each entry above the diagonal in
/// row-major order. The distinguished element is the identity.
ConeSpec hermitian_cone(std::size_t m);
Eigen::MatrixXcd hermitian_from_coordinates(const Eigen::VectorXd& x,
                                            std::size_t m);

struct ConeNormOptions {
  double tolerance = 1e-9;
  double cap = 1e6;
};

/// ‖x‖_C = max(inf{λ ≥ 0 : λ1 − x ∈ C}, inf{λ ≥ 0 : λ1 + x ∈ C}) by
/// bisection. The returned value is the upper end of the final bracket, so
/// λ1 ± x ∈ C holds at it. Throws Unbounded past the cap.
double cone_norm(const ConeSpec& spec, const Eigen::VectorXd& x,
                 const ConeNormOptions& options = {});

/// max(‖Re z‖_C, ‖Im z‖_C).
double cone_norm_complex(const ConeSpec& spec, const Eigen::VectorXcd& z,
                         const ConeNormOptions& options = {});

struct ConeWedgeOptions {
  MeasureOptions measure;
  double measure_floor = 1e-4;
};

/// W = {x ∈ C : 1 − x ∈ C} restricted to the positive orthant. Unit
/// coordinates divide by the positive entries of 1 (entries ≤ 0 keep unit
/// extent). Throws DegenerateCone when the estimated measure is below the
/// floor.
RealWedge cone_wedge(const ConeSpec& spec, const ConeWedgeOptions& options = {});

template <class Real>
struct FourPartDecomposition {
  std::vector<Real> xplus;
  std::vector<Real> xminus;
  std::vector<Real> yplus;
  std::vector<Real> yminus;
  /// The cone norm of z used for the shift.
  Real norm;
};

/// x⁺ = Re z + ‖z‖1, x⁻ = ‖z‖1 − Re z, and likewise for Im z. The parts
/// recompose as z = (x⁺ − x⁻ + i y⁺ − i y⁻) / 2. Throws NormTooLarge when
/// ‖z‖_C ≥ 1/8.
FourPartDecomposition<double> four_part_decompose(
    const ConeSpec& spec, const Eigen::VectorXcd& z,
    const ConeNormOptions& options = {});

/// Same shift carried out in exact rational arithmetic on the binary values
/// of z and of the computed norm.
FourPartDecomposition<Rational> four_part_decompose_exact(
    const ConeSpec& spec, const Eigen::VectorXcd& z,
    const ConeNormOptions& options = {});

Eigen::VectorXcd recompose(const FourPartDecomposition<double>& parts);

/// Exact recomposition; returns (Re z, Im z).
std::pair<std::vector<Rational>, std::vector<Rational>> recompose(
    const FourPartDecomposition<Rational>& parts);

}  // namespace wedge
