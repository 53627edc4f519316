#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "wedge/common.hpp"
#include "wedge/polynomial.hpp"
#include "wedge/sampling.hpp"
#include "wedge/wedge_geometry.hpp"

namespace wedge {

/// Interpolation nodes along one axis whose slices {x_i} × [0,1]^{n-1} ∩ S
/// are all measure-rich.
struct SliceSelection {
  std::size_t axis = 0;
  std::vector<double> nodes;
  double separation = 0.0;
  double target_measure = 0.0;
  /// Lower confidence bound on the (n-1)-measure of each node's slice.
  std::vector<double> slice_measures;
};

struct BoundConstants {
  std::size_t n = 0;
  double p = 1.0;
  double K = 1.0;
  double C = 1.0;
};

/// Node spacing that a set of measure ≥ p always affords for d+1 nodes.
/// For n ≥ 2 the rich slices (measure ≥ p/2) occupy axis measure ≥ p/2, so
/// δ = p / (2(d+1)); for n = 1 every point of S is a rich slice and
/// δ = p / (d+1).
double default_separation(std::size_t nvars, double p, std::size_t degree);

/// Slice-measure threshold used by the constants recursion at dimension n.
double default_slice_measure(std::size_t nvars, double p);

struct SliceScanOptions {
  /// Candidate node grid along the axis.
  std::size_t grid = 1024;
  std::size_t samples_per_slice = 4096;
  std::uint64_t seed = 0;
  std::size_t threads = 0;
};

/// Greedy leftmost choice of `count` nodes along `axis`, each slice of
/// estimated measure ≥ target_measure, consecutive nodes at least
/// default_separation(n, p, count-1) apart. Throws InsufficientMeasure when
/// the set cannot supply them.
SliceSelection select_slices(const RealWedge& set, std::size_t axis,
                             std::size_t count, double target_measure, double p,
                             const SliceScanOptions& options = {});

/// (n-1)-dimensional measure estimate of {y ∈ S : y_axis = x}.
MeasureEstimate slice_measure(const RealWedge& set, std::size_t axis, double x,
                              std::size_t samples, std::uint64_t seed);

/// w_i = 1 / Π_{j≠i} (x_i − x_j).
std::vector<double> barycentric_weights(std::span<const double> nodes);

/// Second-form barycentric evaluation of the interpolant through (nodes,
/// values) at x.
template <class Value>
Value barycentric_eval(std::span<const double> nodes,
                       std::span<const double> weights,
                       std::span<const Value> values, double x) {
  Value num(0);
  double den = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double diff = x - nodes[i];
    if (diff == 0.0) return values[i];
    const double t = weights[i] / diff;
    num += t * values[i];
    den += t;
  }
  return num / den;
}

namespace detail {

template <class Real>
void check_distinct(std::span<const Real> nodes) {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      if (nodes[i] == nodes[j]) throw DuplicateNodes("interpolation nodes repeat");
    }
  }
}

/// Monomial coefficients (ascending powers) of Π_{j≠i} (x − x_j).
template <class Real>
std::vector<Real> node_product(std::span<const Real> nodes, std::size_t skip) {
  std::vector<Real> c{Real(1)};
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    if (j == skip) continue;
    std::vector<Real> next(c.size() + 1, Real(0));
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= nodes[j] * c[k];
    }
    c = std::move(next);
  }
  return c;
}

/// Coefficients of every Lagrange basis polynomial, Π_{j≠i} (x − x_j)
/// divided by Π_{j≠i} (x_i − x_j).
template <class Real>
std::vector<std::vector<Real>> lagrange_basis(std::span<const Real> nodes) {
  std::vector<std::vector<Real>> basis;
  basis.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    auto c = node_product(nodes, i);
    Real denom(1);
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      if (j != i) denom *= nodes[i] - nodes[j];
    }
    for (auto& v : c) v /= denom;
    basis.push_back(std::move(c));
  }
  return basis;
}

}  // namespace detail

/// The unique polynomial of degree ≤ len(nodes)-1 in the variable inserted at
/// position `axis` that equals slice_polys[i] on {x_axis = nodes[i]}.
template <class Scalar>
MultiPoly<Scalar> lagrange_reconstruct(
    std::span<const MultiPoly<Scalar>> slice_polys,
    std::span<const typename ScalarTraits<Scalar>::Real> nodes,
    std::size_t axis = 0) {
  using Real = typename ScalarTraits<Scalar>::Real;
  if (slice_polys.size() != nodes.size() || nodes.empty()) {
    throw std::invalid_argument("need one slice polynomial per node");
  }
  detail::check_distinct<Real>(nodes);
  const std::size_t m = slice_polys.front().nvars();
  for (const auto& s : slice_polys) {
    if (s.nvars() != m) throw std::invalid_argument("slice variable counts differ");
  }
  if (axis > m) throw std::invalid_argument("axis out of range");
  if constexpr (std::is_same_v<Real, double>) {
    // Σ_i c_i ℓ_i accumulated in quad precision and rounded once. The ℓ_i
    // have coefficients far larger than the result, so summing in double
    // loses digits to cancellation.
    using Quad = boost::multiprecision::cpp_bin_float_quad;
    std::vector<Quad> qnodes(nodes.begin(), nodes.end());
    const auto basis = detail::lagrange_basis<Quad>(qnodes);
    std::map<Monomial, std::pair<Quad, Quad>, GradedLexLess> acc;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      for (const auto& [mono, c] : slice_polys[i].terms()) {
        const Quad re(c.real()), im(c.imag());
        for (std::size_t k = 0; k < basis[i].size(); ++k) {
          std::vector<unsigned> e = mono.exponents();
          e.insert(e.begin() + static_cast<std::ptrdiff_t>(axis),
                   static_cast<unsigned>(k));
          auto& slot = acc[Monomial(std::move(e))];
          slot.first += re * basis[i][k];
          slot.second += im * basis[i][k];
        }
      }
    }
    typename MultiPoly<Scalar>::Terms terms;
    for (auto& [mono, v] : acc) {
      terms.emplace(mono, Scalar(static_cast<double>(v.first),
                                 static_cast<double>(v.second)));
    }
    return MultiPoly<Scalar>(m + 1, std::move(terms));
  }
  const auto basis = detail::lagrange_basis<Real>(nodes);

  typename MultiPoly<Scalar>::Terms terms;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (const auto& [mono, c] : slice_polys[i].terms()) {
      for (std::size_t k = 0; k < basis[i].size(); ++k) {
        if (basis[i][k] == Real(0)) continue;
        std::vector<unsigned> e = mono.exponents();
        e.insert(e.begin() + static_cast<std::ptrdiff_t>(axis),
                 static_cast<unsigned>(k));
        Scalar v = c * Scalar(basis[i][k]);
        auto [it, inserted] = terms.emplace(Monomial(std::move(e)), v);
        if (!inserted) it->second += v;
      }
    }
  }
  return MultiPoly<Scalar>(m + 1, std::move(terms));
}

/// Σ_i b_i Π_{j≠i} (1 + |x_j|) / |x_i − x_j|, an upper bound on the ℓ¹ norm
/// of the Lagrange reconstruction from slices with ‖h_i‖ℓ¹ ≤ b_i.
template <class Real>
Real l1_bound_from_slices(std::span<const Real> slice_bounds,
                          std::span<const Real> nodes) {
  if (slice_bounds.size() != nodes.size()) {
    throw std::invalid_argument("one bound per node required");
  }
  detail::check_distinct<Real>(nodes);
  auto absval = [](const Real& v) { return v < Real(0) ? Real(-v) : v; };
  Real total(0);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    Real term = slice_bounds[i];
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      if (j == i) continue;
      term *= (Real(1) + absval(nodes[j])) / absval(nodes[i] - nodes[j]);
    }
    total += term;
  }
  return total;
}

/// Constants (K, C) with ‖h‖ℓ¹ ≤ K·C^d for every polynomial of degree d in n
/// variables bounded by 1 on a subset of [0,1]^n of measure ≥ p. Throws
/// InvalidMeasure unless 0 < p ≤ 1.
BoundConstants compute_constants(std::size_t n, double p);

/// One level of the dimension recursion.
struct ChainLevel {
  std::size_t dimension = 0;
  /// Measure hypothesis at this level.
  double p = 0.0;
  /// Axis measure available for nodes.
  double axis_measure = 0.0;
  /// Per-degree factor is bounded by level_K · level_C^d.
  double level_K = 1.0;
  double level_C = 1.0;
};

/// Levels n, n-1, ..., 1 of the recursion behind compute_constants.
std::vector<ChainLevel> constants_chain(std::size_t n, double p);

/// Σ_i Π_{j≠i} 2 / (|i−j| δ) with δ = axis_measure / (d+1): the exact
/// Lagrange factor of one level before Stirling's estimate.
double lagrange_level_factor(double axis_measure, std::size_t degree);

/// Product of the per-level exact factors, i.e. the chain bound on ‖h‖ℓ¹
/// that K·C^d dominates.
double chain_bound(std::size_t n, double p, std::size_t degree);

struct StirlingCheck {
  std::size_t d = 0;
  /// d^d / d! as a double, for display.
  double ratio = 0.0;
  bool holds = false;
};

/// Verifies d^d / d! ≤ e^d in exact rational arithmetic, using the rational
/// lower bound Σ_{k≤30} 1/k! for e.
StirlingCheck stirling_certificate(std::size_t d);

}  // namespace wedge
