#include "wedge/interpolation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace wedge {

double default_separation(std::size_t nvars, double p, std::size_t degree) {
  const double slots = static_cast<double>(degree + 1);
  return nvars <= 1 ? p / slots : p / (2.0 * slots);
}

double default_slice_measure(std::size_t nvars, double p) {
  return nvars <= 1 ? 1.0 : 0.5 * p;
}

MeasureEstimate slice_measure(const RealWedge& set, std::size_t axis, double x,
                              std::size_t samples, std::uint64_t seed) {
  const std::size_t n = set.nvars;
  auto slice = [&](const Eigen::VectorXd& rest) {
    Eigen::VectorXd y(static_cast<Eigen::Index>(n));
    Eigen::Index r = 0;
    for (std::size_t i = 0; i < n; ++i) {
      y(static_cast<Eigen::Index>(i)) = i == axis ? x : rest(r++);
    }
    return set.contains_unit(y);
  };
  MeasureOptions opts;
  opts.samples = samples;
  opts.strata = 16;
  opts.seed = seed;
  opts.threads = 1;
  return estimate_measure(slice, n - 1, opts);
}

SliceSelection select_slices(const RealWedge& set, std::size_t axis,
                             std::size_t count, double target_measure, double p,
                             const SliceScanOptions& options) {
  if (axis >= set.nvars) throw std::invalid_argument("axis out of range");
  if (count == 0) throw std::invalid_argument("need at least one node");
  if (!(p > 0.0 && p <= 1.0)) throw InvalidMeasure("measure bound must be in (0,1]");
  SliceSelection sel;
  sel.axis = axis;
  sel.target_measure = target_measure;
  sel.separation = default_separation(set.nvars, p, count - 1);
  if (static_cast<double>(count - 1) * sel.separation > 1.0) {
    throw InsufficientMeasure("node budget exceeds the unit interval");
  }

  const std::size_t grid = std::max<std::size_t>(options.grid, 1);
  auto candidate = [grid](std::size_t k) {
    return (static_cast<double>(k) + 0.5) / static_cast<double>(grid);
  };
  // Each grid cell has its own substream, so the scan is thread-count
  // independent.
  const auto measures = parallel_map(
      grid,
      [&](std::size_t k) {
        return slice_measure(set, axis, candidate(k), options.samples_per_slice,
                             substream_seed(options.seed, k))
            .lower;
      },
      options.threads);

  double last = -1.0;
  for (std::size_t k = 0; k < grid && sel.nodes.size() < count; ++k) {
    const double x = candidate(k);
    if (!sel.nodes.empty() && x - last < sel.separation) continue;
    if (measures[k] < target_measure) continue;
    sel.nodes.push_back(x);
    sel.slice_measures.push_back(measures[k]);
    last = x;
  }
  if (sel.nodes.size() < count) {
    throw InsufficientMeasure("found " + std::to_string(sel.nodes.size()) + " of " +
                              std::to_string(count) +
                              " separated slices with measure >= " +
                              std::to_string(target_measure));
  }
  return sel;
}

std::vector<double> barycentric_weights(std::span<const double> nodes) {
  detail::check_distinct<double>(nodes);
  std::vector<double> w(nodes.size(), 1.0);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      if (j != i) w[i] /= nodes[i] - nodes[j];
    }
  }
  return w;
}

namespace {

void check_measure(double p) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw InvalidMeasure("measure bound " + std::to_string(p) +
                         " is outside (0, 1]");
  }
}

}  // namespace

std::vector<ChainLevel> constants_chain(std::size_t n, double p) {
  check_measure(p);
  std::vector<ChainLevel> levels;
  double level_p = p;
  for (std::size_t dim = n; dim >= 1; --dim) {
    ChainLevel lv;
    lv.dimension = dim;
    lv.p = level_p;
    lv.axis_measure = dim == 1 ? level_p : 0.5 * level_p;
    // Π_{j≠i} (1+|x_j|) ≤ 2^d and Σ_i binom(d,i) = 2^d give 4^d/(δ^d d!);
    // with δ = a/(d+1) and (d+1)^d/d! ≤ e^{d+1} this is ≤ e·(4e/a)^d.
    lv.level_K = std::numbers::e;
    lv.level_C = 4.0 * std::numbers::e / lv.axis_measure;
    levels.push_back(lv);
    level_p = default_slice_measure(dim, level_p);
  }
  return levels;
}

BoundConstants compute_constants(std::size_t n, double p) {
  BoundConstants bc;
  bc.n = n;
  bc.p = p;
  for (const auto& lv : constants_chain(n, p)) {
    bc.K *= lv.level_K;
    bc.C *= lv.level_C;
  }
  return bc;
}

double lagrange_level_factor(double axis_measure, std::size_t degree) {
  const double d = static_cast<double>(degree);
  const double delta = axis_measure / (d + 1.0);
  // 4^d / (δ^d d!) evaluated in log space.
  return std::exp(d * std::log(4.0) - d * std::log(delta) - std::lgamma(d + 1.0));
}

double chain_bound(std::size_t n, double p, std::size_t degree) {
  double total = 1.0;
  for (const auto& lv : constants_chain(n, p)) {
    total *= lagrange_level_factor(lv.axis_measure, degree);
  }
  return total;
}

StirlingCheck stirling_certificate(std::size_t d) {
  Rational e_lower(0);
  Rational term(1);
  for (unsigned k = 0; k <= 30; ++k) {
    if (k > 0) term /= k;
    e_lower += term;
  }
  BigInt dd = 1;
  BigInt fact = 1;
  for (std::size_t k = 1; k <= d; ++k) {
    dd *= d;
    fact *= k;
  }
  Rational lhs(dd, fact);
  Rational rhs(1);
  for (std::size_t k = 0; k < d; ++k) rhs *= e_lower;
  StirlingCheck check;
  check.d = d;
  check.ratio = static_cast<double>(lhs);
  check.holds = lhs <= rhs;
  return check;
}

}  // namespace wedge
