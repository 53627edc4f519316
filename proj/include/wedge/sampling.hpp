#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <random>
#include <thread>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>

namespace wedge {

/// One-sided 99% normal quantile.
inline constexpr double kZ99 = 2.3263478740408408;

std::uint64_t splitmix64(std::uint64_t x);

/// Seed for the `stream`-th independent substream of a run seeded with
/// `seed`. Substreams are keyed by index, never by thread, so results do not
/// depend on scheduling.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream);

using Rng = std::mt19937_64;

inline Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
  return Rng(substream_seed(seed, stream));
}

/// Uniform double in [0, 1) from the top 53 bits; identical on every
/// platform, unlike std::uniform_real_distribution.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

double radical_inverse(std::uint64_t index, unsigned base);

/// index-th point of the Halton sequence in [0,1)^dim (bases 2, 3, 5, ...).
Eigen::VectorXd halton_point(std::uint64_t index, std::size_t dim);

std::size_t resolve_threads(std::size_t requested);

/// Evaluate f(0..count-1) on up to `threads` workers and gather the results
/// by index. If any call throws, the exception of the lowest failing index
/// is rethrown.
template <class F>
auto parallel_map(std::size_t count, F&& f, std::size_t threads = 0)
    -> std::vector<std::invoke_result_t<F&, std::size_t>> {
  using R = std::invoke_result_t<F&, std::size_t>;
  std::vector<R> out(count);
  std::vector<std::exception_ptr> errors(count);
  const std::size_t workers =
      std::min<std::size_t>(resolve_threads(threads), count == 0 ? 1 : count);
  auto run_range = [&](std::size_t begin, std::size_t step) {
    for (std::size_t i = begin; i < count; i += step) {
      try {
        out[i] = f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    run_range(0, 1);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back(run_range, w, workers);
    }
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

using Indicator = std::function<bool(const Eigen::VectorXd&)>;

struct MeasureEstimate {
  double mean = 0.0;
  /// One-sided 99% lower confidence bound (normal approximation).
  double lower = 0.0;
  std::size_t samples = 0;
};

struct MeasureOptions {
  std::size_t samples = 100000;
  /// Strata along the first coordinate.
  std::size_t strata = 256;
  std::uint64_t seed = 0;
  std::size_t threads = 0;
};

/// Lebesgue measure of {x in [0,1]^n : indicator(x)} by stratified Monte
/// Carlo. For n = 0 the unit box is a single point and the indicator is
/// probed once.
MeasureEstimate estimate_measure(const Indicator& indicator, std::size_t nvars,
                                 const MeasureOptions& options);

}  // namespace wedge
