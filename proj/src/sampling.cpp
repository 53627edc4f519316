#include "wedge/sampling.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace wedge {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

double radical_inverse(std::uint64_t index, unsigned base) {
  double result = 0.0;
  double f = 1.0 / base;
  while (index > 0) {
    result += f * static_cast<double>(index % base);
    index /= base;
    f /= base;
  }
  return result;
}

Eigen::VectorXd halton_point(std::uint64_t index, std::size_t dim) {
  static constexpr std::array<unsigned, 16> kPrimes = {
      2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
  if (dim > kPrimes.size()) {
    throw std::invalid_argument("halton_point supports up to 16 dimensions");
  }
  Eigen::VectorXd x(static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    x(static_cast<Eigen::Index>(i)) = radical_inverse(index, kPrimes[i]);
  }
  return x;
}

std::size_t resolve_threads(std::size_t requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

MeasureEstimate estimate_measure(const Indicator& indicator, std::size_t nvars,
                                 const MeasureOptions& options) {
  if (nvars == 0) {
    const bool hit = indicator(Eigen::VectorXd(0));
    return {hit ? 1.0 : 0.0, hit ? 1.0 : 0.0, 1};
  }
  if (options.samples == 0) throw std::invalid_argument("no samples requested");
  const std::size_t strata =
      std::clamp<std::size_t>(options.strata, 1, options.samples);
  const std::size_t per = options.samples / strata;
  const std::size_t extra = options.samples % strata;

  struct StratumResult {
    double mean = 0.0;
    double variance = 0.0;
    std::size_t count = 0;
  };
  auto run_stratum = [&](std::size_t k) {
    const std::size_t count = per + (k < extra ? 1 : 0);
    Rng rng = make_stream(options.seed, k);
    Eigen::VectorXd x(static_cast<Eigen::Index>(nvars));
    std::size_t hits = 0;
    const double lo = static_cast<double>(k) / static_cast<double>(strata);
    const double hi = static_cast<double>(k + 1) / static_cast<double>(strata);
    for (std::size_t s = 0; s < count; ++s) {
      x(0) = uniform(rng, lo, hi);
      for (Eigen::Index i = 1; i < x.size(); ++i) x(i) = uniform01(rng);
      if (indicator(x)) ++hits;
    }
    StratumResult r;
    r.count = count;
    r.mean = static_cast<double>(hits) / static_cast<double>(count);
    r.variance = r.mean * (1.0 - r.mean);
    return r;
  };
  const auto results = parallel_map(strata, run_stratum, options.threads);

  double mean = 0.0;
  double var = 0.0;
  const double w = 1.0 / static_cast<double>(strata);
  for (const auto& r : results) {
    mean += w * r.mean;
    var += w * w * r.variance / static_cast<double>(r.count);
  }
  MeasureEstimate est;
  est.mean = mean;
  est.lower = std::max(0.0, mean - kZ99 * std::sqrt(var));
  est.samples = options.samples;
  return est;
}

}  // namespace wedge
