#include "wedge/wedge_geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include <Eigen/Eigenvalues>

namespace wedge {

bool RealWedge::contains_unit(const Eigen::VectorXd& y) const {
  if (static_cast<std::size_t>(y.size()) != nvars) return false;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (!(y(i) >= 0.0 && y(i) <= 1.0)) return false;
  }
  return indicator(y);
}

bool RealWedge::contains(const Eigen::VectorXd& x) const {
  if (static_cast<std::size_t>(x.size()) != nvars) return false;
  return contains_unit(x.cwiseQuotient(scale));
}

RealWedge RealWedge::scaled(double s) const {
  if (!(s > 0.0)) throw std::invalid_argument("wedge scale must be positive");
  RealWedge out = *this;
  out.scale = scale * s;
  return out;
}

RealWedge make_real_wedge(std::size_t nvars, Indicator indicator,
                          Eigen::VectorXd scale, const MeasureOptions& options) {
  if (static_cast<std::size_t>(scale.size()) != nvars) {
    throw std::invalid_argument("wedge scale has wrong dimension");
  }
  if ((scale.array() <= 0.0).any()) {
    throw std::invalid_argument("wedge scale must be positive");
  }
  RealWedge w;
  w.nvars = nvars;
  w.indicator = std::move(indicator);
  w.scale = std::move(scale);
  w.seed = options.seed;
  const MeasureEstimate m = estimate_measure(w.indicator, nvars, options);
  w.measure_estimate = m.mean;
  w.measure_lower = m.lower;
  return w;
}

RealWedge box_wedge(const Eigen::VectorXd& extents,
                    const MeasureOptions& options) {
  auto inside = [](const Eigen::VectorXd& y) {
    return (y.array() > 0.0).all() && (y.array() < 1.0).all();
  };
  return make_real_wedge(static_cast<std::size_t>(extents.size()), inside,
                         extents, options);
}

WedgeValidation validate_wedge(const RealWedge& wedge, std::size_t checks,
                               std::uint64_t seed) {
  WedgeValidation v;
  v.measure = wedge.measure_estimate;
  v.measure_lower = wedge.measure_lower;
  Rng rng = make_stream(seed, 0x5717);
  const auto n = static_cast<Eigen::Index>(wedge.nvars);
  Eigen::VectorXd y(n);
  const std::size_t max_attempts = checks * 1000;
  for (std::size_t attempt = 0; attempt < max_attempts && v.starlike_checks < checks;
       ++attempt) {
    for (Eigen::Index i = 0; i < n; ++i) y(i) = uniform01(rng);
    if (!wedge.contains_unit(y)) continue;
    double t = uniform01(rng);
    if (t == 0.0) t = 0.5;
    ++v.starlike_checks;
    if (!wedge.contains_unit(t * y)) ++v.starlike_violations;
  }
  v.valid = v.measure > 0.0 && v.starlike_checks > 0 && v.starlike_violations == 0;
  return v;
}

ConeSpec make_cone(std::size_t nvars, Indicator membership, Eigen::VectorXd one,
                   std::string kind) {
  if (static_cast<std::size_t>(one.size()) != nvars) {
    throw std::invalid_argument("distinguished element has wrong dimension");
  }
  if (!membership(one)) {
    throw std::invalid_argument("distinguished element is not in the cone");
  }
  // Spot check closure under positive scaling along Halton samples near 1.
  for (std::uint64_t k = 1; k <= 64; ++k) {
    const Eigen::VectorXd u =
        one + (halton_point(k, nvars).array() - 0.5).matrix() * 0.1 *
                  std::max(1.0, one.cwiseAbs().maxCoeff());
    if (!membership(u)) continue;
    for (double lambda : {1e-3, 0.5, 3.0, 1e3}) {
      if (!membership(lambda * u)) {
        throw std::invalid_argument("membership oracle is not a cone");
      }
    }
  }
  return ConeSpec{nvars, std::move(membership), std::move(one), std::move(kind)};
}

ConeSpec orthant_cone(std::size_t nvars) {
  return orthant_cone(Eigen::VectorXd::Ones(static_cast<Eigen::Index>(nvars)));
}

ConeSpec orthant_cone(const Eigen::VectorXd& one) {
  auto member = [](const Eigen::VectorXd& x) { return (x.array() > 0.0).all(); };
  return make_cone(static_cast<std::size_t>(one.size()), member, one, "orthant");
}

ConeSpec polyhedral_cone(const Eigen::MatrixXd& halfspaces,
                         const Eigen::VectorXd& one) {
  if (halfspaces.cols() != one.size()) {
    throw std::invalid_argument("halfspace normals have wrong dimension");
  }
  auto member = [halfspaces](const Eigen::VectorXd& x) {
    return ((halfspaces * x).array() > 0.0).all();
  };
  return make_cone(static_cast<std::size_t>(one.size()), member, one,
                   "polyhedral");
}

Eigen::MatrixXcd hermitian_from_coordinates(const Eigen::VectorXd& x,
                                            std::size_t m) {
  const auto mi = static_cast<Eigen::Index>(m);
  if (x.size() != mi * mi) {
    throw std::invalid_argument("hermitian coordinates need m*m entries");
  }
  Eigen::MatrixXcd h(mi, mi);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < mi; ++i) h(i, i) = x(k++);
  for (Eigen::Index i = 0; i < mi; ++i) {
    for (Eigen::Index j = i + 1; j < mi; ++j) {
      const Complex v(x(k), x(k + 1));
      k += 2;
      h(i, j) = v;
      h(j, i) = std::conj(v);
    }
  }
  return h;
}

ConeSpec hermitian_cone(std::size_t m) {
  if (m == 0) throw std::invalid_argument("hermitian cone needs m >= 1");
  const auto n = static_cast<Eigen::Index>(m * m);
  Eigen::VectorXd one = Eigen::VectorXd::Zero(n);
  one.head(static_cast<Eigen::Index>(m)).setOnes();
  auto member = [m](const Eigen::VectorXd& x) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
        hermitian_from_coordinates(x, m), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() > 0.0;
  };
  return make_cone(m * m, member, std::move(one), "hermitian");
}

namespace {

/// inf{λ ≥ 0 : λ1 + v ∈ C}.
double shift_infimum(const ConeSpec& spec, const Eigen::VectorXd& v,
                     const ConeNormOptions& options) {
  if (spec.membership(v)) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  while (!spec.membership(v + hi * spec.one)) {
    lo = hi;
    hi *= 2.0;
    if (hi > options.cap) {
      throw Unbounded("cone norm exceeds cap; vector is outside C - R+·1");
    }
  }
  // Quarter tolerance leaves room for homogeneity checks at |t| <= 2.
  const double tol = 0.25 * options.tolerance;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (spec.membership(v + mid * spec.one)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace

double cone_norm(const ConeSpec& spec, const Eigen::VectorXd& x,
                 const ConeNormOptions& options) {
  if (static_cast<std::size_t>(x.size()) != spec.nvars) {
    throw std::invalid_argument("vector has wrong dimension for cone");
  }
  if ((x.array() == 0.0).all()) return 0.0;
  return std::max(shift_infimum(spec, -x, options),
                  shift_infimum(spec, x, options));
}

double cone_norm_complex(const ConeSpec& spec, const Eigen::VectorXcd& z,
                         const ConeNormOptions& options) {
  return std::max(cone_norm(spec, z.real(), options),
                  cone_norm(spec, z.imag(), options));
}

RealWedge cone_wedge(const ConeSpec& spec, const ConeWedgeOptions& options) {
  const auto n = static_cast<Eigen::Index>(spec.nvars);
  Eigen::VectorXd scale(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    scale(i) = spec.one(i) > 0.0 ? spec.one(i) : 1.0;
  }
  auto indicator = [membership = spec.membership, one = spec.one,
                    scale](const Eigen::VectorXd& y) {
    const Eigen::VectorXd x = scale.cwiseProduct(y);
    return membership(x) && membership(one - x);
  };
  RealWedge w = make_real_wedge(spec.nvars, indicator, scale, options.measure);
  if (w.measure_estimate < options.measure_floor) {
    throw DegenerateCone("wedge measure " + std::to_string(w.measure_estimate) +
                         " is below the floor");
  }
  return w;
}

namespace {

template <class Real, class Convert>
FourPartDecomposition<Real> shift_parts(const Eigen::VectorXcd& z, double norm,
                                        const Eigen::VectorXd& one,
                                        Convert convert) {
  FourPartDecomposition<Real> d;
  const Real s = convert(norm);
  d.norm = s;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    const Real x = convert(z(i).real());
    const Real y = convert(z(i).imag());
    const Real e = convert(one(i));
    d.xplus.push_back(x + s * e);
    d.xminus.push_back(s * e - x);
    d.yplus.push_back(y + s * e);
    d.yminus.push_back(s * e - y);
  }
  return d;
}

double checked_norm(const ConeSpec& spec, const Eigen::VectorXcd& z,
                    const ConeNormOptions& options) {
  const double norm = cone_norm_complex(spec, z, options);
  if (norm >= 0.125) {
    throw NormTooLarge("cone norm " + std::to_string(norm) + " is not below 1/8");
  }
  return norm;
}

}  // namespace

FourPartDecomposition<double> four_part_decompose(const ConeSpec& spec,
                                                  const Eigen::VectorXcd& z,
                                                  const ConeNormOptions& options) {
  const double norm = checked_norm(spec, z, options);
  return shift_parts<double>(z, norm, spec.one, [](double v) { return v; });
}

FourPartDecomposition<Rational> four_part_decompose_exact(
    const ConeSpec& spec, const Eigen::VectorXcd& z,
    const ConeNormOptions& options) {
  const double norm = checked_norm(spec, z, options);
  return shift_parts<Rational>(z, norm, spec.one,
                               [](double v) { return Rational(v); });
}

Eigen::VectorXcd recompose(const FourPartDecomposition<double>& parts) {
  const auto n = static_cast<Eigen::Index>(parts.xplus.size());
  Eigen::VectorXcd z(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    z(i) = Complex(0.5 * (parts.xplus[k] - parts.xminus[k]),
                   0.5 * (parts.yplus[k] - parts.yminus[k]));
  }
  return z;
}

std::pair<std::vector<Rational>, std::vector<Rational>> recompose(
    const FourPartDecomposition<Rational>& parts) {
  std::vector<Rational> re;
  std::vector<Rational> im;
  for (std::size_t k = 0; k < parts.xplus.size(); ++k) {
    re.push_back((parts.xplus[k] - parts.xminus[k]) / 2);
    im.push_back((parts.yplus[k] - parts.yminus[k]) / 2);
  }
  return {std::move(re), std::move(im)};
}

}  // namespace wedge
