#pragma once

/**
 * @file geometry.hpp
 * @brief Thermodynamic metric on (beta, gamma) and its scalar curvature.
 *
 * With ln Z = K beta^{-p} a(gamma), p = D/2 and K = volume * k_D
 * (k_3 = 2/sqrt(pi), k_2 = 1 in units lambda = beta^{1/2}), the Hessian
 * metric is
 *
 *   g11 = p (p + 1) K beta^{-p-2} a,  g12 = p K beta^{-p-1} b,  g22 = K beta^{-p} c
 *
 * where d/dgamma = -theta sends a -> -b -> c -> -d. Two routes to R are
 * provided: the closed form in the moments, and the 3x3 determinant built
 * from the metric and its first derivatives. They share nothing beyond the
 * moments themselves.
 */

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "qgeom/core.hpp"
#include "qgeom/quadrature.hpp"
#include "qgeom/roots.hpp"

namespace qgeom {

/// PaperFactor2 doubles the single-species curvature so the SU_q(2) doublet
/// compares directly with the undeformed gas; Raw is the plain Riemannian R.
enum class Normalization { PaperFactor2, Raw };

inline constexpr std::string_view to_string(Normalization n) noexcept {
  return n == Normalization::PaperFactor2 ? "paper" : "raw";
}

/// k_D in ln Z = volume * k_D * lambda^{-D} * a.
inline constexpr double moment_prefactor(Dimension d) noexcept {
  return d == Dimension::D3 ? 2.0 * std::numbers::inv_sqrtpi : 1.0;
}

struct MetricTensor {
  double g11 = 0.0;
  double g12 = 0.0;
  double g22 = 0.0;
  double beta = 1.0;
  GasSpec spec{};

  double det() const noexcept { return g11 * g22 - g12 * g12; }
};

struct CurvatureResult {
  double R_reduced = 0.0;
  Normalization normalization = Normalization::PaperFactor2;
  MomentSet moments{};

  CurvatureResult as(Normalization target) const noexcept {
    CurvatureResult out = *this;
    if (target == normalization) return out;
    out.R_reduced = target == Normalization::Raw ? 0.5 * R_reduced : 2.0 * R_reduced;
    out.normalization = target;
    return out;
  }
};

inline MetricTensor metric_from_moments(const MomentSet& m, double beta,
                                        const ReducedUnits& units = {}) {
  const double p = m.spec.half_dim();
  const double K = units.volume * moment_prefactor(m.spec.dimension);
  const double scale = K * std::pow(beta, -p);
  MetricTensor g;
  g.g11 = p * (p + 1.0) * scale / (beta * beta) * m.a;
  g.g12 = p * scale / beta * m.b;
  g.g22 = scale * m.c;
  g.beta = beta;
  g.spec = m.spec;
  return g;
}

inline MetricTensor metric_tensor(const GasSpec& spec, double beta, double z,
                                  const QuadratureConfig& cfg = {},
                                  const ReducedUnits& units = {}) {
  validate_domain(spec, ThermoPoint{z, beta});
  return metric_from_moments(moment_integrals(spec, z, cfg), beta, units);
}

/// R from the moments alone:
///   D=3: 5 sqrt(pi) N / (5ac - 3b^2)^2,  D=2: 2 N / (2ac - b^2)^2,
///   N = b^2 c + a b d - 2 a c^2,
/// which is the PaperFactor2 value in units lambda^D / volume.
inline CurvatureResult closed_form_from_moments(
    const MomentSet& m, Normalization norm = Normalization::PaperFactor2) {
  const double numerator = m.b * m.b * m.c + m.a * m.b * m.d - 2.0 * m.a * m.c * m.c;
  double R = 0.0;
  if (m.spec.dimension == Dimension::D3) {
    const double denom = 5.0 * m.a * m.c - 3.0 * m.b * m.b;
    if (std::abs(denom) < 1e-300) throw DegenerateMetricError("5ac - 3b^2 vanishes");
    R = 5.0 * std::sqrt(std::numbers::pi) * numerator / (denom * denom);
  } else {
    const double denom = 2.0 * m.a * m.c - m.b * m.b;
    if (std::abs(denom) < 1e-300) throw DegenerateMetricError("2ac - b^2 vanishes");
    R = 2.0 * numerator / (denom * denom);
  }
  CurvatureResult out{R, Normalization::PaperFactor2, m};
  return out.as(norm);
}

inline CurvatureResult curvature_closed_form(const GasSpec& spec, double z,
                                             const QuadratureConfig& cfg = {},
                                             Normalization norm = Normalization::PaperFactor2) {
  return closed_form_from_moments(moment_integrals(spec, z, cfg), norm);
}

// ---------------------------------------------------------------------------
// Determinant oracle
// ---------------------------------------------------------------------------

enum class GammaDerivatives { AnalyticLadder, FiniteDifference };

struct OracleOptions {
  GammaDerivatives mode = GammaDerivatives::AnalyticLadder;
  double fd_step = 2.5e-4;
  /// Target accuracy of the finite-difference derivatives; forward and
  /// backward one-sided estimates may disagree by at most 10x this.
  double fd_tolerance = 1e-6;
  ReducedUnits units{};
};

namespace detail {

inline double det3(const std::array<std::array<double, 3>, 3>& m) noexcept {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

struct GammaSlopes {
  double da = 0.0;  // d a / d gamma
  double db = 0.0;
  double dc = 0.0;
};

/// d(a, b, c)/dgamma from moments re-integrated at gamma +- h, gamma +- 2h.
/// Returns the 5-point central estimate after checking that the second-order
/// forward and backward stencils agree.
inline GammaSlopes finite_difference_slopes(const MomentSet& centre, double z,
                                            const QuadratureConfig& cfg,
                                            const OracleOptions& opt) {
  const double h = opt.fd_step;
  const GasSpec& spec = centre.spec;
  // gamma + s*h  <=>  z * exp(-s*h)
  auto at = [&](double s) { return moment_integrals(spec, z * std::exp(-s * h), cfg); };
  const MomentSet p1 = at(1.0), p2 = at(2.0), m1 = at(-1.0), m2 = at(-2.0);

  auto slope = [&](double MomentSet::* field, double& out) {
    const double f0 = centre.*field;
    const double fp1 = p1.*field, fp2 = p2.*field, fm1 = m1.*field, fm2 = m2.*field;
    const double central = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
    const double forward = (-3.0 * f0 + 4.0 * fp1 - fp2) / (2.0 * h);
    const double backward = (3.0 * f0 - 4.0 * fm1 + fm2) / (2.0 * h);
    const double disagreement =
        std::abs(forward - backward) / std::max(std::abs(central), 1e-300);
    if (disagreement > 10.0 * opt.fd_tolerance) {
      throw StepTooLargeError("finite-difference step " + std::to_string(h) +
                                  " too large: forward/backward disagree by " +
                                  std::to_string(disagreement),
                              disagreement);
    }
    out = central;
  };

  GammaSlopes s;
  slope(&MomentSet::a, s.da);
  slope(&MomentSet::b, s.db);
  slope(&MomentSet::c, s.dc);
  return s;
}

}  // namespace detail

/// Raw scalar curvature in units lambda^D / volume from
///   R = |g11 g22 g12; d_beta(...); d_gamma(...)| / (2 det(g)^2).
/// beta-derivatives use the power-law form of ln Z; gamma-derivatives use the
/// moment ladder (or finite differences in FiniteDifference mode).
inline double determinant_curvature_oracle(const MomentSet& m, double beta,
                                           const QuadratureConfig& cfg = {},
                                           const OracleOptions& opt = {}) {
  const GasSpec& spec = m.spec;
  const MetricTensor g = metric_from_moments(m, beta, opt.units);
  const double p = spec.half_dim();
  const double K = opt.units.volume * moment_prefactor(spec.dimension);
  const double scale = K * std::pow(beta, -p);

  detail::GammaSlopes s;
  if (opt.mode == GammaDerivatives::AnalyticLadder) {
    s.da = -m.b;
    s.db = -m.c;
    s.dc = -m.d;
  } else {
    s = detail::finite_difference_slopes(m, m.z, cfg, opt);
  }

  // Columns ordered (g11, g22, g12).
  const std::array<std::array<double, 3>, 3> M{{
      {g.g11, g.g22, g.g12},
      {-(p + 2.0) / beta * g.g11, -p / beta * g.g22, -(p + 1.0) / beta * g.g12},
      {p * (p + 1.0) * scale / (beta * beta) * s.da, scale * s.dc,
       p * scale / beta * s.db},
  }};

  const double det_g = g.det();
  if (!(std::abs(det_g) > 1e-300)) throw DegenerateMetricError("det g vanishes");
  const double R = detail::det3(M) / (2.0 * det_g * det_g);
  // R scales as 1 / ln Z; convert to units of lambda^D / volume.
  return R * opt.units.volume / ReducedUnits::lambda_pow_dim(spec.dimension, beta);
}

inline double determinant_curvature_oracle(const GasSpec& spec, double beta, double z,
                                           const QuadratureConfig& cfg = {},
                                           const OracleOptions& opt = {}) {
  validate_domain(spec, ThermoPoint{z, beta});
  if (opt.mode == GammaDerivatives::FiniteDifference && !(opt.fd_step > 0.0)) {
    throw Error("fd_step must be positive");
  }
  return determinant_curvature_oracle(moment_integrals(spec, z, cfg), beta, cfg, opt);
}

/// Deformation q* in [q_lo, q_hi] where the curvature at fixed z changes sign,
/// located by bisection to |dq| < q_tol; nullopt when the endpoint signs agree.
inline std::optional<double> curvature_sign_boundary(const GasSpec& spec, double z,
                                                     double q_lo, double q_hi,
                                                     const QuadratureConfig& cfg = {},
                                                     double q_tol = 1e-4) {
  if (!(q_lo > 0.0) || !(q_hi > q_lo)) {
    throw Error("curvature_sign_boundary needs 0 < q_lo < q_hi");
  }
  auto R_of_q = [&](double q) {
    return curvature_closed_form(spec.with_q(q), z, cfg, Normalization::Raw).R_reduced;
  };
  return bisect_sign_change(R_of_q, q_lo, q_hi, q_tol);
}

}  // namespace qgeom
