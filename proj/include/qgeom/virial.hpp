#pragma once

// Second-order fugacity-density relations z(n) = c1 n + c2(q) n^2 at high
// temperature, n = <N> lambda^D / volume. A positive c2 means the gas is
// effectively fermionic at low density, a negative one bosonic.

#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "qgeom/core.hpp"
#include "qgeom/roots.hpp"

namespace qgeom {

enum class VirialKind { AlphaQGF_D3, DeltaQGB_D3, EtaQGB_D2, ZetaQGF_D2 };

inline constexpr std::string_view to_string(VirialKind k) noexcept {
  switch (k) {
    case VirialKind::AlphaQGF_D3: return "alpha";
    case VirialKind::DeltaQGB_D3: return "delta";
    case VirialKind::EtaQGB_D2: return "eta";
    case VirialKind::ZetaQGF_D2: return "zeta";
  }
  return "?";
}

struct VirialCoefficient {
  VirialKind kind;
  double value;
  double q;
};

/// Fermions, D=3.
inline double alpha(double q) {
  return 0.5 * (1.0 / (2.0 * std::numbers::sqrt2) -
                0.5 / std::pow(1.0 / (q * q) + 1.0, 1.5));
}

/// Bosons, D=3.
inline double delta(double q) {
  return -0.25 * (3.0 / std::pow(1.0 + q * q, 1.5) - 1.0 / std::numbers::sqrt2);
}

/// Bosons, D=2.
inline double eta(double q) { return -(2.0 - q * q) / (4.0 * (1.0 + q * q)); }

/// Fermions, D=2. Expanding ln h to O(z^2) and integrating with nu = 0 gives
/// n = 2z - 2z^2/(1 + q^2), hence z = n/2 + n^2 / (4 (1 + q^2)).
inline double zeta_fermion_d2(double q) { return 1.0 / (4.0 * (1.0 + q * q)); }

inline double virial_value(VirialKind kind, double q) {
  switch (kind) {
    case VirialKind::AlphaQGF_D3: return alpha(q);
    case VirialKind::DeltaQGB_D3: return delta(q);
    case VirialKind::EtaQGB_D2: return eta(q);
    case VirialKind::ZetaQGF_D2: return zeta_fermion_d2(q);
  }
  return 0.0;
}

inline VirialCoefficient virial_coefficient(VirialKind kind, double q) {
  return {kind, virial_value(kind, q), q};
}

inline VirialKind virial_kind(const GasSpec& spec) noexcept {
  if (spec.statistics == Statistics::Fermion) {
    return spec.dimension == Dimension::D3 ? VirialKind::AlphaQGF_D3
                                           : VirialKind::ZetaQGF_D2;
  }
  return spec.dimension == Dimension::D3 ? VirialKind::DeltaQGB_D3 : VirialKind::EtaQGB_D2;
}

/// Exact zeros: alpha at (2^{1/3} - 1)^{-1/2}, delta at ((3 sqrt 2)^{2/3} - 1)^{1/2},
/// eta at sqrt 2. zeta never vanishes.
inline std::optional<double> closed_form_threshold(VirialKind kind) {
  switch (kind) {
    case VirialKind::AlphaQGF_D3: return 1.0 / std::sqrt(std::cbrt(2.0) - 1.0);
    case VirialKind::DeltaQGB_D3:
      return std::sqrt(std::pow(3.0 * std::numbers::sqrt2, 2.0 / 3.0) - 1.0);
    case VirialKind::EtaQGB_D2: return std::numbers::sqrt2;
    case VirialKind::ZetaQGF_D2: return std::nullopt;
  }
  return std::nullopt;
}

/// Sign change of the coefficient in q in [0.5, 5], by bisection.
inline std::optional<double> virial_threshold(VirialKind kind, double q_lo = 0.5,
                                              double q_hi = 5.0, double q_tol = 1e-12) {
  return bisect_sign_change([kind](double q) { return virial_value(kind, q); }, q_lo,
                            q_hi, q_tol);
}

/// z from the reduced density n = <N> lambda^D / volume at second order.
/// Throws VirialRangeError when the O(n^2) term is at least half the O(n)
/// term in magnitude.
inline double fugacity_from_density(const GasSpec& spec, double density) {
  if (auto e = check_spec(spec)) throw *e;
  if (!(density > 0.0)) throw VirialRangeError("density must be positive");

  const double pi = std::numbers::pi;
  double first = 0.0;
  double second = 0.0;
  const double q = spec.q;
  const double n = density;
  switch (virial_kind(spec)) {
    case VirialKind::AlphaQGF_D3:
      first = n / (std::pow(pi, 1.5) * std::pow(2.0, 2.5));
      second = alpha(q) * n * n / (pi * pi * 16.0);
      break;
    case VirialKind::DeltaQGB_D3:
      first = 0.5 * n;
      second = delta(q) * n * n;
      break;
    case VirialKind::EtaQGB_D2:
      first = 0.5 * n;
      second = eta(q) * n * n;
      break;
    case VirialKind::ZetaQGF_D2:
      first = 0.5 * n;
      second = zeta_fermion_d2(q) * n * n;
      break;
  }
  if (std::abs(second) >= 0.5 * std::abs(first)) {
    throw VirialRangeError("density " + std::to_string(density) +
                           " outside the second-order virial range");
  }
  return first + second;
}

}  // namespace qgeom
