#pragma once

// Single-mode grand partition functions and their fugacity moments.
//
// For one momentum mode with reduced energy x = beta * eps the two gases have
//   boson:   f(x, z) = sum_{m>=0} (m + 1) exp(-x {m}) z^m
//   fermion: h(x, z) = 1 + 2 exp(-x) z + exp(-(q^-2 + 1) x) z^2
// and all fugacity derivatives use theta = z d/dz = -d/dgamma, so every
// moment below is nonnegative.

#include <array>
#include <cmath>
#include <cstddef>
#include <string>

#include "qgeom/core.hpp"

namespace qgeom {

/// F_k = sum over occupation m of weight(m) * m^k. `excess` is F0 - 1 kept
/// separately so ln F0 stays accurate when F0 is close to 1.
struct ThetaSums {
  double F0 = 1.0;
  double F1 = 0.0;
  double F2 = 0.0;
  double F3 = 0.0;
  double excess = 0.0;
  std::size_t terms = 0;
};

/// L0 = ln F0 and Lk = theta^k ln F0: the first four cumulants of the
/// occupation of a mode pair.
struct LogMoments {
  double L0 = 0.0;
  double L1 = 0.0;
  double L2 = 0.0;
  double L3 = 0.0;

  std::array<double, 4> as_array() const noexcept { return {L0, L1, L2, L3}; }
};

inline constexpr std::size_t kDefaultMaxSeriesTerms = 1'000'000;
inline constexpr double kDefaultSeriesTol = 1e-15;

/// Theta-sums of the boson series f. Summation stops once a geometric bound
/// on the remaining tail of every F_k is below tol times the partial sum.
inline ThetaSums boson_theta_sums(double x, double z, double q,
                                  double tol = kDefaultSeriesTol,
                                  std::size_t max_terms = kDefaultMaxSeriesTerms) {
  if (!(x >= 0.0)) {
    throw DomainError(DomainConstraint::EnergyNegative,
                      "reduced energy x must be nonnegative");
  }
  if (auto e = check_spec(GasSpec{Statistics::Boson, q, Dimension::D3})) throw *e;
  if (!(z > 0.0)) {
    throw DomainError(DomainConstraint::FugacityNotPositive,
                      "fugacity z must be positive");
  }
  // z >= 1 converges only when the levels {m} grow exponentially (q > 1)
  // and the mode has nonzero energy.
  if (z >= 1.0 && (q <= 1.0 || x == 0.0)) {
    throw DomainError(DomainConstraint::BosonFugacityTooLarge,
                      "boson series diverges for z >= 1 unless q > 1 and x > 0");
  }

  const double log_z = std::log(z);
  const double q2 = q * q;
  std::array<double, 4> sums{0.0, 0.0, 0.0, 0.0};  // m >= 1 contributions
  double level = 0.0;  // {m}
  double gap = 1.0;    // {m+1} - {m} = q^{2m}

  for (std::size_t m = 1; m <= max_terms; ++m) {
    level += gap;
    gap *= q2;
    const double mm = static_cast<double>(m);
    const double exponent = mm * log_z - x * level;
    const double t = (mm + 1.0) * std::exp(exponent);
    double w = t;
    for (double& s : sums) {
      s += w;
      w *= mm;
    }

    // Next-term ratio for weight m^k: (m+2)/(m+1) * ((m+1)/m)^k * z * e^{-x q^{2m}}.
    // For q <= 1 the exponential factor only grows toward 1, so it is
    // dropped to keep the bound monotone.
    const double decay = q > 1.0 ? std::exp(-x * gap) : 1.0;
    double ratio = (mm + 2.0) / (mm + 1.0) * z * decay;
    double weighted = t;
    bool done = true;
    for (std::size_t k = 0; k < 4; ++k) {
      if (ratio >= 1.0 || weighted * ratio / (1.0 - ratio) > tol * sums[k]) {
        done = false;
        break;
      }
      ratio *= (mm + 1.0) / mm;
      weighted *= mm;
    }
    // Once exp underflows for q > 1 every later term is zero as well.
    if (q > 1.0 && t == 0.0 && x * gap > -log_z) done = true;
    if (done) {
      ThetaSums out;
      out.excess = sums[0];
      out.F0 = 1.0 + sums[0];
      out.F1 = sums[1];
      out.F2 = sums[2];
      out.F3 = sums[3];
      out.terms = m + 1;
      return out;
    }
  }
  throw ConvergenceError("boson series did not converge within " +
                             std::to_string(max_terms) + " terms (x=" +
                             std::to_string(x) + ", z=" + std::to_string(z) +
                             ", q=" + std::to_string(q) + ")",
                         max_terms);
}

/// Theta-sums of the fermion factor h; occupation 0, 1, 2 with weights
/// 1, 2 e^{-x} z, e^{-(q^-2+1) x} z^2.
inline ThetaSums fermion_h_sums(double x, double z, double q) {
  if (!(x >= 0.0)) {
    throw DomainError(DomainConstraint::EnergyNegative,
                      "reduced energy x must be nonnegative");
  }
  const double w1 = 2.0 * std::exp(-x) * z;
  const double w2 = std::exp(-(1.0 / (q * q) + 1.0) * x) * z * z;
  ThetaSums out;
  out.excess = w1 + w2;
  out.F0 = 1.0 + out.excess;
  out.F1 = w1 + 2.0 * w2;
  out.F2 = w1 + 4.0 * w2;
  out.F3 = w1 + 8.0 * w2;
  out.terms = 3;
  return out;
}

/// Converts raw theta-sums to cumulants.
inline LogMoments cumulants_from_sums(const ThetaSums& s) noexcept {
  const double m1 = s.F1 / s.F0;
  const double r2 = s.F2 / s.F0;
  const double r3 = s.F3 / s.F0;
  LogMoments out;
  out.L0 = std::log1p(s.excess);
  out.L1 = m1;
  out.L2 = r2 - m1 * m1;
  out.L3 = r3 - 3.0 * m1 * r2 + 2.0 * m1 * m1 * m1;
  return out;
}

/// Cumulants of ln f or ln h at one abscissa. The fermion branch uses central
/// moments of the three-state occupation directly; it equals the raw-sum
/// formula but does not cancel when the pair is almost surely doubly occupied.
inline LogMoments log_moments(const GasSpec& spec, double x, double z,
                              double tol = kDefaultSeriesTol,
                              std::size_t max_terms = kDefaultMaxSeriesTerms) {
  if (spec.statistics == Statistics::Boson) {
    return cumulants_from_sums(boson_theta_sums(x, z, spec.q, tol, max_terms));
  }

  if (!(x >= 0.0)) {
    throw DomainError(DomainConstraint::EnergyNegative,
                      "reduced energy x must be nonnegative");
  }
  const double w1 = 2.0 * std::exp(-x) * z;
  const double w2 = std::exp(-(1.0 / (spec.q * spec.q) + 1.0) * x) * z * z;
  const double total = 1.0 + w1 + w2;
  const double mean = (w1 + 2.0 * w2) / total;
  const double d0 = -mean;
  const double d1 = 1.0 - mean;
  const double d2 = 2.0 - mean;
  LogMoments out;
  out.L0 = std::log1p(w1 + w2);
  out.L1 = mean;
  out.L2 = (d0 * d0 + w1 * d1 * d1 + w2 * d2 * d2) / total;
  out.L3 = (d0 * d0 * d0 + w1 * d1 * d1 * d1 + w2 * d2 * d2 * d2) / total;
  return out;
}

}  // namespace qgeom
