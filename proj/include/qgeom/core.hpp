#pragma once

/**
 * @file core.hpp
 * @brief Shared domain types for SU_q(2)-invariant ideal gases: the gas
 * selector, the (z, beta) parameter point, reduced units, the q-bracket and
 * the physical-domain checks used by every other header.
 */

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qgeom {

enum class Statistics { Boson, Fermion };
enum class Dimension { D2 = 2, D3 = 3 };

inline constexpr std::string_view to_string(Statistics s) noexcept {
  return s == Statistics::Boson ? "boson" : "fermion";
}

inline constexpr int to_int(Dimension d) noexcept { return static_cast<int>(d); }

// ---------------------------------------------------------------------------
// Errors. Everything the library throws derives from qgeom::Error.
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class DomainConstraint {
  DeformationNotPositive,
  DeformationNotFinite,
  FugacityNotPositive,
  BosonFugacityTooLarge,
  BetaNotPositive,
  EnergyNegative,
};

class DomainError : public Error {
 public:
  DomainError(DomainConstraint which, const std::string& what)
      : Error(what), constraint_(which) {}
  DomainConstraint constraint() const noexcept { return constraint_; }

 private:
  DomainConstraint constraint_;
};

/// Boson series did not reach its truncation rule within the term budget.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::size_t terms)
      : Error(what), terms_(terms) {}
  std::size_t terms() const noexcept { return terms_; }

 private:
  std::size_t terms_;
};

/// Adaptive quadrature ran out of subdivisions.
class ToleranceError : public Error {
 public:
  ToleranceError(const std::string& what, double achieved)
      : Error(what), achieved_(achieved) {}
  double achieved_error() const noexcept { return achieved_; }

 private:
  double achieved_;
};

class DegenerateMetricError : public Error {
 public:
  using Error::Error;
};

class StepTooLargeError : public Error {
 public:
  StepTooLargeError(const std::string& what, double disagreement)
      : Error(what), disagreement_(disagreement) {}
  double disagreement() const noexcept { return disagreement_; }

 private:
  double disagreement_;
};

class VirialRangeError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

/// Physical model selector. q = 1 is the undeformed two-species gas.
struct GasSpec {
  Statistics statistics = Statistics::Boson;
  double q = 1.0;
  Dimension dimension = Dimension::D3;

  /// nu = (D - 2) / 2, the power of x in the density of states.
  constexpr double nu() const noexcept {
    return dimension == Dimension::D3 ? 0.5 : 0.0;
  }
  /// p = D / 2, the power of beta^{-1} in ln Z.
  constexpr double half_dim() const noexcept {
    return dimension == Dimension::D3 ? 1.5 : 1.0;
  }

  GasSpec with_q(double q_new) const noexcept {
    GasSpec out = *this;
    out.q = q_new;
    return out;
  }
};

/// A point on the two-dimensional parameter manifold.
/// Coordinates are beta^1 = beta and beta^2 = gamma = -beta*mu = -ln z.
struct ThermoPoint {
  double z = 0.5;
  double beta = 1.0;

  double gamma() const noexcept { return -std::log(z); }
};

/// Reduced units: lambda = beta^{1/2} and the system size (V for D=3, A for
/// D=2) defaults to 1. Curvatures are reported in units of lambda^D / volume.
struct ReducedUnits {
  double volume = 1.0;

  static double lambda_pow_dim(Dimension d, double beta) {
    return d == Dimension::D3 ? beta * std::sqrt(beta) : beta;
  }
};

// ---------------------------------------------------------------------------
// q-bracket
// ---------------------------------------------------------------------------

/// {x} = (1 - q^{2x}) / (1 - q^2), continuous through q = 1 where {x} = x.
/// Written with expm1 so there is no cancellation as q -> 1.
inline double q_bracket(double x, double q) {
  if (q == 1.0) return x;
  const double log_q = std::log(q);
  return std::expm1(2.0 * x * log_q) / std::expm1(2.0 * log_q);
}

// ---------------------------------------------------------------------------
// Domain validation
// ---------------------------------------------------------------------------

inline std::optional<DomainError> check_spec(const GasSpec& spec) {
  if (!std::isfinite(spec.q)) {
    return DomainError(DomainConstraint::DeformationNotFinite,
                       "deformation parameter q must be finite");
  }
  if (!(spec.q > 0.0)) {
    return DomainError(DomainConstraint::DeformationNotPositive,
                       "deformation parameter q must be positive, got " +
                           std::to_string(spec.q));
  }
  return std::nullopt;
}

/// Returns the first violated constraint, or nullopt when (spec, point) is
/// inside the supported domain. Bosons need z in (0, 1); fermions any z > 0.
inline std::optional<DomainError> check_domain(const GasSpec& spec,
                                               const ThermoPoint& point) {
  if (auto e = check_spec(spec)) return e;
  if (!(point.z > 0.0) || !std::isfinite(point.z)) {
    return DomainError(DomainConstraint::FugacityNotPositive,
                       "fugacity z must be positive and finite, got " +
                           std::to_string(point.z));
  }
  if (spec.statistics == Statistics::Boson && !(point.z < 1.0)) {
    return DomainError(DomainConstraint::BosonFugacityTooLarge,
                       "boson fugacity must satisfy z < 1, got " +
                           std::to_string(point.z));
  }
  if (!(point.beta > 0.0) || !std::isfinite(point.beta)) {
    return DomainError(DomainConstraint::BetaNotPositive,
                       "inverse temperature beta must be positive, got " +
                           std::to_string(point.beta));
  }
  return std::nullopt;
}

inline void validate_domain(const GasSpec& spec, const ThermoPoint& point) {
  if (auto e = check_domain(spec, point)) throw *e;
}

}  // namespace qgeom
