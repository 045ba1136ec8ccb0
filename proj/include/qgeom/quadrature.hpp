#pragma once

/**
 * @file quadrature.hpp
 * @brief Reduced moment integrals a, b, c, d = int_0^inf x^nu L_k(x) dx.
 *
 * The integrator is a globally adaptive 21-point Gauss-Kronrod scheme over a
 * vector-valued integrand, so the (expensive) series sums at an abscissa are
 * shared by all four moments. The error of a panel is |K21 - G10| taken
 * componentwise; the panel with the largest error relative to its
 * component's tolerance is bisected next.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "qgeom/core.hpp"
#include "qgeom/distributions.hpp"

namespace qgeom {

struct QuadratureConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  int max_subdivisions = 200;
  double series_tol = kDefaultSeriesTol;
  std::size_t max_series_terms = kDefaultMaxSeriesTerms;
};

template <std::size_t N>
struct AdaptiveResult {
  std::array<double, N> value{};
  std::array<double, N> error{};
  int subdivisions = 0;
  bool converged = false;

  double max_error() const noexcept {
    return *std::max_element(error.begin(), error.end());
  }
};

namespace detail {

template <std::size_t N>
struct Panel {
  double lo = 0.0;
  double hi = 0.0;
  std::array<double, N> value{};
  std::array<double, N> error{};
};

template <std::size_t N, class F>
Panel<N> gauss_kronrod_panel(F& f, double lo, double hi) {
  using kronrod = boost::math::quadrature::gauss_kronrod<double, 21>;
  using gauss = boost::math::quadrature::gauss<double, 10>;
  const auto& nodes = kronrod::abscissa();
  const auto& kw = kronrod::weights();
  const auto& gw = gauss::weights();

  const double centre = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);

  std::array<double, N> k{};
  std::array<double, N> g{};
  const std::array<double, N> f0 = f(centre);
  for (std::size_t c = 0; c < N; ++c) k[c] = kw[0] * f0[c];
  // Odd indices are shared with the 10-point Gauss rule.
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    const std::array<double, N> fp = f(centre + half * nodes[i]);
    const std::array<double, N> fm = f(centre - half * nodes[i]);
    for (std::size_t c = 0; c < N; ++c) {
      const double pair = fp[c] + fm[c];
      k[c] += kw[i] * pair;
      if (i % 2 == 1) g[c] += gw[i / 2] * pair;
    }
  }

  Panel<N> p;
  p.lo = lo;
  p.hi = hi;
  for (std::size_t c = 0; c < N; ++c) {
    p.value[c] = half * k[c];
    p.error[c] = std::max(std::abs(half * (k[c] - g[c])),
                          2.0 * std::numeric_limits<double>::epsilon() *
                              std::abs(p.value[c]));
  }
  return p;
}

}  // namespace detail

/// Integrates the N-component function f over [breakpoints.front(),
/// breakpoints.back()], starting from the given panels and bisecting until
/// every component meets max(abs_tol, rel_tol * |I|) or the subdivision
/// budget is exhausted. Never throws; check `converged`.
template <std::size_t N, class F>
AdaptiveResult<N> integrate_adaptive(F&& f, const std::vector<double>& breakpoints,
                                     double rel_tol, double abs_tol,
                                     int max_subdivisions) {
  std::vector<detail::Panel<N>> panels;
  panels.reserve(breakpoints.size() + static_cast<std::size_t>(max_subdivisions));
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    panels.push_back(detail::gauss_kronrod_panel<N>(f, breakpoints[i], breakpoints[i + 1]));
  }

  AdaptiveResult<N> out;
  auto totals = [&] {
    out.value.fill(0.0);
    out.error.fill(0.0);
    for (const auto& p : panels) {
      for (std::size_t c = 0; c < N; ++c) {
        out.value[c] += p.value[c];
        out.error[c] += p.error[c];
      }
    }
  };

  for (;;) {
    totals();
    std::array<double, N> tol{};
    bool ok = true;
    for (std::size_t c = 0; c < N; ++c) {
      tol[c] = std::max(abs_tol, rel_tol * std::abs(out.value[c]));
      if (out.error[c] > tol[c]) ok = false;
    }
    if (ok) {
      out.converged = true;
      return out;
    }
    if (out.subdivisions >= max_subdivisions) return out;

    std::size_t worst = 0;
    double worst_score = -1.0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      double score = 0.0;
      for (std::size_t c = 0; c < N; ++c) {
        score = std::max(score, panels[i].error[c] / tol[c]);
      }
      if (score > worst_score) {
        worst_score = score;
        worst = i;
      }
    }
    const double lo = panels[worst].lo;
    const double hi = panels[worst].hi;
    const double mid = 0.5 * (lo + hi);
    panels[worst] = detail::gauss_kronrod_panel<N>(f, lo, mid);
    panels.push_back(detail::gauss_kronrod_panel<N>(f, mid, hi));
    ++out.subdivisions;
  }
}

/// The four reduced moments of one gas at one fugacity.
struct MomentSet {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  double est_error = 0.0;
  GasSpec spec{};
  double z = 0.0;
  double x_max = 0.0;
};

/// x^nu * (L0, L1, L2, L3) at a single abscissa.
inline std::array<double, 4> moment_integrand(const GasSpec& spec, double z, double x,
                                              const QuadratureConfig& cfg) {
  const LogMoments L = log_moments(spec, x, z, cfg.series_tol, cfg.max_series_terms);
  const double w = spec.dimension == Dimension::D3 ? std::sqrt(x) : 1.0;
  return {w * L.L0, w * L.L1, w * L.L2, w * L.L3};
}

/// Upper integration limit: the first X in a geometric search where all four
/// integrand components fall below min(abs_tol, 1e-2 * rel_tol * scale), with
/// scale the integrand magnitude at x = 1. Integrands decay like e^{-x}, so
/// the neglected tail is of the same size as the threshold.
inline double tail_cutoff(const GasSpec& spec, double z, const QuadratureConfig& cfg) {
  const auto at_one = moment_integrand(spec, z, 1.0, cfg);
  double scale = 0.0;
  for (double v : at_one) scale = std::max(scale, std::abs(v));
  const double threshold = std::min(cfg.abs_tol, 1e-2 * cfg.rel_tol * scale);

  double x = 4.0;
  for (int i = 0; i < 64; ++i, x *= 1.25) {
    const auto v = moment_integrand(spec, z, x, cfg);
    double m = 0.0;
    for (double e : v) m = std::max(m, std::abs(e));
    if (m < threshold) return x;
  }
  throw ToleranceError("could not locate the integrand tail cutoff", threshold);
}

inline MomentSet moment_integrals(const GasSpec& spec, double z,
                                  const QuadratureConfig& cfg = {}) {
  validate_domain(spec, ThermoPoint{z, 1.0});
  if (!(cfg.rel_tol > 0.0 && cfg.rel_tol < 1.0) || !(cfg.abs_tol > 0.0)) {
    throw Error("quadrature tolerances must satisfy 0 < rel_tol < 1, abs_tol > 0");
  }

  const double x_max = tail_cutoff(spec, z, cfg);
  std::vector<double> breaks{0.0};
  for (double x = 0.5; x < x_max; x *= 4.0) breaks.push_back(x);
  breaks.push_back(x_max);

  auto integrand = [&](double x) { return moment_integrand(spec, z, x, cfg); };
  const auto r = integrate_adaptive<4>(integrand, breaks, cfg.rel_tol, cfg.abs_tol,
                                       cfg.max_subdivisions);
  if (!r.converged) {
    throw ToleranceError("moment quadrature did not meet rel_tol=" +
                             std::to_string(cfg.rel_tol) + " within " +
                             std::to_string(cfg.max_subdivisions) +
                             " subdivisions (achieved " +
                             std::to_string(r.max_error()) + ")",
                         r.max_error());
  }

  MomentSet m;
  m.a = r.value[0];
  m.b = r.value[1];
  m.c = r.value[2];
  m.d = r.value[3];
  m.est_error = r.max_error();
  m.spec = spec;
  m.z = z;
  m.x_max = x_max;
  return m;
}

}  // namespace qgeom
