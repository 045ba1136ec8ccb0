#pragma once

// Built-in cross-validation run by `qgeom selfcheck`:
//   - closed-form R against the determinant oracle on the reference grid
//   - metric positivity on the same grid
//   - q = 1 moments against polylogarithm series
//   - virial thresholds and q = 1 values
//   - beta independence of the reduced curvature

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include "qgeom/core.hpp"
#include "qgeom/geometry.hpp"
#include "qgeom/quadrature.hpp"
#include "qgeom/sweep.hpp"
#include "qgeom/virial.hpp"

namespace qgeom {

struct GridPoint {
  GasSpec spec;
  double z;
};

/// Bosons q in {0.5, 1, 1.15, 2} x z in {0.1, 0.5, 0.9} and fermions
/// q in {0.5, 1, 10} x z in {0.1, 1, 10}, in D=3 and D=2 (42 points).
inline std::vector<GridPoint> reference_grid() {
  std::vector<GridPoint> out;
  for (Dimension d : {Dimension::D3, Dimension::D2}) {
    for (double q : {0.5, 1.0, 1.15, 2.0})
      for (double z : {0.1, 0.5, 0.9}) out.push_back({{Statistics::Boson, q, d}, z});
    for (double q : {0.5, 1.0, 10.0})
      for (double z : {0.1, 1.0, 10.0}) out.push_back({{Statistics::Fermion, q, d}, z});
  }
  return out;
}

/// Li_s(w) = sum_k w^k / k^s for |w| < 1.
inline double polylog_series(double s, double w) {
  double sum = 0.0;
  double power = 1.0;
  for (int k = 1; k < 100000; ++k) {
    power *= w;
    const double term = power / std::pow(static_cast<double>(k), s);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

/// q = 1 moments: +-2 Gamma(nu+1) Li_{nu+2-k}(+-z) for k = 0..3 (bosons take
/// +z, fermions -z with an overall minus).
inline std::array<double, 4> undeformed_moments(Statistics s, Dimension d, double z) {
  const double nu = d == Dimension::D3 ? 0.5 : 0.0;
  const double g = 2.0 * std::tgamma(nu + 1.0);
  const double w = s == Statistics::Boson ? z : -z;
  const double sign = s == Statistics::Boson ? 1.0 : -1.0;
  std::array<double, 4> out{};
  for (int k = 0; k < 4; ++k) out[k] = sign * g * polylog_series(nu + 2.0 - k, w);
  return out;
}

struct CheckLine {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SelfCheckReport {
  std::vector<CheckLine> lines;
  double seconds = 0.0;

  bool passed() const noexcept {
    for (const auto& l : lines)
      if (!l.passed) return false;
    return true;
  }
};

namespace detail {

inline std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

}  // namespace detail

inline SelfCheckReport run_self_check(const QuadratureConfig& cfg = {}, unsigned threads = 0) {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  SelfCheckReport report;

  // Closed form vs determinant oracle, and metric positivity.
  const auto grid = reference_grid();
  std::vector<double> diffs(grid.size(), 0.0);
  std::vector<char> positive(grid.size(), 0);
  std::vector<std::string> failures(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t i) {
    try {
      const MomentSet m = moment_integrals(grid[i].spec, grid[i].z, cfg);
      const double closed = closed_form_from_moments(m, Normalization::Raw).R_reduced;
      const double oracle = determinant_curvature_oracle(m, 1.0, cfg);
      diffs[i] = detail::rel_diff(closed, oracle);
      const MetricTensor g = metric_from_moments(m, 1.0);
      positive[i] = g.g11 > 0.0 && g.g22 > 0.0 && g.det() > 0.0;
    } catch (const Error& e) {
      failures[i] = e.what();
      diffs[i] = INFINITY;
    }
  });
  {
    double worst = 0.0;
    bool all_positive = true;
    std::string first_failure;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      worst = std::max(worst, diffs[i]);
      all_positive = all_positive && positive[i];
      if (first_failure.empty() && !failures[i].empty()) first_failure = failures[i];
    }
    report.lines.push_back({"closed form vs determinant oracle", worst <= 1e-5,
                            std::to_string(grid.size()) + " points, max rel diff " +
                                detail::sci(worst) + " (tol 1e-5)" +
                                (first_failure.empty() ? "" : "; " + first_failure)});
    report.lines.push_back({"metric positive definite", all_positive && first_failure.empty(),
                            "g11 > 0, g22 > 0, det g > 0 on " + std::to_string(grid.size()) +
                                " points"});
  }

  // q = 1 polylogarithm oracle.
  {
    double worst = 0.0;
    std::string failure;
    for (Statistics s : {Statistics::Boson, Statistics::Fermion}) {
      for (Dimension d : {Dimension::D3, Dimension::D2}) {
        for (double z : {0.1, 0.5, 0.9}) {
          try {
            const MomentSet m = moment_integrals({s, 1.0, d}, z, cfg);
            const auto ref = undeformed_moments(s, d, z);
            const std::array<double, 4> got{m.a, m.b, m.c, m.d};
            for (int k = 0; k < 4; ++k) worst = std::max(worst, detail::rel_diff(got[k], ref[k]));
          } catch (const Error& e) {
            failure = e.what();
            worst = INFINITY;
          }
        }
      }
    }
    report.lines.push_back({"q=1 moments vs polylogarithm series", worst <= 1e-8,
                            "max rel diff " + detail::sci(worst) + " (tol 1e-8)" +
                                (failure.empty() ? "" : "; " + failure)});
  }

  // Virial thresholds and values.
  {
    double worst_root = 0.0;
    for (VirialKind k : {VirialKind::AlphaQGF_D3, VirialKind::DeltaQGB_D3, VirialKind::EtaQGB_D2}) {
      const auto root = virial_threshold(k);
      const auto exact = closed_form_threshold(k);
      worst_root = std::max(worst_root, root && exact ? std::abs(*root - *exact) : INFINITY);
    }
    const bool zeta_none = !virial_threshold(VirialKind::ZetaQGF_D2).has_value();
    const double a1 = 1.0 / (8.0 * std::numbers::sqrt2);
    const double worst_value =
        std::max({std::abs(alpha(1.0) - a1), std::abs(delta(1.0) + a1), std::abs(eta(1.0) + 0.125)});
    report.lines.push_back({"virial thresholds and values",
                            worst_root <= 1e-6 && worst_value <= 1e-10 && zeta_none,
                            "max root error " + detail::sci(worst_root) +
                                ", max value error " + detail::sci(worst_value) +
                                (zeta_none ? "" : ", zeta unexpectedly changes sign")});
  }

  // beta independence.
  {
    const std::vector<GridPoint> pts{
        {{Statistics::Boson, 0.5, Dimension::D3}, 0.5},
        {{Statistics::Boson, 1.15, Dimension::D3}, 0.9},
        {{Statistics::Boson, 2.0, Dimension::D2}, 0.1},
        {{Statistics::Fermion, 1.0, Dimension::D3}, 1.0},
        {{Statistics::Fermion, 10.0, Dimension::D2}, 10.0},
        {{Statistics::Fermion, 0.5, Dimension::D2}, 0.1},
    };
    double worst = 0.0;
    for (const auto& p : pts) {
      try {
        const MomentSet m = moment_integrals(p.spec, p.z, cfg);
        worst = std::max(worst, detail::rel_diff(determinant_curvature_oracle(m, 1.0, cfg),
                                                 determinant_curvature_oracle(m, 2.0, cfg)));
      } catch (const Error&) {
        worst = INFINITY;
      }
    }
    report.lines.push_back({"beta independence of reduced R", worst <= 1e-8,
                            "6 points, max rel diff " + detail::sci(worst) + " (tol 1e-8)"});
  }

  report.seconds = std::chrono::duration<double>(clock::now() - t0).count();
  return report;
}

inline void print_report(std::ostream& os, const SelfCheckReport& report) {
  for (const auto& l : report.lines) {
    os << (l.passed ? "[PASS] " : "[FAIL] ") << l.name << ": " << l.detail << '\n';
  }
  os << (report.passed() ? "selfcheck passed" : "selfcheck FAILED") << " in "
     << detail::sci(report.seconds) << " s\n";
}

}  // namespace qgeom
