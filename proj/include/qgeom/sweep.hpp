#pragma once

/**
 * @file sweep.hpp
 * @brief Parameter sweeps and their tabular output (CSV / JSON), plus the
 * low-fugacity sign table. This is the engine behind the `qgeom` CLI.
 *
 * Grid points are evaluated by a small worker pool; rows are always emitted
 * in grid order. A point that fails (domain, convergence, degenerate metric)
 * keeps its row with an empty R and the message in the `error` column.
 */

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "json.hpp"

#include "qgeom/core.hpp"
#include "qgeom/geometry.hpp"
#include "qgeom/quadrature.hpp"
#include "qgeom/virial.hpp"

namespace qgeom {

inline constexpr std::string_view kVersion = "0.1.0";

enum class SweepMode { RvsZ, RvsQ, VirialCurves, SignTable, SelfCheck };
enum class OutputFormat { Csv, Json };

struct SweepRequest {
  SweepMode mode = SweepMode::RvsZ;
  Statistics statistics = Statistics::Boson;
  Dimension dimension = Dimension::D3;
  std::vector<double> q_values;
  std::vector<double> z_values;
  Normalization normalization = Normalization::PaperFactor2;
  OutputFormat format = OutputFormat::Csv;
  QuadratureConfig quadrature{};
  unsigned threads = 0;  // 0: hardware concurrency
};

struct CurvatureRow {
  Statistics statistics = Statistics::Boson;
  Dimension dimension = Dimension::D3;
  double q = 1.0;
  double z = 0.5;
  std::optional<double> R_reduced;
  Normalization normalization = Normalization::PaperFactor2;
  std::string error;
};

struct VirialRow {
  double q = 1.0;
  double alpha = 0.0;
  double delta = 0.0;
  double eta = 0.0;
  double zeta = 0.0;
};

// ---------------------------------------------------------------------------
// Grids
// ---------------------------------------------------------------------------

inline double parse_number(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  }
  return v;
}

inline std::vector<double> linspace(double lo, double hi, int points) {
  if (points < 1) throw std::invalid_argument("point count must be positive");
  if (points == 1) return {lo};
  std::vector<double> out(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (points - 1);
  }
  out.back() = hi;
  return out;
}

/// "a:b" (uses `points`), "a:b:n", or a comma separated list "v1,v2,...".
inline std::vector<double> parse_grid(std::string_view text, int points) {
  if (text.empty()) throw std::invalid_argument("empty grid specification");
  if (text.find(':') != std::string_view::npos) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
      if (i == text.size() || text[i] == ':') {
        parts.push_back(text.substr(start, i - start));
        start = i + 1;
      }
    }
    if (parts.size() != 2 && parts.size() != 3) {
      throw std::invalid_argument("range must be lo:hi or lo:hi:n");
    }
    const double lo = parse_number(parts[0]);
    const double hi = parse_number(parts[1]);
    if (!(hi >= lo)) throw std::invalid_argument("range needs lo <= hi");
    const int n = parts.size() == 3 ? static_cast<int>(parse_number(parts[2])) : points;
    return linspace(lo, hi, n);
  }
  std::vector<double> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ',') {
      out.push_back(parse_number(text.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

/// Runs fn(i) for i in [0, n) on up to `threads` workers.
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(n, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

inline CurvatureRow evaluate_point(const GasSpec& spec, double z, Normalization norm,
                                   const QuadratureConfig& cfg) {
  CurvatureRow row{spec.statistics, spec.dimension, spec.q, z, std::nullopt, norm, {}};
  try {
    row.R_reduced = curvature_closed_form(spec, z, cfg, norm).R_reduced;
  } catch (const Error& e) {
    row.error = e.what();
  }
  return row;
}

inline std::vector<CurvatureRow> run_curvature_sweep(const SweepRequest& req) {
  if (req.q_values.empty() || req.z_values.empty()) {
    throw std::invalid_argument("curvature sweeps need non-empty q and z grids");
  }
  struct Point {
    double q, z;
  };
  std::vector<Point> grid;
  if (req.mode == SweepMode::RvsQ) {
    for (double z : req.z_values)
      for (double q : req.q_values) grid.push_back({q, z});
  } else {
    for (double q : req.q_values)
      for (double z : req.z_values) grid.push_back({q, z});
  }

  std::vector<CurvatureRow> rows(grid.size());
  parallel_for(grid.size(), req.threads, [&](std::size_t i) {
    const GasSpec spec{req.statistics, grid[i].q, req.dimension};
    rows[i] = evaluate_point(spec, grid[i].z, req.normalization, req.quadrature);
  });
  return rows;
}

inline std::vector<VirialRow> run_virial_sweep(const std::vector<double>& q_values) {
  std::vector<VirialRow> rows;
  rows.reserve(q_values.size());
  for (double q : q_values) {
    rows.push_back({q, alpha(q), delta(q), eta(q), zeta_fermion_d2(q)});
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

/// 17 significant digits: enough to round-trip any double.
inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

inline void write_curvature_csv(std::ostream& os, const std::vector<CurvatureRow>& rows) {
  os << "statistics,D,q,z,R_reduced,normalization,error\n";
  for (const auto& r : rows) {
    os << to_string(r.statistics) << ',' << to_int(r.dimension) << ',' << format_double(r.q)
       << ',' << format_double(r.z) << ','
       << (r.R_reduced ? format_double(*r.R_reduced) : std::string()) << ','
       << to_string(r.normalization) << ',' << csv_escape(r.error) << '\n';
  }
}

inline void write_virial_csv(std::ostream& os, const std::vector<VirialRow>& rows) {
  os << "q,alpha,delta,eta,zeta\n";
  for (const auto& r : rows) {
    os << format_double(r.q) << ',' << format_double(r.alpha) << ','
       << format_double(r.delta) << ',' << format_double(r.eta) << ','
       << format_double(r.zeta) << '\n';
  }
}

inline nlohmann::json sweep_metadata(const SweepRequest& req) {
  return {
      {"version", std::string(kVersion)},
      {"normalization", std::string(to_string(req.normalization))},
      {"units", "lambda^D/volume"},
      {"tolerances",
       {{"rel_tol", req.quadrature.rel_tol},
        {"abs_tol", req.quadrature.abs_tol},
        {"max_subdivisions", req.quadrature.max_subdivisions},
        {"series_tol", req.quadrature.series_tol}}},
  };
}

inline void write_curvature_json(std::ostream& os, const std::vector<CurvatureRow>& rows,
                                 const SweepRequest& req) {
  nlohmann::json records = nlohmann::json::array();
  for (const auto& r : rows) {
    records.push_back({
        {"statistics", std::string(to_string(r.statistics))},
        {"D", to_int(r.dimension)},
        {"q", r.q},
        {"z", r.z},
        {"R_reduced", r.R_reduced ? nlohmann::json(*r.R_reduced) : nlohmann::json(nullptr)},
        {"normalization", std::string(to_string(r.normalization))},
        {"error", r.error},
    });
  }
  const nlohmann::json doc{{"metadata", sweep_metadata(req)}, {"records", records}};
  os << doc.dump(2) << '\n';
}

inline void write_virial_json(std::ostream& os, const std::vector<VirialRow>& rows,
                              const SweepRequest& req) {
  nlohmann::json records = nlohmann::json::array();
  for (const auto& r : rows) {
    records.push_back(
        {{"q", r.q}, {"alpha", r.alpha}, {"delta", r.delta}, {"eta", r.eta}, {"zeta", r.zeta}});
  }
  nlohmann::json meta = sweep_metadata(req);
  meta.erase("normalization");
  meta.erase("units");
  const nlohmann::json doc{{"metadata", meta}, {"records", records}};
  os << doc.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// Sign table
// ---------------------------------------------------------------------------

struct SignTableEntry {
  Dimension dimension = Dimension::D3;
  Statistics statistics = Statistics::Boson;
  double q_lo = 0.3;
  double q_hi = 8.0;
  double R_lo = 0.0;  // Raw curvature at q_lo
  double R_hi = 0.0;
  std::optional<double> q_star;         // curvature sign change
  std::optional<double> virial_q_star;  // zero of the virial coefficient
};

/// Low-fugacity sign structure of R in q for the four gases, ordered
/// (D3 boson, D3 fermion, D2 boson, D2 fermion).
inline std::vector<SignTableEntry> sign_table(double z, const QuadratureConfig& cfg = {},
                                              unsigned threads = 0, double q_lo = 0.3,
                                              double q_hi = 8.0) {
  std::vector<SignTableEntry> entries{
      {Dimension::D3, Statistics::Boson, q_lo, q_hi, 0.0, 0.0, std::nullopt, std::nullopt},
      {Dimension::D3, Statistics::Fermion, q_lo, q_hi, 0.0, 0.0, std::nullopt, std::nullopt},
      {Dimension::D2, Statistics::Boson, q_lo, q_hi, 0.0, 0.0, std::nullopt, std::nullopt},
      {Dimension::D2, Statistics::Fermion, q_lo, q_hi, 0.0, 0.0, std::nullopt, std::nullopt},
  };
  parallel_for(entries.size(), threads, [&](std::size_t i) {
    auto& e = entries[i];
    const GasSpec spec{e.statistics, 1.0, e.dimension};
    e.R_lo = curvature_closed_form(spec.with_q(e.q_lo), z, cfg, Normalization::Raw).R_reduced;
    e.R_hi = curvature_closed_form(spec.with_q(e.q_hi), z, cfg, Normalization::Raw).R_reduced;
    e.q_star = curvature_sign_boundary(spec, z, e.q_lo, e.q_hi, cfg, 1e-4);
    const VirialKind kind = virial_kind(spec);
    e.virial_q_star = virial_threshold(kind);
  });
  return entries;
}

inline void render_sign_table(std::ostream& os, double z,
                              const std::vector<SignTableEntry>& entries) {
  auto sign = [](double R) { return R > 0.0 ? "R>0" : "R<0"; };
  auto fixed = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return std::string(buf);
  };
  os << "Sign of the scalar curvature at z = " << z << "\n";
  Dimension current = Dimension::D2;
  bool first = true;
  for (const auto& e : entries) {
    if (first || e.dimension != current) {
      os << "\nD=" << to_int(e.dimension) << "\n";
      current = e.dimension;
      first = false;
    }
    const std::string label = e.statistics == Statistics::Boson ? "QGB" : "QGF";
    const std::string virial =
        e.virial_q_star ? " (virial threshold " + fixed(*e.virial_q_star) + ")" : "";
    if (e.q_star) {
      os << "  " << label << "  q < " << fixed(*e.q_star) << "  " << sign(e.R_lo) << virial
         << "\n";
      os << "       q > " << fixed(*e.q_star) << "  " << sign(e.R_hi) << "\n";
    } else if ((e.R_lo > 0.0) == (e.R_hi > 0.0)) {
      os << "  " << label << "  all q in [" << e.q_lo << ", " << e.q_hi << "]  "
         << sign(e.R_lo) << virial << "\n";
    }
  }
}

inline void write_sign_table_csv(std::ostream& os, const std::vector<SignTableEntry>& entries) {
  os << "D,statistics,q_lo,q_hi,R_lo,R_hi,q_star,virial_q_star\n";
  for (const auto& e : entries) {
    os << to_int(e.dimension) << ',' << to_string(e.statistics) << ',' << format_double(e.q_lo)
       << ',' << format_double(e.q_hi) << ',' << format_double(e.R_lo) << ','
       << format_double(e.R_hi) << ',' << (e.q_star ? format_double(*e.q_star) : "") << ','
       << (e.virial_q_star ? format_double(*e.virial_q_star) : "") << '\n';
  }
}

inline void write_sign_table_json(std::ostream& os, double z,
                                  const std::vector<SignTableEntry>& entries,
                                  const SweepRequest& req) {
  nlohmann::json records = nlohmann::json::array();
  auto opt = [](const std::optional<double>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
  };
  for (const auto& e : entries) {
    records.push_back({{"D", to_int(e.dimension)},
                       {"statistics", std::string(to_string(e.statistics))},
                       {"q_lo", e.q_lo},
                       {"q_hi", e.q_hi},
                       {"R_lo", e.R_lo},
                       {"R_hi", e.R_hi},
                       {"q_star", opt(e.q_star)},
                       {"virial_q_star", opt(e.virial_q_star)}});
  }
  nlohmann::json meta = sweep_metadata(req);
  meta["z"] = z;
  meta["normalization"] = "raw";
  os << nlohmann::json{{"metadata", meta}, {"records", records}}.dump(2) << '\n';
}

}  // namespace qgeom
