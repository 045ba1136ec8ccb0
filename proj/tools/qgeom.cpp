// qgeom: curvature sweeps, virial curves, sign tables and self-check for
// SU_q(2)-invariant ideal gases.
//
// Exit codes: 0 success, 1 usage error, 2 every grid point failed with a
// domain error, 3 self-check failure.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"

#include "qgeom/qgeom.hpp"
#include "qgeom/selfcheck.hpp"
#include "qgeom/sweep.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitAllDomain = 2;
constexpr int kExitSelfCheck = 3;

struct Options {
  std::string stat = "boson";
  int dim = 3;
  std::string q;
  std::string z;
  int points = 49;
  std::string normalization = "paper";
  double rel_tol = 1e-10;
  std::string format = "csv";
  std::string out;
  unsigned threads = 0;
};

qgeom::SweepRequest build_request(qgeom::SweepMode mode, const Options& o) {
  qgeom::SweepRequest req;
  req.mode = mode;
  req.statistics = o.stat == "fermion" ? qgeom::Statistics::Fermion : qgeom::Statistics::Boson;
  req.dimension = o.dim == 2 ? qgeom::Dimension::D2 : qgeom::Dimension::D3;
  req.normalization =
      o.normalization == "raw" ? qgeom::Normalization::Raw : qgeom::Normalization::PaperFactor2;
  req.format = o.format == "json" ? qgeom::OutputFormat::Json : qgeom::OutputFormat::Csv;
  req.quadrature.rel_tol = o.rel_tol;
  req.threads = o.threads;
  if (!o.q.empty()) req.q_values = qgeom::parse_grid(o.q, o.points);
  if (!o.z.empty()) req.z_values = qgeom::parse_grid(o.z, o.points);
  return req;
}

bool all_domain_errors(const std::vector<qgeom::CurvatureRow>& rows) {
  return !rows.empty() && std::all_of(rows.begin(), rows.end(), [](const auto& r) {
    return !r.R_reduced.has_value();
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thermodynamic curvature of SU_q(2) boson and fermion gases"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&o](CLI::App* sub) {
    sub->add_option("--rel-tol", o.rel_tol, "Quadrature relative tolerance")
        ->check(CLI::Range(1e-15, 0.5));
    sub->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", o.out, "Output path (default stdout)");
    sub->add_option("--threads", o.threads, "Worker threads (0: all cores)");
  };
  auto add_gas = [&o](CLI::App* sub) {
    sub->add_option("--stat", o.stat, "Statistics")->check(CLI::IsMember({"boson", "fermion"}));
    sub->add_option("--dim", o.dim, "Spatial dimension")->check(CLI::IsMember({2, 3}));
    sub->add_option("--normalization", o.normalization, "Curvature normalization")
        ->check(CLI::IsMember({"paper", "raw"}));
    sub->add_option("--points", o.points, "Points for lo:hi ranges")->check(CLI::PositiveNumber);
  };

  auto* cz = app.add_subcommand("curvature-z", "R as a function of z for a list of q");
  add_gas(cz);
  add_common(cz);
  cz->add_option("--q", o.q, "q values: list a,b,c or range lo:hi[:n]")->required();
  cz->add_option("--z", o.z, "z values: list or range lo:hi[:n]")->required();

  auto* cq = app.add_subcommand("curvature-q", "R as a function of q for a list of z");
  add_gas(cq);
  add_common(cq);
  cq->add_option("--q", o.q, "q values: list or range")->required();
  cq->add_option("--z", o.z, "z values: list or range")->required();

  auto* vi = app.add_subcommand("virial", "Second virial coefficients alpha, delta, eta, zeta vs q");
  add_common(vi);
  vi->add_option("--q", o.q, "q values: list or range")->required();
  vi->add_option("--points", o.points, "Points for lo:hi ranges")->check(CLI::PositiveNumber);

  auto* st = app.add_subcommand("signtable", "Low-fugacity sign table of R");
  add_common(st);
  o.z = "0.05";
  st->add_option("--z", o.z, "Fugacity (default 0.05)");

  auto* sc = app.add_subcommand("selfcheck", "Run the oracle cross-validations");
  sc->add_option("--rel-tol", o.rel_tol, "Quadrature relative tolerance")
      ->check(CLI::Range(1e-15, 0.5));
  sc->add_option("--threads", o.threads, "Worker threads (0: all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  std::unique_ptr<std::ofstream> file;
  if (!o.out.empty()) {
    file = std::make_unique<std::ofstream>(o.out);
    if (!*file) {
      std::cerr << "cannot open output file " << o.out << "\n";
      return kExitUsage;
    }
  }
  std::ostream& os = file ? *file : std::cout;

  try {
    if (*sc) {
      qgeom::QuadratureConfig cfg;
      cfg.rel_tol = o.rel_tol;
      const auto report = qgeom::run_self_check(cfg, o.threads);
      qgeom::print_report(std::cout, report);
      return report.passed() ? 0 : kExitSelfCheck;
    }

    if (*vi) {
      const auto req = build_request(qgeom::SweepMode::VirialCurves, o);
      const auto rows = qgeom::run_virial_sweep(req.q_values);
      if (req.format == qgeom::OutputFormat::Json) {
        qgeom::write_virial_json(os, rows, req);
      } else {
        qgeom::write_virial_csv(os, rows);
      }
      return 0;
    }

    if (*st) {
      const auto req = build_request(qgeom::SweepMode::SignTable, o);
      if (req.z_values.size() != 1) throw std::invalid_argument("signtable takes a single --z");
      const double z = req.z_values.front();
      const auto entries = qgeom::sign_table(z, req.quadrature, req.threads);
      if (st->count("--format") == 0) {
        qgeom::render_sign_table(os, z, entries);
      } else if (req.format == qgeom::OutputFormat::Json) {
        qgeom::write_sign_table_json(os, z, entries, req);
      } else {
        qgeom::write_sign_table_csv(os, entries);
      }
      return 0;
    }

    const auto mode = *cz ? qgeom::SweepMode::RvsZ : qgeom::SweepMode::RvsQ;
    const auto req = build_request(mode, o);
    const auto rows = qgeom::run_curvature_sweep(req);
    if (req.format == qgeom::OutputFormat::Json) {
      qgeom::write_curvature_json(os, rows, req);
    } else {
      qgeom::write_curvature_csv(os, rows);
    }
    return all_domain_errors(rows) ? kExitAllDomain : 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const qgeom::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitAllDomain;
  }
}
