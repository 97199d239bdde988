// Copyright (c) 2026 The breather developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "breather/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

namespace breather {

namespace {

std::filesystem::path resolve_out(const RunConfig& cfg, const PipelineOptions& opt) {
  const std::filesystem::path dir =
      opt.output_dir.empty() ? std::filesystem::path(cfg.output_dir) : opt.output_dir;
  std::filesystem::create_directories(dir);
  return dir;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (text.empty() || text.back() != '\n') out << '\n';
}

FieldLattice default_lattice(const RunConfig& cfg, const Problem& pb) {
  FieldLattice lat;
  const int n = pb.grid().num_nodes();
  lat.node_stride = std::max(1, n / std::max(3, cfg.lattice_transverse));
  lat.node_start = (n - 1 - lat.node_stride * ((n - 1) / lat.node_stride)) / 2;
  lat.nz = std::max(3, cfg.lattice_z);
  lat.nt = std::max(3, cfg.lattice_t);
  lat.dz = pb.spec().c * pb.spec().T / lat.nz;
  lat.dt = pb.spec().T / lat.nt;
  return lat;
}

void write_member_artifacts(const std::filesystem::path& dir, const RunConfig& cfg,
                            const Problem& pb, const SolveReport& report,
                            std::ostream& log, bool quiet, bool& verify_ok) {
  std::filesystem::create_directories(dir);
  write_field(dir / "solution.field", report.u);
  write_text(dir / "solve_report.json", solve_report_to_json(report, &cfg));

  const ProfilePair pair = profile_from_u(pb, report.u);
  const FieldLattice lat = default_lattice(cfg, pb);
  const EMFieldSet fields = assemble_fields(pb, pair, lat);
  write_fields_csv(dir / "fields.csv", fields);
  write_text(dir / "fields_meta.json", fields_metadata_json(fields));

  const ResidualReport rr = full_residual_report(pb, report, pair);
  const InvariantMatrix matrix = invariant_suite(pb, report, report.seed + 1000);

  nlohmann::json combined = nlohmann::json::parse(residual_report_to_json(rr));
  combined["invariants"] = nlohmann::json::parse(invariant_matrix_to_json(matrix));
  write_text(dir / "residual_report.json", combined.dump(2));

  if (!quiet) {
    log << "  J = " << report.energy.total
        << "  |grad|_H/|u|_H = " << report.grad_norm_rel
        << "  iterations = " << report.iterations << "\n";
    log << "  profile residual (rel) = " << rr.profile_residual_rel
        << "  tail mass (outer 10%) = " << report.tail_mass << "\n";
    log << "  invariants: " << (matrix.all_pass() ? "all pass" : "FAILURES") << "\n";
  }
  verify_ok = verify_ok && matrix.all_pass() && report.converged;
}

} // namespace

int cmd_validate(const RunConfig& cfg, const PipelineOptions& opt, std::ostream& log) {
  const auto out_dir = resolve_out(cfg, opt);
  MaterialSpec spec = cfg.material;
  spec.validation_samples = cfg.make_grid().nodes();
  const AssumptionReport report = validate_assumptions(spec, cfg.max_harmonic);
  write_text(out_dir / "assumption_report.json", assumption_report_to_json(report));
  if (!opt.quiet) {
    for (const auto& c : report.checks) {
      log << "[" << c.name << "] "
          << (c.verdict == AssumptionCheck::Verdict::Pass
                  ? "pass"
                  : (c.verdict == AssumptionCheck::Verdict::Fail ? "FAIL" : "n/a"))
          << (c.hard && c.verdict == AssumptionCheck::Verdict::Fail ? " (hard)" : "")
          << "  " << c.detail << "\n";
    }
  }
  return report.hard_fail() ? kExitVerification : kExitOk;
}

int cmd_solve(const RunConfig& cfg, const PipelineOptions& opt, std::ostream& log) {
  const auto out_dir = resolve_out(cfg, opt);

  MaterialSpec spec = cfg.material;
  spec.validation_samples = cfg.make_grid().nodes();
  const AssumptionReport pre = validate_assumptions(spec, cfg.max_harmonic);
  write_text(out_dir / "assumption_report.json", assumption_report_to_json(pre));
  if (pre.hard_fail()) {
    log << "validation failed; not solving\n";
    return kExitVerification;
  }

  bool verify_ok = true;
  try {
    Problem pb(spec, cfg.make_grid(), cfg.make_time_grid(), cfg.max_harmonic);
    if (!opt.quiet) log << "solving ground state...\n";
    const SolveReport report = ground_state(pb, cfg.solver);
    write_member_artifacts(out_dir, cfg, pb, report, log, opt.quiet, verify_ok);

    if (!cfg.subharmonics.empty()) {
      if (!opt.quiet) log << "subharmonic family:";
      const FamilyReport family = subharmonic_family(
          spec, pb.grid(), pb.time_grid(), cfg.max_harmonic, cfg.solver, cfg.subharmonics);
      write_text(out_dir / "family_report.json", family_report_to_json(family));
      for (const auto& member : family.members) {
        if (!member.solved) {
          if (!opt.quiet) log << "\n  n=" << member.n << " skipped: " << member.notice;
          continue;
        }
        if (!opt.quiet) {
          log << "\n  n=" << member.n
              << " minimal period = " << member.report->minimal_period;
        }
        const MaterialSpec sub = subharmonic_restrict(spec, member.n);
        TimeGrid sub_tg = pb.time_grid();
        sub_tg.T = sub.T;
        Problem sub_pb(sub, pb.grid(), sub_tg, cfg.max_harmonic);
        std::filesystem::path mdir = out_dir / ("subharmonic_n" + std::to_string(member.n));
        bool member_ok = true;
        std::ostringstream devnull;
        write_member_artifacts(mdir, cfg, sub_pb, *member.report, devnull, true, member_ok);
        verify_ok = verify_ok && member_ok;
      }
      if (!opt.quiet) log << "\n";
    }
  } catch (const MaxIterExceeded& e) {
    log << "solver did not converge: " << e.what() << "\n";
    return kExitNoConvergence;
  } catch (const NoDescentDirection& e) {
    log << "solver stalled: " << e.what() << "\n";
    return kExitNoConvergence;
  }

  return verify_ok ? kExitOk : kExitVerification;
}

int cmd_report(const RunConfig& cfg, const PipelineOptions& opt, std::ostream& log) {
  const std::filesystem::path out_dir =
      opt.output_dir.empty() ? std::filesystem::path(cfg.output_dir) : opt.output_dir;
  const auto field_path = out_dir / "solution.field";
  const auto report_path = out_dir / "solve_report.json";
  if (!std::filesystem::exists(field_path) || !std::filesystem::exists(report_path)) {
    throw MissingArtifact("no solve artifacts under " + out_dir.string() +
                          " (expected solution.field and solve_report.json)");
  }

  const Field u = read_field(field_path);
  MaterialSpec spec = cfg.material;
  spec.validation_samples = cfg.make_grid().nodes();
  Problem pb(spec, cfg.make_grid(), cfg.make_time_grid(), cfg.max_harmonic);
  if (!(u.grid() == pb.grid())) {
    throw ConfigError("report: artifact grid does not match the configuration");
  }

  const double quad = h_inner_product(pb, u, u, WeightKind::Potential);
  const EnergyBreakdown e = energy(pb, u);

  const auto report_dir = out_dir / "report";
  std::filesystem::create_directories(report_dir);

  // Mode amplitude table, sorted by |k|.
  {
    std::ofstream modes(report_dir / "modes.csv", std::ios::trunc);
    modes.precision(17);
    modes << "k,l2_amplitude,max_amplitude\n";
    for (int i = 0; i < u.num_modes(); ++i) {
      double l2 = 0.0, mx = 0.0;
      for (int j = 0; j < u.num_nodes(); ++j) {
        l2 += u.grid().weight(j) * std::norm(u.profile(i)[j]);
        mx = std::max(mx, std::abs(u.profile(i)[j]));
      }
      modes << u.harmonic(i) << ',' << std::sqrt(2.0 * l2) << ',' << mx << '\n';
    }
  }

  // Spatial profiles: per-mode magnitude plus two time slices.
  {
    std::ofstream prof(report_dir / "profile.csv", std::ios::trunc);
    prof.precision(17);
    prof << "x";
    for (int i = 0; i < u.num_modes(); ++i) prof << ",abs_u_k" << u.harmonic(i);
    prof << ",u_t0,u_tquarter\n";
    TimeGrid tg{4, u.period()};
    const TimeSamples s = time_synthesis(u, tg);
    for (int j = 0; j < u.num_nodes(); ++j) {
      prof << u.grid().node(j);
      for (int i = 0; i < u.num_modes(); ++i) prof << ',' << std::abs(u.profile(i)[j]);
      prof << ',' << s.at(j, 0) << ',' << s.at(j, 1) << '\n';
    }
  }

  std::ostringstream summary;
  summary.precision(15);
  summary << "energy J           = " << e.total << "\n"
          << "quadratic term     = " << e.quadratic << "\n"
          << "quartic term       = " << e.quartic << "\n"
          << "(1/4)<u,u>_H       = " << 0.25 * quad << "\n"
          << "identity defect    = " << std::abs(e.total - 0.25 * quad) << "\n"
          << "active modes       = " << u.num_modes() << "\n"
          << "minimal period     = " << detect_minimal_period(u) << "\n";
  write_text(report_dir / "summary.txt", summary.str());
  if (!opt.quiet) log << summary.str();
  return kExitOk;
}

} // namespace breather
