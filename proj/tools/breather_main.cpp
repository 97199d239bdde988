// Copyright (c) 2026 The breather developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "breather/pipeline.hpp"

namespace {

// --subharmonics 1,2,3
std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stoi(item));
  }
  return out;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"traveling breather ground states in nonlinear Maxwell waveguides"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string subharmonics;
  std::string geometry_override;
  long long seed = -1;
  bool quiet = false;

  app.add_option("--config", config_path, "run configuration (JSON)")->required();
  app.add_option("--out", out_dir, "output directory (overrides the config)");
  app.add_option("--seed", seed, "random seed (overrides the config)");
  app.add_flag("--quiet", quiet, "suppress progress output");

  app.add_option("--subharmonics", subharmonics,
                 "comma-separated n list for the subharmonic family (solve)");
  app.add_option("--geometry", geometry_override,
                 "override the material geometry (slab|cylindrical)");
  auto* validate = app.add_subcommand("validate", "check material admissibility");
  auto* solve = app.add_subcommand("solve", "compute a breather and its artifacts");
  auto* report = app.add_subcommand("report", "summarize artifacts from a previous solve");
  for (auto* sub : {validate, solve, report}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : breather::kExitConfig;
  }

  try {
    breather::RunConfig cfg = breather::parse_run_config_file(config_path);
    if (seed >= 0) cfg.solver.seed = static_cast<std::uint64_t>(seed);
    if (!subharmonics.empty()) cfg.subharmonics = parse_int_list(subharmonics);
    if (!geometry_override.empty()) {
      if (geometry_override == "slab") {
        cfg.material.geometry = breather::Geometry::Slab;
      } else if (geometry_override == "cylindrical") {
        cfg.material.geometry = breather::Geometry::Cylindrical;
      } else {
        throw breather::ConfigError("--geometry must be slab or cylindrical");
      }
    }

    breather::PipelineOptions opt;
    opt.output_dir = out_dir;
    opt.quiet = quiet;

    if (validate->parsed()) return breather::cmd_validate(cfg, opt, std::cout);
    if (solve->parsed()) return breather::cmd_solve(cfg, opt, std::cout);
    if (report->parsed()) return breather::cmd_report(cfg, opt, std::cout);
    return breather::kExitConfig;
  } catch (const breather::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return breather::kExitConfig;
  } catch (const breather::MissingArtifact& e) {
    std::cerr << "missing artifact: " << e.what() << "\n";
    return breather::kExitConfig;
  } catch (const breather::MaxIterExceeded& e) {
    std::cerr << "no convergence: " << e.what() << "\n";
    return breather::kExitNoConvergence;
  } catch (const breather::NoDescentDirection& e) {
    std::cerr << "no convergence: " << e.what() << "\n";
    return breather::kExitNoConvergence;
  } catch (const breather::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return breather::kExitVerification;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return breather::kExitConfig;
  }
}
