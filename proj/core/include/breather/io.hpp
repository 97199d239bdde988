// Copyright (c) 2026 The breather developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>

#include "breather/solver.hpp"
#include "breather/verification.hpp"

namespace breather {

// Run configuration: one strict JSON document (version field required,
// unknown keys rejected).
struct RunConfig {
  int version = 1;
  MaterialSpec material;
  int cells = 256;
  double extent = 40.0;
  int max_harmonic = 8;
  int time_samples = 0; // default 8*K, at least 4K+1
  int kernel_cutoff = 0; // default 4*K
  SolverConfig solver;
  std::vector<int> subharmonics;
  int lattice_transverse = 48;
  int lattice_z = 16;
  int lattice_t = 16;
  std::string output_dir = "out";

  SpaceGrid make_grid() const;
  TimeGrid make_time_grid() const;
};

RunConfig parse_run_config_file(const std::filesystem::path& path);
RunConfig parse_run_config(const std::string& json_text,
                           const std::filesystem::path& base_dir = ".");

MaterialSpec parse_material(const std::string& json_text, int kernel_cutoff);
std::string material_to_json(const MaterialSpec& spec);

TorusMeasure parse_kernel(const std::string& json_text, double T, int cutoff);

// Binary field file plus JSON sidecar (grid metadata and an FNV-1a checksum
// of the payload). Writing creates `path` and `path`.json.
void write_field(const std::filesystem::path& path, const Field& u);
Field read_field(const std::filesystem::path& path); // verifies the checksum

std::string solve_report_to_json(const SolveReport& report, const RunConfig* cfg = nullptr);
std::string residual_report_to_json(const ResidualReport& report);
std::string assumption_report_to_json(const AssumptionReport& report);
std::string invariant_matrix_to_json(const InvariantMatrix& matrix);
std::string family_report_to_json(const FamilyReport& family);
std::string periodic_comparison_to_json(const PeriodicComparison& cmp);

// CSV with one row per lattice sample: coordinates and the 12 field
// components. The companion metadata JSON records the normalization constants.
void write_fields_csv(const std::filesystem::path& path, const EMFieldSet& fields);
std::string fields_metadata_json(const EMFieldSet& fields);

std::uint64_t fnv1a64(const void* data, size_t bytes);

} // namespace breather
