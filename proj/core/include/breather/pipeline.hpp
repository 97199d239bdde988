// Copyright (c) 2026 The breather developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>

#include "breather/io.hpp"

namespace breather {

// Exit-code contract shared by the pipeline and the CLI:
//   0 success (and, for solve, every verification passed)
//   1 assumption or verification failure
//   2 usage / configuration error
//   3 solver non-convergence
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerification = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNoConvergence = 3;

struct PipelineOptions {
  std::filesystem::path output_dir; // empty = config's output_dir
  bool quiet = false;
};

// Validates assumptions against the configured grid, writes
// assumption_report.json, exits 1 on hard failures.
int cmd_validate(const RunConfig& cfg, const PipelineOptions& opt, std::ostream& log);

// Full pipeline: validate, solve, reconstruct, verify; writes solution.field
// (+ sidecar), solve_report.json, fields.csv (+ fields_meta.json) and
// residual_report.json (with the invariant matrix embedded); per-member
// artifacts under subharmonic_n<k>/ when a family is requested.
int cmd_solve(const RunConfig& cfg, const PipelineOptions& opt, std::ostream& log);

// Reads artifacts from the output directory (read-only) and emits a summary
// plus plot-ready CSV tables under report/.
int cmd_report(const RunConfig& cfg, const PipelineOptions& opt, std::ostream& log);

} // namespace breather
