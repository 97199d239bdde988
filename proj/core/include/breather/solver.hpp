// Copyright (c) 2026 The breather developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "breather/functional.hpp"

namespace breather {

struct SolverConfig {
  double tol_grad = 1e-9;       // relative: ||grad||_H <= tol * ||u||_H
  int max_iter = 20000;
  double initial_step = 1.0;    // in H-geometry
  double backtrack_factor = 0.5;
  double armijo_constant = 1e-4;
  int initial_mode = 0;         // 0 = lowest regular harmonic
  double envelope_width = 3.0;  // sigma of the initial Gaussian envelope
  std::uint64_t seed = 1;       // drives perturbation restarts only
};

struct IterationSample {
  int iteration = 0;
  double energy = 0.0;
  double grad_norm = 0.0;
  double step = 0.0;
};

struct SolveReport {
  Field u;
  EnergyBreakdown energy;
  double grad_norm = 0.0;          // absolute H-norm of the gradient
  double grad_norm_rel = 0.0;      // relative to ||u||_H
  int iterations = 0;
  bool converged = false;
  double mountain_pass_level = 0.0; // max_s J(s u) along the final ray
  double energy_identity_defect = 0.0; // |J - (1/4)<u,u>_H|
  double tail_mass = 0.0;          // outer-10% fraction of the L2 mass
  double minimal_period = 0.0;     // smallest T/m leaving u invariant
  std::vector<int> active_modes;   // harmonics above the activity threshold
  std::uint64_t seed = 0;
  int restarts = 0;
  AssumptionReport assumptions;
  std::vector<IterationSample> trace;
};

// Mountain-pass initial element: a Gaussian envelope on the initial harmonic,
// centered where h is largest, rescaled onto the Nehari manifold. Recentered
// and narrowed (up to 8 attempts) when int h phi^4 <= 0; throws
// NoPositiveQuartic when every attempt fails.
Field initial_guess(const Problem& pb, const SolverConfig& cfg);

// Nehari-constrained preconditioned gradient descent from initial_guess (or
// the supplied start). Iterates u <- rescale(u - s grad) with Armijo
// backtracking on the Nehari-restricted energy, strictly monotone in J.
// Throws MaxIterExceeded / NoDescentDirection; hard assumption failures are
// reported via Error before iterating.
SolveReport ground_state(const Problem& pb, const SolverConfig& cfg,
                         const Field* start = nullptr);

// Minimal period of a computed field: T/m for the largest m dividing all
// active harmonics.
double detect_minimal_period(const Field& u, double activity_tol = 1e-9);

struct FamilyMember {
  int n = 0;
  bool solved = false;
  std::string notice; // set when skipped (e.g. no regular modes for this n)
  std::optional<SolveReport> report;
};

struct FamilyReport {
  std::vector<FamilyMember> members;
  // distinct[i][j] for solved members i<j, by minimal period or L2 distance.
  std::vector<std::vector<bool>> distinct;
  std::vector<std::vector<bool>> distinct_by_period;
};

// Ground states of the subharmonic family: member n solves the material
// restricted to period T/n on the same grid with the same mode cutoff.
// Infeasible n (no regular modes) are skipped with a notice.
FamilyReport subharmonic_family(const MaterialSpec& spec, const SpaceGrid& grid,
                                const TimeGrid& tg, int K, const SolverConfig& cfg,
                                const std::vector<int>& n_list);

struct PeriodicComparison {
  SolveReport full;
  SolveReport periodic;
  double full_energy = 0.0;
  double periodic_energy = 0.0;
  std::string verdict; // "consistent" | "inconclusive" | "violated"
};

// Solves the full and the periodic-background problem on the same grid and
// compares ground-state level estimates (the full problem is additionally
// descended from the periodic solution's Nehari ray, so its level estimate is
// never worse than that ray's maximum).
PeriodicComparison periodic_comparison(const MaterialSpec& spec, const SpaceGrid& grid,
                                       const TimeGrid& tg, int K, const SolverConfig& cfg,
                                       double tol = 1e-6);

} // namespace breather
