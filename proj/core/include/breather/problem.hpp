// Copyright (c) 2026 The breather developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <memory>
#include <span>
#include <vector>

#include "breather/field.hpp"
#include "breather/operators.hpp"

namespace breather {

enum class WeightKind {
  Plain,     // mass weight 1           (the <<.,.>> inner product)
  Potential, // mass weight V_k(x)      (the <.,.>_H inner product; J uses this)
};

// Discrete problem context: material + grids + mode bookkeeping, with the
// per-mode potentials and tridiagonal operators built once. Construction
// validates kernel positivity on R (NonpositiveKernel) and ellipticity
// (NonElliptic through operator assembly).
class Problem {
public:
  Problem(MaterialSpec spec, SpaceGrid grid, TimeGrid tg, int K);

  const MaterialSpec& spec() const { return spec_; }
  const SpaceGrid& grid() const { return grid_; }
  const TimeGrid& time_grid() const { return tg_; }
  const ModeSet& modes() const { return modes_; }
  double omega() const { return spec_.omega(); }
  int K() const { return modes_.K; }

  const std::vector<double>& h_nodes() const { return h_nodes_; }
  // V_k at the nodes for the i-th regular mode.
  std::span<const double> potential(int mode_index) const;
  const ModeOperator& op(int mode_index) const { return ops_[mode_index]; }
  // Operator for an arbitrary harmonic (singular modes of the reconstruction);
  // built on first use, cached.
  const ModeOperator& op_for_harmonic(int k) const;

  double nu_coeff(int k) const { return spec_.nu.coeff(k); }
  // The H-norm mode weight 1/(omega^2 k^2 F_k[nu]).
  double mode_weight(int k) const;

  Field new_field() const { return Field(grid_, modes_, spec_.T); }

private:
  MaterialSpec spec_;
  SpaceGrid grid_;
  TimeGrid tg_;
  ModeSet modes_;
  std::vector<double> h_nodes_;
  std::vector<double> potentials_; // mode-major V_k(x_j)
  std::vector<ModeOperator> ops_;
  mutable std::map<int, ModeOperator> singular_ops_;
};

// The weighted inner products of the discrete function space:
//   sum_{k in R} 1/(omega^2 k^2 F_k[nu]) *
//     [ D(u_k, v_k) + omega^2 k^2 sum_j w_j W_k(x_j) u_k conj(v_k) ]
// where D is the summation-by-parts-compatible derivative form (slab:
// midpoint differences; cylindrical: conservative r^3-flux form carrying the
// 1/r^2 term) and W_k = 1 (Plain) or V_k (Potential). The +-k pairing is
// accounted for (real result).
double h_inner_product(const Problem& pb, const Field& u, const Field& v,
                       WeightKind weights);

// Derivative bracket of a single mode pair (the D above), exposed for tests.
double dirichlet_form(const SpaceGrid& grid, std::span<const Complex> u,
                      std::span<const Complex> v);

// Periodic-background companion: same geometry/grids, material restricted to
// the periodic components of G and h. Requires a declared split.
MaterialSpec periodic_background(const MaterialSpec& spec);

} // namespace breather
