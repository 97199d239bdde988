// Copyright (c) 2026 The breather developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <span>
#include <vector>

#include "breather/grid.hpp"

namespace breather {

// Per-mode second-order spatial operator in tridiagonal form, symmetric and
// positive definite in the grid's weighted inner product when V_k > 0.
//
// Slab: (A u)_j = (-u_{j-1} + 2 u_j - u_{j+1})/dx^2 + omega^2 k^2 V_k(x_j) u_j
// with homogeneous Dirichlet values at +-L.
//
// Cylindrical: conservative discretization of
//   -(1/r^2) d_r r^3 d_r (u/r) + omega^2 k^2 V_k(r) u
// (the flux form of -d_r^2 - (1/r) d_r + 1/r^2), with u(0) = 0 built in by
// the vanishing innermost flux and u(R) = 0 at the outer wall.
class ModeOperator {
public:
  ModeOperator() = default;
  ModeOperator(SpaceGrid grid, int k, std::vector<double> sub, std::vector<double> diag,
               std::vector<double> super);

  int harmonic() const { return k_; }
  const SpaceGrid& grid() const { return grid_; }
  const std::vector<double>& diagonal() const { return diag_; }
  const std::vector<double>& subdiagonal() const { return sub_; }
  const std::vector<double>& superdiagonal() const { return super_; }

  std::vector<std::complex<double>> apply(std::span<const std::complex<double>> u) const;
  std::vector<double> apply(std::span<const double> u) const;

  // Direct tridiagonal solve; throws SingularOperator on pivot underflow.
  // Residual is at the level of roundoff times the condition number.
  std::vector<std::complex<double>> solve(std::span<const std::complex<double>> rhs) const;
  std::vector<double> solve(std::span<const double> rhs) const;

private:
  void factor(); // LU without pivoting (diagonally dominant by construction)

  SpaceGrid grid_;
  int k_ = 0;
  std::vector<double> sub_, diag_, super_;
  std::vector<double> lu_diag_, lu_lower_; // cached factorization
};

// Builds the tridiagonal operator for harmonic k from V_k(x) = 1/c^2 - 1 -
// F_k[G(x)] sampled at the grid nodes. Throws NonElliptic when V_k <= 0
// somewhere on the grid.
ModeOperator build_mode_operator(const MaterialSpec& spec, const SpaceGrid& grid, int k);

// Same, with the periodic part of the material only (V_k from G_per).
ModeOperator build_mode_operator_periodic(const MaterialSpec& spec, const SpaceGrid& grid,
                                          int k);

} // namespace breather
