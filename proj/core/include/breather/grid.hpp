// Copyright (c) 2026 The breather developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "breather/kernels.hpp"

namespace breather {

// Truncated spatial domain with homogeneous boundary values.
//
// Slab: cells of width dx = 2L/N on [-L, L]; owned nodes are the interior
// x_j = -L + j dx, j = 1..N-1 (boundary values are identically zero) and the
// quadrature weight is dx.
//
// Cylindrical: staggered nodes r_j = (j + 1/2) dr, j = 0..N-1, dr = R/N, with
// u(0) = 0 built into the scheme and u(R) = 0 at the outer wall; quadrature
// weight r_j dr (measure r dr).
class SpaceGrid {
public:
  static SpaceGrid slab(int N, double L);
  static SpaceGrid cylindrical(int N, double R);

  Geometry geometry() const { return geometry_; }
  int cells() const { return N_; }
  double extent() const { return extent_; }
  double spacing() const { return spacing_; }
  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  double node(int j) const { return nodes_[j]; }
  double weight(int j) const { return weights_[j]; }

  bool operator==(const SpaceGrid&) const = default;

private:
  Geometry geometry_ = Geometry::Slab;
  int N_ = 0;
  double extent_ = 0.0;
  double spacing_ = 0.0;
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

// Equispaced samples t_m = m T / M on the torus. Cubic products of degree-K
// trigonometric polynomials are alias-free on |k| <= K iff M >= 4K + 1.
struct TimeGrid {
  int M = 0;
  double T = 0.0;

  double sample(int m) const { return T * m / M; }
  bool cubic_safe(int K) const { return M >= 4 * K + 1; }
};

} // namespace breather
