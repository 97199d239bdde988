// Copyright (c) 2026 The breather developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "breather/grid.hpp"

namespace breather {

SpaceGrid SpaceGrid::slab(int N, double L) {
  if (N < 8) throw Error("SpaceGrid: need at least 8 cells");
  if (L <= 0.0) throw Error("SpaceGrid: slab half-width must be positive");
  SpaceGrid g;
  g.geometry_ = Geometry::Slab;
  g.N_ = N;
  g.extent_ = L;
  g.spacing_ = 2.0 * L / N;
  g.nodes_.resize(N - 1);
  g.weights_.assign(N - 1, g.spacing_);
  for (int j = 1; j < N; ++j) g.nodes_[j - 1] = -L + j * g.spacing_;
  return g;
}

SpaceGrid SpaceGrid::cylindrical(int N, double R) {
  if (N < 8) throw Error("SpaceGrid: need at least 8 cells");
  if (R <= 0.0) throw Error("SpaceGrid: outer radius must be positive");
  SpaceGrid g;
  g.geometry_ = Geometry::Cylindrical;
  g.N_ = N;
  g.extent_ = R;
  g.spacing_ = R / N;
  g.nodes_.resize(N);
  g.weights_.resize(N);
  for (int j = 0; j < N; ++j) {
    g.nodes_[j] = (j + 0.5) * g.spacing_;
    g.weights_[j] = g.nodes_[j] * g.spacing_;
  }
  return g;
}

} // namespace breather
