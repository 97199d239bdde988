// Copyright (c) 2026 The breather developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>

#include "breather/problem.hpp"

namespace breather {

// Real time-periodic field as a one-sided harmonic table (k = 0 stored as a
// real DC coefficient, k > 0 paired with the implied conjugate).
struct HarmonicField {
  SpaceGrid grid;
  double period = 0.0;
  std::vector<int> harmonics;  // ascending, may include 0
  std::vector<Complex> coef;   // harmonic-major, [h * num_nodes + j]

  int index_of(int k) const;
  const Complex* profile(int idx) const {
    return coef.data() + static_cast<size_t>(idx) * grid.num_nodes();
  }
  Complex* profile(int idx) {
    return coef.data() + static_cast<size_t>(idx) * grid.num_nodes();
  }
  // Point evaluation sum_k c_k e^{i k omega t} (+ conjugates).
  double eval(int node, double t) const;
};

// The physical profile w recovered from the surrogate u. Variant i: w = u.
// Variant ii: w1 = (nu*)^{-1} u on R; w2 solves the singular-mode problem
// op_k w2_k = omega^2 k^2 (h u^3)_k for k in S, |k| <= K_sing (k = 0 vanishes).
struct ProfilePair {
  NonlinearityVariant variant = NonlinearityVariant::ConvolvedCube;
  Field w1;
  std::vector<int> singular_harmonics;
  std::vector<Complex> w2_coef; // harmonic-major over singular_harmonics

  bool has_w2() const { return !singular_harmonics.empty(); }
  // w = w1 + w2 merged into one harmonic table.
  HarmonicField combined() const;
};

// Recovers w from u per the material's nonlinearity variant. K_sing <= 0
// selects the default 3K (a cube of a degree-K field has degree 3K).
ProfilePair profile_from_u(const Problem& pb, const Field& u, int K_sing = 0);

// W = dt^{-1} w: W_k = w_k / (i omega k). Requires (and has) no DC mode.
HarmonicField time_antiderivative(const ProfilePair& pair);

// Space-time evaluation lattice: a uniformly strided subset of grid nodes
// crossed with equispaced z and t samples. For cylindrical geometries the
// in-plane point is (r cos(azimuth), r sin(azimuth)).
struct FieldLattice {
  int node_start = 0;
  int node_stride = 1;
  int node_count = 0; // 0 = all remaining nodes
  int nz = 1;
  int nt = 1;
  double z0 = 0.0, dz = 0.0;
  double t0 = 0.0, dt = 0.0;
  double azimuth = 0.5235987755982988; // pi/6

  std::vector<int> node_indices(const SpaceGrid& grid) const;
};

struct EMFieldSet {
  Geometry geometry = Geometry::Slab;
  std::vector<double> xs, ys; // per transverse sample ((x,0) slab, (x,y) cylindrical)
  std::vector<double> rs;     // radial coordinate (cylindrical; equals |x| slab)
  std::vector<double> zs, ts;
  // sample index s = (ix * nz + iz) * nt + it; components stored (X,Y,Z).
  std::vector<std::array<double, 3>> E, B, D, H;
  double eps0 = 1.0, mu0 = 1.0, c0 = 1.0; // internal normalization

  size_t sample_index(int ix, int iz, int it) const {
    return (static_cast<size_t>(ix) * zs.size() + iz) * ts.size() + it;
  }
};

// Evaluates the traveling electromagnetic fields on the lattice using the
// substitution t - z/c:
//   slab:        E = w e_y,  B = -( w/c, 0, W_x ),
//   cylindrical: E = w e_phi, B = -(w/c) e_r - (W/r + W_r) e_z,
// D = eps0 (w + G*w + h N(w)) along E's direction, H = B/mu0. W_x (W_r) is a
// centered difference along the lattice's transverse direction (one-sided at
// the lattice edge).
EMFieldSet assemble_fields(const Problem& pb, const ProfilePair& pair,
                           const FieldLattice& lattice);

struct MaxwellResiduals {
  double faraday = 0.0; // || curl E + dB/dt ||
  double gauss_b = 0.0; // || div B ||
  double gauss_d = 0.0; // || div D ||
  double ampere = 0.0;  // || curl H - dD/dt || (diagnostic; solver-limited)
  double field_scale = 1.0;
};

// Centered-difference residuals of Maxwell's equations on the lattice,
// RMS over interior points, normalized by the largest field magnitude.
MaxwellResiduals maxwell_residuals(const Problem& pb, const ProfilePair& pair,
                                   const FieldLattice& lattice);

} // namespace breather
