// Copyright (c) 2026 The breather developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <random>

#include "breather/functional.hpp"
#include "breather/problem.hpp"

namespace breather::testing {

constexpr double kPi = 3.14159265358979323846;

// Slab test material: instantaneous periodic-plus-localized linear law with a
// truncated-sine cubic kernel. sup g = 0.25, ellipticity bound 0.30.
inline MaterialSpec slab_material(int kernel_cutoff = 32,
                                  NonlinearityVariant variant =
                                      NonlinearityVariant::ConvolvedCube) {
  MaterialSpec spec;
  spec.geometry = Geometry::Slab;
  spec.T = 4.0 * kPi;
  spec.c = 1.0 / std::sqrt(1.3);
  spec.nu = truncated_sine_kernel(spec.T, kernel_cutoff);
  spec.variant = variant;
  spec.alpha = 2.0;
  spec.beta = 2.0;

  LinearComponent per;
  per.role = ComponentRole::Periodic;
  per.profile = SpatialProfile::cosine(0.05, 5.0, 0.0, 0.15);
  per.kernel = delta_kernel(spec.T, kernel_cutoff);
  LinearComponent loc;
  loc.role = ComponentRole::Localized;
  loc.profile = SpatialProfile::gaussian(0.05, 0.0, 2.0);
  loc.kernel = delta_kernel(spec.T, kernel_cutoff);
  spec.linear.components = {per, loc};
  spec.linear.background_period = 5.0;

  spec.h.periodic = SpatialProfile::cosine(0.4, 5.0, 0.0, 0.5);
  spec.h.localized = SpatialProfile::gaussian(0.5, 0.0, 2.0);
  return spec;
}

// Cylindrical test material: instantaneous Kerr-type response (nu = delta),
// so odd harmonics are available.
inline MaterialSpec cylindrical_material(int kernel_cutoff = 32) {
  MaterialSpec spec;
  spec.geometry = Geometry::Cylindrical;
  spec.T = 2.0 * kPi;
  spec.c = 1.0 / std::sqrt(1.3);
  spec.nu = delta_kernel(spec.T, kernel_cutoff);
  spec.variant = NonlinearityVariant::ConvolvedCube;
  spec.alpha = 0.0;
  spec.beta = 0.0;

  LinearComponent g;
  g.role = ComponentRole::Total;
  g.profile = SpatialProfile::gaussian(0.2, 0.0, 3.0);
  g.kernel = delta_kernel(spec.T, kernel_cutoff);
  spec.linear.components = {g};
  spec.h.total = SpatialProfile::gaussian(1.0, 0.0, 3.0);
  return spec;
}

inline Problem small_slab_problem(int N = 96, double L = 25.0, int K = 6, int M = 32,
                                  NonlinearityVariant variant =
                                      NonlinearityVariant::ConvolvedCube) {
  return Problem(slab_material(4 * K, variant), SpaceGrid::slab(N, L), TimeGrid{M, 4.0 * kPi},
                 K);
}

inline Problem small_cylindrical_problem(int N = 96, double R = 20.0, int K = 5,
                                         int M = 32) {
  return Problem(cylindrical_material(4 * K), SpaceGrid::cylindrical(N, R),
                 TimeGrid{M, 2.0 * kPi}, K);
}

// Constant instantaneous g with a Gaussian h; handy for closed-form checks.
inline MaterialSpec constant_material(Geometry geometry, double g, double c,
                                      double T = 2.0 * kPi, int kernel_cutoff = 32) {
  MaterialSpec spec;
  spec.geometry = geometry;
  spec.T = T;
  spec.c = c;
  spec.nu = geometry == Geometry::Slab ? truncated_sine_kernel(T, kernel_cutoff)
                                       : delta_kernel(T, kernel_cutoff);
  spec.alpha = geometry == Geometry::Slab ? 2.0 : 0.0;
  spec.beta = spec.alpha;
  LinearComponent comp;
  comp.role = ComponentRole::Total;
  comp.profile = SpatialProfile::constant(g);
  comp.kernel = delta_kernel(T, kernel_cutoff);
  spec.linear.components = {comp};
  spec.h.total = SpatialProfile::gaussian(1.0, 0.0, 2.0);
  return spec;
}

// Deterministic smooth multi-harmonic field (analytic in x), for tests that
// measure discretization orders.
inline Field smooth_field(const Problem& pb) {
  Field u = pb.new_field();
  const auto& grid = pb.grid();
  for (int i = 0; i < u.num_modes(); ++i) {
    const int k = u.harmonic(i);
    const double amp = 2.0 * std::pow(3.0, -k);
    const Complex phase(0.8, k % 2 ? 0.6 : -0.4);
    auto prof = u.profile(i);
    for (int j = 0; j < u.num_nodes(); ++j) {
      const double x = grid.node(j);
      const double center = grid.geometry() == Geometry::Slab ? 0.8 * (k - 3) : 1.0;
      double env = std::exp(-std::pow((x - center) / 5.0, 2));
      if (grid.geometry() == Geometry::Cylindrical) env *= x / grid.extent();
      prof[j] = amp * env * phase;
    }
  }
  return u;
}

inline Field random_field(const Problem& pb, std::mt19937_64& rng, double decay = 1.0) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Field u = pb.new_field();
  const auto& grid = pb.grid();
  const double L = grid.extent();
  for (int i = 0; i < u.num_modes(); ++i) {
    auto prof = u.profile(i);
    const double amp = std::pow(1.0 + u.harmonic(i), -decay);
    for (int j = 0; j < u.num_nodes(); ++j) {
      const double x = grid.node(j);
      double env = std::exp(-(x * x) / (L * L / 16.0));
      if (grid.geometry() == Geometry::Cylindrical) env *= x / L;
      prof[j] = amp * env * Complex(normal(rng), normal(rng));
    }
  }
  return u;
}

} // namespace breather::testing
