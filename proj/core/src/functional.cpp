// Copyright (c) 2026 The breather developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "breather/functional.hpp"

#include <cmath>

#include "kahan.hpp"

namespace breather {

namespace {

void require_cubic_safe(const Problem& pb) {
  if (!pb.time_grid().cubic_safe(pb.K())) {
    throw AliasRisk("time grid M=" + std::to_string(pb.time_grid().M) +
                    " is not cubic-safe for K=" + std::to_string(pb.K()));
  }
}

} // namespace

double quartic_integral(const Problem& pb, const Field& u) {
  require_cubic_safe(pb);
  const TimeSamples samples = time_synthesis(u, pb.time_grid());
  const auto& h = pb.h_nodes();
  const auto& grid = pb.grid();
  const int M = pb.time_grid().M;
  Kahan acc;
  for (int j = 0; j < grid.num_nodes(); ++j) {
    Kahan s;
    for (int m = 0; m < M; ++m) {
      const double v = samples.at(j, m);
      const double v2 = v * v;
      s.add(v2 * v2);
    }
    acc.add(grid.weight(j) * h[j] * s.value() / M);
  }
  return acc.value();
}

EnergyBreakdown energy(const Problem& pb, const Field& u) {
  EnergyBreakdown e;
  e.quadratic = 0.5 * h_inner_product(pb, u, u, WeightKind::Potential);
  e.quartic = 0.25 * quartic_integral(pb, u);
  e.total = e.quadratic - e.quartic;
  return e;
}

double derivative(const Problem& pb, const Field& u, const Field& v) {
  require_cubic_safe(pb);
  const double quad = h_inner_product(pb, u, v, WeightKind::Potential);
  const TimeSamples us = time_synthesis(u, pb.time_grid());
  const TimeSamples vs = time_synthesis(v, pb.time_grid());
  const auto& h = pb.h_nodes();
  const auto& grid = pb.grid();
  const int M = pb.time_grid().M;
  Kahan cubic;
  for (int j = 0; j < grid.num_nodes(); ++j) {
    Kahan s;
    for (int m = 0; m < M; ++m) {
      const double a = us.at(j, m);
      s.add(a * a * a * vs.at(j, m));
    }
    cubic.add(grid.weight(j) * h[j] * s.value() / M);
  }
  return quad - cubic.value();
}

Field lift(const Problem& pb, const TimeSamples& f) {
  const SpectralField spectrum = time_analysis(f, pb.K(), /*cubic_source=*/true, pb.K());
  const double omega = pb.omega();
  Field g = pb.new_field();
  for (int i = 0; i < pb.modes().count(); ++i) {
    const int k = pb.modes().regular[i];
    const Complex* fk = spectrum.mode(k);
    const double w2k2nu = omega * omega * k * k * pb.nu_coeff(k);
    auto sol = pb.op(i).solve(std::span<const Complex>(fk, g.num_nodes()));
    auto dst = g.profile(i);
    for (int j = 0; j < g.num_nodes(); ++j) dst[j] = w2k2nu * sol[j];
  }
  return g;
}

Field gradient(const Problem& pb, const Field& u) {
  require_cubic_safe(pb);
  TimeSamples cube = time_synthesis(u, pb.time_grid());
  const auto& h = pb.h_nodes();
  const int M = pb.time_grid().M;
  for (int j = 0; j < pb.grid().num_nodes(); ++j) {
    for (int m = 0; m < M; ++m) {
      double& v = cube.at(j, m);
      v = h[j] * v * v * v;
    }
  }
  Field g = lift(pb, cube);
  g.scale(-1.0);
  g.axpy(1.0, u);
  return g;
}

NehariScale nehari_scale(const Problem& pb, const Field& u) {
  const double quad = h_inner_product(pb, u, u, WeightKind::Potential);
  const double quart = quartic_integral(pb, u);
  if (!(quart > 0.0)) {
    throw NoPositiveQuartic("int h u^4 = " + std::to_string(quart) +
                            " <= 0: ray misses the Nehari manifold");
  }
  NehariScale s;
  s.t_star = std::sqrt(quad / quart);
  s.energy_at_scale = quad * quad / (4.0 * quart);
  return s;
}

} // namespace breather
