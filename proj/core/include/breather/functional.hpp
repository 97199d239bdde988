// Copyright (c) 2026 The breather developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "breather/problem.hpp"

namespace breather {

struct EnergyBreakdown {
  double quadratic = 0.0; // (1/2) <u,u>_H
  double quartic = 0.0;   // (1/4) int h u^4 d(x,t)
  double total = 0.0;     // quadratic - quartic
};

// J(u) = (1/2)<u,u>_H - (1/4) int h u^4. The quartic term is evaluated on the
// dealiased time grid with the same spatial quadrature as the norms, so
// derivative() below is the exact discrete differential of energy().
EnergyBreakdown energy(const Problem& pb, const Field& u);

// J'(u)[v] = <u,v>_H - int h u^3 v d(x,t).
double derivative(const Problem& pb, const Field& u, const Field& v);

// int h u^4 d(x,t) (the full quartic integral, 4x the quartic energy term).
double quartic_integral(const Problem& pb, const Field& u);

// Riesz lift of a time-sampled density: the unique g in H with
// <g,v>_H = int f v d(x,t) for all v; per mode
// g_k = omega^2 k^2 F_k[nu] * op_k^{-1} (P_R f)_k.
Field lift(const Problem& pb, const TimeSamples& f);

// H-gradient of J: gradient(u) = u - lift(h u^3); <gradient(u), v>_H =
// J'(u)[v] for every v.
Field gradient(const Problem& pb, const Field& u);

struct NehariScale {
  double t_star = 0.0;
  double energy_at_scale = 0.0; // J(t* u) = <u,u>_H^2 / (4 int h u^4)
};

// Scaling of the ray through u onto the Nehari manifold. Throws
// NoPositiveQuartic when int h u^4 <= 0.
NehariScale nehari_scale(const Problem& pb, const Field& u);

} // namespace breather
