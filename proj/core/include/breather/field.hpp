// Copyright (c) 2026 The breather developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <span>
#include <vector>

#include "breather/grid.hpp"
#include "breather/kernels.hpp"

namespace breather {

using Complex = std::complex<double>;

// Real samples u(x_j, t_m) on grid x time grid, time-major per node.
struct TimeSamples {
  SpaceGrid grid;
  TimeGrid tg;
  std::vector<double> values; // values[j*M + m]

  double& at(int j, int m) { return values[static_cast<size_t>(j) * tg.M + m]; }
  double at(int j, int m) const { return values[static_cast<size_t>(j) * tg.M + m]; }
};

// Dense temporal spectrum: complex profiles for harmonics k = 0..max_k.
// Negative harmonics are implied by conjugation (real-valued signals).
struct SpectralField {
  SpaceGrid grid;
  double period = 0.0;
  int max_k = 0;
  std::vector<Complex> coef; // coef[k*num_nodes + j], k = 0..max_k

  Complex* mode(int k) { return coef.data() + static_cast<size_t>(k) * grid.num_nodes(); }
  const Complex* mode(int k) const {
    return coef.data() + static_cast<size_t>(k) * grid.num_nodes();
  }
  static SpectralField zeros(const SpaceGrid& grid, double period, int max_k);
};

// A time-periodic real scalar field restricted to the regular mode set:
// complex profiles u_k(x_j) stored for k in R, k > 0 only (u_{-k} = conj u_k).
class Field {
public:
  Field() = default;
  Field(SpaceGrid grid, ModeSet modes, double period);

  const SpaceGrid& grid() const { return grid_; }
  const ModeSet& modes() const { return modes_; }
  double period() const { return period_; }
  double omega() const;

  int num_modes() const { return modes_.count(); }
  int num_nodes() const { return grid_.num_nodes(); }

  // Profile of the i-th stored positive harmonic (ascending order).
  std::span<Complex> profile(int mode_index);
  std::span<const Complex> profile(int mode_index) const;
  int harmonic(int mode_index) const { return modes_.regular[mode_index]; }

  std::vector<Complex>& data() { return data_; }
  const std::vector<Complex>& data() const { return data_; }

  Field zeros_like() const;
  void scale(double s);
  void axpy(double a, const Field& other); // *this += a * other
  double max_abs() const;

  bool compatible(const Field& other) const;
  void require_compatible(const Field& other) const; // throws ModeMismatch

private:
  SpaceGrid grid_;
  ModeSet modes_;
  double period_ = 0.0;
  std::vector<Complex> data_; // mode-major
};

// u(x_j, t_m) = sum_{k in R+} 2 Re[u_k(x_j) e^{i k omega t_m}]. Exact for the
// band-limited field on any M.
TimeSamples time_synthesis(const Field& u, const TimeGrid& tg);

// Discrete Fourier analysis in time: coefficients for k = 0..max_k. Exact for
// signals band-limited to |k| <= (M-1)/2. When cubic_source is true the input
// is a cubic of a degree-K field and M >= 4K+1 is enforced (AliasRisk).
SpectralField time_analysis(const TimeSamples& samples, int max_k,
                            bool cubic_source = false, int source_K = 0);

// Coefficient masking onto the regular set (P_R) and its complement (P_S).
// P_R + P_S reproduces the input; P_R is idempotent.
Field project_regular(const SpectralField& s, const ModeSet& modes);
SpectralField project_singular(const SpectralField& s, const ModeSet& modes);

// Fourier multiplier |omega k|^s on the temporal modes.
Field fractional_time_derivative(const Field& u, double s);

// L2(grid x torus) inner product and norms; the torus carries the normalized
// measure (time averages, not time integrals).
double l2_inner(const Field& u, const Field& v);
double l2_norm_sq(const Field& u);
double l2_norm_sq(const SpectralField& s);
double l2_norm_sq(const TimeSamples& samples);

} // namespace breather
