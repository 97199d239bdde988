// Copyright (c) 2026 The breather developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "breather/field.hpp"

#include <algorithm>
#include <cmath>

#include "breather/parallel.hpp"

namespace breather {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

SpectralField SpectralField::zeros(const SpaceGrid& grid, double period, int max_k) {
  SpectralField s;
  s.grid = grid;
  s.period = period;
  s.max_k = max_k;
  s.coef.assign(static_cast<size_t>(max_k + 1) * grid.num_nodes(), Complex(0.0, 0.0));
  return s;
}

Field::Field(SpaceGrid grid, ModeSet modes, double period)
    : grid_(std::move(grid)), modes_(std::move(modes)), period_(period) {
  data_.assign(static_cast<size_t>(modes_.count()) * grid_.num_nodes(), Complex(0.0, 0.0));
}

double Field::omega() const { return 2.0 * kPi / period_; }

std::span<Complex> Field::profile(int mode_index) {
  return {data_.data() + static_cast<size_t>(mode_index) * grid_.num_nodes(),
          static_cast<size_t>(grid_.num_nodes())};
}

std::span<const Complex> Field::profile(int mode_index) const {
  return {data_.data() + static_cast<size_t>(mode_index) * grid_.num_nodes(),
          static_cast<size_t>(grid_.num_nodes())};
}

Field Field::zeros_like() const { return Field(grid_, modes_, period_); }

void Field::scale(double s) {
  for (auto& v : data_) v *= s;
}

void Field::axpy(double a, const Field& other) {
  require_compatible(other);
  for (size_t i = 0; i < data_.size(); ++i) data_[i] += a * other.data_[i];
}

double Field::max_abs() const {
  double m = 0.0;
  for (const auto& v : data_) m = std::max(m, std::abs(v));
  return m;
}

bool Field::compatible(const Field& other) const {
  return grid_ == other.grid_ && modes_ == other.modes_ && period_ == other.period_;
}

void Field::require_compatible(const Field& other) const {
  if (!compatible(other)) {
    throw ModeMismatch("fields live on different grids, mode sets or periods");
  }
}

TimeSamples time_synthesis(const Field& u, const TimeGrid& tg) {
  TimeSamples out;
  out.grid = u.grid();
  out.tg = tg;
  const int n = u.num_nodes();
  const int M = tg.M;
  out.values.assign(static_cast<size_t>(n) * M, 0.0);

  const double omega = u.omega();
  // Twiddle tables for e^{i k omega t_m}; t_m = m T/M so the phase is 2 pi k m / M.
  std::vector<std::vector<Complex>> twiddles(u.num_modes());
  for (int i = 0; i < u.num_modes(); ++i) {
    twiddles[i].resize(M);
    for (int m = 0; m < M; ++m) {
      const double th = omega * u.harmonic(i) * tg.sample(m);
      twiddles[i][m] = Complex(std::cos(th), std::sin(th));
    }
  }
  parallel_for(n, [&](int j) {
    double* row = out.values.data() + static_cast<size_t>(j) * M;
    for (int i = 0; i < u.num_modes(); ++i) {
      const Complex c = u.profile(i)[j];
      const auto& tw = twiddles[i];
      for (int m = 0; m < M; ++m) {
        row[m] += 2.0 * (c.real() * tw[m].real() - c.imag() * tw[m].imag());
      }
    }
  });
  return out;
}

SpectralField time_analysis(const TimeSamples& samples, int max_k, bool cubic_source,
                            int source_K) {
  const int M = samples.tg.M;
  if (cubic_source && M < 4 * source_K + 1) {
    throw AliasRisk("time grid M=" + std::to_string(M) +
                    " cannot dealias cubes of degree-" + std::to_string(source_K) +
                    " fields (need M >= " + std::to_string(4 * source_K + 1) + ")");
  }
  SpectralField out = SpectralField::zeros(samples.grid, samples.tg.T, max_k);
  const int n = samples.grid.num_nodes();
  std::vector<std::vector<Complex>> twiddles(max_k + 1);
  for (int k = 0; k <= max_k; ++k) {
    twiddles[k].resize(M);
    for (int m = 0; m < M; ++m) {
      const double th = 2.0 * kPi * k * m / M;
      twiddles[k][m] = Complex(std::cos(th), -std::sin(th));
    }
  }
  parallel_for(n, [&](int j) {
    const double* row = samples.values.data() + static_cast<size_t>(j) * M;
    for (int k = 0; k <= max_k; ++k) {
      const auto& tw = twiddles[k];
      Complex acc(0.0, 0.0);
      for (int m = 0; m < M; ++m) acc += row[m] * tw[m];
      out.mode(k)[j] = acc / static_cast<double>(M);
    }
  });
  return out;
}

Field project_regular(const SpectralField& s, const ModeSet& modes) {
  Field out(s.grid, modes, s.period);
  for (int i = 0; i < modes.count(); ++i) {
    const int k = modes.regular[i];
    if (k > s.max_k) continue;
    const Complex* src = s.mode(k);
    auto dst = out.profile(i);
    std::copy(src, src + s.grid.num_nodes(), dst.begin());
  }
  return out;
}

SpectralField project_singular(const SpectralField& s, const ModeSet& modes) {
  SpectralField out = s;
  for (int k : modes.regular) {
    if (k > s.max_k) continue;
    Complex* dst = out.mode(k);
    std::fill(dst, dst + s.grid.num_nodes(), Complex(0.0, 0.0));
  }
  return out;
}

Field fractional_time_derivative(const Field& u, double s) {
  Field out = u;
  const double omega = u.omega();
  for (int i = 0; i < u.num_modes(); ++i) {
    const double factor = std::pow(std::abs(omega * u.harmonic(i)), s);
    auto prof = out.profile(i);
    for (auto& v : prof) v *= factor;
  }
  return out;
}

double l2_inner(const Field& u, const Field& v) {
  u.require_compatible(v);
  double acc = 0.0;
  for (int i = 0; i < u.num_modes(); ++i) {
    const auto a = u.profile(i);
    const auto b = v.profile(i);
    double s = 0.0;
    for (int j = 0; j < u.num_nodes(); ++j) {
      s += u.grid().weight(j) *
           (a[j].real() * b[j].real() + a[j].imag() * b[j].imag());
    }
    acc += 2.0 * s; // +k and -k contribute equally
  }
  return acc;
}

double l2_norm_sq(const Field& u) { return l2_inner(u, u); }

double l2_norm_sq(const SpectralField& s) {
  double acc = 0.0;
  const int n = s.grid.num_nodes();
  for (int k = 0; k <= s.max_k; ++k) {
    const Complex* prof = s.mode(k);
    const double pair = (k == 0) ? 1.0 : 2.0;
    for (int j = 0; j < n; ++j) acc += pair * s.grid.weight(j) * std::norm(prof[j]);
  }
  return acc;
}

double l2_norm_sq(const TimeSamples& samples) {
  double acc = 0.0;
  const int n = samples.grid.num_nodes();
  const int M = samples.tg.M;
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    for (int m = 0; m < M; ++m) {
      const double v = samples.at(j, m);
      s += v * v;
    }
    acc += samples.grid.weight(j) * s / M;
  }
  return acc;
}

} // namespace breather
