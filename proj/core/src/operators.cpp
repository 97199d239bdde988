// Copyright (c) 2026 The breather developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "breather/operators.hpp"

#include <cmath>
#include <functional>

namespace breather {

ModeOperator::ModeOperator(SpaceGrid grid, int k, std::vector<double> sub,
                           std::vector<double> diag, std::vector<double> super)
    : grid_(std::move(grid)),
      k_(k),
      sub_(std::move(sub)),
      diag_(std::move(diag)),
      super_(std::move(super)) {
  factor();
}

void ModeOperator::factor() {
  const size_t n = diag_.size();
  lu_diag_.resize(n);
  lu_lower_.resize(n);
  double piv = diag_[0];
  const double tiny = 1e-300;
  if (std::abs(piv) < tiny) throw SingularOperator("zero pivot in tridiagonal solve");
  lu_diag_[0] = piv;
  for (size_t j = 1; j < n; ++j) {
    const double l = sub_[j] / lu_diag_[j - 1];
    lu_lower_[j] = l;
    piv = diag_[j] - l * super_[j - 1];
    if (std::abs(piv) < tiny) throw SingularOperator("pivot underflow in tridiagonal solve");
    lu_diag_[j] = piv;
  }
}

namespace {

template <typename T>
std::vector<T> tridiag_apply(const std::vector<double>& sub, const std::vector<double>& diag,
                             const std::vector<double>& super, std::span<const T> u) {
  const size_t n = diag.size();
  std::vector<T> out(n);
  for (size_t j = 0; j < n; ++j) {
    T acc = diag[j] * u[j];
    if (j > 0) acc += sub[j] * u[j - 1];
    if (j + 1 < n) acc += super[j] * u[j + 1];
    out[j] = acc;
  }
  return out;
}

template <typename T>
std::vector<T> tridiag_solve(const std::vector<double>& lower, const std::vector<double>& piv,
                             const std::vector<double>& super, std::span<const T> rhs) {
  const size_t n = piv.size();
  std::vector<T> y(n);
  y[0] = rhs[0];
  for (size_t j = 1; j < n; ++j) y[j] = rhs[j] - lower[j] * y[j - 1];
  std::vector<T> x(n);
  x[n - 1] = y[n - 1] / piv[n - 1];
  for (size_t j = n - 1; j-- > 0;) x[j] = (y[j] - super[j] * x[j + 1]) / piv[j];
  return x;
}

} // namespace

std::vector<std::complex<double>> ModeOperator::apply(
    std::span<const std::complex<double>> u) const {
  return tridiag_apply(sub_, diag_, super_, u);
}

std::vector<double> ModeOperator::apply(std::span<const double> u) const {
  return tridiag_apply(sub_, diag_, super_, u);
}

std::vector<std::complex<double>> ModeOperator::solve(
    std::span<const std::complex<double>> rhs) const {
  return tridiag_solve(lu_lower_, lu_diag_, super_, rhs);
}

std::vector<double> ModeOperator::solve(std::span<const double> rhs) const {
  return tridiag_solve(lu_lower_, lu_diag_, super_, rhs);
}

namespace {

ModeOperator build_from_potential(const MaterialSpec& spec, const SpaceGrid& grid, int k,
                                  const std::function<double(double, int)>& coeff) {
  const double omega = spec.omega();
  const double bound = 1.0 / (spec.c * spec.c) - 1.0;
  const int n = grid.num_nodes();

  std::vector<double> vk(n);
  for (int j = 0; j < n; ++j) {
    vk[j] = bound - coeff(grid.node(j), k);
    if (vk[j] <= 0.0) {
      throw NonElliptic("V_k(x) <= 0 at k=" + std::to_string(k) +
                        ", x=" + std::to_string(grid.node(j)) +
                        " (value " + std::to_string(vk[j]) + ")");
    }
  }

  std::vector<double> sub(n, 0.0), diag(n, 0.0), super(n, 0.0);
  const double w2k2 = omega * omega * static_cast<double>(k) * k;

  if (grid.geometry() == Geometry::Slab) {
    const double idx2 = 1.0 / (grid.spacing() * grid.spacing());
    for (int j = 0; j < n; ++j) {
      diag[j] = 2.0 * idx2 + w2k2 * vk[j];
      if (j > 0) sub[j] = -idx2;
      if (j + 1 < n) super[j] = -idx2;
    }
  } else {
    // Fluxes F_f = R_f^3 (U_f - U_{f-1})/dr at faces R_f = f dr, with
    // U = u/r; F_0 = 0 by R_0 = 0 and the outer wall contributes
    // -2 R_N^3 U_{N-1}/dr (Dirichlet at r = R).
    const double dr = grid.spacing();
    const double idr2 = 1.0 / (dr * dr);
    for (int j = 0; j < n; ++j) {
      const double rj = grid.node(j);
      const double r_lo = j * dr;       // inner face
      const double r_hi = (j + 1) * dr; // outer face
      const double f_lo = r_lo * r_lo * r_lo;
      double f_hi = r_hi * r_hi * r_hi;
      if (j + 1 == n) f_hi *= 2.0; // half-cell to the wall
      diag[j] = (f_lo + f_hi) * idr2 / (rj * rj * rj) + w2k2 * vk[j];
      if (j > 0) sub[j] = -f_lo * idr2 / (rj * rj * grid.node(j - 1));
      if (j + 1 < n) super[j] = -f_hi * idr2 / (rj * rj * grid.node(j + 1));
    }
  }
  return ModeOperator(grid, k, std::move(sub), std::move(diag), std::move(super));
}

} // namespace

ModeOperator build_mode_operator(const MaterialSpec& spec, const SpaceGrid& grid, int k) {
  return build_from_potential(spec, grid, k, [&spec](double x, int kk) {
    return spec.linear.fourier_coeff(x, kk);
  });
}

ModeOperator build_mode_operator_periodic(const MaterialSpec& spec, const SpaceGrid& grid,
                                          int k) {
  return build_from_potential(spec, grid, k, [&spec](double x, int kk) {
    return spec.linear.fourier_coeff_periodic(x, kk);
  });
}

} // namespace breather
