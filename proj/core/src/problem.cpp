// Copyright (c) 2026 The breather developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "breather/problem.hpp"

#include <cmath>

#include "kahan.hpp"

namespace breather {

Problem::Problem(MaterialSpec spec, SpaceGrid grid, TimeGrid tg, int K)
    : spec_(std::move(spec)), grid_(std::move(grid)), tg_(tg) {
  spec_.check_wellformed();
  if (tg_.M < 2 * K + 1) {
    throw AliasRisk("time grid M=" + std::to_string(tg_.M) +
                    " cannot represent harmonics up to K=" + std::to_string(K));
  }
  if (spec_.validation_samples.empty()) {
    spec_.validation_samples = grid_.nodes();
  }
  modes_ = regular_set(spec_.nu, K, grid_.geometry());

  for (int k : modes_.regular) {
    if (spec_.nu.coeff(k) <= 0.0) {
      throw NonpositiveKernel("F_k[nu] <= 0 at regular mode k=" + std::to_string(k));
    }
  }

  const int n = grid_.num_nodes();
  h_nodes_.resize(n);
  for (int j = 0; j < n; ++j) h_nodes_[j] = spec_.h.eval(grid_.node(j));

  const double bound = 1.0 / (spec_.c * spec_.c) - 1.0;
  potentials_.resize(static_cast<size_t>(modes_.count()) * n);
  ops_.reserve(modes_.count());
  for (int i = 0; i < modes_.count(); ++i) {
    const int k = modes_.regular[i];
    for (int j = 0; j < n; ++j) {
      potentials_[static_cast<size_t>(i) * n + j] =
          bound - spec_.linear.fourier_coeff(grid_.node(j), k);
    }
    ops_.push_back(build_mode_operator(spec_, grid_, k));
  }
}

std::span<const double> Problem::potential(int mode_index) const {
  const int n = grid_.num_nodes();
  return {potentials_.data() + static_cast<size_t>(mode_index) * n,
          static_cast<size_t>(n)};
}

const ModeOperator& Problem::op_for_harmonic(int k) const {
  const int i = modes_.index_of(k);
  if (i >= 0) return ops_[i];
  auto it = singular_ops_.find(k);
  if (it == singular_ops_.end()) {
    it = singular_ops_.emplace(k, build_mode_operator(spec_, grid_, k)).first;
  }
  return it->second;
}

double Problem::mode_weight(int k) const {
  const double w = omega() * k;
  return 1.0 / (w * w * spec_.nu.coeff(k));
}

double dirichlet_form(const SpaceGrid& grid, std::span<const Complex> u,
                      std::span<const Complex> v) {
  const int n = grid.num_nodes();
  Kahan acc;
  if (grid.geometry() == Geometry::Slab) {
    const double idx = 1.0 / grid.spacing();
    // Faces between nodes, including the boundary faces against u = 0.
    Complex du = u[0], dv = v[0];
    acc.add(du.real() * dv.real() + du.imag() * dv.imag());
    for (int f = 1; f < n; ++f) {
      du = u[f] - u[f - 1];
      dv = v[f] - v[f - 1];
      acc.add(du.real() * dv.real() + du.imag() * dv.imag());
    }
    du = -u[n - 1];
    dv = -v[n - 1];
    acc.add(du.real() * dv.real() + du.imag() * dv.imag());
    return acc.value() * idx;
  }
  // Conservative r^3-flux form of the radial operator with the 1/r^2 term:
  // sum_f R_f^3 (U_f - U_{f-1})(conj V_f - conj V_{f-1}) / dr over interior
  // faces, plus the outer Dirichlet wall, with U = u/r.
  const double dr = grid.spacing();
  for (int f = 1; f < n; ++f) {
    const double rf = f * dr;
    const Complex du = u[f] / grid.node(f) - u[f - 1] / grid.node(f - 1);
    const Complex dv = v[f] / grid.node(f) - v[f - 1] / grid.node(f - 1);
    acc.add(rf * rf * rf * (du.real() * dv.real() + du.imag() * dv.imag()));
  }
  const double rN = n * dr;
  const Complex uw = u[n - 1] / grid.node(n - 1);
  const Complex vw = v[n - 1] / grid.node(n - 1);
  acc.add(2.0 * rN * rN * rN * (uw.real() * vw.real() + uw.imag() * vw.imag()));
  return acc.value() / dr;
}

double h_inner_product(const Problem& pb, const Field& u, const Field& v,
                       WeightKind weights) {
  u.require_compatible(v);
  if (!(u.grid() == pb.grid()) || !(u.modes() == pb.modes())) {
    throw ModeMismatch("field does not match the problem's grid or mode set");
  }
  const SpaceGrid& grid = pb.grid();
  const int n = grid.num_nodes();
  const double omega = pb.omega();

  Kahan total;
  for (int i = 0; i < u.num_modes(); ++i) {
    const int k = u.harmonic(i);
    const auto uk = u.profile(i);
    const auto vk = v.profile(i);
    const double w2k2 = omega * omega * static_cast<double>(k) * k;

    Kahan mass;
    if (weights == WeightKind::Plain) {
      for (int j = 0; j < n; ++j) {
        mass.add(grid.weight(j) *
                 (uk[j].real() * vk[j].real() + uk[j].imag() * vk[j].imag()));
      }
    } else {
      const auto vkpot = pb.potential(i);
      for (int j = 0; j < n; ++j) {
        mass.add(grid.weight(j) * vkpot[j] *
                 (uk[j].real() * vk[j].real() + uk[j].imag() * vk[j].imag()));
      }
    }

    const double bracket = dirichlet_form(grid, uk, vk) + w2k2 * mass.value();
    total.add(2.0 * pb.mode_weight(k) * bracket); // +-k pairing
  }
  return total.value();
}

MaterialSpec periodic_background(const MaterialSpec& spec) {
  if (!spec.linear.has_split() && !spec.h.has_split()) {
    throw ConfigError("periodic background requested but the material declares no split");
  }
  MaterialSpec per = spec;
  if (per.linear.has_split()) {
    std::vector<LinearComponent> keep;
    for (const auto& comp : per.linear.components) {
      if (comp.role == ComponentRole::Periodic) {
        LinearComponent c = comp;
        c.role = ComponentRole::Total;
        keep.push_back(std::move(c));
      } else if (comp.role == ComponentRole::Total) {
        throw ConfigError("periodic background: mixing split and untagged "
                          "linear components is ambiguous");
      }
    }
    per.linear.components = std::move(keep);
  }
  if (spec.h.has_split()) {
    per.h.total = spec.h.periodic;
    per.h.periodic.reset();
    per.h.localized.reset();
  }
  return per;
}

} // namespace breather
