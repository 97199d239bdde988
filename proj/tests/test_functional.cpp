// Copyright (c) 2026 The breather developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>

#include "breather/functional.hpp"
#include "helpers.hpp"

using namespace breather;
namespace bt = breather::testing;

namespace {

SpatialProfile scaled(const SpatialProfile& p, double lambda) {
  SpatialProfile out = p;
  switch (p.kind) {
    case SpatialProfile::Kind::Constant:
      out.value *= lambda;
      break;
    case SpatialProfile::Kind::Gaussian:
    case SpatialProfile::Kind::Cosine:
      out.amplitude *= lambda;
      out.baseline *= lambda;
      break;
    case SpatialProfile::Kind::Table:
      for (auto& v : out.vs) v *= lambda;
      break;
    case SpatialProfile::Kind::Sum:
      out.terms.clear();
      for (const auto& t : p.terms) out.terms.push_back(scaled(t, lambda));
      break;
  }
  return out;
}

MaterialSpec with_scaled_h(const MaterialSpec& spec, double lambda) {
  MaterialSpec out = spec;
  if (out.h.total) out.h.total = scaled(*out.h.total, lambda);
  if (out.h.periodic) out.h.periodic = scaled(*out.h.periodic, lambda);
  if (out.h.localized) out.h.localized = scaled(*out.h.localized, lambda);
  return out;
}

} // namespace

TEST_CASE("energy of the zero field vanishes") {
  auto pb = bt::small_slab_problem();
  const auto e = energy(pb, pb.new_field());
  CHECK(e.quadratic == 0.0);
  CHECK(e.quartic == 0.0);
  CHECK(e.total == 0.0);
}

TEST_CASE("single-harmonic envelope quartic term carries the 3/32 factor") {
  // For u = r Re[phi e_{k0}]: J = (r^2/2) <Re[phi e],Re[phi e]>_H
  //                              - (3/32) r^4 int h phi^4 dx.
  auto pb = bt::small_slab_problem();
  const double r = 1.7;
  Field base = pb.new_field();
  const int idx = pb.modes().index_of(2);
  std::vector<double> phi(pb.grid().num_nodes());
  for (int j = 0; j < pb.grid().num_nodes(); ++j) {
    const double x = pb.grid().node(j);
    phi[j] = std::exp(-x * x / 9.0);
    base.profile(idx)[j] = Complex(0.5 * phi[j], 0.0);
  }
  Field u = base;
  u.scale(r);

  double h_phi4 = 0.0;
  for (int j = 0; j < pb.grid().num_nodes(); ++j) {
    h_phi4 += pb.grid().weight(j) * pb.h_nodes()[j] * std::pow(phi[j], 4);
  }
  const auto e = energy(pb, u);
  const double base_quad = h_inner_product(pb, base, base, WeightKind::Potential);
  CHECK(e.quadratic == doctest::Approx(0.5 * r * r * base_quad).epsilon(1e-12));
  CHECK(e.quartic ==
        doctest::Approx(3.0 / 32.0 * std::pow(r, 4) * h_phi4).epsilon(1e-12));
  CHECK(e.total == e.quadratic - e.quartic);
}

TEST_CASE("energy terms are homogeneous of degree two and four") {
  auto pb = bt::small_slab_problem();
  std::mt19937_64 rng(41);
  const Field u = bt::random_field(pb, rng);
  Field su = u;
  su.scale(2.0);
  const auto e1 = energy(pb, u);
  const auto e2 = energy(pb, su);
  CHECK(e2.quadratic == doctest::Approx(4.0 * e1.quadratic).epsilon(1e-13));
  CHECK(e2.quartic == doctest::Approx(16.0 * e1.quartic).epsilon(1e-13));
}

TEST_CASE("Euler identity for the homogeneous terms") {
  auto pb = bt::small_slab_problem();
  std::mt19937_64 rng(43);
  const Field u = bt::random_field(pb, rng);
  const auto e = energy(pb, u);
  CHECK(derivative(pb, u, u) ==
        doctest::Approx(2.0 * e.quadratic - 4.0 * e.quartic).epsilon(1e-12));
}

TEST_CASE("directional derivative matches central differences at second order") {
  std::mt19937_64 rng(47);
  for (int geometry = 0; geometry < 2; ++geometry) {
    auto pb = geometry == 0 ? bt::small_slab_problem() : bt::small_cylindrical_problem();
    for (int trial = 0; trial < 3; ++trial) {
      // Nehari-amplitude fields and a u-correlated direction keep the cubic
      // content of J''' well above the 1-ulp rounding floor of J itself.
      Field u = bt::random_field(pb, rng);
      u.scale(nehari_scale(pb, u).t_star);
      Field v = bt::random_field(pb, rng);
      v.scale(0.5 * std::sqrt(h_inner_product(pb, u, u, WeightKind::Potential) /
                              h_inner_product(pb, v, v, WeightKind::Potential)));
      v.axpy(1.0, u);
      const double d = derivative(pb, u, v);
      auto fd = [&](double eps) {
        Field up = u, dn = u;
        up.axpy(eps, v);
        dn.axpy(-eps, v);
        return (energy(pb, up).total - energy(pb, dn).total) / (2.0 * eps);
      };
      const double e3 = std::abs(fd(1e-3) - d);
      const double e4 = std::abs(fd(1e-4) - d);
      CHECK(e4 < e3);
      if (e4 > 1e-12 * std::abs(d)) {
        CHECK(e3 / e4 >= 50.0); // ~100 for a clean O(eps^2) error
      }
    }
  }
}

TEST_CASE("harmonically disjoint fields are H-orthogonal when h vanishes") {
  auto spec = bt::slab_material();
  spec.h.periodic.reset();
  spec.h.localized.reset();
  spec.h.total = SpatialProfile::constant(0.0);
  Problem pb(spec, SpaceGrid::slab(96, 25.0), TimeGrid{32, spec.T}, 6);
  Field u = pb.new_field();
  Field v = pb.new_field();
  for (auto& c : u.profile(pb.modes().index_of(2))) c = Complex(1.0, 0.3);
  for (auto& c : v.profile(pb.modes().index_of(4))) c = Complex(0.7, -0.2);
  CHECK(derivative(pb, u, v) == doctest::Approx(0.0));
  // And the gradient of a purely quadratic functional is the identity.
  const Field g = gradient(pb, u);
  for (size_t i = 0; i < u.data().size(); ++i) {
    CHECK(std::abs(g.data()[i] - u.data()[i]) < 1e-13);
  }
}

TEST_CASE("gradient represents the derivative in the H inner product") {
  std::mt19937_64 rng(53);
  for (int geometry = 0; geometry < 2; ++geometry) {
    auto pb = geometry == 0 ? bt::small_slab_problem() : bt::small_cylindrical_problem();
    for (int trial = 0; trial < 10; ++trial) {
      const Field u = bt::random_field(pb, rng);
      const Field v = bt::random_field(pb, rng);
      const Field g = gradient(pb, u);
      const double lhs = h_inner_product(pb, g, v, WeightKind::Potential);
      const double rhs = derivative(pb, u, v);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
  }
}

TEST_CASE("the lift is the Riesz representative of the sampled density") {
  std::mt19937_64 rng(59);
  for (int geometry = 0; geometry < 2; ++geometry) {
    auto pb = geometry == 0 ? bt::small_slab_problem() : bt::small_cylindrical_problem();
    for (int trial = 0; trial < 10; ++trial) {
      TimeSamples f = time_synthesis(bt::random_field(pb, rng), pb.time_grid());
      for (auto& v : f.values) v = v * v * v;
      const Field v = bt::random_field(pb, rng);
      const Field lf = lift(pb, f);
      const double lhs = h_inner_product(pb, lf, v, WeightKind::Potential);
      const TimeSamples vs = time_synthesis(v, pb.time_grid());
      double rhs = 0.0;
      for (int j = 0; j < pb.grid().num_nodes(); ++j) {
        double acc = 0.0;
        for (int m = 0; m < pb.time_grid().M; ++m) acc += f.at(j, m) * vs.at(j, m);
        rhs += pb.grid().weight(j) * acc / pb.time_grid().M;
      }
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
  }
}

TEST_CASE("gradient commutes with rescaling the cubic coefficient") {
  // grad with 2h at u equals grad with h at sqrt(2) u, scaled by 1/sqrt(2).
  const double lambda = 2.0;
  const auto spec = bt::slab_material();
  const auto grid = SpaceGrid::slab(96, 25.0);
  const TimeGrid tg{32, spec.T};
  Problem pb(spec, grid, tg, 6);
  Problem pb2(with_scaled_h(spec, lambda), grid, tg, 6);

  std::mt19937_64 rng(61);
  const Field u = bt::random_field(pb, rng);
  Field su = u;
  su.scale(std::sqrt(lambda));

  const Field g2 = gradient(pb2, u);
  Field g1 = gradient(pb, su);
  g1.scale(1.0 / std::sqrt(lambda));
  for (size_t i = 0; i < u.data().size(); ++i) {
    CHECK(std::abs(g2.data()[i] - g1.data()[i]) < 1e-12 * (1.0 + g1.max_abs()));
  }
}

TEST_CASE("energy identity defect is bounded by the gradient pairing") {
  // |J(u) - (1/4)<u,u>_H| = (1/4)|<grad u, u>_H| <= (1/4)||grad|| ||u||.
  auto pb = bt::small_slab_problem();
  std::mt19937_64 rng(63);
  const Field u = bt::random_field(pb, rng);
  const double quad = h_inner_product(pb, u, u, WeightKind::Potential);
  const double J = energy(pb, u).total;
  const Field g = gradient(pb, u);
  const double pairing = h_inner_product(pb, g, u, WeightKind::Potential);
  CHECK(std::abs(J - 0.25 * quad) ==
        doctest::Approx(0.25 * std::abs(pairing)).epsilon(1e-10));
  const double gn = std::sqrt(h_inner_product(pb, g, g, WeightKind::Potential));
  CHECK(std::abs(J - 0.25 * quad) <= 0.25 * gn * std::sqrt(quad) * (1.0 + 1e-12));
}

TEST_CASE("Nehari scaling lands on the manifold") {
  auto pb = bt::small_slab_problem();
  std::mt19937_64 rng(67);
  Field u = bt::random_field(pb, rng);

  const auto s = nehari_scale(pb, u);
  const double quad = h_inner_product(pb, u, u, WeightKind::Potential);
  const double quart = quartic_integral(pb, u);
  CHECK(s.t_star == doctest::Approx(std::sqrt(quad / quart)).epsilon(1e-13));
  CHECK(s.energy_at_scale == doctest::Approx(quad * quad / (4.0 * quart)).epsilon(1e-13));

  Field scaled_u = u;
  scaled_u.scale(s.t_star);
  CHECK(derivative(pb, scaled_u, scaled_u) ==
        doctest::Approx(0.0).epsilon(1e-10));
  CHECK(energy(pb, scaled_u).total ==
        doctest::Approx(s.energy_at_scale).epsilon(1e-12));

  SUBCASE("a field already on the manifold has t* = 1") {
    const auto s2 = nehari_scale(pb, scaled_u);
    CHECK(s2.t_star == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("the on-ray energy is maximal at t*") {
    const auto e = energy(pb, u);
    double best = -1e300;
    double best_s = 0.0;
    for (int i = 1; i <= 50; ++i) {
      const double t = 2.0 * s.t_star * i / 50.0;
      const double Js = t * t * e.quadratic - t * t * t * t * e.quartic;
      if (Js > best) {
        best = Js;
        best_s = t;
      }
    }
    CHECK(std::abs(best_s - s.t_star) <= 2.0 * (2.0 * s.t_star / 50.0));
  }
}

TEST_CASE("nonpositive cubic coefficient blocks the Nehari scaling") {
  auto spec = bt::slab_material();
  spec.h.periodic.reset();
  spec.h.localized.reset();
  spec.h.total = SpatialProfile::constant(-1.0);
  Problem pb(spec, SpaceGrid::slab(96, 25.0), TimeGrid{32, spec.T}, 6);
  std::mt19937_64 rng(71);
  const Field u = bt::random_field(pb, rng);
  CHECK_THROWS_AS(nehari_scale(pb, u), NoPositiveQuartic);
}
