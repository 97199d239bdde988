// Copyright (c) 2026 The breather developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <random>

#include "breather/functional.hpp"
#include "breather/solver.hpp"

using namespace breather;

namespace {

MaterialSpec bench_material(int cutoff) {
  MaterialSpec spec;
  spec.geometry = Geometry::Slab;
  spec.T = 4.0 * 3.14159265358979323846;
  spec.c = 1.0 / std::sqrt(1.3);
  spec.nu = truncated_sine_kernel(spec.T, cutoff);
  spec.alpha = spec.beta = 2.0;
  LinearComponent per;
  per.role = ComponentRole::Periodic;
  per.profile = SpatialProfile::cosine(0.05, 5.0, 0.0, 0.15);
  per.kernel = delta_kernel(spec.T, cutoff);
  spec.linear.components = {per};
  spec.linear.background_period = 5.0;
  spec.h.periodic = SpatialProfile::cosine(0.4, 5.0, 0.0, 0.5);
  spec.h.localized = SpatialProfile::gaussian(0.5, 0.0, 2.0);
  return spec;
}

Problem bench_problem(int N, int K, int M) {
  return Problem(bench_material(4 * K), SpaceGrid::slab(N, 40.0),
                 TimeGrid{M, 4.0 * 3.14159265358979323846}, K);
}

Field bench_field(const Problem& pb, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Field u = pb.new_field();
  for (int i = 0; i < u.num_modes(); ++i) {
    for (auto& v : u.profile(i)) v = Complex(normal(rng), normal(rng));
  }
  return u;
}

void BM_HInnerProduct(benchmark::State& state) {
  const auto pb = bench_problem(static_cast<int>(state.range(0)), 8, 64);
  const Field u = bench_field(pb, 1);
  const Field v = bench_field(pb, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(h_inner_product(pb, u, v, WeightKind::Potential));
  }
}
BENCHMARK(BM_HInnerProduct)->Arg(512)->Arg(2048);

void BM_Gradient(benchmark::State& state) {
  const auto pb = bench_problem(static_cast<int>(state.range(0)), 8, 64);
  const Field u = bench_field(pb, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gradient(pb, u));
  }
}
BENCHMARK(BM_Gradient)->Arg(512)->Arg(2048);

void BM_TimeSynthesis(benchmark::State& state) {
  const auto pb = bench_problem(512, 8, static_cast<int>(state.range(0)));
  const Field u = bench_field(pb, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(time_synthesis(u, pb.time_grid()));
  }
}
BENCHMARK(BM_TimeSynthesis)->Arg(64)->Arg(256);

void BM_ModeSolve(benchmark::State& state) {
  const auto pb = bench_problem(static_cast<int>(state.range(0)), 8, 64);
  const Field u = bench_field(pb, 5);
  const auto rhs = std::vector<Complex>(u.profile(0).begin(), u.profile(0).end());
  for (auto _ : state) {
    benchmark::DoNotOptimize(pb.op(0).solve(std::span<const Complex>(rhs)));
  }
}
BENCHMARK(BM_ModeSolve)->Arg(512)->Arg(4096);

void BM_GroundState(benchmark::State& state) {
  const auto pb = bench_problem(256, 6, 32);
  SolverConfig cfg;
  cfg.tol_grad = 1e-8;
  cfg.initial_mode = 2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ground_state(pb, cfg));
  }
}
BENCHMARK(BM_GroundState)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
