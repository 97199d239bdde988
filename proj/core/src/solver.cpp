// Copyright (c) 2026 The breather developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "breather/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace breather {

namespace {

// Local maxima of h at the grid nodes, best first; used to place the
// initial envelope.
std::vector<int> h_maxima(const Problem& pb) {
  const auto& h = pb.h_nodes();
  const int n = static_cast<int>(h.size());
  std::vector<int> idx;
  for (int j = 0; j < n; ++j) {
    const double left = j > 0 ? h[j - 1] : -1e300;
    const double right = j + 1 < n ? h[j + 1] : -1e300;
    if (h[j] > 0.0 && h[j] >= left && h[j] >= right) idx.push_back(j);
  }
  std::sort(idx.begin(), idx.end(), [&h](int a, int b) { return h[a] > h[b]; });
  if (idx.empty()) {
    // h has no positive node; fall back to the global maximum.
    idx.push_back(static_cast<int>(std::max_element(h.begin(), h.end()) - h.begin()));
  }
  return idx;
}

Field envelope_on_mode(const Problem& pb, int k0, double center, double sigma) {
  Field u = pb.new_field();
  const int i = pb.modes().index_of(k0);
  auto prof = u.profile(i);
  const auto& grid = pb.grid();
  for (int j = 0; j < grid.num_nodes(); ++j) {
    const double x = grid.node(j);
    double phi = std::exp(-((x - center) / sigma) * ((x - center) / sigma));
    if (grid.geometry() == Geometry::Cylindrical) phi *= x; // u ~ r on the axis
    prof[j] = Complex(0.5 * phi, 0.0); // u = Re[phi e_{k0}]
  }
  return u;
}

int pick_initial_mode(const Problem& pb, const SolverConfig& cfg) {
  if (cfg.initial_mode == 0) return pb.modes().regular.front();
  if (!pb.modes().contains(cfg.initial_mode)) {
    throw ConfigError("initial mode k0=" + std::to_string(cfg.initial_mode) +
                      " is not a regular harmonic of this material");
  }
  return std::abs(cfg.initial_mode);
}

void add_seeded_perturbation(Field& u, std::uint64_t seed, double rel_amplitude) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double scale = rel_amplitude * u.max_abs();
  const auto& grid = u.grid();
  const double L = grid.extent();
  for (int i = 0; i < u.num_modes(); ++i) {
    auto prof = u.profile(i);
    for (int j = 0; j < u.num_nodes(); ++j) {
      const double x = grid.node(j);
      double env = std::exp(-(x * x) / (L * L / 16.0));
      if (grid.geometry() == Geometry::Cylindrical) env *= x / L;
      prof[j] += scale * env * Complex(normal(rng), normal(rng));
    }
  }
}

double tail_mass_outer(const Field& u, double fraction) {
  const auto& grid = u.grid();
  const double cut = (1.0 - fraction) * grid.extent();
  double tail = 0.0, total = 0.0;
  for (int i = 0; i < u.num_modes(); ++i) {
    const auto prof = u.profile(i);
    for (int j = 0; j < u.num_nodes(); ++j) {
      const double m = grid.weight(j) * std::norm(prof[j]);
      total += m;
      if (std::abs(grid.node(j)) > cut) tail += m;
    }
  }
  return total > 0.0 ? tail / total : 0.0;
}

} // namespace

Field initial_guess(const Problem& pb, const SolverConfig& cfg) {
  const int k0 = pick_initial_mode(pb, cfg);
  const auto centers = h_maxima(pb);
  double sigma = cfg.envelope_width;
  for (int attempt = 0; attempt < 8; ++attempt) {
    const int jc = centers[std::min<size_t>(attempt, centers.size() - 1)];
    const double center = pb.grid().node(jc);
    Field u = envelope_on_mode(pb, k0, center, sigma);
    const double quart = quartic_integral(pb, u);
    if (quart > 0.0) {
      const NehariScale s = nehari_scale(pb, u);
      u.scale(s.t_star);
      return u;
    }
    if (static_cast<size_t>(attempt) >= centers.size() - 1) sigma *= 0.7;
  }
  throw NoPositiveQuartic("no envelope with int h phi^4 > 0 found "
                          "(h appears nonpositive near every candidate center)");
}

SolveReport ground_state(const Problem& pb, const SolverConfig& cfg, const Field* start) {
  if (!(cfg.tol_grad > 0.0)) throw ConfigError("tol_grad must be positive");

  SolveReport report;
  report.seed = cfg.seed;
  report.assumptions = validate_assumptions(pb.spec(), pb.K());
  if (report.assumptions.hard_fail()) {
    std::string what = "assumption validation failed:";
    for (const auto& c : report.assumptions.checks) {
      if (c.verdict == AssumptionCheck::Verdict::Fail && c.hard) {
        what += " [" + c.name + "] " + c.detail;
      }
    }
    throw Error(what);
  }

  Field u = start ? *start : initial_guess(pb, cfg);
  {
    // Keep a supplied start honest: project onto the manifold.
    const NehariScale s = nehari_scale(pb, u);
    u.scale(s.t_star);
  }

  double J = energy(pb, u).total;
  double step = cfg.initial_step;
  int restarts = 0;

  // Barzilai-Borwein history (in the H geometry).
  Field prev_u = u, prev_g = u;
  bool have_history = false;

  for (int iter = 0; iter < cfg.max_iter; ++iter) {
    const Field g = gradient(pb, u);
    const double gnorm2 = h_inner_product(pb, g, g, WeightKind::Potential);
    const double unorm2 = h_inner_product(pb, u, u, WeightKind::Potential);
    const double gnorm = std::sqrt(std::max(0.0, gnorm2));
    const double unorm = std::sqrt(std::max(0.0, unorm2));

    report.trace.push_back({iter, J, gnorm, step});

    if (gnorm <= cfg.tol_grad * unorm) {
      report.converged = true;
      report.iterations = iter;
      report.grad_norm = gnorm;
      report.grad_norm_rel = unorm > 0.0 ? gnorm / unorm : gnorm;
      break;
    }

    // Spectral (Barzilai-Borwein) trial step; curvature along near-flat
    // directions would otherwise throttle plain descent.
    double s = step;
    if (have_history) {
      Field du = u;
      du.axpy(-1.0, prev_u);
      Field dg = g;
      dg.axpy(-1.0, prev_g);
      const double num = h_inner_product(pb, du, dg, WeightKind::Potential);
      const double den = h_inner_product(pb, dg, dg, WeightKind::Potential);
      if (num > 0.0 && den > 0.0) {
        s = std::clamp(num / den, 1e-3 * cfg.initial_step, 1e6 * cfg.initial_step);
      }
    }
    prev_u = u;
    prev_g = g;

    // Backtracking on the Nehari-restricted energy. Near the minimum the
    // required energy decrease drops below the resolution of J; accept on
    // strict gradient-norm decrease instead (the quadratic-basin contraction).
    bool accepted = false;
    while (s > 1e-16 * cfg.initial_step) {
      Field trial = u;
      trial.axpy(-s, g);
      const double quart = quartic_integral(pb, trial);
      if (quart > 0.0) {
        const NehariScale sc = nehari_scale(pb, trial);
        trial.scale(sc.t_star);
        const double J_new = sc.energy_at_scale;
        const double required = cfg.armijo_constant * s * gnorm2;
        if (J_new <= J - required) {
          u = std::move(trial);
          J = J_new;
          step = s;
          accepted = true;
          break;
        }
        if (required <= 64.0 * 2.22e-16 * std::abs(J) &&
            J_new <= J + 64.0 * 2.22e-16 * std::abs(J)) {
          const Field g_new = gradient(pb, trial);
          const double gnew2 = h_inner_product(pb, g_new, g_new, WeightKind::Potential);
          if (gnew2 < gnorm2) {
            u = std::move(trial);
            J = std::min(J, J_new);
            step = s;
            accepted = true;
            break;
          }
        }
      }
      s *= cfg.backtrack_factor;
    }

    if (!accepted) {
      // Either the quartic stayed nonpositive down to step underflow or no
      // decrease was possible. Retry from a perturbed manifold point before
      // giving up.
      if (restarts < 3) {
        ++restarts;
        Field fresh = initial_guess(pb, cfg);
        add_seeded_perturbation(fresh, cfg.seed + restarts, 1e-2);
        const double quart = quartic_integral(pb, fresh);
        if (quart > 0.0) {
          const NehariScale sc = nehari_scale(pb, fresh);
          fresh.scale(sc.t_star);
          u = std::move(fresh);
          J = energy(pb, u).total;
          step = cfg.initial_step;
          have_history = false;
          continue;
        }
      }
      throw NoDescentDirection("Armijo step underflow at iteration " +
                               std::to_string(iter));
    }
    have_history = true;
  }

  if (!report.converged) {
    throw MaxIterExceeded("no convergence within " + std::to_string(cfg.max_iter) +
                          " iterations");
  }

  report.u = u;
  report.restarts = restarts;
  report.energy = energy(pb, u);
  const double quad = h_inner_product(pb, u, u, WeightKind::Potential);
  const double quart = quartic_integral(pb, u);
  report.mountain_pass_level = quart > 0.0 ? quad * quad / (4.0 * quart) : 0.0;
  report.energy_identity_defect = std::abs(report.energy.total - 0.25 * quad);
  report.tail_mass = tail_mass_outer(u, 0.10);
  report.minimal_period = detect_minimal_period(u);
  for (int i = 0; i < u.num_modes(); ++i) {
    double mx = 0.0;
    for (const auto& v : u.profile(i)) mx = std::max(mx, std::abs(v));
    if (mx > 1e-9 * u.max_abs()) report.active_modes.push_back(u.harmonic(i));
  }
  return report;
}

double detect_minimal_period(const Field& u, double activity_tol) {
  const double scale = u.max_abs();
  int g = 0;
  for (int i = 0; i < u.num_modes(); ++i) {
    double mx = 0.0;
    for (const auto& v : u.profile(i)) mx = std::max(mx, std::abs(v));
    if (mx > activity_tol * scale) g = std::gcd(g, u.harmonic(i));
  }
  if (g == 0) return u.period();
  return u.period() / g;
}

namespace {

// Relative L2 distance between two family members expressed over the common
// base period, minimized over time shifts.
double aligned_distance(const Field& a, int na, const Field& b, int nb, double base_T) {
  std::vector<std::pair<int, const Field*>> fields = {{na, &a}, {nb, &b}};
  std::vector<int> harmonics;
  for (auto [n, f] : fields) {
    for (int i = 0; i < f->num_modes(); ++i) harmonics.push_back(n * f->harmonic(i));
  }
  std::sort(harmonics.begin(), harmonics.end());
  harmonics.erase(std::unique(harmonics.begin(), harmonics.end()), harmonics.end());

  const auto& grid = a.grid();
  const int nn = grid.num_nodes();
  const double omega_base = 2.0 * 3.14159265358979323846 / base_T;

  auto profile_at = [&](const Field& f, int n, int abs_k) -> std::vector<Complex> {
    std::vector<Complex> out(nn, Complex(0.0, 0.0));
    if (abs_k % n == 0) {
      const int i = f.modes().index_of(abs_k / n);
      if (i >= 0) {
        const auto p = f.profile(i);
        std::copy(p.begin(), p.end(), out.begin());
      }
    }
    return out;
  };

  double norm_a = l2_norm_sq(a), norm_b = l2_norm_sq(b);
  const double scale = std::sqrt(std::max(norm_a, norm_b));
  if (scale == 0.0) return 0.0;

  double best = 1e300;
  const int shifts = 1024;
  for (int s = 0; s < shifts; ++s) {
    const double tau = base_T * s / shifts;
    double dist2 = 0.0;
    for (int k : harmonics) {
      const auto pa = profile_at(a, na, k);
      const auto pb = profile_at(b, nb, k);
      const double th = omega_base * k * tau;
      const Complex rot(std::cos(th), std::sin(th));
      double acc = 0.0;
      for (int j = 0; j < nn; ++j) acc += grid.weight(j) * std::norm(pa[j] - rot * pb[j]);
      dist2 += 2.0 * acc;
    }
    best = std::min(best, dist2);
  }
  return std::sqrt(best) / scale;
}

} // namespace

FamilyReport subharmonic_family(const MaterialSpec& spec, const SpaceGrid& grid,
                                const TimeGrid& tg, int K, const SolverConfig& cfg,
                                const std::vector<int>& n_list) {
  FamilyReport family;
  for (int n : n_list) {
    FamilyMember member;
    member.n = n;
    try {
      const MaterialSpec sub = subharmonic_restrict(spec, n);
      TimeGrid sub_tg = tg;
      sub_tg.T = sub.T;
      Problem pb(sub, grid, sub_tg, K);
      SolverConfig sub_cfg = cfg;
      if (cfg.initial_mode != 0 && !pb.modes().contains(cfg.initial_mode)) {
        sub_cfg.initial_mode = 0; // configured channel absent for this n
      }
      member.report = ground_state(pb, sub_cfg);
      member.solved = true;
    } catch (const EmptyRegularSet& e) {
      member.notice = e.what();
    }
    family.members.push_back(std::move(member));
  }

  const size_t m = family.members.size();
  family.distinct.assign(m, std::vector<bool>(m, false));
  family.distinct_by_period.assign(m, std::vector<bool>(m, false));
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = i + 1; j < m; ++j) {
      const auto& a = family.members[i];
      const auto& b = family.members[j];
      if (!a.solved || !b.solved) continue;
      const double pa = a.report->minimal_period;
      const double pq = b.report->minimal_period;
      const bool period_distinct = std::abs(pa - pq) > 1e-9 * std::max(pa, pq);
      bool dist_distinct = false;
      if (!period_distinct) {
        dist_distinct = aligned_distance(a.report->u, a.n, b.report->u, b.n, spec.T) > 1e-6;
      }
      family.distinct_by_period[i][j] = family.distinct_by_period[j][i] = period_distinct;
      family.distinct[i][j] = family.distinct[j][i] = period_distinct || dist_distinct;
    }
  }
  return family;
}

PeriodicComparison periodic_comparison(const MaterialSpec& spec, const SpaceGrid& grid,
                                       const TimeGrid& tg, int K, const SolverConfig& cfg,
                                       double tol) {
  PeriodicComparison out;
  const MaterialSpec per_spec = periodic_background(spec);
  Problem pb_full(spec, grid, tg, K);
  Problem pb_per(per_spec, grid, tg, K);

  out.periodic = ground_state(pb_per, cfg);
  out.full = ground_state(pb_full, cfg);

  // The periodic solution's ray bounds the full problem's Nehari level from
  // above; descending from it can only improve the estimate.
  SolveReport from_ray = ground_state(pb_full, cfg, &out.periodic.u);
  if (from_ray.energy.total < out.full.energy.total) out.full = std::move(from_ray);

  out.full_energy = out.full.energy.total;
  out.periodic_energy = out.periodic.energy.total;
  const double diff = out.periodic_energy - out.full_energy;
  if (std::abs(diff) < 10.0 * tol) {
    out.verdict = "inconclusive";
  } else if (out.full_energy <= out.periodic_energy + tol) {
    out.verdict = "consistent";
  } else {
    out.verdict = "violated";
  }
  return out;
}

} // namespace breather
