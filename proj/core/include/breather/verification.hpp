// Copyright (c) 2026 The breather developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "breather/reconstruction.hpp"
#include "breather/solver.hpp"

namespace breather {

struct ModeResidual {
  int harmonic = 0;
  double weighted_norm = 0.0;
};

struct ResidualReport {
  // Strong-form defect of the effective equation, per mode and aggregated in
  // the H-weighted L2 norm; relative to the norm of the linear term.
  double profile_residual = 0.0;
  double profile_residual_rel = 0.0;
  std::vector<ModeResidual> per_mode;
  // Variant ii only: defect of the singular-mode problem for w2.
  double w_equation_residual = 0.0;
  // Forcing carried by regular-extended harmonics above K that the truncated
  // u cannot represent (reported, not an error).
  double band_limit_defect = 0.0;

  MaxwellResiduals maxwell;
  double energy_identity_defect = 0.0;

  std::vector<double> decay_fractions;
  std::vector<double> decay_tail_masses;

  std::vector<double> smoothness_orders;
  std::vector<double> smoothness_h_norms;
  std::vector<double> smoothness_sup_norms;
  double spectral_tail_ratio = 0.0; // |u_Kmax| / max_k |u_k|
  bool flat_spectrum_flag = false;

  double p_star = 0.0; // embedding exponent 4/(2-alpha) or 6/(3-alpha)
};

// Strong residual of -u_xx - V d_t^2 u + h d_t^2 (nu * u^3) per regular mode:
// op_k u_k - omega^2 k^2 F_k[nu] (h u^3)_k, aggregated with the H mode
// weights. For variant ii the w2 defect and the above-K forcing are also
// reported.
ResidualReport profile_residual(const Problem& pb, const Field& u,
                                const ProfilePair* pair = nullptr);

// ||d_t^s u||_H and sup norms for the requested orders, plus a spectral-tail
// flag (flat mode spectra indicate non-smooth solutions).
void smoothness_probe(const Problem& pb, const Field& u, const std::vector<double>& orders,
                      ResidualReport& report);

// Fraction-of-domain tail L2 masses.
void decay_probe(const Field& u, const std::vector<double>& fractions,
                 ResidualReport& report);

// Embedding diagnostic constant: max ||u||_L4 / ||u||_H over `trials` seeded
// random fields at the problem's mode count.
double embedding_constant(const Problem& pb, int trials, std::uint64_t seed);

struct InvariantCheck {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct InvariantMatrix {
  std::vector<InvariantCheck> checks;
  bool all_pass() const;
};

// Cross-module invariant battery over a converged solve: discrete identities
// (Parseval, projections, operator symmetry, norm equivalence, lift/gradient
// consistency), solver contracts (monotone descent, positive energy, Nehari
// maximality), reconstruction consistency and the embedding diagnostic.
InvariantMatrix invariant_suite(const Problem& pb, const SolveReport& report,
                                std::uint64_t seed = 1234);

ResidualReport full_residual_report(const Problem& pb, const SolveReport& report,
                                    const ProfilePair& pair);

} // namespace breather
