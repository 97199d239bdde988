// Copyright (c) 2026 The breather developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "breather/errors.hpp"

namespace breather {

enum class Geometry { Slab, Cylindrical };

enum class NonlinearityVariant {
  ConvolvedCube, // N(w) = nu * w^3          (variant i)
  CubedConvolution, // N(w) = (nu * w)^3     (variant ii)
};

enum class Provenance { ClosedForm, Quadrature, UserTable };

// A retardation kernel reduced to the torus R/TZ, represented by its real
// Fourier coefficients F_k for 0 <= k <= max_harmonic (even in time, so
// F_{-k} = F_k and all coefficients are real).
//
// Conventions: an atom of mass m at position tau contributes
// m*cos(k*omega*tau); a density f(tau) dtau contributes
// (1/T) int f(tau) e^{-i k omega tau} dtau. In particular F_k[delta_0] = 1
// for all k, and the truncated-sine kernel has F_0 = 2 - 2/pi,
// F_k = 2/(pi (k^2-1)) for even k != 0 and F_k = 0 for odd k.
struct TorusMeasure {
  double period = 0.0;
  std::vector<double> coeffs; // index k = 0 .. max_harmonic
  Provenance provenance = Provenance::ClosedForm;

  int max_harmonic() const { return static_cast<int>(coeffs.size()) - 1; }

  // Even extension F_{-k} = F_k; out-of-range harmonics are an error.
  double coeff(int k) const;
};

// A finite real measure on the line: point masses plus smooth density pieces.
// Pieces must not overlap; breakpoints should be placed at kinks of f.
struct LineMeasure {
  struct Atom {
    double position = 0.0;
    double mass = 0.0;
  };
  struct DensityPiece {
    double lo = 0.0;
    double hi = 0.0;
    std::function<double(double)> f;
  };
  std::vector<Atom> atoms;
  std::vector<DensityPiece> pieces;
};

// Periodic reduction of a line measure: Fourier coefficients F_k for
// 0 <= k <= max_harmonic under the conventions documented on TorusMeasure.
// Densities are integrated with composite Gauss-Legendre (16 nodes per
// oscillation of e^{-ik omega tau}), Richardson-checked against a doubled
// panel count. Throws NonFiniteMeasure on divergent or non-finite input and
// rejects measures that are not even in time (complex coefficients).
TorusMeasure periodic_reduce(const LineMeasure& measure, double T, int max_harmonic);

// F_k = 1 for all k.
TorusMeasure delta_kernel(double T, int max_harmonic);

// Closed-form coefficients of nu(tau) = (2 - |sin(omega tau)|) 1_[0,T](tau) dtau.
TorusMeasure truncated_sine_kernel(double T, int max_harmonic);

// Same kernel through the quadrature path (exercises periodic_reduce).
TorusMeasure truncated_sine_kernel_quadrature(double T, int max_harmonic);

// --------------------------------------------------------------------------
// Spatial coefficient functions
// --------------------------------------------------------------------------

// Small closed registry of spatial profiles so material files serialize
// exactly and evaluate on any grid.
struct SpatialProfile {
  enum class Kind { Constant, Gaussian, Cosine, Table, Sum };

  Kind kind = Kind::Constant;
  // Constant: value
  // Gaussian: baseline + amplitude * exp(-((x-center)/width)^2)
  // Cosine:   baseline + amplitude * cos(2 pi (x - phase)/period)
  double value = 0.0;
  double amplitude = 0.0;
  double center = 0.0;
  double width = 1.0;
  double period = 1.0;
  double phase = 0.0;
  double baseline = 0.0;
  std::vector<double> xs, vs; // Table: piecewise linear, clamped outside
  std::vector<SpatialProfile> terms; // Sum

  double operator()(double x) const;

  static SpatialProfile constant(double v);
  static SpatialProfile gaussian(double amplitude, double center, double width,
                                 double baseline = 0.0);
  static SpatialProfile cosine(double amplitude, double period, double phase = 0.0,
                               double baseline = 0.0);
  static SpatialProfile sum(std::vector<SpatialProfile> terms);
};

enum class ComponentRole { Total, Periodic, Localized };

// One separable term gamma(x) * kernel of the linear retardation field.
struct LinearComponent {
  SpatialProfile profile;
  TorusMeasure kernel;
  ComponentRole role = ComponentRole::Total;
};

// The linear material law G(x): a sum of separable components with optional
// periodic/localized split. F_k[G(x)] is evaluated per location and harmonic.
struct LinearKernelField {
  std::vector<LinearComponent> components;
  std::optional<double> background_period; // X, when a split is declared

  bool has_split() const;
  // Sum over components (all roles).
  double fourier_coeff(double x, int k) const;
  // Only role == Periodic components.
  double fourier_coeff_periodic(double x, int k) const;
  // Only role == Localized components.
  double fourier_coeff_localized(double x, int k) const;
  int max_harmonic() const;
};

// The cubic coefficient h(x), optionally split h = h_per + h_loc.
struct CubicCoefficient {
  std::optional<SpatialProfile> total; // used when no split
  std::optional<SpatialProfile> periodic;
  std::optional<SpatialProfile> localized;

  bool has_split() const { return periodic.has_value(); }
  double eval(double x) const;
  double eval_periodic(double x) const;
  double eval_localized(double x) const;
};

// Full material description: geometry, speed, period, linear law, cubic
// coefficient, nonlinear kernel, nonlinearity variant, declared decay
// exponents of F_k[nu].
struct MaterialSpec {
  Geometry geometry = Geometry::Slab;
  double c = 0.5; // speed of travel, in units of the speed of light
  double T = 2.0 * 3.14159265358979323846;
  LinearKernelField linear;
  CubicCoefficient h;
  TorusMeasure nu;
  NonlinearityVariant variant = NonlinearityVariant::ConvolvedCube;
  double alpha = 2.0, beta = 2.0; // declared decay exponents, alpha <= beta
  std::vector<double> validation_samples; // x (or r) locations for validators

  double omega() const { return 2.0 * 3.14159265358979323846 / T; }
  void check_wellformed() const; // 0<c<1, T>0, alpha<=beta, nu != 0
};

// --------------------------------------------------------------------------
// Mode sets and assumption validation
// --------------------------------------------------------------------------

// Temporal mode bookkeeping: R+ = {k in [1,K] : F_k[nu] above threshold},
// closed under negation implicitly; cylindrical geometry keeps odd k only.
struct ModeSet {
  int K = 0;
  Geometry geometry = Geometry::Slab;
  std::vector<int> regular; // positive members of R, ascending

  bool contains(int k) const;
  int index_of(int k) const; // -1 if absent
  int count() const { return static_cast<int>(regular.size()); }
  bool operator==(const ModeSet&) const = default;
};

// Membership threshold is zero_tol relative to max_k |F_k|.
ModeSet regular_set(const TorusMeasure& nu, int K, Geometry geometry,
                    double zero_tol = 1e-14);

// Positive singular modes up to k_max: not in the (parity-filtered) regular
// extension of nu's support.
std::vector<int> singular_modes(const TorusMeasure& nu, int k_max, Geometry geometry,
                                double zero_tol = 1e-14);

struct AssumptionCheck {
  std::string name;
  enum class Verdict { Pass, Fail, NotApplicable } verdict = Verdict::Pass;
  bool hard = false;            // hard failures block solves
  std::string detail;           // human-readable summary
  double margin = 0.0;          // worst margin/ratio where meaningful
  int witness_k = 0;            // worst harmonic
  double witness_x = 0.0;       // worst location
  double witness_value = 0.0;   // value at the witness
};

struct AssumptionReport {
  std::vector<AssumptionCheck> checks;

  bool all_pass() const;
  bool hard_fail() const;
  const AssumptionCheck* find(const std::string& name) const;
};

// Checks (A3)-(A6) over the material's validation samples and |k| <= 3K:
// boundedness of F_k[G(x)] and h; the ellipticity margin
// 1/c^2 - 1 - F_k[G(x)] > 0; positivity and declared two-sided decay of
// F_k[nu] on R (log-log constant fit, pass = within 10x of the fitted
// constant, alpha above the geometry's critical exponent); slab compactness
// structure (h -> 0, or split with positive-definite localized part).
// Failures are verdicts, never exceptions.
AssumptionReport validate_assumptions(const MaterialSpec& spec, int K);

// Material for the reduced period T/n: omega' = n omega and every kernel
// coefficient sequence restricted to multiples of n (F'_k = F_{nk}).
// Throws EmptyRegularSet when no nk lies in R at the available cutoff.
MaterialSpec subharmonic_restrict(const MaterialSpec& spec, int n);

} // namespace breather
