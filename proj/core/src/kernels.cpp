// Copyright (c) 2026 The breather developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "breather/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>

namespace breather {

namespace {

constexpr double kPi = 3.14159265358979323846;

// 16-point Gauss-Legendre nodes/weights on [-1, 1], computed once by Newton
// iteration on P_16.
struct GaussLegendre16 {
  double node[16];
  double weight[16];

  GaussLegendre16() {
    const int n = 16;
    for (int i = 0; i < n / 2; ++i) {
      double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int j = 2; j <= n; ++j) {
          double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
          p0 = p1;
          p1 = p2;
        }
        double dp = n * (x * p1 - p0) / (x * x - 1.0);
        double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (x * p1 - p0) / (x * x - 1.0);
      double w = 2.0 / ((1.0 - x * x) * dp * dp);
      node[i] = -x;
      node[n - 1 - i] = x;
      weight[i] = w;
      weight[n - 1 - i] = w;
    }
  }
};

const GaussLegendre16& gl16() {
  static const GaussLegendre16 table;
  return table;
}

// int_a^b f(tau) e^{-i k omega tau} dtau over `panels` equal panels.
std::complex<double> oscillatory_integral(const LineMeasure::DensityPiece& piece,
                                          double komega, int panels) {
  const auto& q = gl16();
  std::complex<double> acc = 0.0;
  const double h = (piece.hi - piece.lo) / panels;
  for (int p = 0; p < panels; ++p) {
    const double a = piece.lo + p * h;
    for (int i = 0; i < 16; ++i) {
      const double tau = a + 0.5 * h * (q.node[i] + 1.0);
      const double fv = piece.f(tau);
      if (!std::isfinite(fv)) {
        throw NonFiniteMeasure("density evaluates to a non-finite value at tau=" +
                               std::to_string(tau));
      }
      acc += (0.5 * h * q.weight[i]) * fv *
             std::complex<double>(std::cos(komega * tau), -std::sin(komega * tau));
    }
  }
  return acc;
}

} // namespace

double TorusMeasure::coeff(int k) const {
  const int a = std::abs(k);
  if (a >= static_cast<int>(coeffs.size())) {
    throw Error("TorusMeasure: harmonic " + std::to_string(k) +
                " beyond stored cutoff " + std::to_string(max_harmonic()));
  }
  return coeffs[a];
}

TorusMeasure periodic_reduce(const LineMeasure& measure, double T, int max_harmonic) {
  if (T <= 0.0) throw Error("periodic_reduce: period must be positive");
  if (max_harmonic < 1) throw Error("periodic_reduce: max_harmonic must be >= 1");

  const double omega = 2.0 * kPi / T;

  double total_variation = 0.0;
  for (const auto& atom : measure.atoms) {
    if (!std::isfinite(atom.mass) || !std::isfinite(atom.position)) {
      throw NonFiniteMeasure("atom with non-finite mass or position");
    }
    total_variation += std::abs(atom.mass);
  }
  for (const auto& piece : measure.pieces) {
    if (!std::isfinite(piece.lo) || !std::isfinite(piece.hi) || piece.hi < piece.lo) {
      throw NonFiniteMeasure("density piece with invalid support");
    }
  }

  TorusMeasure out;
  out.period = T;
  out.provenance = measure.pieces.empty() ? Provenance::ClosedForm : Provenance::Quadrature;
  out.coeffs.assign(max_harmonic + 1, 0.0);

  double scale = total_variation;
  std::vector<std::complex<double>> raw(max_harmonic + 1, 0.0);
  for (int k = 0; k <= max_harmonic; ++k) {
    std::complex<double> c = 0.0;
    for (const auto& atom : measure.atoms) {
      const double th = omega * k * atom.position;
      c += atom.mass * std::complex<double>(std::cos(th), -std::sin(th));
    }
    for (const auto& piece : measure.pieces) {
      // >= 16 nodes per oscillation of the exponential across the support.
      const int oscillations =
          std::max(1, static_cast<int>(std::ceil(k * (piece.hi - piece.lo) / T)));
      const auto coarse = oscillatory_integral(piece, omega * k, oscillations);
      const auto fine = oscillatory_integral(piece, omega * k, 2 * oscillations);
      if (std::abs(fine - coarse) >
          std::max(1e-12, 1e-9 * std::max(1.0, std::abs(fine)))) {
        throw NonFiniteMeasure("density quadrature did not converge at k=" +
                               std::to_string(k));
      }
      c += fine / T;
    }
    raw[k] = c;
    scale = std::max(scale, std::abs(c));
  }

  for (int k = 0; k <= max_harmonic; ++k) {
    if (std::abs(raw[k].imag()) > 1e-8 * std::max(1.0, scale)) {
      throw Error("periodic_reduce: measure is not even in time "
                  "(complex coefficient at k=" + std::to_string(k) + ")");
    }
    out.coeffs[k] = raw[k].real();
  }
  return out;
}

TorusMeasure delta_kernel(double T, int max_harmonic) {
  TorusMeasure out;
  out.period = T;
  out.provenance = Provenance::ClosedForm;
  out.coeffs.assign(max_harmonic + 1, 1.0);
  return out;
}

TorusMeasure truncated_sine_kernel(double T, int max_harmonic) {
  if (T <= 0.0) throw Error("truncated_sine_kernel: period must be positive");
  TorusMeasure out;
  out.period = T;
  out.provenance = Provenance::ClosedForm;
  out.coeffs.assign(max_harmonic + 1, 0.0);
  out.coeffs[0] = 2.0 - 2.0 / kPi;
  for (int k = 2; k <= max_harmonic; k += 2) {
    out.coeffs[k] = 2.0 / (kPi * (static_cast<double>(k) * k - 1.0));
  }
  return out;
}

TorusMeasure truncated_sine_kernel_quadrature(double T, int max_harmonic) {
  const double omega = 2.0 * kPi / T;
  LineMeasure m;
  // |sin| has kinks at 0 and T/2; split there so each piece is smooth.
  m.pieces.push_back({0.0, T / 2.0,
                      [omega](double tau) { return 2.0 - std::abs(std::sin(omega * tau)); }});
  m.pieces.push_back({T / 2.0, T,
                      [omega](double tau) { return 2.0 - std::abs(std::sin(omega * tau)); }});
  auto out = periodic_reduce(m, T, max_harmonic);
  out.provenance = Provenance::Quadrature;
  return out;
}

// --------------------------------------------------------------------------

double SpatialProfile::operator()(double x) const {
  switch (kind) {
    case Kind::Constant:
      return value;
    case Kind::Gaussian: {
      const double t = (x - center) / width;
      return baseline + amplitude * std::exp(-t * t);
    }
    case Kind::Cosine:
      return baseline + amplitude * std::cos(2.0 * kPi * (x - phase) / period);
    case Kind::Table: {
      if (xs.empty()) return 0.0;
      if (x <= xs.front()) return vs.front();
      if (x >= xs.back()) return vs.back();
      const auto it = std::upper_bound(xs.begin(), xs.end(), x);
      const size_t i = static_cast<size_t>(it - xs.begin());
      const double t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
      return vs[i - 1] + t * (vs[i] - vs[i - 1]);
    }
    case Kind::Sum: {
      double acc = 0.0;
      for (const auto& term : terms) acc += term(x);
      return acc;
    }
  }
  return 0.0;
}

SpatialProfile SpatialProfile::constant(double v) {
  SpatialProfile p;
  p.kind = Kind::Constant;
  p.value = v;
  return p;
}

SpatialProfile SpatialProfile::gaussian(double amplitude, double center, double width,
                                        double baseline) {
  SpatialProfile p;
  p.kind = Kind::Gaussian;
  p.amplitude = amplitude;
  p.center = center;
  p.width = width;
  p.baseline = baseline;
  return p;
}

SpatialProfile SpatialProfile::cosine(double amplitude, double period, double phase,
                                      double baseline) {
  SpatialProfile p;
  p.kind = Kind::Cosine;
  p.amplitude = amplitude;
  p.period = period;
  p.phase = phase;
  p.baseline = baseline;
  return p;
}

SpatialProfile SpatialProfile::sum(std::vector<SpatialProfile> terms) {
  SpatialProfile p;
  p.kind = Kind::Sum;
  p.terms = std::move(terms);
  return p;
}

bool LinearKernelField::has_split() const {
  return std::any_of(components.begin(), components.end(), [](const LinearComponent& c) {
    return c.role != ComponentRole::Total;
  });
}

double LinearKernelField::fourier_coeff(double x, int k) const {
  double acc = 0.0;
  for (const auto& comp : components) acc += comp.profile(x) * comp.kernel.coeff(k);
  return acc;
}

double LinearKernelField::fourier_coeff_periodic(double x, int k) const {
  double acc = 0.0;
  for (const auto& comp : components) {
    if (comp.role == ComponentRole::Periodic) acc += comp.profile(x) * comp.kernel.coeff(k);
  }
  return acc;
}

double LinearKernelField::fourier_coeff_localized(double x, int k) const {
  double acc = 0.0;
  for (const auto& comp : components) {
    if (comp.role == ComponentRole::Localized) acc += comp.profile(x) * comp.kernel.coeff(k);
  }
  return acc;
}

int LinearKernelField::max_harmonic() const {
  int k = std::numeric_limits<int>::max();
  for (const auto& comp : components) k = std::min(k, comp.kernel.max_harmonic());
  return components.empty() ? std::numeric_limits<int>::max() : k;
}

double CubicCoefficient::eval(double x) const {
  if (total) return (*total)(x);
  return eval_periodic(x) + eval_localized(x);
}

double CubicCoefficient::eval_periodic(double x) const {
  return periodic ? (*periodic)(x) : 0.0;
}

double CubicCoefficient::eval_localized(double x) const {
  return localized ? (*localized)(x) : 0.0;
}

void MaterialSpec::check_wellformed() const {
  if (!(c > 0.0 && c < 1.0)) throw ConfigError("material: speed c must lie in (0,1)");
  if (!(T > 0.0)) throw ConfigError("material: period T must be positive");
  if (alpha > beta) throw ConfigError("material: decay exponents need alpha <= beta");
  const bool nu_nonzero =
      std::any_of(nu.coeffs.begin(), nu.coeffs.end(), [](double v) { return v != 0.0; });
  if (!nu_nonzero) throw ConfigError("material: nonlinear kernel nu is zero");
  if (!h.total && !h.periodic && !h.localized) {
    throw ConfigError("material: cubic coefficient h is missing");
  }
}

// --------------------------------------------------------------------------

bool ModeSet::contains(int k) const {
  return std::binary_search(regular.begin(), regular.end(), std::abs(k));
}

int ModeSet::index_of(int k) const {
  const auto it = std::lower_bound(regular.begin(), regular.end(), std::abs(k));
  if (it == regular.end() || *it != std::abs(k)) return -1;
  return static_cast<int>(it - regular.begin());
}

namespace {

double kernel_scale(const TorusMeasure& nu, int K) {
  double scale = 0.0;
  for (int k = 1; k <= std::min(K, nu.max_harmonic()); ++k) {
    scale = std::max(scale, std::abs(nu.coeff(k)));
  }
  return scale;
}

} // namespace

ModeSet regular_set(const TorusMeasure& nu, int K, Geometry geometry, double zero_tol) {
  if (K < 1) throw Error("regular_set: K must be >= 1");
  if (nu.max_harmonic() < K) {
    throw Error("regular_set: kernel cutoff " + std::to_string(nu.max_harmonic()) +
                " below requested K=" + std::to_string(K));
  }
  const double scale = kernel_scale(nu, K);
  ModeSet set;
  set.K = K;
  set.geometry = geometry;
  for (int k = 1; k <= K; ++k) {
    if (geometry == Geometry::Cylindrical && k % 2 == 0) continue;
    if (std::abs(nu.coeff(k)) > zero_tol * scale) set.regular.push_back(k);
  }
  if (set.regular.empty()) {
    throw EmptyRegularSet("no regular modes: F_k[nu] vanishes on all admissible "
                          "harmonics up to K=" + std::to_string(K));
  }
  return set;
}

std::vector<int> singular_modes(const TorusMeasure& nu, int k_max, Geometry geometry,
                                double zero_tol) {
  const double scale = kernel_scale(nu, std::min(k_max, nu.max_harmonic()));
  std::vector<int> out;
  for (int k = 1; k <= std::min(k_max, nu.max_harmonic()); ++k) {
    const bool parity_ok = (geometry != Geometry::Cylindrical) || (k % 2 == 1);
    const bool kernel_nonzero = std::abs(nu.coeff(k)) > zero_tol * scale;
    if (!(parity_ok && kernel_nonzero)) out.push_back(k);
  }
  return out;
}

// --------------------------------------------------------------------------

bool AssumptionReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const AssumptionCheck& c) {
    return c.verdict != AssumptionCheck::Verdict::Fail;
  });
}

bool AssumptionReport::hard_fail() const {
  return std::any_of(checks.begin(), checks.end(), [](const AssumptionCheck& c) {
    return c.verdict == AssumptionCheck::Verdict::Fail && c.hard;
  });
}

const AssumptionCheck* AssumptionReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

namespace {

std::vector<double> default_samples(const MaterialSpec& spec) {
  if (!spec.validation_samples.empty()) return spec.validation_samples;
  // Without a configured grid, probe a generic range.
  std::vector<double> xs(1024);
  if (spec.geometry == Geometry::Slab) {
    for (size_t j = 0; j < xs.size(); ++j) {
      xs[j] = -50.0 + 100.0 * (static_cast<double>(j) + 0.5) / xs.size();
    }
  } else {
    for (size_t j = 0; j < xs.size(); ++j) {
      xs[j] = 50.0 * (static_cast<double>(j) + 0.5) / xs.size();
    }
  }
  return xs;
}

} // namespace

AssumptionReport validate_assumptions(const MaterialSpec& spec, int K) {
  AssumptionReport report;
  const auto xs = default_samples(spec);
  const int k_check = std::min(3 * K, spec.linear.max_harmonic() == std::numeric_limits<int>::max()
                                          ? 3 * K
                                          : spec.linear.max_harmonic());

  // (A3) boundedness of the linear law and of h; h not everywhere <= 0.
  {
    AssumptionCheck a3;
    a3.name = "A3";
    a3.hard = true;
    double worst_g = 0.0;
    int worst_gk = 0;
    double max_h = -std::numeric_limits<double>::infinity();
    double max_abs_h = 0.0, argmax_h = xs.front();
    bool finite = true;
    for (double x : xs) {
      for (int k = 0; k <= k_check; ++k) {
        const double g = spec.linear.fourier_coeff(x, k);
        if (!std::isfinite(g)) finite = false;
        if (std::abs(g) > std::abs(worst_g)) {
          worst_g = g;
          worst_gk = k;
        }
      }
      const double hv = spec.h.eval(x);
      if (!std::isfinite(hv)) finite = false;
      if (hv > max_h) {
        max_h = hv;
        argmax_h = x;
      }
      max_abs_h = std::max(max_abs_h, std::abs(hv));
    }
    a3.witness_k = worst_gk;
    a3.witness_x = argmax_h;
    a3.witness_value = max_h;
    a3.margin = max_h;
    if (!finite) {
      a3.verdict = AssumptionCheck::Verdict::Fail;
      a3.detail = "non-finite coefficient values";
    } else if (max_h <= 0.0) {
      a3.verdict = AssumptionCheck::Verdict::Fail;
      a3.detail = "h <= 0 everywhere (max h = " + std::to_string(max_h) + ")";
    } else {
      a3.verdict = AssumptionCheck::Verdict::Pass;
      a3.detail = "sup|F_k[G]| = " + std::to_string(std::abs(worst_g)) +
                  ", sup|h| = " + std::to_string(max_abs_h);
    }
    report.checks.push_back(std::move(a3));
  }

  // (A4) ellipticity margin 1/c^2 - 1 - F_k[G(x)] > 0, all sampled x, |k| <= 3K.
  {
    AssumptionCheck a4;
    a4.name = "A4";
    a4.hard = true;
    const double bound = 1.0 / (spec.c * spec.c) - 1.0;
    double min_margin = std::numeric_limits<double>::infinity();
    for (double x : xs) {
      for (int k = 0; k <= k_check; ++k) {
        const double m = bound - spec.linear.fourier_coeff(x, k);
        if (m < min_margin) {
          min_margin = m;
          a4.witness_x = x;
          a4.witness_k = k;
          a4.witness_value = spec.linear.fourier_coeff(x, k);
        }
      }
    }
    a4.margin = min_margin;
    a4.verdict = min_margin > 0.0 ? AssumptionCheck::Verdict::Pass
                                  : AssumptionCheck::Verdict::Fail;
    a4.detail = "min margin 1/c^2-1-F_k[G] = " + std::to_string(min_margin);
    report.checks.push_back(std::move(a4));
  }

  // (A5) positivity and declared two-sided decay of F_k[nu] on R.
  {
    AssumptionCheck a5;
    a5.name = "A5";
    a5.hard = false;
    const double alpha_crit = spec.geometry == Geometry::Slab ? 1.0 : 1.5;
    try {
      const ModeSet modes = regular_set(spec.nu, K, spec.geometry);
      double min_coeff = std::numeric_limits<double>::infinity();
      int min_k = 0;
      double log_c_upper = 0.0, log_c_lower = 0.0;
      for (int k : modes.regular) {
        const double f = spec.nu.coeff(k);
        if (f < min_coeff) {
          min_coeff = f;
          min_k = k;
        }
      }
      if (min_coeff <= 0.0) {
        a5.verdict = AssumptionCheck::Verdict::Fail;
        a5.hard = true; // the H-norm needs F_k[nu] > 0 on R
        a5.witness_k = min_k;
        a5.witness_value = min_coeff;
        a5.detail = "F_k[nu] not strictly positive on R";
      } else {
        for (int k : modes.regular) {
          const double f = spec.nu.coeff(k);
          log_c_upper += std::log(f * std::pow(k, spec.alpha));
          log_c_lower += std::log(f * std::pow(k, spec.beta));
        }
        log_c_upper /= modes.count();
        log_c_lower /= modes.count();
        const double c_upper = std::exp(log_c_upper);
        const double c_lower = std::exp(log_c_lower);
        double worst_ratio = 1.0;
        int worst_k = modes.regular.front();
        for (int k : modes.regular) {
          const double f = spec.nu.coeff(k);
          const double up = f * std::pow(k, spec.alpha) / c_upper;
          const double lo = c_lower / (f * std::pow(k, spec.beta));
          const double ratio = std::max(up, lo);
          if (ratio > worst_ratio) {
            worst_ratio = ratio;
            worst_k = k;
          }
        }
        a5.margin = spec.alpha - alpha_crit;
        a5.witness_k = worst_k;
        a5.witness_value = worst_ratio;
        const bool fit_ok = worst_ratio <= 10.0;
        const bool exponent_ok = spec.alpha > alpha_crit;
        a5.verdict = (fit_ok && exponent_ok) ? AssumptionCheck::Verdict::Pass
                                             : AssumptionCheck::Verdict::Fail;
        a5.detail = "fit C_upper=" + std::to_string(c_upper) +
                    " C_lower=" + std::to_string(c_lower) +
                    " worst deviation x" + std::to_string(worst_ratio) +
                    (exponent_ok ? "" : " (declared alpha <= critical exponent)");
      }
    } catch (const EmptyRegularSet& e) {
      a5.verdict = AssumptionCheck::Verdict::Fail;
      a5.hard = true;
      a5.detail = e.what();
    }
    report.checks.push_back(std::move(a5));
  }

  // (A6) slab compactness structure: decay of h, or periodic+localized split
  // with sign conditions.
  {
    AssumptionCheck a6;
    a6.name = "A6";
    a6.hard = false;
    if (spec.geometry != Geometry::Slab) {
      a6.verdict = AssumptionCheck::Verdict::NotApplicable;
      a6.detail = "cylindrical geometry carries its own compactness";
    } else {
      const bool split = spec.linear.has_split() || spec.h.has_split();
      if (!split) {
        // (A6a): h decays at the sampled edges.
        double max_abs_h = 0.0;
        for (double x : xs) max_abs_h = std::max(max_abs_h, std::abs(spec.h.eval(x)));
        const size_t edge = std::max<size_t>(1, xs.size() / 20);
        double edge_max = 0.0;
        double edge_x = xs.front();
        for (size_t j = 0; j < edge; ++j) {
          for (double x : {xs[j], xs[xs.size() - 1 - j]}) {
            const double v = std::abs(spec.h.eval(x));
            if (v > edge_max) {
              edge_max = v;
              edge_x = x;
            }
          }
        }
        a6.margin = max_abs_h > 0.0 ? edge_max / max_abs_h : 0.0;
        a6.witness_x = edge_x;
        a6.witness_value = edge_max;
        a6.verdict = (a6.margin <= 0.01) ? AssumptionCheck::Verdict::Pass
                                         : AssumptionCheck::Verdict::Fail;
        a6.detail = "A6a: |h| at domain edge / sup|h| = " + std::to_string(a6.margin);
      } else {
        // (A6b): localized linear part positive definite, h_loc >= 0,
        // h_per somewhere positive, localized parts decaying at the edges.
        bool ok = true;
        std::string why;
        double min_gloc = std::numeric_limits<double>::infinity();
        for (double x : xs) {
          for (int k = 0; k <= k_check; ++k) {
            const double g = spec.linear.fourier_coeff_localized(x, k);
            if (g < min_gloc) {
              min_gloc = g;
              a6.witness_x = x;
              a6.witness_k = k;
              a6.witness_value = g;
            }
          }
        }
        if (min_gloc < 0.0) {
          ok = false;
          why = "localized linear kernel not positive definite";
        }
        double min_hloc = std::numeric_limits<double>::infinity();
        double max_hper = -std::numeric_limits<double>::infinity();
        for (double x : xs) {
          min_hloc = std::min(min_hloc, spec.h.eval_localized(x));
          max_hper = std::max(max_hper, spec.h.eval_periodic(x));
        }
        if (spec.h.has_split() && min_hloc < 0.0) {
          ok = false;
          why = "h_loc has negative values";
        }
        if (spec.h.has_split() && max_hper <= 0.0) {
          ok = false;
          why = "h_per <= 0 everywhere";
        }
        if (!spec.linear.background_period && spec.linear.has_split()) {
          ok = false;
          why = "split declared without a background period X";
        }
        a6.margin = std::isfinite(min_gloc) ? min_gloc : 0.0;
        a6.verdict = ok ? AssumptionCheck::Verdict::Pass : AssumptionCheck::Verdict::Fail;
        a6.detail = ok ? "A6b: split structure satisfied" : "A6b: " + why;
      }
    }
    report.checks.push_back(std::move(a6));
  }

  return report;
}

// --------------------------------------------------------------------------

namespace {

TorusMeasure restrict_measure(const TorusMeasure& m, int n, int new_cutoff) {
  TorusMeasure out;
  out.period = m.period / n;
  out.provenance = m.provenance;
  out.coeffs.assign(new_cutoff + 1, 0.0);
  for (int k = 0; k <= new_cutoff; ++k) out.coeffs[k] = m.coeff(n * k);
  return out;
}

} // namespace

MaterialSpec subharmonic_restrict(const MaterialSpec& spec, int n) {
  if (n < 1) throw Error("subharmonic_restrict: n must be >= 1");
  if (n == 1) return spec;

  MaterialSpec out = spec;
  out.T = spec.T / n;
  const int nu_cutoff = spec.nu.max_harmonic() / n;
  if (nu_cutoff < 1) {
    throw EmptyRegularSet("subharmonic_restrict: kernel cutoff too small for n=" +
                          std::to_string(n));
  }
  out.nu = restrict_measure(spec.nu, n, nu_cutoff);
  for (auto& comp : out.linear.components) {
    comp.kernel = restrict_measure(comp.kernel, n, comp.kernel.max_harmonic() / n);
  }

  const bool any_nonzero = std::any_of(out.nu.coeffs.begin() + 1, out.nu.coeffs.end(),
                                       [](double v) { return v != 0.0; });
  if (!any_nonzero) {
    throw EmptyRegularSet("subharmonic_restrict: R contains no multiples of n=" +
                          std::to_string(n));
  }
  return out;
}

} // namespace breather
