// Copyright (c) 2026 The breather developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "breather/reconstruction.hpp"

#include <algorithm>
#include <cmath>

#include "breather/parallel.hpp"

namespace breather {

int HarmonicField::index_of(int k) const {
  const auto it = std::lower_bound(harmonics.begin(), harmonics.end(), k);
  if (it == harmonics.end() || *it != k) return -1;
  return static_cast<int>(it - harmonics.begin());
}

double HarmonicField::eval(int node, double t) const {
  const double omega = 2.0 * 3.14159265358979323846 / period;
  double acc = 0.0;
  for (size_t h = 0; h < harmonics.size(); ++h) {
    const int k = harmonics[h];
    const Complex c = profile(static_cast<int>(h))[node];
    if (k == 0) {
      acc += c.real();
    } else {
      const double th = omega * k * t;
      acc += 2.0 * (c.real() * std::cos(th) - c.imag() * std::sin(th));
    }
  }
  return acc;
}

HarmonicField ProfilePair::combined() const {
  HarmonicField out;
  out.grid = w1.grid();
  out.period = w1.period();
  std::vector<int> hs;
  for (int i = 0; i < w1.num_modes(); ++i) hs.push_back(w1.harmonic(i));
  hs.insert(hs.end(), singular_harmonics.begin(), singular_harmonics.end());
  std::sort(hs.begin(), hs.end());
  out.harmonics = hs;
  const int n = out.grid.num_nodes();
  out.coef.assign(hs.size() * static_cast<size_t>(n), Complex(0.0, 0.0));
  for (size_t h = 0; h < hs.size(); ++h) {
    const int k = hs[h];
    Complex* dst = out.profile(static_cast<int>(h));
    const int i = w1.modes().index_of(k);
    if (i >= 0) {
      const auto p = w1.profile(i);
      std::copy(p.begin(), p.end(), dst);
    } else {
      const auto it = std::find(singular_harmonics.begin(), singular_harmonics.end(), k);
      const size_t si = static_cast<size_t>(it - singular_harmonics.begin());
      std::copy(w2_coef.begin() + si * n, w2_coef.begin() + (si + 1) * n, dst);
    }
  }
  return out;
}

namespace {

// Fourier coefficients of u^3 for harmonics 0..k_max, on an internal time grid
// fine enough that the cube is alias-free (M >= 6K+1).
SpectralField cube_spectrum(const Problem& pb, const Field& u, int k_max) {
  TimeGrid fine;
  fine.T = u.period();
  fine.M = std::max(pb.time_grid().M, 6 * pb.K() + 2);
  TimeSamples s = time_synthesis(u, fine);
  for (auto& v : s.values) v = v * v * v;
  return time_analysis(s, k_max);
}

} // namespace

ProfilePair profile_from_u(const Problem& pb, const Field& u, int K_sing) {
  ProfilePair pair;
  pair.variant = pb.spec().variant;

  if (pair.variant == NonlinearityVariant::ConvolvedCube) {
    pair.w1 = u;
    return pair;
  }

  // Variant ii: w1 = (nu*)^{-1} u on R.
  pair.w1 = u;
  for (int i = 0; i < u.num_modes(); ++i) {
    const double f = pb.nu_coeff(u.harmonic(i));
    auto prof = pair.w1.profile(i);
    for (auto& v : prof) v /= f;
  }

  if (K_sing <= 0) K_sing = 3 * pb.K();
  pair.singular_harmonics =
      singular_modes(pb.spec().nu, K_sing, pb.grid().geometry());

  if (pair.singular_harmonics.empty()) return pair;

  const SpectralField ucube = cube_spectrum(pb, u, K_sing);
  const auto& h = pb.h_nodes();
  const int n = pb.grid().num_nodes();
  const double omega = pb.omega();
  pair.w2_coef.assign(pair.singular_harmonics.size() * static_cast<size_t>(n),
                      Complex(0.0, 0.0));
  for (size_t si = 0; si < pair.singular_harmonics.size(); ++si) {
    const int k = pair.singular_harmonics[si];
    const double w2k2 = omega * omega * static_cast<double>(k) * k;
    std::vector<Complex> rhs(n);
    const Complex* fk = ucube.mode(k);
    for (int j = 0; j < n; ++j) rhs[j] = w2k2 * h[j] * fk[j];
    const auto sol = pb.op_for_harmonic(k).solve(std::span<const Complex>(rhs));
    std::copy(sol.begin(), sol.end(), pair.w2_coef.begin() + si * n);
  }
  return pair;
}

HarmonicField time_antiderivative(const ProfilePair& pair) {
  HarmonicField w = pair.combined();
  const double omega = 2.0 * 3.14159265358979323846 / w.period;
  for (size_t h = 0; h < w.harmonics.size(); ++h) {
    const int k = w.harmonics[h];
    if (k == 0) throw Error("time_antiderivative: unexpected DC component");
    Complex* prof = w.profile(static_cast<int>(h));
    const Complex inv = 1.0 / Complex(0.0, omega * k);
    for (int j = 0; j < w.grid.num_nodes(); ++j) prof[j] *= inv;
  }
  return w;
}

std::vector<int> FieldLattice::node_indices(const SpaceGrid& grid) const {
  std::vector<int> idx;
  const int n = grid.num_nodes();
  int count = node_count;
  for (int j = node_start; j < n; j += node_stride) {
    idx.push_back(j);
    if (count > 0 && static_cast<int>(idx.size()) >= count) break;
  }
  if (idx.size() < 3) throw Error("lattice needs at least 3 transverse nodes");
  return idx;
}

namespace {

// Per-lattice-node harmonic tables of the assembled quantities.
struct AssemblyTables {
  std::vector<int> nodes;
  std::vector<double> pos; // x or r
  double spacing = 0.0;    // lattice spacing in the transverse direction

  std::vector<int> w_harmonics; // no DC
  std::vector<Complex> w, W, Wx; // [h * nodes.size() + i]

  std::vector<int> d_harmonics; // includes DC
  std::vector<Complex> d;

  double omega = 0.0, c = 1.0;

  double eval(const std::vector<int>& hs, const std::vector<Complex>& table, int i,
              double t) const {
    double acc = 0.0;
    for (size_t h = 0; h < hs.size(); ++h) {
      const Complex cft = table[h * nodes.size() + i];
      if (hs[h] == 0) {
        acc += cft.real();
      } else {
        const double th = omega * hs[h] * t;
        acc += 2.0 * (cft.real() * std::cos(th) - cft.imag() * std::sin(th));
      }
    }
    return acc;
  }
};

AssemblyTables build_tables(const Problem& pb, const ProfilePair& pair,
                            const FieldLattice& lattice) {
  AssemblyTables tb;
  const SpaceGrid& grid = pb.grid();
  tb.nodes = lattice.node_indices(grid);
  const size_t nn = tb.nodes.size();
  for (int j : tb.nodes) tb.pos.push_back(grid.node(j));
  tb.spacing = lattice.node_stride * grid.spacing();
  tb.omega = pb.omega();
  tb.c = pb.spec().c;

  const HarmonicField wfull = pair.combined();
  const HarmonicField Wfull = time_antiderivative(pair);
  tb.w_harmonics = wfull.harmonics;
  tb.w.resize(tb.w_harmonics.size() * nn);
  tb.W.resize(tb.w_harmonics.size() * nn);
  for (size_t h = 0; h < tb.w_harmonics.size(); ++h) {
    for (size_t i = 0; i < nn; ++i) {
      tb.w[h * nn + i] = wfull.profile(static_cast<int>(h))[tb.nodes[i]];
      tb.W[h * nn + i] = Wfull.profile(static_cast<int>(h))[tb.nodes[i]];
    }
  }

  // Transverse derivative of W on the lattice: centered inside, one-sided at
  // the edges.
  tb.Wx.resize(tb.w_harmonics.size() * nn);
  for (size_t h = 0; h < tb.w_harmonics.size(); ++h) {
    const Complex* row = tb.W.data() + h * nn;
    Complex* out = tb.Wx.data() + h * nn;
    for (size_t i = 0; i < nn; ++i) {
      if (i == 0) {
        out[i] = (row[1] - row[0]) / tb.spacing;
      } else if (i + 1 == nn) {
        out[i] = (row[i] - row[i - 1]) / tb.spacing;
      } else {
        out[i] = (row[i + 1] - row[i - 1]) / (2.0 * tb.spacing);
      }
    }
  }

  // D = eps0 (w + G*w + h N(w)). N(w) carries harmonics up to 3K (and a DC
  // part); G*w multiplies w's harmonics by F_k[G(x)].
  const int k_n = std::min(3 * pb.K(), pb.spec().nu.max_harmonic());
  std::vector<int> dhs;
  for (int k = 0; k <= k_n; ++k) dhs.push_back(k);
  for (int k : tb.w_harmonics) {
    if (k > k_n) dhs.push_back(k);
  }
  std::sort(dhs.begin(), dhs.end());
  dhs.erase(std::unique(dhs.begin(), dhs.end()), dhs.end());
  tb.d_harmonics = dhs;
  tb.d.assign(dhs.size() * nn, Complex(0.0, 0.0));

  // Nonlinear polarization coefficients. Variant i: F_k[nu] (w^3)_k with
  // w = u. Variant ii: (nu*w)^3 = u^3 exactly, where u = nu * w1.
  Field u = pair.w1;
  if (pair.variant == NonlinearityVariant::CubedConvolution) {
    for (int i = 0; i < u.num_modes(); ++i) {
      const double f = pb.nu_coeff(u.harmonic(i));
      for (auto& v : u.profile(i)) v *= f;
    }
  }
  const SpectralField ucube = cube_spectrum(pb, u, k_n);

  const auto& h_nodes = pb.h_nodes();
  for (size_t hh = 0; hh < dhs.size(); ++hh) {
    const int k = dhs[hh];
    for (size_t i = 0; i < nn; ++i) {
      const int j = tb.nodes[i];
      Complex acc(0.0, 0.0);
      const int wi = wfull.index_of(k);
      if (wi >= 0) {
        const Complex wk = wfull.profile(wi)[j];
        acc += wk * (1.0 + pb.spec().linear.fourier_coeff(grid.node(j), k));
      }
      if (k <= k_n) {
        Complex nk = ucube.mode(k)[j];
        if (pair.variant == NonlinearityVariant::ConvolvedCube) {
          nk *= pb.spec().nu.coeff(k);
        }
        acc += h_nodes[j] * nk;
      }
      tb.d[hh * nn + i] = acc;
    }
  }
  return tb;
}

} // namespace

EMFieldSet assemble_fields(const Problem& pb, const ProfilePair& pair,
                           const FieldLattice& lattice) {
  const AssemblyTables tb = build_tables(pb, pair, lattice);
  const size_t nn = tb.nodes.size();
  const bool cyl = pb.grid().geometry() == Geometry::Cylindrical;

  EMFieldSet out;
  out.geometry = pb.grid().geometry();
  const double cosp = std::cos(lattice.azimuth), sinp = std::sin(lattice.azimuth);
  for (size_t i = 0; i < nn; ++i) {
    out.rs.push_back(tb.pos[i]);
    if (cyl) {
      out.xs.push_back(tb.pos[i] * cosp);
      out.ys.push_back(tb.pos[i] * sinp);
    } else {
      out.xs.push_back(tb.pos[i]);
      out.ys.push_back(0.0);
    }
  }
  for (int l = 0; l < lattice.nz; ++l) out.zs.push_back(lattice.z0 + l * lattice.dz);
  for (int m = 0; m < lattice.nt; ++m) out.ts.push_back(lattice.t0 + m * lattice.dt);

  const size_t total = nn * out.zs.size() * out.ts.size();
  out.E.assign(total, {0.0, 0.0, 0.0});
  out.B.assign(total, {0.0, 0.0, 0.0});
  out.D.assign(total, {0.0, 0.0, 0.0});
  out.H.assign(total, {0.0, 0.0, 0.0});

  parallel_for(static_cast<int>(nn), [&](int ii) {
    const size_t i = static_cast<size_t>(ii);
    for (size_t l = 0; l < out.zs.size(); ++l) {
      for (size_t m = 0; m < out.ts.size(); ++m) {
        const double s = out.ts[m] - out.zs[l] / tb.c;
        const double wv = tb.eval(tb.w_harmonics, tb.w, static_cast<int>(i), s);
        const double wxv = tb.eval(tb.w_harmonics, tb.Wx, static_cast<int>(i), s);
        const double dv = tb.eval(tb.d_harmonics, tb.d, static_cast<int>(i), s);
        const size_t idx = out.sample_index(static_cast<int>(i), static_cast<int>(l),
                                            static_cast<int>(m));
        if (!cyl) {
          out.E[idx] = {0.0, wv, 0.0};
          out.B[idx] = {-wv / tb.c, 0.0, -wxv};
          out.D[idx] = {0.0, out.eps0 * dv, 0.0};
        } else {
          const double Wv = tb.eval(tb.w_harmonics, tb.W, static_cast<int>(i), s);
          const double bz = -(Wv / tb.pos[i] + wxv);
          out.E[idx] = {-wv * sinp, wv * cosp, 0.0};
          out.B[idx] = {-(wv / tb.c) * cosp, -(wv / tb.c) * sinp, bz};
          out.D[idx] = {-out.eps0 * dv * sinp, out.eps0 * dv * cosp, 0.0};
        }
        out.H[idx] = {out.B[idx][0] / out.mu0, out.B[idx][1] / out.mu0,
                      out.B[idx][2] / out.mu0};
      }
    }
  });
  return out;
}

MaxwellResiduals maxwell_residuals(const Problem& pb, const ProfilePair& pair,
                                   const FieldLattice& lattice) {
  const AssemblyTables tb = build_tables(pb, pair, lattice);
  const int nn = static_cast<int>(tb.nodes.size());
  const int nz = lattice.nz, nt = lattice.nt;
  if (nz < 3 || nt < 3) throw Error("maxwell_residuals: need nz, nt >= 3");
  const bool cyl = pb.grid().geometry() == Geometry::Cylindrical;

  // Scalar sample cubes of the cylindrical/slab field components.
  auto cube = [&](auto&& fn) {
    std::vector<double> v(static_cast<size_t>(nn) * nz * nt);
    for (int i = 0; i < nn; ++i) {
      for (int l = 0; l < nz; ++l) {
        for (int m = 0; m < nt; ++m) {
          const double s = lattice.t0 + m * lattice.dt - (lattice.z0 + l * lattice.dz) / tb.c;
          v[(static_cast<size_t>(i) * nz + l) * nt + m] = fn(i, s);
        }
      }
    }
    return v;
  };
  auto at = [&](const std::vector<double>& v, int i, int l, int m) {
    return v[(static_cast<size_t>(i) * nz + l) * nt + m];
  };

  const auto Ew = cube([&](int i, double s) { return tb.eval(tb.w_harmonics, tb.w, i, s); });
  const auto Bx = cube([&](int i, double s) { return -tb.eval(tb.w_harmonics, tb.w, i, s) / tb.c; });
  const std::vector<double> Bz =
      !cyl ? cube([&](int i, double s) { return -tb.eval(tb.w_harmonics, tb.Wx, i, s); })
           : cube([&](int i, double s) {
               return -(tb.eval(tb.w_harmonics, tb.W, i, s) / tb.pos[i] +
                        tb.eval(tb.w_harmonics, tb.Wx, i, s));
             });
  const auto Dy = cube([&](int i, double s) { return tb.eval(tb.d_harmonics, tb.d, i, s); });

  double scale = 0.0;
  for (const std::vector<double>* arr : {&Ew, &Bx, &Bz, &Dy}) {
    for (double v : *arr) scale = std::max(scale, std::abs(v));
  }
  if (scale == 0.0) scale = 1.0;

  const double hx = tb.spacing, hz = lattice.dz, ht = lattice.dt;
  double faraday2 = 0.0, gaussb2 = 0.0, gaussd2 = 0.0, ampere2 = 0.0;
  size_t count = 0;
  for (int i = 1; i + 1 < nn; ++i) {
    for (int l = 1; l + 1 < nz; ++l) {
      for (int m = 1; m + 1 < nt; ++m) {
        auto dx = [&](const std::vector<double>& v) {
          return (at(v, i + 1, l, m) - at(v, i - 1, l, m)) / (2.0 * hx);
        };
        auto dz = [&](const std::vector<double>& v) {
          return (at(v, i, l + 1, m) - at(v, i, l - 1, m)) / (2.0 * hz);
        };
        auto dt = [&](const std::vector<double>& v) {
          return (at(v, i, l, m + 1) - at(v, i, l, m - 1)) / (2.0 * ht);
        };

        double fx, fz, gb;
        if (!cyl) {
          fx = -dz(Ew) + dt(Bx);
          fz = dx(Ew) + dt(Bz);
          gb = dx(Bx) + dz(Bz);
        } else {
          const double r = tb.pos[i];
          // (1/r) d_r (r f) = f/r + d_r f
          fx = -dz(Ew) + dt(Bx);
          fz = at(Ew, i, l, m) / r + dx(Ew) + dt(Bz);
          gb = at(Bx, i, l, m) / r + dx(Bx) + dz(Bz);
        }
        // D has a single transverse component; its divergence has no
        // in-lattice derivatives (zero by the TE ansatz).
        const double gd = 0.0;
        const double am = dz(Bx) - dx(Bz) - dt(Dy); // H = B (mu0 = 1)

        faraday2 += fx * fx + fz * fz;
        gaussb2 += gb * gb;
        gaussd2 += gd * gd;
        ampere2 += am * am;
        ++count;
      }
    }
  }

  MaxwellResiduals res;
  res.field_scale = scale;
  res.faraday = std::sqrt(faraday2 / count) / scale;
  res.gauss_b = std::sqrt(gaussb2 / count) / scale;
  res.gauss_d = std::sqrt(gaussd2 / count) / scale;
  res.ampere = std::sqrt(ampere2 / count) / scale;
  return res;
}

} // namespace breather
