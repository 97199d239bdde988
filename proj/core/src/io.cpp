// Copyright (c) 2026 The breather developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "breather/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace breather {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed,
                         const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected a JSON object");
  for (const auto& item : j.items()) {
    if (!allowed.count(item.key())) {
      throw ConfigError(where + ": unknown key \"" + item.key() + "\"");
    }
  }
}

json parse_text(const std::string& text, const std::string& where) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ConfigError(where + ": malformed JSON");
  return j;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingArtifact("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SpatialProfile parse_profile(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("type")) {
    throw ConfigError(where + ": profile needs a \"type\"");
  }
  const std::string type = j.at("type").get<std::string>();
  if (type == "constant") {
    reject_unknown_keys(j, {"type", "value"}, where);
    return SpatialProfile::constant(j.at("value").get<double>());
  }
  if (type == "gaussian") {
    reject_unknown_keys(j, {"type", "amplitude", "center", "width", "baseline"}, where);
    return SpatialProfile::gaussian(j.at("amplitude").get<double>(),
                                    j.value("center", 0.0), j.at("width").get<double>(),
                                    j.value("baseline", 0.0));
  }
  if (type == "cosine") {
    reject_unknown_keys(j, {"type", "amplitude", "period", "phase", "baseline"}, where);
    return SpatialProfile::cosine(j.at("amplitude").get<double>(),
                                  j.at("period").get<double>(), j.value("phase", 0.0),
                                  j.value("baseline", 0.0));
  }
  if (type == "table") {
    reject_unknown_keys(j, {"type", "x", "value"}, where);
    SpatialProfile p;
    p.kind = SpatialProfile::Kind::Table;
    p.xs = j.at("x").get<std::vector<double>>();
    p.vs = j.at("value").get<std::vector<double>>();
    if (p.xs.size() != p.vs.size() || p.xs.size() < 2) {
      throw ConfigError(where + ": table needs matching x/value arrays (>= 2 entries)");
    }
    return p;
  }
  if (type == "sum") {
    reject_unknown_keys(j, {"type", "terms"}, where);
    std::vector<SpatialProfile> terms;
    for (const auto& t : j.at("terms")) terms.push_back(parse_profile(t, where));
    return SpatialProfile::sum(std::move(terms));
  }
  throw ConfigError(where + ": unknown profile type \"" + type + "\"");
}

json profile_to_json(const SpatialProfile& p) {
  json j;
  switch (p.kind) {
    case SpatialProfile::Kind::Constant:
      j = {{"type", "constant"}, {"value", p.value}};
      break;
    case SpatialProfile::Kind::Gaussian:
      j = {{"type", "gaussian"},
           {"amplitude", p.amplitude},
           {"center", p.center},
           {"width", p.width},
           {"baseline", p.baseline}};
      break;
    case SpatialProfile::Kind::Cosine:
      j = {{"type", "cosine"},
           {"amplitude", p.amplitude},
           {"period", p.period},
           {"phase", p.phase},
           {"baseline", p.baseline}};
      break;
    case SpatialProfile::Kind::Table:
      j = {{"type", "table"}, {"x", p.xs}, {"value", p.vs}};
      break;
    case SpatialProfile::Kind::Sum: {
      j["type"] = "sum";
      json terms = json::array();
      for (const auto& t : p.terms) terms.push_back(profile_to_json(t));
      j["terms"] = terms;
      break;
    }
  }
  return j;
}

TorusMeasure parse_kernel_json(const json& j, double T, int cutoff,
                               const std::string& where) {
  if (!j.is_object() || !j.contains("type")) {
    throw ConfigError(where + ": kernel needs a \"type\"");
  }
  const std::string type = j.at("type").get<std::string>();
  if (type == "delta") {
    reject_unknown_keys(j, {"type"}, where);
    return delta_kernel(T, cutoff);
  }
  if (type == "truncated_sine") {
    reject_unknown_keys(j, {"type"}, where);
    return truncated_sine_kernel(T, cutoff);
  }
  if (type == "fourier_table") {
    reject_unknown_keys(j, {"type", "coefficients"}, where);
    TorusMeasure m;
    m.period = T;
    m.provenance = Provenance::UserTable;
    int kmax = cutoff;
    for (const auto& pair : j.at("coefficients")) {
      kmax = std::max(kmax, std::abs(pair.at(0).get<int>()));
    }
    m.coeffs.assign(kmax + 1, 0.0);
    for (const auto& pair : j.at("coefficients")) {
      const int k = pair.at(0).get<int>();
      const double v = pair.at(1).get<double>();
      if (k < 0 && m.coeffs[-k] != 0.0 && m.coeffs[-k] != v) {
        throw ConfigError(where + ": fourier_table breaks evenness at k=" +
                          std::to_string(k));
      }
      m.coeffs[std::abs(k)] = v;
    }
    return m;
  }
  if (type == "density_table") {
    reject_unknown_keys(j, {"type", "support", "samples"}, where);
    const auto support = j.at("support").get<std::vector<double>>();
    if (support.size() != 2 || support[1] <= support[0]) {
      throw ConfigError(where + ": density_table support must be [lo, hi]");
    }
    std::vector<double> taus, vals;
    for (const auto& s : j.at("samples")) {
      taus.push_back(s.at(0).get<double>());
      vals.push_back(s.at(1).get<double>());
    }
    if (taus.size() < 2 || !std::is_sorted(taus.begin(), taus.end())) {
      throw ConfigError(where + ": density_table samples must be ascending in tau");
    }
    LineMeasure lm;
    for (size_t i = 0; i + 1 < taus.size(); ++i) {
      const double a = taus[i], b = taus[i + 1], va = vals[i], vb = vals[i + 1];
      if (b <= a) continue;
      lm.pieces.push_back({a, b, [a, b, va, vb](double tau) {
                             return va + (vb - va) * (tau - a) / (b - a);
                           }});
    }
    auto m = periodic_reduce(lm, T, cutoff);
    m.provenance = Provenance::UserTable;
    return m;
  }
  throw ConfigError(where + ": unknown kernel type \"" + type + "\"");
}

json kernel_to_json(const TorusMeasure& m) {
  json coeffs = json::array();
  for (int k = 0; k <= m.max_harmonic(); ++k) {
    if (m.coeffs[k] != 0.0) coeffs.push_back({k, m.coeffs[k]});
  }
  return {{"type", "fourier_table"}, {"coefficients", coeffs}};
}

MaterialSpec parse_material_json(const json& j, int kernel_cutoff) {
  reject_unknown_keys(j,
                      {"geometry", "speed", "period", "linear", "cubic", "nu", "variant",
                       "decay"},
                      "material");
  MaterialSpec spec;
  const std::string geom = j.at("geometry").get<std::string>();
  if (geom == "slab") {
    spec.geometry = Geometry::Slab;
  } else if (geom == "cylindrical") {
    spec.geometry = Geometry::Cylindrical;
  } else {
    throw ConfigError("material: geometry must be \"slab\" or \"cylindrical\"");
  }
  spec.c = j.at("speed").get<double>();
  spec.T = j.at("period").get<double>();

  const json& lin = j.at("linear");
  reject_unknown_keys(lin, {"components", "background_period"}, "material.linear");
  for (const auto& cj : lin.value("components", json::array())) {
    reject_unknown_keys(cj, {"role", "profile", "kernel"}, "material.linear.component");
    LinearComponent comp;
    const std::string role = cj.value("role", "total");
    if (role == "total") {
      comp.role = ComponentRole::Total;
    } else if (role == "periodic") {
      comp.role = ComponentRole::Periodic;
    } else if (role == "localized") {
      comp.role = ComponentRole::Localized;
    } else {
      throw ConfigError("material: unknown linear component role \"" + role + "\"");
    }
    comp.profile = parse_profile(cj.at("profile"), "material.linear.profile");
    comp.kernel = parse_kernel_json(cj.at("kernel"), spec.T, kernel_cutoff,
                                    "material.linear.kernel");
    spec.linear.components.push_back(std::move(comp));
  }
  if (lin.contains("background_period")) {
    spec.linear.background_period = lin.at("background_period").get<double>();
  }

  const json& cubic = j.at("cubic");
  reject_unknown_keys(cubic, {"total", "periodic", "localized"}, "material.cubic");
  if (cubic.contains("total")) {
    spec.h.total = parse_profile(cubic.at("total"), "material.cubic.total");
  }
  if (cubic.contains("periodic")) {
    spec.h.periodic = parse_profile(cubic.at("periodic"), "material.cubic.periodic");
  }
  if (cubic.contains("localized")) {
    spec.h.localized = parse_profile(cubic.at("localized"), "material.cubic.localized");
  }

  spec.nu = parse_kernel_json(j.at("nu"), spec.T, kernel_cutoff, "material.nu");

  const std::string variant = j.value("variant", "i");
  if (variant == "i") {
    spec.variant = NonlinearityVariant::ConvolvedCube;
  } else if (variant == "ii") {
    spec.variant = NonlinearityVariant::CubedConvolution;
  } else {
    throw ConfigError("material: variant must be \"i\" or \"ii\"");
  }

  if (j.contains("decay")) {
    reject_unknown_keys(j.at("decay"), {"alpha", "beta"}, "material.decay");
    spec.alpha = j.at("decay").value("alpha", 2.0);
    spec.beta = j.at("decay").value("beta", spec.alpha);
  }
  spec.check_wellformed();
  return spec;
}

} // namespace

SpaceGrid RunConfig::make_grid() const {
  return material.geometry == Geometry::Slab ? SpaceGrid::slab(cells, extent)
                                             : SpaceGrid::cylindrical(cells, extent);
}

TimeGrid RunConfig::make_time_grid() const {
  TimeGrid tg;
  tg.T = material.T;
  tg.M = time_samples > 0 ? time_samples
                          : std::max(8 * max_harmonic, 4 * max_harmonic + 1);
  return tg;
}

RunConfig parse_run_config_file(const std::filesystem::path& path) {
  return parse_run_config(slurp(path), path.parent_path());
}

RunConfig parse_run_config(const std::string& text, const std::filesystem::path& base_dir) {
  const json j = parse_text(text, "config");
  reject_unknown_keys(j,
                      {"version", "material", "material_file", "grid", "modes",
                       "time_samples", "kernel_cutoff", "solver", "subharmonics",
                       "lattice", "output_dir"},
                      "config");
  RunConfig cfg;
  if (!j.contains("version")) throw ConfigError("config: missing \"version\"");
  cfg.version = j.at("version").get<int>();
  if (cfg.version != 1) throw ConfigError("config: unsupported version");

  const json& grid = j.at("grid");
  reject_unknown_keys(grid, {"cells", "extent"}, "config.grid");
  cfg.cells = grid.at("cells").get<int>();
  cfg.extent = grid.at("extent").get<double>();

  const json& modes = j.at("modes");
  reject_unknown_keys(modes, {"max_harmonic"}, "config.modes");
  cfg.max_harmonic = modes.at("max_harmonic").get<int>();

  cfg.time_samples = j.value("time_samples", 0);
  cfg.kernel_cutoff = j.value("kernel_cutoff", 0);
  const int cutoff = cfg.kernel_cutoff > 0 ? cfg.kernel_cutoff : 4 * cfg.max_harmonic;
  cfg.kernel_cutoff = cutoff;

  if (j.contains("material") == j.contains("material_file")) {
    throw ConfigError("config: provide exactly one of \"material\"/\"material_file\"");
  }
  if (j.contains("material")) {
    cfg.material = parse_material_json(j.at("material"), cutoff);
  } else {
    const auto path = base_dir / j.at("material_file").get<std::string>();
    cfg.material = parse_material_json(parse_text(slurp(path), path.string()), cutoff);
  }

  if (j.contains("solver")) {
    const json& s = j.at("solver");
    reject_unknown_keys(s,
                        {"tol_grad", "max_iter", "initial_step", "backtracking_factor",
                         "armijo_constant", "initial_mode", "envelope_width", "seed"},
                        "config.solver");
    cfg.solver.tol_grad = s.value("tol_grad", cfg.solver.tol_grad);
    cfg.solver.max_iter = s.value("max_iter", cfg.solver.max_iter);
    cfg.solver.initial_step = s.value("initial_step", cfg.solver.initial_step);
    cfg.solver.backtrack_factor =
        s.value("backtracking_factor", cfg.solver.backtrack_factor);
    cfg.solver.armijo_constant = s.value("armijo_constant", cfg.solver.armijo_constant);
    cfg.solver.initial_mode = s.value("initial_mode", cfg.solver.initial_mode);
    cfg.solver.envelope_width = s.value("envelope_width", cfg.solver.envelope_width);
    cfg.solver.seed = s.value("seed", cfg.solver.seed);
  }
  if (j.contains("subharmonics")) {
    cfg.subharmonics = j.at("subharmonics").get<std::vector<int>>();
  }
  if (j.contains("lattice")) {
    const json& l = j.at("lattice");
    reject_unknown_keys(l, {"transverse_samples", "z_samples", "t_samples"},
                        "config.lattice");
    cfg.lattice_transverse = l.value("transverse_samples", cfg.lattice_transverse);
    cfg.lattice_z = l.value("z_samples", cfg.lattice_z);
    cfg.lattice_t = l.value("t_samples", cfg.lattice_t);
  }
  cfg.output_dir = j.value("output_dir", cfg.output_dir);

  const TimeGrid tg = cfg.make_time_grid();
  if (!tg.cubic_safe(cfg.max_harmonic)) {
    throw ConfigError("config: time_samples must be at least 4*max_harmonic+1");
  }
  return cfg;
}

MaterialSpec parse_material(const std::string& text, int kernel_cutoff) {
  return parse_material_json(parse_text(text, "material"), kernel_cutoff);
}

std::string material_to_json(const MaterialSpec& spec) {
  json j;
  j["geometry"] = spec.geometry == Geometry::Slab ? "slab" : "cylindrical";
  j["speed"] = spec.c;
  j["period"] = spec.T;
  json comps = json::array();
  for (const auto& comp : spec.linear.components) {
    json cj;
    cj["role"] = comp.role == ComponentRole::Total
                     ? "total"
                     : (comp.role == ComponentRole::Periodic ? "periodic" : "localized");
    cj["profile"] = profile_to_json(comp.profile);
    cj["kernel"] = kernel_to_json(comp.kernel);
    comps.push_back(cj);
  }
  j["linear"]["components"] = comps;
  if (spec.linear.background_period) {
    j["linear"]["background_period"] = *spec.linear.background_period;
  }
  if (spec.h.total) j["cubic"]["total"] = profile_to_json(*spec.h.total);
  if (spec.h.periodic) j["cubic"]["periodic"] = profile_to_json(*spec.h.periodic);
  if (spec.h.localized) j["cubic"]["localized"] = profile_to_json(*spec.h.localized);
  j["nu"] = kernel_to_json(spec.nu);
  j["variant"] = spec.variant == NonlinearityVariant::ConvolvedCube ? "i" : "ii";
  j["decay"] = {{"alpha", spec.alpha}, {"beta", spec.beta}};
  return j.dump(2);
}

TorusMeasure parse_kernel(const std::string& text, double T, int cutoff) {
  return parse_kernel_json(parse_text(text, "kernel"), T, cutoff, "kernel");
}

// --------------------------------------------------------------------------

std::uint64_t fnv1a64(const void* data, size_t bytes) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t hash = 1469598103934665603ull;
  for (size_t i = 0; i < bytes; ++i) {
    hash ^= p[i];
    hash *= 1099511628211ull;
  }
  return hash;
}

namespace {

template <typename T>
void put(std::string& buf, const T& v) {
  buf.append(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T take(const std::string& buf, size_t& off) {
  if (off + sizeof(T) > buf.size()) throw Error("field file truncated");
  T v;
  std::memcpy(&v, buf.data() + off, sizeof(T));
  off += sizeof(T);
  return v;
}

} // namespace

void write_field(const std::filesystem::path& path, const Field& u) {
  std::string payload;
  payload.reserve(64 + u.data().size() * 16);
  payload.append("BRF1", 4);
  put<uint32_t>(payload, 1);
  put<uint32_t>(payload, u.grid().geometry() == Geometry::Slab ? 0u : 1u);
  put<uint32_t>(payload, static_cast<uint32_t>(u.grid().cells()));
  put<double>(payload, u.grid().extent());
  put<double>(payload, u.period());
  put<uint32_t>(payload, static_cast<uint32_t>(u.modes().K));
  put<uint32_t>(payload, static_cast<uint32_t>(u.num_modes()));
  for (int k : u.modes().regular) put<uint32_t>(payload, static_cast<uint32_t>(k));
  for (const auto& c : u.data()) {
    put<double>(payload, c.real());
    put<double>(payload, c.imag());
  }

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  out.close();

  char hex[32];
  std::snprintf(hex, sizeof(hex), "%016llx",
                static_cast<unsigned long long>(fnv1a64(payload.data(), payload.size())));
  json sidecar;
  sidecar["format"] = "breather-field";
  sidecar["version"] = 1;
  sidecar["geometry"] = u.grid().geometry() == Geometry::Slab ? "slab" : "cylindrical";
  sidecar["cells"] = u.grid().cells();
  sidecar["extent"] = u.grid().extent();
  sidecar["period"] = u.period();
  sidecar["max_harmonic"] = u.modes().K;
  sidecar["modes"] = u.modes().regular;
  sidecar["num_nodes"] = u.num_nodes();
  sidecar["payload_bytes"] = payload.size();
  sidecar["checksum_fnv1a64"] = std::string(hex);
  std::ofstream side(path.string() + ".json", std::ios::trunc);
  side << sidecar.dump(2) << "\n";
}

Field read_field(const std::filesystem::path& path) {
  const std::string payload = slurp(path);
  const std::string sidecar_text = slurp(path.string() + ".json");
  const json sidecar = parse_text(sidecar_text, "field sidecar");

  char hex[32];
  std::snprintf(hex, sizeof(hex), "%016llx",
                static_cast<unsigned long long>(fnv1a64(payload.data(), payload.size())));
  if (sidecar.at("checksum_fnv1a64").get<std::string>() != hex) {
    throw Error("field file checksum mismatch: " + path.string());
  }

  size_t off = 0;
  if (payload.size() < 4 || payload.compare(0, 4, "BRF1") != 0) {
    throw Error("not a field file: " + path.string());
  }
  off = 4;
  const auto version = take<uint32_t>(payload, off);
  if (version != 1) throw Error("unsupported field file version");
  const auto geom = take<uint32_t>(payload, off);
  const auto cells = take<uint32_t>(payload, off);
  const double extent = take<double>(payload, off);
  const double period = take<double>(payload, off);
  const auto K = take<uint32_t>(payload, off);
  const auto nmodes = take<uint32_t>(payload, off);

  SpaceGrid grid = geom == 0 ? SpaceGrid::slab(static_cast<int>(cells), extent)
                             : SpaceGrid::cylindrical(static_cast<int>(cells), extent);
  ModeSet modes;
  modes.K = static_cast<int>(K);
  modes.geometry = geom == 0 ? Geometry::Slab : Geometry::Cylindrical;
  for (uint32_t i = 0; i < nmodes; ++i) {
    modes.regular.push_back(static_cast<int>(take<uint32_t>(payload, off)));
  }

  Field u(grid, modes, period);
  for (auto& c : u.data()) {
    const double re = take<double>(payload, off);
    const double im = take<double>(payload, off);
    c = Complex(re, im);
  }
  return u;
}

// --------------------------------------------------------------------------

namespace {

json energy_to_json(const EnergyBreakdown& e) {
  return {{"quadratic", e.quadratic}, {"quartic", e.quartic}, {"total", e.total}};
}

json assumptions_to_json_obj(const AssumptionReport& report) {
  json arr = json::array();
  for (const auto& c : report.checks) {
    json cj;
    cj["name"] = c.name;
    cj["verdict"] = c.verdict == AssumptionCheck::Verdict::Pass
                        ? "pass"
                        : (c.verdict == AssumptionCheck::Verdict::Fail ? "fail"
                                                                       : "not-applicable");
    cj["hard"] = c.hard;
    cj["detail"] = c.detail;
    cj["margin"] = c.margin;
    cj["witness"] = {{"k", c.witness_k}, {"x", c.witness_x}, {"value", c.witness_value}};
    arr.push_back(cj);
  }
  return arr;
}

} // namespace

std::string assumption_report_to_json(const AssumptionReport& report) {
  json j;
  j["checks"] = assumptions_to_json_obj(report);
  j["all_pass"] = report.all_pass();
  j["hard_fail"] = report.hard_fail();
  return j.dump(2);
}

std::string solve_report_to_json(const SolveReport& report, const RunConfig* cfg) {
  json j;
  j["converged"] = report.converged;
  j["iterations"] = report.iterations;
  j["restarts"] = report.restarts;
  j["seed"] = report.seed;
  j["energy"] = energy_to_json(report.energy);
  j["grad_norm"] = report.grad_norm;
  j["grad_norm_rel"] = report.grad_norm_rel;
  j["mountain_pass_level"] = report.mountain_pass_level;
  j["energy_identity_defect"] = report.energy_identity_defect;
  j["tail_mass_outer10"] = report.tail_mass;
  j["minimal_period"] = report.minimal_period;
  j["active_modes"] = report.active_modes;
  j["assumptions"] = assumptions_to_json_obj(report.assumptions);
  json trace = json::array();
  for (const auto& t : report.trace) {
    trace.push_back({{"iter", t.iteration},
                     {"energy", t.energy},
                     {"grad_norm", t.grad_norm},
                     {"step", t.step}});
  }
  j["trace"] = trace;
  if (cfg) {
    j["config"] = {{"cells", cfg->cells},
                   {"extent", cfg->extent},
                   {"max_harmonic", cfg->max_harmonic},
                   {"time_samples", cfg->make_time_grid().M},
                   {"kernel_cutoff", cfg->kernel_cutoff},
                   {"tol_grad", cfg->solver.tol_grad},
                   {"seed", cfg->solver.seed}};
  }
  return j.dump(2);
}

std::string residual_report_to_json(const ResidualReport& report) {
  json j;
  j["profile_residual"] = report.profile_residual;
  j["profile_residual_rel"] = report.profile_residual_rel;
  json per_mode = json::array();
  for (const auto& pm : report.per_mode) {
    per_mode.push_back({{"k", pm.harmonic}, {"weighted_norm", pm.weighted_norm}});
  }
  j["per_mode"] = per_mode;
  j["w_equation_residual"] = report.w_equation_residual;
  j["band_limit_defect"] = report.band_limit_defect;
  j["maxwell"] = {{"faraday", report.maxwell.faraday},
                  {"gauss_B", report.maxwell.gauss_b},
                  {"gauss_D", report.maxwell.gauss_d},
                  {"ampere", report.maxwell.ampere},
                  {"field_scale", report.maxwell.field_scale}};
  j["energy_identity_defect"] = report.energy_identity_defect;
  j["decay"] = {{"fractions", report.decay_fractions},
                {"tail_masses", report.decay_tail_masses}};
  j["smoothness"] = {{"orders", report.smoothness_orders},
                     {"h_norms", report.smoothness_h_norms},
                     {"sup_norms", report.smoothness_sup_norms},
                     {"spectral_tail_ratio", report.spectral_tail_ratio},
                     {"flat_spectrum_flag", report.flat_spectrum_flag}};
  j["p_star"] = std::isfinite(report.p_star) ? json(report.p_star) : json("inf");
  return j.dump(2);
}

std::string invariant_matrix_to_json(const InvariantMatrix& matrix) {
  json arr = json::array();
  for (const auto& c : matrix.checks) {
    arr.push_back({{"name", c.name},
                   {"pass", c.pass},
                   {"measured", c.measured},
                   {"threshold", c.threshold},
                   {"detail", c.detail}});
  }
  json j;
  j["checks"] = arr;
  j["all_pass"] = matrix.all_pass();
  return j.dump(2);
}

std::string family_report_to_json(const FamilyReport& family) {
  json j;
  json members = json::array();
  for (const auto& mem : family.members) {
    json mj;
    mj["n"] = mem.n;
    mj["solved"] = mem.solved;
    mj["notice"] = mem.notice;
    if (mem.report) {
      mj["energy"] = energy_to_json(mem.report->energy);
      mj["minimal_period"] = mem.report->minimal_period;
      mj["active_modes"] = mem.report->active_modes;
      mj["iterations"] = mem.report->iterations;
    }
    members.push_back(mj);
  }
  j["members"] = members;
  j["distinct"] = family.distinct;
  j["distinct_by_minimal_period"] = family.distinct_by_period;
  return j.dump(2);
}

std::string periodic_comparison_to_json(const PeriodicComparison& cmp) {
  json j;
  j["full_energy"] = cmp.full_energy;
  j["periodic_energy"] = cmp.periodic_energy;
  j["verdict"] = cmp.verdict;
  j["full_iterations"] = cmp.full.iterations;
  j["periodic_iterations"] = cmp.periodic.iterations;
  return j.dump(2);
}

void write_fields_csv(const std::filesystem::path& path, const EMFieldSet& f) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << "x,y,z,t,Ex,Ey,Ez,Bx,By,Bz,Dx,Dy,Dz,Hx,Hy,Hz\n";
  out.precision(17);
  for (size_t ix = 0; ix < f.xs.size(); ++ix) {
    for (size_t iz = 0; iz < f.zs.size(); ++iz) {
      for (size_t it = 0; it < f.ts.size(); ++it) {
        const size_t s = f.sample_index(static_cast<int>(ix), static_cast<int>(iz),
                                        static_cast<int>(it));
        out << f.xs[ix] << ',' << f.ys[ix] << ',' << f.zs[iz] << ',' << f.ts[it];
        for (const auto* arr : {&f.E, &f.B, &f.D, &f.H}) {
          for (int c = 0; c < 3; ++c) out << ',' << (*arr)[s][c];
        }
        out << '\n';
      }
    }
  }
}

std::string fields_metadata_json(const EMFieldSet& f) {
  json j;
  j["geometry"] = f.geometry == Geometry::Slab ? "slab" : "cylindrical";
  j["normalization"] = {{"eps0", f.eps0}, {"mu0", f.mu0}, {"c0", f.c0}};
  j["transverse_samples"] = f.xs.size();
  j["z_samples"] = f.zs.size();
  j["t_samples"] = f.ts.size();
  j["columns"] = "x,y,z,t,Ex,Ey,Ez,Bx,By,Bz,Dx,Dy,Dz,Hx,Hy,Hz";
  return j.dump(2);
}

} // namespace breather
