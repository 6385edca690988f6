#include "commands.hpp"

#include <cmath>
#include <sstream>

#include "quatcalc/discretize.hpp"
#include "quatcalc/error.hpp"
#include "quatcalc/irreducibility.hpp"
#include "quatcalc/json_io.hpp"
#include "quatcalc/oracles.hpp"
#include "quatcalc/scalculus.hpp"
#include "quatcalc/spectrum.hpp"

namespace quatcalc::cli {

using json = nlohmann::ordered_json;

namespace {

double tol_of(const RunConfig& cfg, const std::string& key) {
  auto it = cfg.tol.find(key);
  if (it == cfg.tol.end()) throw ValidationError("unknown tolerance '" + key + "'");
  return it->second;
}

json tolerances_json(const RunConfig& cfg, std::initializer_list<const char*> keys) {
  json out;
  for (const char* k : keys) out[k] = tol_of(cfg, k);
  return out;
}

QMatrix load_square(const std::string& path) {
  QMatrix t = parse_qmatrix(read_text_file(path));
  if (!t.is_square()) throw ValidationError("operator must be square");
  if (t.empty()) throw ValidationError("operator must be nonempty");
  return t;
}

const std::string& single_input(const RunConfig& cfg) {
  if (cfg.inputs.size() != 1) throw ValidationError(cfg.command + " needs exactly one --input");
  return cfg.inputs.front();
}

json spheres_json(const std::vector<Sphere>& s) {
  json out = json::array();
  for (const auto& x : s) out.push_back(to_json(x));
  return out;
}

json spectrum_report(const QMatrix& t, const RunConfig& cfg) {
  const SphericalSpectrum spec = spherical_spectrum(t, tol_of(cfg, "cluster"));
  json r;
  r["n"] = t.rows();
  r["norm"] = spec.norm;
  r["spheres"] = to_json(spec);
  r["delta_sigma_min"] = spec.delta_sigma_min;
  json ps = json::array();
  for (const auto& e : point_spectrum(t, tol_of(cfg, "cluster"))) {
    ps.push_back({{"re", e.sphere.re},
                  {"rad", e.sphere.rad},
                  {"multiplicity", e.multiplicity},
                  {"kernel_dim", e.kernel_dim},
                  {"eigen_dim", e.eigen_dim},
                  {"block_sizes", e.jordan.block_sizes},
                  {"determinate", e.jordan.determinate},
                  {"margin", e.jordan.margin}});
  }
  r["point_spectrum"] = std::move(ps);
  return r;
}

double partition_gap(const std::vector<Sphere>& a, const std::vector<Sphere>& b) {
  double gap = std::numeric_limits<double>::infinity();
  for (const auto& s : a) gap = std::min(gap, distance_to_set(s, b));
  return gap;
}

std::string sweep_csv_multi(const std::vector<std::pair<std::string, std::vector<SweepRow>>>& sweeps) {
  if (sweeps.size() == 1) return sweep_csv(sweeps.front().second);
  std::ostringstream os;
  os << "example,n,norm,reference,error\n";
  os.precision(17);
  for (const auto& [name, rows] : sweeps)
    for (const auto& r : rows) os << name << ',' << r.n << ',' << r.norm << ',' << r.reference << ',' << r.error << '\n';
  return os.str();
}

}  // namespace

std::map<std::string, double> RunConfig::default_tolerances() {
  const SuiteTolerances s;
  return {{"quaternion", s.quaternion},
          {"chi", s.chi},
          {"norm-oracle", s.norm_oracle},
          {"modulus", s.modulus},
          {"polar", s.polar},
          {"cartesian", s.cartesian},
          {"j-invariants", s.j_invariants},
          {"extension", s.extension},
          {"resolvent", s.resolvent},
          {"s-resolvent-equation", s.s_resolvent_equation},
          {"spectrum", s.spectrum},
          {"riesz-oracle", s.riesz_oracle},
          {"riesz-step", s.riesz_step},
          {"riesz-restricted", s.riesz_restricted},
          {"calculus", s.calculus},
          {"slice", s.slice},
          {"adjoint", s.adjoint},
          {"factorization", s.factorization},
          {"normal", s.normal},
          {"nonnormal", s.nonnormal},
          {"witness", s.witness},
          {"volterra", s.volterra},
          {"cluster", kSpectrumClusterTol},
          {"match", 1e-6},
          {"separation", 1e-8}};
}

void RunConfig::validate() const {
  for (const auto& [k, v] : tol)
    if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError("tolerance '" + k + "' must be positive and finite");
  if (nodes < kMinNodes) throw ValidationError("--nodes must be at least " + std::to_string(kMinNodes));
  for (std::size_t s : sizes)
    if (s == 0) throw ValidationError("--sizes entries must be positive");
}

SuiteTolerances suite_tolerances(const RunConfig& cfg) {
  SuiteTolerances s;
  s.quaternion = tol_of(cfg, "quaternion");
  s.chi = tol_of(cfg, "chi");
  s.norm_oracle = tol_of(cfg, "norm-oracle");
  s.modulus = tol_of(cfg, "modulus");
  s.polar = tol_of(cfg, "polar");
  s.cartesian = tol_of(cfg, "cartesian");
  s.j_invariants = tol_of(cfg, "j-invariants");
  s.extension = tol_of(cfg, "extension");
  s.resolvent = tol_of(cfg, "resolvent");
  s.s_resolvent_equation = tol_of(cfg, "s-resolvent-equation");
  s.spectrum = tol_of(cfg, "spectrum");
  s.riesz_oracle = tol_of(cfg, "riesz-oracle");
  s.riesz_step = tol_of(cfg, "riesz-step");
  s.riesz_restricted = tol_of(cfg, "riesz-restricted");
  s.calculus = tol_of(cfg, "calculus");
  s.slice = tol_of(cfg, "slice");
  s.adjoint = tol_of(cfg, "adjoint");
  s.factorization = tol_of(cfg, "factorization");
  s.normal = tol_of(cfg, "normal");
  s.nonnormal = tol_of(cfg, "nonnormal");
  s.witness = tol_of(cfg, "witness");
  s.volterra = tol_of(cfg, "volterra");
  return s;
}

std::pair<std::size_t, std::size_t> parse_range(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw ValidationError("range must look like a:b, got '" + s + "'");
  try {
    std::size_t used = 0;
    const std::string a = s.substr(0, colon), b = s.substr(colon + 1);
    const auto lo = std::stoul(a, &used);
    if (used != a.size()) throw std::invalid_argument(a);
    const auto hi = std::stoul(b, &used);
    if (used != b.size()) throw std::invalid_argument(b);
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw ValidationError("range must look like a:b with nonnegative integers, got '" + s + "'");
  }
}

CommandResult cmd_spectrum(const RunConfig& cfg) {
  CommandResult out;
  out.report["command"] = "spectrum";
  out.report["tolerances"] = tolerances_json(cfg, {"cluster"});
  if (cfg.inputs.size() == 1) {
    out.report["input"] = cfg.inputs.front();
    out.report.update(spectrum_report(load_square(cfg.inputs.front()), cfg));
    return out;
  }
  if (cfg.inputs.empty()) throw ValidationError("spectrum needs at least one --input");
  json results = json::array();
  for (const auto& path : cfg.inputs) {
    json r;
    r["input"] = path;
    r.update(spectrum_report(load_square(path), cfg));
    results.push_back(std::move(r));
  }
  out.report["results"] = std::move(results);
  return out;
}

CommandResult cmd_riesz(const RunConfig& cfg) {
  CommandResult out;
  const std::string& path = single_input(cfg);
  const QMatrix t = load_square(path);
  if (cfg.partition.empty()) throw PartitionError("--partition is required");
  const std::vector<Sphere> requested = parse_partition(cfg.partition);

  json& r = out.report;
  r["command"] = "riesz";
  r["input"] = path;
  r["nodes"] = cfg.nodes;
  r["tolerances"] =
      tolerances_json(cfg, {"cluster", "match", "separation", "riesz-step", "riesz-restricted", "normal"});

  const SphericalSpectrum spec = spherical_spectrum(t, tol_of(cfg, "cluster"));
  const std::vector<Sphere> sigma = match_spheres(spec, requested, tol_of(cfg, "match"));
  std::vector<Sphere> tau;
  for (const auto& s : spec.spheres)
    if (distance_to_set(s, sigma) > 0.0) tau.push_back(s);
  if (tau.empty()) throw PartitionError("tau is empty: sigma covers the whole S-spectrum");
  const double gap = partition_gap(sigma, tau);
  const double floor = tol_of(cfg, "separation") * std::max(1.0, spec.norm);
  if (gap < floor) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "sigma and tau are separated by " << gap << " < " << floor;
    throw SeparationError(msg.str(), gap);
  }

  const RieszTolerances rt{tol_of(cfg, "riesz-step"), tol_of(cfg, "riesz-restricted"), tol_of(cfg, "normal")};
  const RieszPair rp = riesz_decompose(t, sigma, tau, cfg.nodes, ImaginaryUnit::i(), rt);
  const auto& res = rp.residuals;
  r["sigma"] = spheres_json(rp.sigma);
  r["tau"] = spheres_json(rp.tau);
  r["separation"] = gap;
  r["p_sigma"] = to_json(rp.p_sigma);
  r["p_tau"] = to_json(rp.p_tau);
  r["restricted_spectra"] = {{"sigma", to_json(rp.spectrum_sigma)}, {"tau", to_json(rp.spectrum_tau)}};
  r["contours"] = {{"sigma", rp.sigma_from_complement ? json(nullptr) : to_json(rp.contour_sigma)},
                   {"tau", rp.tau_from_complement ? json(nullptr) : to_json(rp.contour_tau)}};
  r["from_complement"] = {{"sigma", rp.sigma_from_complement}, {"tau", rp.tau_from_complement}};
  r["normality_defect"] = rp.normality_defect;
  r["self_adjoint_checked"] = rp.self_adjoint_checked;
  r["residuals"] = {
      {"step_I", {{"idempotent_sigma", res.idempotent_sigma},
                  {"idempotent_tau", res.idempotent_tau},
                  {"self_adjoint_sigma", res.self_adjoint_sigma},
                  {"self_adjoint_tau", res.self_adjoint_tau}}},
      {"step_II", {{"sum", res.sum}, {"product", res.product}}},
      {"step_III", {{"commute_sigma", res.commute_sigma}, {"commute_tau", res.commute_tau}}},
      {"step_IV", {{"hausdorff_sigma", res.hausdorff_sigma}, {"hausdorff_tau", res.hausdorff_tau}}}};
  r["certified"] = rp.certified;
  r["failures"] = rp.failures;
  out.exit_code = rp.certified ? kExitOk : kExitInvariant;
  return out;
}

CommandResult cmd_irreducibility(const RunConfig& cfg) {
  CommandResult out;
  const std::string& path = single_input(cfg);
  const QMatrix t = load_square(path);
  IrreducibilityReport rep = is_strongly_irreducible(t);
  json& r = out.report;
  r["command"] = "irreducibility";
  r["input"] = path;
  std::optional<bool> agrees;
  if (t.rows() <= 3) {
    const bool reducible = oracles::brute_force_idempotent(t, 64, cfg.seed).found;
    rep.oracle_checked = true;
    agrees = rep.strongly_irreducible == (reducible ? Decision::no : Decision::yes);
  }
  r.update(to_json(rep));
  r["oracle_agrees"] = agrees ? json(*agrees) : json(nullptr);
  if (agrees && !*agrees) out.exit_code = kExitInvariant;
  return out;
}

CommandResult cmd_examples(const RunConfig& cfg) {
  CommandResult out;
  std::vector<ExampleKind> kinds;
  if (cfg.which == "both") kinds = {ExampleKind::normal, ExampleKind::nonnormal};
  else kinds = {parse_example_kind(cfg.which)};

  json& r = out.report;
  r["command"] = "examples";
  r["n"] = cfg.n;
  r["tolerances"] = tolerances_json(cfg, {"factorization"});
  json list = json::array();
  bool ok = true;
  for (ExampleKind k : kinds) {
    const FactorizationExample ex = factorization_example(k, cfg.n);
    const bool pass = ex.relative_residual <= tol_of(cfg, "factorization") && ex.k_norm < ex.delta;
    ok = ok && pass;
    list.push_back({{"which", to_string(k)},
                    {"t", ex.t.description},
                    {"w", ex.w.description},
                    {"k", ex.k.description},
                    {"s", ex.s.description},
                    {"convention", ex.t.convention},
                    {"t_norm", ex.t_norm},
                    {"residual", ex.residual},
                    {"relative_residual", ex.relative_residual},
                    {"k_norm", ex.k_norm},
                    {"k_reference", ex.k_reference},
                    {"k_reference_error", std::abs(ex.k_norm - ex.k_reference)},
                    {"k_bound", ex.k_bound},
                    {"delta", ex.delta},
                    {"normality_defect", ex.normality_defect},
                    {"w_partial_isometry_defect", ex.w_partial_isometry_defect},
                    {"s_sphere_count", ex.s_sphere_count},
                    {"s_note", ex.s_note},
                    {"pass", pass}});
  }
  r["examples"] = std::move(list);

  if (cfg.sweep) {
    const auto sizes = doubling_sizes(cfg.sweep->first, cfg.sweep->second);
    std::vector<std::pair<std::string, std::vector<SweepRow>>> sweeps;
    json js;
    for (ExampleKind k : kinds) {
      auto rows = norm_sweep(k, sizes);
      json arr = json::array();
      for (const auto& row : rows)
        arr.push_back({{"n", row.n}, {"norm", row.norm}, {"reference", row.reference}, {"error", row.error}});
      js[to_string(k)] = std::move(arr);
      sweeps.emplace_back(to_string(k), std::move(rows));
    }
    r["sweep"] = std::move(js);
    out.csv = sweep_csv_multi(sweeps);
  }
  out.exit_code = ok ? kExitOk : kExitInvariant;
  return out;
}

CommandResult cmd_verify(const RunConfig& cfg) {
  CommandResult out;
  SuiteOptions o;
  o.seed = cfg.seed;
  o.sizes = cfg.sizes;
  o.nodes = cfg.nodes;
  o.tol = suite_tolerances(cfg);

  json& r = out.report;
  r["command"] = "verify";
  r["seed"] = cfg.seed;
  r["sizes"] = cfg.sizes;
  r["nodes"] = cfg.nodes;
  r["tolerances"] = cfg.tol;
  json suites = json::array();
  std::size_t passed = 0, failed = 0;
  for (const auto& s : run_all_suites(o, cfg.full)) {
    json checks = json::array();
    bool all = true;
    for (const auto& c : s.checks) {
      checks.push_back(to_json(c));
      all = all && c.pass;
      (c.pass ? passed : failed) += 1;
    }
    suites.push_back({{"suite", s.name}, {"pass", all}, {"checks", std::move(checks)}});
  }
  r["suites"] = std::move(suites);
  const FactorizationExample a = factorization_example(ExampleKind::normal, 96);
  const FactorizationExample b = factorization_example(ExampleKind::nonnormal, 96);
  r["diagnostics"] = {{"normal_example_normality_defect", a.normality_defect},
                      {"nonnormal_example_normality_defect", b.normality_defect}};
  r["passed"] = passed;
  r["failed"] = failed;
  out.exit_code = failed == 0 ? kExitOk : kExitInvariant;
  return out;
}

CommandResult run(const RunConfig& cfg) {
  auto fail = [&](int code, const char* kind, const std::exception& e) {
    CommandResult out;
    out.exit_code = code;
    out.report["command"] = cfg.command;
    out.report["error"] = kind;
    out.report["message"] = e.what();
    return out;
  };
  try {
    cfg.validate();
    if (cfg.command == "spectrum") return cmd_spectrum(cfg);
    if (cfg.command == "riesz") return cmd_riesz(cfg);
    if (cfg.command == "irreducibility") return cmd_irreducibility(cfg);
    if (cfg.command == "examples") return cmd_examples(cfg);
    if (cfg.command == "verify") return cmd_verify(cfg);
    throw ValidationError("unknown command '" + cfg.command + "'");
  } catch (const PartitionError& e) {
    return fail(kExitPartition, "partition", e);
  } catch (const SeparationError& e) {
    CommandResult out = fail(kExitSeparation, "separation", e);
    out.report["separation"] = e.separation();
    return out;
  } catch (const SingularityError& e) {
    CommandResult out = fail(kExitSeparation, "separation", e);
    out.report["distance"] = e.distance();
    return out;
  } catch (const ParseError& e) {
    return fail(kExitInput, "parse", e);
  } catch (const ValidationError& e) {
    return fail(kExitInput, "validation", e);
  } catch (const DomainError& e) {
    return fail(kExitInput, "domain", e);
  }
}

}  // namespace quatcalc::cli
