#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include "ppbif/bifurcation.hpp"
#include "ppbif/dynamics.hpp"
#include "ppbif/equilibria.hpp"
#include "ppbif/error.hpp"
#include "ppbif/harness.hpp"
#include "ppbif/model.hpp"
#include "ppbif/nullcline.hpp"
#include "ppbif/report_json.hpp"
#include "ppbif/spectral.hpp"

namespace ppbif::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Context {
  json config;
  fs::path out_dir;
  std::optional<std::uint64_t> seed;
  bool traceability = false;
  std::ostream* out = nullptr;
  std::ostream* err = nullptr;
};

// --- config helpers ----------------------------------------------------------

void check_keys(const json& obj, std::initializer_list<std::string_view> allowed, std::string_view where) {
  if (!obj.is_object()) throw ConfigError(std::string(where) + " must be a JSON object");
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError("unknown key: " + key + (where.empty() ? "" : " (in " + std::string(where) + ")"));
    }
  }
}

const json& require(const json& obj, const char* key) {
  if (!obj.contains(key)) throw ConfigError(std::string("missing key: ") + key);
  return obj.at(key);
}

double number(const json& v, std::string_view what) {
  if (!v.is_number()) throw ConfigError(std::string(what) + " must be a number");
  return v.get<double>();
}

int integer(const json& v, std::string_view what) {
  if (!v.is_number_integer()) throw ConfigError(std::string(what) + " must be an integer");
  return v.get<int>();
}

std::string text(const json& v, std::string_view what) {
  if (!v.is_string()) throw ConfigError(std::string(what) + " must be a string");
  return v.get<std::string>();
}

std::pair<double, double> interval(const json& v, std::string_view what) {
  if (!v.is_array() || v.size() != 2) throw ConfigError(std::string(what) + " must be [lo, hi]");
  const double lo = number(v[0], what), hi = number(v[1], what);
  if (!(hi > lo)) throw ConfigError(std::string(what) + " needs lo < hi");
  return {lo, hi};
}

ModelFamily family_of(const json& cfg) {
  const std::string name = text(require(cfg, "family"), "family");
  auto f = parse_family(name);
  if (!f) throw ConfigError("unknown family: " + name + " (Bazykin, HollingIV, CrowleyMartin, DiscreteCrowleyMartin)");
  return *f;
}

std::map<std::string, double> parameter_map(const json& v) {
  if (!v.is_object()) throw ConfigError("parameters must be an object of numbers");
  std::map<std::string, double> raw;
  for (const auto& [k, x] : v.items()) raw[k] = number(x, "parameter " + k);
  return raw;
}

ModelInstance instance_of(const json& cfg) {
  return ModelInstance::create(family_of(cfg), parameter_map(require(cfg, "parameters")));
}

// --- output helpers ----------------------------------------------------------

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(const Context& ctx, const std::string& name, const std::string& body) {
  fs::create_directories(ctx.out_dir);
  const fs::path p = ctx.out_dir / name;
  std::ofstream f(p, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + p.string());
  f << body;
  *ctx.out << "wrote " << p.string() << "\n";
}

// Sweep reports run to tens of MB; they are written without indentation.
void write_json(const Context& ctx, const std::string& name, json j, bool compact = false) {
  if (ctx.traceability) annotate_traceability(j);
  write_text(ctx, name, j.dump(compact ? -1 : 2) + "\n");
}

class Csv {
 public:
  explicit Csv(std::initializer_list<std::string_view> header) {
    bool first = true;
    for (auto h : header) {
      if (!first) os_ << ',';
      os_ << h;
      first = false;
    }
    os_ << '\n';
  }
  Csv& cell(double v) { return raw(num(v)); }
  Csv& cell(std::string_view s) { return raw(std::string(s)); }
  void end() {
    os_ << '\n';
    first_ = true;
  }
  std::string str() const { return os_.str(); }

 private:
  Csv& raw(const std::string& s) {
    if (!first_) os_ << ',';
    os_ << s;
    first_ = false;
    return *this;
  }
  std::ostringstream os_;
  bool first_ = true;
};

// --- analyze -----------------------------------------------------------------

int cmd_analyze(const Context& ctx) {
  const json& cfg = ctx.config;
  check_keys(cfg, {"family", "parameters", "x_samples"}, "");
  const ModelInstance m = instance_of(cfg);
  const int n = cfg.contains("x_samples") ? integer(cfg["x_samples"], "x_samples") : 200;
  if (n < 2) throw ConfigError("x_samples must be >= 2");

  const NullclineProfile profile(m);
  json eqs = json::array();
  for (const auto& e : find_coexistence_equilibria(m, profile)) {
    json je = e;
    je["spectral"] = spectral_summary(m, e.state);
    eqs.push_back(je);
  }
  json boundary = json::array();
  for (const auto& s : boundary_equilibria(m)) {
    json jb = s;
    jb["spectral"] = spectral_summary(m, s);
    boundary.push_back(jb);
  }
  json cells = json::array();
  for (const auto& c : profile.cells()) {
    cells.push_back(json{{"lo", c.lo}, {"hi", c.hi}, {"monotonicity", to_string(c.monotonicity)}});
  }
  json report{{"family", family_name(m.family())},
              {"parameters", m.parameters()},
              {"prey_interval", json{{"lo", profile.x_lo()}, {"hi", profile.x_hi()}, {"lo_open", profile.lo_open()}}},
              {"nullcline_degree", to_string(profile.degree())},
              {"critical_points", profile.critical_points()},
              {"cells", cells},
              {"equilibria", eqs},
              {"boundary_equilibria", boundary}};

  Csv csv{"x", "g", "g_prime", "trace_on_nullcline", "branch"};
  const double lo = profile.x_lo(), hi = profile.x_hi();
  for (int i = 1; i <= n; ++i) {
    const double x = lo + (hi - lo) * i / (n + 1);
    const auto jet = prey_nullcline(m, x);
    double tr = std::nan("");
    try {
      tr = trace_on_nullcline(m, x).trace;
    } catch (const Error&) {
    }
    csv.cell(x).cell(jet.g).cell(jet.dg).cell(tr).cell(to_string(branch_of(profile, x))).end();
  }
  write_json(ctx, "analyze.json", report);
  write_text(ctx, "nullcline.csv", csv.str());
  return kOk;
}

// --- loci --------------------------------------------------------------------

LocusOptions locus_options(const json& cfg) {
  LocusOptions opt;
  if (cfg.contains("x_range")) std::tie(opt.x_lo, opt.x_hi) = interval(cfg["x_range"], "x_range");
  if (cfg.contains("param_range")) std::tie(opt.param_lo, opt.param_hi) = interval(cfg["param_range"], "param_range");
  if (cfg.contains("x_panels")) opt.x_panels = integer(cfg["x_panels"], "x_panels");
  if (cfg.contains("param_panels")) opt.param_panels = integer(cfg["param_panels"], "param_panels");
  if (opt.x_panels < 4 || opt.param_panels < 2) throw ConfigError("x_panels >= 4 and param_panels >= 2 required");
  return opt;
}

std::string free_param_of(const json& cfg, ModelFamily f) {
  return cfg.contains("free_param") ? text(cfg["free_param"], "free_param") : std::string(default_free_parameter(f));
}

int write_points(const Context& ctx, const std::string& stem, const std::vector<BifurcationPoint>& pts,
                 json extra = json::object()) {
  Csv csv{"x_star", "critical_param", "critical_value", "trace", "det", "branch", "satisfies_principle"};
  for (const auto& p : pts) {
    csv.cell(p.x_star)
        .cell(p.param_name)
        .cell(p.param_value)
        .cell(p.spectral.trace)
        .cell(p.spectral.det)
        .cell(to_string(p.verdict.branch))
        .cell(p.verdict.satisfies_principle ? "true" : "false")
        .end();
  }
  extra["points"] = pts;
  write_json(ctx, stem + ".json", extra);
  write_text(ctx, stem + ".csv", csv.str());
  return kOk;
}

int cmd_loci_hopf(const Context& ctx) {
  const json& cfg = ctx.config;
  check_keys(cfg,
             {"family", "parameters", "closed_form", "x_values", "free_param", "x_range", "param_range", "x_panels",
              "param_panels"},
             "");
  const ModelFamily fam = family_of(cfg);
  if (cfg.contains("closed_form")) {
    const json& cf = cfg["closed_form"];
    if (fam == ModelFamily::Bazykin) {
      check_keys(cf, {"k0", "b", "x0", "r", "sigma", "d"}, "closed_form");
      const double d = cf.contains("d") ? number(cf["d"], "d") : 0.1;
      auto pt = bazykin_hopf(number(require(cf, "k0"), "k0"), number(require(cf, "b"), "b"),
                             number(require(cf, "x0"), "x0"), number(require(cf, "r"), "r"),
                             number(require(cf, "sigma"), "sigma"), d);
      return write_points(ctx, "loci_hopf", {pt}, json{{"method", "closed-form"}});
    }
    if (fam == ModelFamily::CrowleyMartin) {
      if (!cf.is_boolean() || !cf.get<bool>()) throw ConfigError("closed_form for CrowleyMartin must be true");
      const ModelInstance m = instance_of(cfg);
      const json& xs = require(cfg, "x_values");
      if (!xs.is_array()) throw ConfigError("x_values must be an array");
      std::vector<BifurcationPoint> pts;
      json rejected = json::array();
      for (const auto& xv : xs) {
        const double x = number(xv, "x_values entry");
        if (auto pt = crowley_martin_hopf(m, x)) {
          pts.push_back(*pt);
        } else {
          rejected.push_back(json{{"x", x}, {"c0", cm_hopf_c0(m.cm_params(), x)}});
        }
      }
      return write_points(ctx, "loci_hopf", pts, json{{"method", "closed-form"}, {"no_hopf", rejected}});
    }
    throw ConfigError("closed_form is available for Bazykin and CrowleyMartin only");
  }
  const ModelInstance m = instance_of(cfg);
  if (is_map(fam)) throw ConfigError("hopf loci need a flow family; use 'loci ns' for the map");
  auto pts = hopf_locus(m, free_param_of(cfg, fam), locus_options(cfg));
  return write_points(ctx, "loci_hopf", pts, json{{"method", "scan"}});
}

std::vector<double> grid_of(const json& v) {
  std::vector<double> out;
  if (v.is_array()) {
    for (const auto& e : v) out.push_back(number(e, "x0_grid entry"));
    return out;
  }
  check_keys(v, {"start", "stop", "step"}, "x0_grid");
  const double start = number(require(v, "start"), "start");
  const double stop = number(require(v, "stop"), "stop");
  const double step = number(require(v, "step"), "step");
  if (!(step > 0.0) || !(stop >= start)) throw ConfigError("x0_grid needs step > 0 and stop >= start");
  const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
  for (long i = 0; i <= n; ++i) out.push_back(start + step * static_cast<double>(i));
  return out;
}

int cmd_loci_bt(const Context& ctx) {
  const json& cfg = ctx.config;
  check_keys(cfg,
             {"family", "parameters", "x0_grid", "free_param", "x_range", "param_range", "x_panels", "param_panels"},
             "");
  const ModelFamily fam = family_of(cfg);
  if (fam == ModelFamily::HollingIV && cfg.contains("x0_grid")) {
    const auto grid = grid_of(cfg["x0_grid"]);
    const auto results = holling4_bt(grid);
    std::vector<BifurcationPoint> pts;
    for (const auto& r : results) pts.insert(pts.end(), r.points.begin(), r.points.end());
    return write_points(ctx, "loci_bt", pts, json{{"method", "newton"}, {"grid", results}});
  }
  if (is_map(fam)) throw ConfigError("bt loci need a flow family");
  const ModelInstance m = instance_of(cfg);
  return write_points(ctx, "loci_bt", bt_locus(m, free_param_of(cfg, fam), locus_options(cfg)),
                      json{{"method", "scan"}});
}

int cmd_loci_ns(const Context& ctx) {
  const json& cfg = ctx.config;
  check_keys(cfg, {"family", "parameters", "free_param", "x_range", "param_range", "x_panels", "param_panels"}, "");
  const ModelFamily fam = family_of(cfg);
  if (!is_map(fam)) throw ConfigError("ns loci need the DiscreteCrowleyMartin family");
  const ModelInstance m = instance_of(cfg);
  return write_points(ctx, "loci_ns", ns_locus(m, free_param_of(cfg, fam), locus_options(cfg)),
                      json{{"method", "scan"}});
}

// --- simulate ----------------------------------------------------------------

PlanarState state_of(const json& v, std::string_view what) {
  if (!v.is_array() || v.size() != 2) throw ConfigError(std::string(what) + " must be [x, y]");
  return {number(v[0], what), number(v[1], what)};
}

int cmd_simulate(const Context& ctx) {
  const json& cfg = ctx.config;
  check_keys(cfg,
             {"family", "parameters", "initial_state", "perturbation", "reference", "t_end", "dt", "iterations",
              "record_every"},
             "");
  const ModelInstance m = instance_of(cfg);
  const bool map = is_map(m.family());
  const auto ceps = find_coexistence_equilibria(m);

  std::optional<PlanarState> reference;
  if (cfg.contains("reference")) {
    reference = state_of(cfg["reference"], "reference");
  } else if (!ceps.empty()) {
    reference = ceps.front().state;
  }

  PlanarState s0;
  const json& init = require(cfg, "initial_state");
  if (init.is_string()) {
    if (init.get<std::string>() != "equilibrium") throw ConfigError("initial_state must be [x, y] or \"equilibrium\"");
    if (!reference) throw Error(ErrorCode::OutOfDomain, "no coexistence equilibrium to start from");
    s0 = *reference;
  } else {
    s0 = state_of(init, "initial_state");
  }
  if (cfg.contains("perturbation")) {
    const auto d = state_of(cfg["perturbation"], "perturbation");
    s0.x += d.x;
    s0.y += d.y;
  }
  const std::size_t every =
      cfg.contains("record_every") ? static_cast<std::size_t>(std::max(1, integer(cfg["record_every"], "record_every")))
                                   : 1;

  Trajectory tr;
  if (map) {
    const int n = integer(require(cfg, "iterations"), "iterations");
    if (n < 1) throw ConfigError("iterations must be >= 1");
    tr = iterate_map(m, s0, static_cast<std::size_t>(n), every);
  } else {
    const double t_end = number(require(cfg, "t_end"), "t_end");
    const double dt = cfg.contains("dt") ? number(cfg["dt"], "dt") : characteristic_dt(m, reference.value_or(s0));
    if (!(t_end > 0.0) || !(dt > 0.0)) throw ConfigError("t_end and dt must be > 0");
    tr = integrate_flow(m, s0, t_end, dt, every);
  }

  Csv csv{map ? "n" : "t", "x", "y"};
  for (std::size_t i = 0; i < tr.states.size(); ++i) csv.cell(tr.times[i]).cell(tr.states[i].x).cell(tr.states[i].y).end();

  json verdict;
  if (reference) {
    verdict = classify_orbit(tr, *reference);
    verdict["reference"] = *reference;
  } else {
    verdict = json{{"kind", to_string(OrbitKind::Undetermined)}, {"reason", "no reference equilibrium"}};
  }
  if (tr.diverged) verdict["kind"] = to_string(OrbitKind::Divergent);
  verdict["step"] = tr.step;
  verdict["method_order"] = tr.method_order;
  verdict["clipped"] = tr.clipped;
  verdict["samples"] = tr.states.size();
  write_text(ctx, "trajectory.csv", csv.str());
  write_json(ctx, "verdict.json", verdict);
  *ctx.out << "verdict: " << verdict["kind"].get<std::string>() << "\n";
  return kOk;
}

// --- verify ------------------------------------------------------------------

SweepConfig sweep_config(const json& j, std::uint64_t seed) {
  check_keys(j,
             {"family", "free_param", "ranges", "fixed", "samples", "checks", "dynamics_cap", "x_panels",
              "param_panels", "record_points", "threads"},
             "campaign entry");
  SweepConfig cfg;
  cfg.family = family_of(j);
  cfg.seed = seed;
  if (j.contains("free_param")) cfg.free_param = text(j["free_param"], "free_param");
  if (j.contains("ranges")) {
    if (!j["ranges"].is_object()) throw ConfigError("ranges must be an object");
    for (const auto& [k, v] : j["ranges"].items()) {
      const auto [lo, hi] = interval(v, "range " + k);
      cfg.ranges[k] = {lo, hi};
    }
  }
  if (j.contains("fixed")) cfg.fixed = parameter_map(j["fixed"]);
  const int samples = integer(require(j, "samples"), "samples");
  if (samples < 1) throw ConfigError("samples must be >= 1");
  cfg.samples = static_cast<std::size_t>(samples);
  const json& checks = require(j, "checks");
  if (!checks.is_array()) throw ConfigError("checks must be an array");
  for (const auto& c : checks) {
    const std::string name = text(c, "check");
    auto parsed = parse_check(name);
    if (!parsed) throw ConfigError("unknown check: " + name);
    cfg.checks.insert(*parsed);
  }
  if (cfg.checks.empty()) throw ConfigError("no checks requested");
  if (j.contains("dynamics_cap")) cfg.dynamics_cap = static_cast<std::size_t>(integer(j["dynamics_cap"], "dynamics_cap"));
  if (j.contains("x_panels")) cfg.x_panels = integer(j["x_panels"], "x_panels");
  if (j.contains("param_panels")) cfg.param_panels = integer(j["param_panels"], "param_panels");
  if (j.contains("record_points")) {
    if (!j["record_points"].is_boolean()) throw ConfigError("record_points must be a boolean");
    cfg.record_points = j["record_points"].get<bool>();
  }
  if (j.contains("threads")) cfg.threads = static_cast<unsigned>(std::max(0, integer(j["threads"], "threads")));
  validate_sweep_config(cfg);
  return cfg;
}

int cmd_verify_sweep(const Context& ctx) {
  const json& cfg = ctx.config;
  check_keys(cfg, {"campaign", "seed"}, "");
  std::optional<std::uint64_t> seed = ctx.seed;
  if (!seed && cfg.contains("seed")) {
    if (!cfg["seed"].is_number_unsigned()) throw ConfigError("seed must be a non-negative integer");
    seed = cfg["seed"].get<std::uint64_t>();
  }
  if (!seed) throw ConfigError("missing key: seed (pass --seed or set \"seed\" in the config)");
  const json& campaign = require(cfg, "campaign");
  if (!campaign.is_array() || campaign.empty()) throw ConfigError("campaign must be a non-empty array");

  std::vector<SweepConfig> sweeps;
  for (const auto& entry : campaign) sweeps.push_back(sweep_config(entry, *seed));

  json reports = json::array();
  std::size_t total = 0;
  for (const auto& sc : sweeps) {
    const SweepReport rep = run_sweep(sc);
    *ctx.err << family_name(sc.family) << ": " << rep.summary.samples << " samples, "
             << rep.summary.counterexamples << " counterexamples, " << rep.wall_time_s << " s\n";
    total += rep.summary.counterexamples;
    reports.push_back(rep);
  }
  write_json(ctx, "sweep.json", json{{"seed", *seed}, {"counterexamples_total", total}, {"reports", reports}}, true);
  *ctx.out << "counterexamples: " << total << "\n";
  return total == 0 ? kOk : kCounterexamples;
}

int cmd_verify_duality(const Context& ctx) {
  const json& cfg = ctx.config;
  check_keys(cfg, {"parameters", "c_range", "c_count", "family", "seed"}, "");
  if (cfg.contains("family")) {
    const auto f = family_of(cfg);
    if (f != ModelFamily::CrowleyMartin && f != ModelFamily::DiscreteCrowleyMartin) {
      throw ConfigError("duality compares the Crowley-Martin flow and map");
    }
  }
  const json& p = require(cfg, "parameters");
  check_keys(p, {"rho", "k", "a", "b", "d"}, "parameters");
  CrowleyMartinParams shared{number(require(p, "rho"), "rho"), number(require(p, "k"), "k"),
                             number(require(p, "a"), "a"),     number(require(p, "b"), "b"),
                             0.0,                              1.0,
                             number(require(p, "d"), "d")};
  // Validates the shared values and the b k > 1 hypothesis.
  (void)ModelInstance::crowley_martin(shared);
  const auto [c_lo, c_hi] = interval(require(cfg, "c_range"), "c_range");
  if (!(c_lo > 0.0)) throw ConfigError("c_range must be positive");
  const int n = cfg.contains("c_count") ? integer(cfg["c_count"], "c_count") : 50;
  const DualityReport rep = duality_report(shared, c_lo, c_hi, n);
  write_json(ctx, "duality.json", rep);
  const std::size_t broken = rep.both_nonempty - rep.ordered;
  *ctx.out << "entries with both loci: " << rep.both_nonempty << ", ordered: " << rep.ordered << "\n";
  return broken == 0 ? kOk : kCounterexamples;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::MissingSymbol:
    case ErrorCode::UnknownSymbol:
    case ErrorCode::InvalidArgument:
    case ErrorCode::InsufficientSamples: return kConfigError;
    default: return kDomainError;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nullcline-geometry bifurcation analysis for planar predator-prey models", "ppbif"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  bool trace = false;
  auto* config_opt = app.add_option("--config", config_path, "JSON scenario configuration");
  app.add_option("--out", out_dir, "output directory");
  auto* seed_opt = app.add_option("--seed", seed, "random seed (verify sweep)");
  app.add_flag("--traceability", trace, "annotate report entries with the result they instantiate");

  auto* analyze = app.add_subcommand("analyze", "nullcline, equilibria and spectra");
  auto* loci = app.add_subcommand("loci", "bifurcation loci");
  loci->require_subcommand(1);
  auto* loci_hopf = loci->add_subcommand("hopf", "Hopf points");
  auto* loci_bt = loci->add_subcommand("bt", "Bogdanov-Takens points");
  auto* loci_ns = loci->add_subcommand("ns", "Neimark-Sacker points of the map");
  auto* simulate = app.add_subcommand("simulate", "trajectory and orbit classification");
  auto* verify = app.add_subcommand("verify", "verification campaigns");
  verify->require_subcommand(1);
  auto* verify_sweep = verify->add_subcommand("sweep", "randomized localization sweep");
  auto* verify_duality = verify->add_subcommand("duality", "flow/map duality on a shared nullcline");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }

  Context ctx;
  ctx.out_dir = out_dir;
  ctx.traceability = trace;
  ctx.out = &out;
  ctx.err = &err;
  if (seed_opt->count() > 0) ctx.seed = seed;

  try {
    if (config_opt->count() == 0) throw ConfigError("missing option: --config");
    std::ifstream f(config_path);
    if (!f) throw ConfigError("cannot read config " + config_path);
    try {
      ctx.config = json::parse(f);
    } catch (const json::parse_error& e) {
      throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!ctx.config.is_object()) throw ConfigError("config must be a JSON object");

    if (analyze->parsed()) return cmd_analyze(ctx);
    if (loci_hopf->parsed()) return cmd_loci_hopf(ctx);
    if (loci_bt->parsed()) return cmd_loci_bt(ctx);
    if (loci_ns->parsed()) return cmd_loci_ns(ctx);
    if (simulate->parsed()) return cmd_simulate(ctx);
    if (verify_sweep->parsed()) return cmd_verify_sweep(ctx);
    if (verify_duality->parsed()) return cmd_verify_duality(ctx);
    throw ConfigError("no command given");
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}

}  // namespace ppbif::cli
