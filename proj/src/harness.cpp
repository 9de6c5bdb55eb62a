#include "ppbif/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "ppbif/error.hpp"
#include "ppbif/roots.hpp"

namespace ppbif {

std::string_view to_string(Check c) {
  switch (c) {
    case Check::Hopf: return "hopf";
    case Check::BT: return "bt";
    case Check::NS: return "ns";
    case Check::Rigidity: return "rigidity";
    case Check::DynamicsConfirm: return "dynamics-confirm";
  }
  return "?";
}

std::optional<Check> parse_check(std::string_view name) {
  for (auto c : {Check::Hopf, Check::BT, Check::NS, Check::Rigidity, Check::DynamicsConfirm}) {
    if (to_string(c) == name) return c;
  }
  return std::nullopt;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

SampleRng::SampleRng(std::uint64_t seed) : engine_(seed) {}

double SampleRng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double SampleRng::log_uniform(double lo, double hi) {
  return std::exp(std::log(lo) + uniform() * (std::log(hi) - std::log(lo)));
}

void validate_sweep_config(const SweepConfig& cfg) {
  if (cfg.samples < 1) throw Error(ErrorCode::InvalidArgument, "sample count must be >= 1");
  if (cfg.checks.empty()) throw Error(ErrorCode::InvalidArgument, "no checks requested");
  if (cfg.x_panels < 4 || cfg.param_panels < 2) throw Error(ErrorCode::InvalidArgument, "panel counts too small");
  auto names = schema(cfg.family);
  auto known = [&](const std::string& s) { return std::find(names.begin(), names.end(), s) != names.end(); };
  if (!cfg.free_param.empty() && !known(cfg.free_param)) {
    throw Error(ErrorCode::UnknownSymbol, "free parameter " + cfg.free_param + " is not a " +
                                              std::string(family_name(cfg.family)) + " symbol");
  }
  for (const auto& [sym, r] : cfg.ranges) {
    if (!known(sym)) throw Error(ErrorCode::UnknownSymbol, "range for unknown symbol " + sym);
    if (!(r.lo > 0.0) || !(r.hi >= r.lo)) throw Error(ErrorCode::InvalidArgument, "bad range for " + sym);
  }
  for (const auto& [sym, v] : cfg.fixed) {
    if (!known(sym)) throw Error(ErrorCode::UnknownSymbol, "fixed value for unknown symbol " + sym);
    (void)v;
  }
}

namespace {

struct SampleOutcome {
  SampleRecord record;
  std::vector<Counterexample> counterexamples;
  std::size_t discarded = 0;
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::optional<ModelInstance> draw_instance(const SweepConfig& cfg, SampleRng& rng, SampleRecord& rec) {
  for (int attempt = 0; attempt <= 100; ++attempt) {
    std::map<std::string, double> raw;
    for (auto sym : schema(cfg.family)) {
      const std::string s(sym);
      if (auto it = cfg.fixed.find(s); it != cfg.fixed.end()) {
        raw[s] = it->second;
        continue;
      }
      auto rit = cfg.ranges.find(s);
      if (rit == cfg.ranges.end() && cfg.family == ModelFamily::HollingIV && s == "h2") {
        raw[s] = 0.0;
        continue;
      }
      const DecadeRange r = rit == cfg.ranges.end() ? DecadeRange{} : rit->second;
      raw[s] = rng.log_uniform(r.lo, r.hi);
    }
    try {
      return ModelInstance::create(cfg.family, raw);
    } catch (const Error&) {
      rec.redraws = attempt + 1;
    }
  }
  return std::nullopt;
}

// Branch label with a tighter critical band, for re-verification.
bool still_violates(const BifurcationPoint& pt, const NullclineProfile& profile) {
  if (!verify_point(pt, 1e-11)) return false;
  const double slope = prey_nullcline(pt.instance(), pt.x_star).dg;
  Branch b = Branch::Critical;
  if (std::abs(slope) > 1e-11 * profile.slope_scale()) b = slope > 0.0 ? Branch::Ascending : Branch::Descending;
  const bool ok = pt.kind == BifurcationKind::NeimarkSacker ? b == Branch::Descending : b == Branch::Ascending;
  return !ok;
}

Check check_of(BifurcationKind k) {
  switch (k) {
    case BifurcationKind::Hopf: return Check::Hopf;
    case BifurcationKind::BT: return Check::BT;
    case BifurcationKind::NeimarkSacker: return Check::NS;
  }
  return Check::Hopf;
}

void absorb_locus(const SweepConfig& cfg, BifurcationKind kind, std::vector<BifurcationPoint> pts,
                  const NullclineProfile& profile, SampleOutcome& out) {
  LocusSummary sum;
  sum.kind = kind;
  sum.count = pts.size();
  if (!pts.empty()) {
    sum.x_lo = pts.front().x_star;
    sum.x_hi = pts.front().x_star;
  }
  Counterexample* merged = nullptr;
  for (const auto& pt : pts) {
    sum.x_lo = std::min(sum.x_lo, pt.x_star);
    sum.x_hi = std::max(sum.x_hi, pt.x_star);
    if (pt.verdict.satisfies_principle) continue;
    ++sum.violations;
    if (!still_violates(pt, profile)) {
      ++out.discarded;
      out.record.notes.push_back(std::string(to_string(kind)) + " violation at x*=" + fmt(pt.x_star) +
                                 " did not survive re-verification");
      continue;
    }
    if (merged) {
      ++merged->violating_points;
      continue;
    }
    Counterexample ce;
    ce.sample_index = out.record.index;
    ce.campaign_seed = cfg.seed;
    ce.sample_seed = out.record.seed;
    ce.check = check_of(kind);
    ce.description = std::string(to_string(kind)) + " point at x*=" + fmt(pt.x_star) + " (" + pt.param_name + "=" +
                     fmt(pt.param_value) + ") lies on a " + std::string(to_string(pt.verdict.branch)) +
                     " branch";
    ce.parameters = out.record.parameters;
    ce.point = pt;
    ce.confirmed_at_tight_tolerance = true;
    out.counterexamples.push_back(std::move(ce));
    merged = &out.counterexamples.back();
  }
  out.record.loci.push_back(sum);
  if (cfg.record_points) out.record.points.insert(out.record.points.end(), pts.begin(), pts.end());
}

void rigidity_checks(const SweepConfig& cfg, const ModelInstance& m, const std::string& free,
                     const NullclineProfile& profile, SampleOutcome& out) {
  const double v0 = m.param(free);
  const std::vector<double> samples{0.1 * v0, 0.3 * v0, v0, 3.0 * v0, 10.0 * v0};
  const bool map = is_map(m.family());
  for (const auto& cp : profile.critical_points()) {
    RigidityCheck rc;
    rc.location = cp;
    try {
      const auto rep = rigidity_report(m, cp, samples, free);
      rc.evaluated = true;
      rc.hopf_blocked = rep.hopf_blocked;
      rc.ns_blocked = rep.ns_blocked;
      rc.ns_attainable_at = rep.ns_attainable_at;
      rc.max_abs_prey_entry = rep.max_abs_prey_entry;
      rc.max_field_trace = rep.max_field_trace;

      const bool failed = map ? (!rep.ns_blocked || rep.ns_attainable_at.has_value()) : !rep.hopf_blocked;
      if (failed) {
        bool confirmed = false;
        if (map && rep.ns_attainable_at) {
          const ModelInstance at = condition_on_cep(m.with_parameter(free, *rep.ns_attainable_at), cp.x);
          const double det = jacobian(at, {cp.x, prey_nullcline(at, cp.x).g}).det();
          confirmed = std::abs(det - 1.0) <= 1e-11;
        } else {
          const auto tight = rigidity_report(m, cp, samples, free, 1e-11);
          confirmed = map ? !tight.ns_blocked : !tight.hopf_blocked;
        }
        if (confirmed) {
          Counterexample ce;
          ce.sample_index = out.record.index;
          ce.campaign_seed = cfg.seed;
          ce.sample_seed = out.record.seed;
          ce.check = Check::Rigidity;
          ce.description = map ? "det_map = 1 is reached at the critical point x=" + fmt(cp.x) +
                                     (rep.ns_attainable_at ? " for " + free + "=" + fmt(*rep.ns_attainable_at) : "")
                               : "trace is not negative at the critical point x=" + fmt(cp.x);
          ce.parameters = out.record.parameters;
          ce.confirmed_at_tight_tolerance = true;
          out.counterexamples.push_back(std::move(ce));
        } else {
          ++out.discarded;
          out.record.notes.push_back("rigidity failure at x=" + fmt(cp.x) + " did not survive re-verification");
        }
      }
    } catch (const Error& e) {
      rc.reason = e.what();
    }
    out.record.rigidity.push_back(rc);
  }
}

void dynamics_check(const std::vector<BifurcationPoint>& pts, SampleOutcome& out) {
  DynamicsCheck dc;
  if (pts.empty()) {
    dc.reason = "no bifurcation point to probe";
    out.record.dynamics.push_back(dc);
    return;
  }
  const auto& pt = pts[pts.size() / 2];
  dc.kind = pt.kind;
  dc.x_star = pt.x_star;
  dc.param_value = pt.param_value;
  try {
    const auto probe = probe_crossing(pt, pt.instance());
    dc.evaluated = true;
    dc.below = probe.below.verdict.kind;
    dc.above = probe.above.verdict.kind;
    dc.transversality = probe.transversality;
    dc.flips = probe.flips;
    dc.side_matches = probe.side_matches;
  } catch (const Error& e) {
    dc.reason = e.what();
  }
  out.record.dynamics.push_back(dc);
}

SampleOutcome run_sample(const SweepConfig& cfg, const std::string& free, std::size_t index) {
  SampleOutcome out;
  auto& rec = out.record;
  rec.index = index;
  rec.seed = splitmix64(cfg.seed ^ splitmix64(static_cast<std::uint64_t>(index)));
  SampleRng rng(rec.seed);
  auto m = draw_instance(cfg, rng, rec);
  if (!m) {
    rec.skipped = true;
    rec.skip_reason = "no admissible draw after 100 redraws";
    return out;
  }
  rec.parameters = m->parameters().named_values();
  try {
    const NullclineProfile profile(*m);
    rec.critical_points = profile.critical_points();
    rec.equilibria = find_coexistence_equilibria(*m, profile);

    LocusOptions opt;
    opt.x_panels = cfg.x_panels;
    opt.param_panels = cfg.param_panels;
    const bool map = is_map(m->family());
    std::vector<BifurcationPoint> probe_points;

    if (cfg.checks.count(Check::Hopf)) {
      if (map) {
        rec.notes.push_back("hopf check skipped: discrete family");
      } else {
        auto pts = hopf_locus(*m, free, opt);
        probe_points = pts;
        absorb_locus(cfg, BifurcationKind::Hopf, std::move(pts), profile, out);
      }
    }
    if (cfg.checks.count(Check::BT)) {
      if (map) {
        rec.notes.push_back("bt check skipped: discrete family");
      } else {
        absorb_locus(cfg, BifurcationKind::BT, bt_locus(*m, free, opt), profile, out);
      }
    }
    if (cfg.checks.count(Check::NS)) {
      if (!map) {
        rec.notes.push_back("ns check skipped: flow family");
      } else {
        auto pts = ns_locus(*m, free, opt);
        probe_points = pts;
        absorb_locus(cfg, BifurcationKind::NeimarkSacker, std::move(pts), profile, out);
      }
    }
    if (cfg.checks.count(Check::Rigidity)) rigidity_checks(cfg, *m, free, profile, out);
    if (cfg.checks.count(Check::DynamicsConfirm) && index < cfg.dynamics_cap) {
      if (probe_points.empty() && !cfg.checks.count(Check::Hopf) && !cfg.checks.count(Check::NS)) {
        probe_points = map ? ns_locus(*m, free, opt) : hopf_locus(*m, free, opt);
      }
      dynamics_check(probe_points, out);
    }
  } catch (const Error& e) {
    rec.skipped = true;
    rec.skip_reason = e.what();
    out.counterexamples.clear();
  }
  return out;
}

}  // namespace

SweepReport run_sweep(const SweepConfig& cfg) {
  validate_sweep_config(cfg);
  const auto t0 = std::chrono::steady_clock::now();
  const std::string free = cfg.free_param.empty() ? std::string(default_free_parameter(cfg.family)) : cfg.free_param;

  std::vector<SampleOutcome> outcomes(cfg.samples);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cfg.samples; i = next++) outcomes[i] = run_sample(cfg, free, i);
  };
  unsigned n_threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, cfg.samples));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  SweepReport rep;
  rep.config = cfg;
  rep.config.free_param = free;
  rep.summary.samples = cfg.samples;
  for (auto& o : outcomes) {
    auto& r = o.record;
    if (r.skipped) ++rep.summary.skipped;
    if (!r.skipped) ++rep.summary.equilibrium_count[r.equilibria.size()];
    for (const auto& l : r.loci) rep.summary.points_by_kind[std::string(to_string(l.kind))] += l.count;
    for (const auto& rc : r.rigidity) {
      if (!rc.evaluated) continue;
      ++rep.summary.rigidity_evaluated;
      const bool blocked = is_map(cfg.family) ? rc.ns_blocked && !rc.ns_attainable_at : rc.hopf_blocked;
      if (blocked) ++rep.summary.rigidity_blocked;
    }
    for (const auto& dc : r.dynamics) {
      if (!dc.evaluated) continue;
      ++rep.summary.dynamics_evaluated;
      if (dc.flips && dc.side_matches) ++rep.summary.dynamics_flips;
    }
    rep.summary.discarded_after_reverification += o.discarded;
    for (auto& ce : o.counterexamples) {
      rep.summary.violating_points += ce.violating_points;
      rep.counterexamples.push_back(std::move(ce));
    }
    rep.samples.push_back(std::move(r));
  }
  rep.summary.counterexamples = rep.counterexamples.size();
  rep.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

DualityReport duality_report(const CrowleyMartinParams& shared, double c_lo, double c_hi, int n) {
  if (!(c_lo > 0.0) || !(c_hi >= c_lo) || n < 1) throw Error(ErrorCode::InvalidArgument, "bad c range");
  DualityReport rep;
  rep.shared = shared;
  rep.shared.gamma = 1.0;
  for (int i = 0; i < n; ++i) {
    DualityEntry e;
    e.c = n == 1 ? c_lo : c_lo * std::pow(c_hi / c_lo, static_cast<double>(i) / (n - 1));
    CrowleyMartinParams p = rep.shared;
    p.c = e.c;
    e.x_v = p.vertex();
    const ModelInstance flow = ModelInstance::crowley_martin(p);
    const ModelInstance map = ModelInstance::discrete_crowley_martin(p);

    for (double x : cm_hopf_inverse(p, e.c)) {
      if (crowley_martin_hopf(flow, x)) e.hopf_x.push_back(x);
    }

    auto det_minus_one = [&](double x) {
      try {
        const ModelInstance inst = condition_on_cep(map, x);
        return jacobian(inst, {x, prey_nullcline(inst, x).g}).det() - 1.0;
      } catch (const Error&) {
        return std::numeric_limits<double>::quiet_NaN();
      }
    };
    for (auto [lo, hi] : roots::sign_change_brackets(det_minus_one, p.k * 1e-9, p.k * (1.0 - 1e-9), 512)) {
      const double x = roots::bisect(det_minus_one, lo, hi);
      try {
        const ModelInstance inst = condition_on_cep(map, x);
        const auto s = summarize(jacobian(inst, {x, prey_nullcline(inst, x).g}));
        if (std::abs(s.det - 1.0) <= 1e-10 && std::abs(s.trace) < 2.0) e.ns_x.push_back(x);
      } catch (const Error&) {
      }
    }
    e.hopf_empty = e.hopf_x.empty();
    e.ns_empty = e.ns_x.empty();
    if (!e.hopf_empty && !e.ns_empty) {
      ++rep.both_nonempty;
      e.ordered = *std::max_element(e.hopf_x.begin(), e.hopf_x.end()) < e.x_v &&
                  e.x_v < *std::min_element(e.ns_x.begin(), e.ns_x.end());
      if (e.ordered) ++rep.ordered;
    }
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

}  // namespace ppbif
