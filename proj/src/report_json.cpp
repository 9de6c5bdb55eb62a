#include "ppbif/report_json.hpp"

#include <string>

namespace ppbif {

using nlohmann::json;

namespace {

json complex_json(std::complex<double> z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json named(const std::vector<std::pair<std::string, double>>& values) {
  json j = json::object();
  for (const auto& [k, v] : values) j[k] = v;
  return j;
}

std::string family_slug(ModelFamily f) {
  switch (f) {
    case ModelFamily::Bazykin: return "bazykin";
    case ModelFamily::HollingIV: return "holling-iv";
    case ModelFamily::CrowleyMartin: return "crowley-martin";
    case ModelFamily::DiscreteCrowleyMartin: return "discrete-crowley-martin";
  }
  return "model";
}

}  // namespace

void to_json(json& j, const PlanarState& s) { j = json{{"x", s.x}, {"y", s.y}}; }

void to_json(json& j, const ParameterSet& p) {
  j = json{{"family", family_name(p.family())}, {"values", named(p.named_values())}, {"derived", named(p.derived())}};
}

void to_json(json& j, const CriticalPoint& cp) {
  j = json{{"x", cp.x}, {"kind", to_string(cp.kind)}, {"g", cp.g_value}, {"polished_x", cp.polished_x}};
}

void to_json(json& j, const Equilibrium& e) {
  j = json{{"state", e.state},
           {"residual_norm", e.residual_norm},
           {"residual_scale", e.residual_scale},
           {"branch", to_string(e.branch)},
           {"cell", e.cell}};
}

void to_json(json& j, const SpectralSummary& s) {
  j = json{{"J11", s.jac.m11},
           {"J12", s.jac.m12},
           {"J21", s.jac.m21},
           {"J22", s.jac.m22},
           {"trace", s.trace},
           {"det", s.det},
           {"discriminant", s.discriminant},
           {"eigenvalues", json::array({complex_json(s.lambda1), complex_json(s.lambda2)})},
           {"degenerate", s.degenerate}};
}

void to_json(json& j, const LocalizationVerdict& v) {
  j = json{{"containing_interval", json::array({v.interval_lo, v.interval_hi})},
           {"branch", to_string(v.branch)},
           {"satisfies_principle", v.satisfies_principle}};
}

void to_json(json& j, const BifurcationPoint& p) {
  j = json{{"kind", to_string(p.kind)},
           {"family", family_name(p.parameters.family())},
           {"x_star", p.x_star},
           {"state", p.state},
           {"critical_param_name", p.param_name},
           {"critical_param_value", p.param_value},
           {"parameters", named(p.parameters.named_values())},
           {"spectral", p.spectral},
           {"verdict", p.verdict}};
}

void to_json(json& j, const RigidityReport& r) {
  json samples = json::array();
  for (const auto& s : r.samples) {
    json e{{"parameter", s.parameter}, {"skipped", s.skipped}};
    if (s.skipped) {
      e["reason"] = s.reason;
    } else {
      e["J11"] = s.prey_entry;
      e["trace"] = s.field_trace;
      e["det"] = s.field_det;
      if (r.is_map) e["det_map"] = s.map_det;
    }
    samples.push_back(e);
  }
  j = json{{"location", r.location},
           {"parameter", r.parameter_name},
           {"J11_at_critical", r.max_abs_prey_entry},
           {"trace_at_critical", r.max_field_trace},
           {"det_at_critical", r.min_field_det},
           {"hopf_blocked", r.hopf_blocked},
           {"ns_blocked", r.ns_blocked},
           {"samples", samples}};
  if (r.ns_attainable_at) j["ns_attainable_at"] = *r.ns_attainable_at;
}

void to_json(json& j, const HollingHopfBranch& b) {
  j = json{{"x", b.x}, {"y0", b.y0}, {"delta_eff0", b.delta_eff0}, {"beta0", b.beta0}, {"det", b.det},
           {"J11", b.prey_entry}};
}

void to_json(json& j, const HollingWindowReport& r) {
  json samples = json::array();
  for (const auto& s : r.samples) {
    json e = s.branch;
    e["region"] = to_string(s.region);
    e["pattern_ok"] = s.pattern_ok;
    samples.push_back(e);
  }
  j = json{{"h10", r.h10},         {"x_min", r.x_min}, {"x_max", r.x_max},
           {"x_right", r.x_right}, {"beta_at_x_min", r.beta_at_x_min}, {"beta_at_x_max", r.beta_at_x_max},
           {"samples", samples}};
}

void to_json(json& j, const HollingBTGridResult& r) {
  j = json{{"x0", r.x0},
           {"points", r.points},
           {"converged_starts", r.converged},
           {"rejected_nonpositive", r.rejected_nonpositive}};
  if (!r.failure.empty()) j["failure"] = r.failure;
}

void to_json(json& j, const OscillationVerdict& v) {
  j = json{{"kind", to_string(v.kind)},
           {"amplitude", v.amplitude},
           {"decay_rate", v.decay_rate},
           {"section_returns", v.section_returns}};
  j["period_estimate"] = v.period_estimate ? json(*v.period_estimate) : json(nullptr);
}

void to_json(json& j, const SweepConfig& c) {
  json ranges = json::object();
  for (const auto& [k, r] : c.ranges) ranges[k] = json::array({r.lo, r.hi});
  json checks = json::array();
  for (auto ch : c.checks) checks.push_back(to_string(ch));
  j = json{{"family", family_name(c.family)},
           {"free_param", c.free_param},
           {"ranges", ranges},
           {"fixed", c.fixed},
           {"samples", c.samples},
           {"seed", c.seed},
           {"checks", checks},
           {"dynamics_cap", c.dynamics_cap},
           {"x_panels", c.x_panels},
           {"param_panels", c.param_panels},
           {"record_points", c.record_points}};
}

void to_json(json& j, const SweepReport& r) {
  json samples = json::array();
  for (const auto& s : r.samples) {
    json e{{"index", s.index}, {"seed", s.seed}, {"redraws", s.redraws}, {"skipped", s.skipped}};
    if (s.skipped) e["skip_reason"] = s.skip_reason;
    e["parameters"] = named(s.parameters);
    e["critical_points"] = s.critical_points;
    e["equilibria"] = s.equilibria;
    json loci = json::array();
    for (const auto& l : s.loci) {
      loci.push_back(json{{"kind", to_string(l.kind)},
                          {"count", l.count},
                          {"x_lo", l.x_lo},
                          {"x_hi", l.x_hi},
                          {"violations", l.violations}});
    }
    e["loci"] = loci;
    if (!s.points.empty()) e["points"] = s.points;
    json rig = json::array();
    for (const auto& rc : s.rigidity) {
      json x{{"location", rc.location}, {"evaluated", rc.evaluated}};
      if (rc.evaluated) {
        x["hopf_blocked"] = rc.hopf_blocked;
        x["ns_blocked"] = rc.ns_blocked;
        x["J11_at_critical"] = rc.max_abs_prey_entry;
        x["trace_at_critical"] = rc.max_field_trace;
        if (rc.ns_attainable_at) x["ns_attainable_at"] = *rc.ns_attainable_at;
      } else {
        x["reason"] = rc.reason;
      }
      rig.push_back(x);
    }
    e["rigidity"] = rig;
    json dyn = json::array();
    for (const auto& dc : s.dynamics) {
      json x{{"kind", to_string(dc.kind)},
             {"x_star", dc.x_star},
             {"param_value", dc.param_value},
             {"evaluated", dc.evaluated}};
      if (dc.evaluated) {
        x["below"] = to_string(dc.below);
        x["above"] = to_string(dc.above);
        x["transversality"] = dc.transversality;
        x["flips"] = dc.flips;
        x["side_matches"] = dc.side_matches;
      } else {
        x["reason"] = dc.reason;
      }
      dyn.push_back(x);
    }
    e["dynamics"] = dyn;
    e["notes"] = s.notes;
    samples.push_back(e);
  }

  json ces = json::array();
  for (const auto& c : r.counterexamples) {
    json e{{"sample_index", c.sample_index},
           {"campaign_seed", c.campaign_seed},
           {"sample_seed", c.sample_seed},
           {"check", to_string(c.check)},
           {"description", c.description},
           {"parameters", named(c.parameters)},
           {"violating_points", c.violating_points},
           {"confirmed_at_tight_tolerance", c.confirmed_at_tight_tolerance}};
    if (c.point) e["point"] = *c.point;
    ces.push_back(e);
  }

  json eq_count = json::object();
  for (const auto& [n, count] : r.summary.equilibrium_count) eq_count[std::to_string(n)] = count;
  json summary{{"samples", r.summary.samples},
               {"skipped", r.summary.skipped},
               {"points_by_kind", r.summary.points_by_kind},
               {"equilibrium_count", eq_count},
               {"rigidity_evaluated", r.summary.rigidity_evaluated},
               {"rigidity_blocked", r.summary.rigidity_blocked},
               {"dynamics_evaluated", r.summary.dynamics_evaluated},
               {"dynamics_flips", r.summary.dynamics_flips},
               {"discarded_after_reverification", r.summary.discarded_after_reverification},
               {"counterexamples", r.summary.counterexamples},
               {"violating_points", r.summary.violating_points}};

  j = json{{"config", r.config}, {"summary", summary}, {"counterexamples", ces}, {"samples", samples}};
}

void to_json(json& j, const DualityReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries) {
    json x{{"c", e.c},
           {"x_v", e.x_v},
           {"hopf_x", e.hopf_x},
           {"ns_x", e.ns_x},
           {"hopf_empty", e.hopf_empty},
           {"ns_empty", e.ns_empty},
           {"ordered", e.ordered}};
    if (e.hopf_empty) x["hopf_status"] = "EmptyLocus";
    if (e.ns_empty) x["ns_status"] = "EmptyLocus";
    entries.push_back(x);
  }
  j = json{{"shared", json{{"rho", r.shared.rho}, {"k", r.shared.k}, {"a", r.shared.a}, {"b", r.shared.b},
                           {"d", r.shared.d}}},
           {"entries", entries},
           {"both_nonempty", r.both_nonempty},
           {"ordered", r.ordered}};
}

std::string traceability_anchor(ModelFamily family, BifurcationKind kind) {
  const std::string slug = family_slug(family);
  switch (kind) {
    case BifurcationKind::Hopf: return slug + "-hopf-localization";
    case BifurcationKind::BT: return slug + "-bt-localization";
    case BifurcationKind::NeimarkSacker: return slug + "-neimark-sacker-localization";
  }
  return slug;
}

void annotate_traceability(json& report) {
  if (report.is_array()) {
    for (auto& e : report) annotate_traceability(e);
    return;
  }
  if (!report.is_object()) return;
  for (auto& [key, value] : report.items()) annotate_traceability(value);

  if (report.contains("kind") && report.contains("family") && report["kind"].is_string()) {
    const auto fam = parse_family(report["family"].get<std::string>());
    const auto kind = report["kind"].get<std::string>();
    for (auto k : {BifurcationKind::Hopf, BifurcationKind::BT, BifurcationKind::NeimarkSacker}) {
      if (fam && to_string(k) == kind) report["anchor"] = traceability_anchor(*fam, k);
    }
  } else if (report.contains("hopf_blocked")) {
    report["anchor"] = "spectral-rigidity";
  } else if (report.contains("hopf_x")) {
    report["anchor"] = "continuous-discrete-duality";
  } else if (report.contains("beta0") && report.contains("region")) {
    report["anchor"] = "holling-iv-hopf-window";
  } else if (report.contains("check") && report.contains("campaign_seed")) {
    report["anchor"] = "localization-principle";
  } else if (report.contains("residual_norm")) {
    report["anchor"] = "coexistence-equilibrium";
  }
}

}  // namespace ppbif
