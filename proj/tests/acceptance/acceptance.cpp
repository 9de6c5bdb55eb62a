// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failing criteria (0 when all pass).
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "ppbif/bifurcation.hpp"
#include "ppbif/dynamics.hpp"
#include "ppbif/equilibria.hpp"
#include "ppbif/error.hpp"
#include "ppbif/harness.hpp"
#include "ppbif/nullcline.hpp"
#include "ppbif/report_json.hpp"
#include "ppbif/spectral.hpp"

using namespace ppbif;

namespace {

// Pinned tolerances.
constexpr double kVertexTraceRelTol = 1e-10;
constexpr double kHopfTraceTol = 1e-10;
constexpr double kHopfDetRelTol = 1e-10;
constexpr double kWindowEndpointTol = 1e-8;
constexpr double kBTTol = 1e-9;
constexpr double kCmTraceTol = 1e-10;
constexpr double kInvarianceTol = 1e-12;
constexpr double kClassicalLimitRel = 1e-2;
constexpr double kMapEntryTol = 1e-12;
constexpr double kDynamicsSecondsPerPoint = 60.0;
constexpr double kJacobianFdRelTol = 1e-6;
constexpr double kRk4RatioLo = 12.0, kRk4RatioHi = 20.0;
constexpr double kEigenIdentityTol = 1e-12;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double lu(SampleRng& rng) { return rng.log_uniform(0.1, 10.0); }

// 1 ---------------------------------------------------------------------------
Outcome vertex_trace() {
  SampleRng rng(1001);
  double worst = 0.0;
  int nonneg = 0, skipped = 0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    const double k0 = lu(rng), b = lu(rng), r = lu(rng), sigma = lu(rng), a = lu(rng);
    const auto m = ModelInstance::bazykin({r, k0 + b, a, b, 1.0, 0.1, sigma});
    const double xv = 0.5 * k0;
    try {
      const auto c = condition_on_cep(m, xv);
      const PlanarState s{xv, prey_nullcline(c, xv).g};
      const double tr = jacobian(c, s).trace();
      const double want = -(k0 + 2 * b) * (k0 + 2 * b) * r * sigma / (4 * a * (k0 + b));
      worst = std::max(worst, std::abs(tr - want) / std::abs(want));
      if (!(tr < 0.0)) ++nonneg;
    } catch (const Error&) {
      ++skipped;
    }
  }
  return {worst <= kVertexTraceRelTol && nonneg == 0 && skipped == 0,
          fmt("%d draws, max rel err %.2e, non-negative %d, skipped %d", n, worst, nonneg, skipped)};
}

// 2 ---------------------------------------------------------------------------
Outcome bazykin_hopf_closed_form() {
  SampleRng rng(1002);
  int trace_bad = 0, det_nonpos = 0, loc_bad = 0, det_formula_bad = 0;
  double worst_det = 0.0;
  const int n = 1000;
  for (int i = 0; i < n; ++i) {
    const double k0 = lu(rng), b = lu(rng), x0 = lu(rng), r = lu(rng), sigma = lu(rng);
    const auto pt = bazykin_hopf(k0, b, x0, r, sigma);
    const auto& s = pt.spectral;
    if (std::abs(s.trace) > kHopfTraceTol * s.scale()) ++trace_bad;
    if (!(s.det > 0.0)) ++det_nonpos;
    const double xv = pt.instance().bazykin_params().vertex();
    if (!(pt.x_star == 0.5 * k0 && pt.x_star < xv)) ++loc_bad;
    const double quoted = bazykin_hopf_det_closed_form(k0, b, x0, r, sigma, pt.parameters.get("e"));
    const double rel = std::abs(s.det - quoted) / std::abs(quoted);
    worst_det = std::max(worst_det, rel);
    if (rel > kHopfDetRelTol) ++det_formula_bad;
  }
  return {trace_bad == 0 && det_nonpos == 0 && loc_bad == 0 && det_formula_bad == 0,
          fmt("%d draws: trace off %d, det<=0 %d, location off %d, det formula mismatch %d (max rel %.2e)", n,
              trace_bad, det_nonpos, loc_bad, det_formula_bad, worst_det)};
}

// 3 ---------------------------------------------------------------------------
Outcome holling_window() {
  SampleRng rng(1003);
  int violations = 0;
  double worst_end = 0.0;
  std::string first;
  const int n = 100;
  for (int i = 0; i < n; ++i) {
    const double h10 = lu(rng);
    try {
      const auto rep = holling4_hopf_window(h10, 50, kWindowEndpointTol);
      worst_end = std::max({worst_end, std::abs(rep.beta_at_x_min), std::abs(rep.beta_at_x_max)});
      for (const auto& s : rep.samples) violations += s.pattern_ok ? 0 : 1;
    } catch (const Error& e) {
      ++violations;
      if (first.empty()) first = e.what();
    }
  }
  return {violations == 0 && worst_end <= kWindowEndpointTol,
          fmt("%d h10 values x 150 samples: violations %d, max |beta0| at endpoints %.2e%s%s", n, violations,
              worst_end, first.empty() ? "" : "; ", first.c_str())};
}

// 4 ---------------------------------------------------------------------------
Outcome holling_bt() {
  std::vector<double> grid;
  for (int i = 1; i < 128; ++i) grid.push_back(i / 256.0);
  const auto res = holling4_bt(grid);
  int found = 0, outside = 0, bad = 0, converged = 0, rejected = 0;
  for (const auto& r : res) {
    converged += r.converged;
    rejected += r.rejected_nonpositive;
    for (const auto& pt : r.points) {
      ++found;
      if (!(r.x0 > 1.0 / 32 && r.x0 < 9.0 / 32)) ++outside;
      const auto& s = pt.spectral;
      const double det_scale = std::abs(s.jac.m11 * s.jac.m22) + std::abs(s.jac.m12 * s.jac.m21);
      const auto& hp = pt.instance().holling_params();
      if (std::abs(s.trace) > kBTTol * s.scale() || std::abs(s.det) > kBTTol * det_scale ||
          !(pt.x_star > hp.x_min() && pt.x_star < hp.x_max())) {
        ++bad;
      }
    }
  }
  // An empty solution set would satisfy "only inside" vacuously; require solutions.
  return {found > 0 && outside == 0 && bad == 0,
          fmt("%zu grid points: positive solutions %d (outside interval %d, failing checks %d); "
              "converged starts %d, all-unknowns-positive rejections %d",
              grid.size(), found, outside, bad, converged, rejected)};
}

// 5 ---------------------------------------------------------------------------
Outcome cm_c0() {
  SampleRng rng(1005);
  int sign_bad = 0, trace_bad = 0, checked = 0, inadmissible = 0;
  const int n = 1000;
  for (int i = 0; i < n; ++i) {
    const double a = lu(rng), b = lu(rng), d = lu(rng), k0 = lu(rng);
    CrowleyMartinParams p{1.0, (k0 + 1.0) / b, a, b, 0.0, 1.0, d};
    const double x = p.k * (0.0005 + 0.999 * rng.uniform());
    const double xv = k0 / (2 * b);
    const double c0 = cm_hopf_c0(p, x);
    if ((c0 > 0.0) != (x < xv)) ++sign_bad;
    if (c0 <= 0.0) continue;
    p.c = c0;
    try {
      const auto t = trace_on_nullcline(ModelInstance::crowley_martin(p), x);
      const auto s = summarize(jacobian(condition_on_cep(ModelInstance::crowley_martin(p), x), t.state));
      ++checked;
      if (std::abs(t.trace) > kCmTraceTol * s.scale()) ++trace_bad;
    } catch (const Error&) {
      ++inadmissible;  // a <= c0 rho or a - c0 h(x) <= 0: no coexistence state at x
    }
  }
  return {sign_bad == 0 && trace_bad == 0 && checked > 0,
          fmt("%d draws: sign mismatches %d; trace checked at %d positive c0 (off %d), inadmissible %d", n, sign_bad,
              checked, trace_bad, inadmissible)};
}

// 6 ---------------------------------------------------------------------------
Outcome cm_invariance() {
  const double cs[] = {0.0, 0.1, 1.0, 10.0};
  double xv_spread = 0.0, j11_spread = 0.0;
  std::vector<double> xvs;
  for (double c : cs) xvs.push_back(critical_points(ModelInstance::crowley_martin({1, 2, 100, 1, c, 1, 1})).at(0).x);
  for (double v : xvs) xv_spread = std::max(xv_spread, std::abs(v - xvs[0]));
  SampleRng rng(1006);
  for (int i = 0; i < 100; ++i) {
    const double x = 2.0 * (0.005 + 0.99 * rng.uniform());
    std::vector<double> parts;
    for (double c : cs) parts.push_back(trace_on_nullcline(ModelInstance::crowley_martin({1, 2, 100, 1, c, 1, 1}), x).prey_part);
    for (double v : parts) j11_spread = std::max(j11_spread, std::abs(v - parts[0]));
  }
  return {xv_spread <= kInvarianceTol && j11_spread <= kInvarianceTol,
          fmt("vertex spread %.2e, prey-part spread %.2e over 100 x", xv_spread, j11_spread)};
}

// 7 ---------------------------------------------------------------------------
Outcome classical_limit() {
  const CrowleyMartinParams p{1, 2, 1, 1, 0.0, 1, 0.1};
  const double xv = p.vertex();
  std::string detail;
  double prev = 0.0;
  bool ok = true;
  for (double c : {1e-1, 1e-2, 1e-3, 1e-4}) {
    const auto x = cm_hopf_vertex_branch(p, c);
    if (!x) {
      detail += fmt("c=%g none; ", c);
      ok = false;
      continue;
    }
    auto q = p;
    q.c = c;
    const auto pt = crowley_martin_hopf(ModelInstance::crowley_martin(q), *x);
    if (!pt || std::abs(pt->param_value - c) > 1e-10 * c || !verify_point(*pt)) ok = false;
    if (!(*x > prev && *x < xv)) ok = false;
    prev = *x;
    detail += fmt("c=%g x*=%.6f; ", c, *x);
  }
  const double gap = std::abs(prev - xv);
  ok = ok && gap < kClassicalLimitRel * xv;
  return {ok, detail + fmt("|x*(1e-4) - x_v| = %.2e (x_v = %g)", gap, xv)};
}

// 8 ---------------------------------------------------------------------------
Outcome map_rigidity() {
  SampleRng rng(1008);
  double worst_j00 = 0.0, worst_trace = 0.0;
  int drawn = 0;
  while (drawn < 1000) {
    try {
      const auto m = ModelInstance::discrete_crowley_martin({lu(rng), lu(rng), lu(rng), lu(rng), lu(rng), 1.0, lu(rng)});
      const double xv = m.cm_params().vertex();
      const auto c = condition_on_cep(m, xv);
      const auto j = jacobian(c, {xv, prey_nullcline(c, xv).g});
      worst_j00 = std::max(worst_j00, std::abs(j.m11 - 1.0));
      ++drawn;
    } catch (const Error&) {
    }
  }
  for (int i = 0; i < 1000;) {
    try {
      const CrowleyMartinParams p{lu(rng), lu(rng), lu(rng), lu(rng), lu(rng), lu(rng), lu(rng)};
      const auto map = ModelInstance::discrete_crowley_martin(p);
      const auto flow = ModelInstance::crowley_martin(p);
      const PlanarState s{lu(rng), lu(rng)};
      const auto jf = jacobian(flow, s);
      const double scale = 2.0 + std::abs(jf.m11) + std::abs(jf.m22);
      worst_trace = std::max(worst_trace, std::abs(jacobian(map, s).trace() - (2.0 + jf.trace())) / scale);
      ++i;
    } catch (const Error&) {
    }
  }
  return {worst_j00 <= kMapEntryTol && worst_trace <= kMapEntryTol,
          fmt("max |J00 - 1| at vertex %.2e (1000 draws); max scaled |tr_map - 2 - tr_flow| %.2e (1000 states)",
              worst_j00, worst_trace)};
}

// 9 ---------------------------------------------------------------------------
Outcome duality() {
  const auto rep = duality_report({1, 2, 1, 1, 0.0, 1, 1}, 1e-3, 0.045, 50);
  return {rep.both_nonempty > 0 && rep.ordered == rep.both_nonempty,
          fmt("%zu c values, %zu with both loci, %zu ordered", rep.entries.size(), rep.both_nonempty, rep.ordered)};
}

// 10 --------------------------------------------------------------------------
Outcome dynamics() {
  std::vector<BifurcationPoint> hopf;
  hopf.push_back(bazykin_hopf(1, 1, 1, 1, 1));
  hopf.push_back(bazykin_hopf(2, 0.5, 0.25, 2, 3));
  hopf.push_back(bazykin_hopf(0.5, 1, 2, 1, 0.5));
  const auto cm = ModelInstance::crowley_martin({1, 2, 1, 1, 0.01, 1, 1});
  for (double x : {0.25, 0.4}) {
    if (auto pt = crowley_martin_hopf(cm, x)) hopf.push_back(*pt);
  }
  const auto map = ModelInstance::discrete_crowley_martin({1, 2, 1, 1, 0.1, 1, 1});
  const auto ns_all = ns_locus(map, "c", {.x_panels = 64});
  std::vector<BifurcationPoint> ns;
  for (int i = 0; i < 5 && !ns_all.empty(); ++i) ns.push_back(ns_all[(ns_all.size() - 1) * i / 4]);

  int ok = 0, total = 0;
  double slowest = 0.0;
  std::string notes;
  for (const auto* set : {&hopf, &ns}) {
    for (const auto& pt : *set) {
      ++total;
      const auto t0 = std::chrono::steady_clock::now();
      try {
        const auto probe = probe_crossing(pt, pt.instance());
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        slowest = std::max(slowest, secs);
        if (probe.flips && probe.side_matches && secs <= kDynamicsSecondsPerPoint) {
          ++ok;
        } else {
          notes += fmt(" [%s x*=%.4f: %s/%s]", std::string(to_string(pt.kind)).c_str(), pt.x_star,
                       std::string(to_string(probe.below.verdict.kind)).c_str(),
                       std::string(to_string(probe.above.verdict.kind)).c_str());
        }
      } catch (const Error& e) {
        notes += fmt(" [x*=%.4f: %s]", pt.x_star, e.what());
      }
    }
  }
  return {ok == total && hopf.size() == 5 && ns.size() == 5,
          fmt("%zu Hopf + %zu NS points, %d confirmed, slowest %.1f s", hopf.size(), ns.size(), ok, slowest) + notes};
}

// 11 --------------------------------------------------------------------------
Outcome oracle_suite() {
  SampleRng rng(1011);
  double worst_fd = 0.0, worst_eig = 0.0;
  int pairs = 0;
  const ModelFamily fams[] = {ModelFamily::Bazykin, ModelFamily::HollingIV, ModelFamily::CrowleyMartin,
                              ModelFamily::DiscreteCrowleyMartin};
  for (auto f : fams) {
    int made = 0;
    while (made < 100) {
      std::map<std::string, double> raw;
      for (auto sym : schema(f)) raw[std::string(sym)] = lu(rng);
      try {
        const auto m = ModelInstance::create(f, raw);
        const PlanarState s{lu(rng), lu(rng)};
        const double hx = 1e-6 * (1 + s.x), hy = 1e-6 * (1 + s.y);
        const auto j = field_jacobian(m, s);
        const auto xp = vector_field(m, {s.x + hx, s.y}), xm = vector_field(m, {s.x - hx, s.y});
        const auto yp = vector_field(m, {s.x, s.y + hy}), ym = vector_field(m, {s.x, s.y - hy});
        const double fd[4] = {(xp.dx - xm.dx) / (2 * hx), (yp.dx - ym.dx) / (2 * hy), (xp.dy - xm.dy) / (2 * hx),
                              (yp.dy - ym.dy) / (2 * hy)};
        const double an[4] = {j.m11, j.m12, j.m21, j.m22};
        const double scale = std::abs(an[0]) + std::abs(an[1]) + std::abs(an[2]) + std::abs(an[3]);
        for (int q = 0; q < 4; ++q) worst_fd = std::max(worst_fd, std::abs(an[q] - fd[q]) / std::max(1.0, scale));
        const auto sp = spectral_summary(m, s);
        const double ss = sp.scale();
        worst_eig = std::max({worst_eig, std::abs((sp.lambda1 + sp.lambda2).real() - sp.trace) / ss,
                              std::abs((sp.lambda1 * sp.lambda2).real() - sp.det) / (ss * ss)});
        ++made;
        ++pairs;
      } catch (const Error&) {
      }
    }
  }
  const auto m = ModelInstance::bazykin({1, 3, 2, 1, 1, 0.2, 0.5});
  const PlanarState s0{1.2, 0.4};
  const double dt = 0.05;
  const auto end = [&](double h) { return integrate_flow(m, s0, 1.0, h, 1u << 30).states.back(); };
  const auto ref = end(dt / 8), e1 = end(dt), e2 = end(dt / 2);
  const double ratio = std::hypot(e1.x - ref.x, e1.y - ref.y) / std::hypot(e2.x - ref.x, e2.y - ref.y);
  return {worst_fd <= kJacobianFdRelTol && ratio >= kRk4RatioLo && ratio <= kRk4RatioHi &&
              worst_eig <= kEigenIdentityTol,
          fmt("%d state/parameter pairs: max FD rel err %.2e; RK4 ratio %.2f; eigen identity err %.2e", pairs,
              worst_fd, ratio, worst_eig)};
}

// 12 --------------------------------------------------------------------------
Outcome default_campaign() {
  namespace fs = std::filesystem;
  const fs::path base = fs::temp_directory_path() / "ppbif_acceptance_campaign";
  fs::remove_all(base);
  const std::string cfg = std::string(PPBIF_SOURCE_DIR) + "/configs/default_campaign.json";
  int codes[2];
  std::string bytes[2];
  for (int run = 0; run < 2; ++run) {
    const auto out = base / ("run" + std::to_string(run));
    std::ostringstream o, e;
    codes[run] = cli::run({"verify", "sweep", "--config", cfg, "--out", out.string()}, o, e);
    std::ifstream f(out / "sweep.json", std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    bytes[run] = ss.str();
  }
  std::string per_family;
  std::size_t total = 0;
  try {
    const auto j = nlohmann::json::parse(bytes[0]);
    total = j.at("counterexamples_total").get<std::size_t>();
    for (const auto& r : j.at("reports")) {
      per_family += fmt(" %s=%zu", r.at("config").at("family").get<std::string>().c_str(),
                        r.at("summary").at("counterexamples").get<std::size_t>());
    }
  } catch (const std::exception& ex) {
    per_family = std::string(" unreadable report: ") + ex.what();
  }
  const bool identical = !bytes[0].empty() && bytes[0] == bytes[1];
  fs::remove_all(base);
  return {codes[0] == 0 && codes[1] == 0 && total == 0 && identical,
          fmt("exit codes %d/%d, counterexamples %zu (", codes[0], codes[1], total) + per_family.substr(1) +
              fmt("), reports identical: %s (%zu bytes)", identical ? "yes" : "no", bytes[0].size())};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"bazykin-vertex-trace", vertex_trace},
      {"bazykin-hopf-closed-form", bazykin_hopf_closed_form},
      {"holling-iv-hopf-window", holling_window},
      {"holling-iv-bt-interval", holling_bt},
      {"crowley-martin-c0", cm_c0},
      {"crowley-martin-vertex-invariance", cm_invariance},
      {"classical-limit", classical_limit},
      {"map-rigidity", map_rigidity},
      {"flow-map-duality", duality},
      {"dynamical-confirmation", dynamics},
      {"oracle-suite", oracle_suite},
      {"default-campaign", default_campaign},
  };
  int failures = 0;
  int idx = 0;
  for (const auto& [name, fn] : criteria) {
    ++idx;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << (idx < 10 ? " " : "") << idx << "  " << name << "  "
              << o.detail << fmt("  [%.1f s]", secs) << std::endl;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria pass" << std::endl;
  return failures;
}
