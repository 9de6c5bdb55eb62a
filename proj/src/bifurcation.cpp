#include "ppbif/bifurcation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "ppbif/equilibria.hpp"
#include "ppbif/error.hpp"
#include "ppbif/roots.hpp"

namespace ppbif {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool is_cm(ModelFamily f) { return f == ModelFamily::CrowleyMartin || f == ModelFamily::DiscreteCrowleyMartin; }

std::optional<ModelInstance> conditioned(const ModelInstance& m, std::string_view param, double value, double x) {
  try {
    return condition_on_cep(m.with_parameter(param, value), x);
  } catch (const Error&) {
    return std::nullopt;
  }
}

BifurcationPoint make_point(BifurcationKind kind, const ModelInstance& inst, std::string_view param, double x,
                            const NullclineProfile* profile = nullptr) {
  BifurcationPoint p;
  p.kind = kind;
  p.x_star = x;
  p.state = {x, prey_nullcline(inst, x).g};
  p.param_name = std::string(param);
  p.param_value = inst.param(param);
  p.parameters = inst.parameters();
  p.spectral = kind == BifurcationKind::NeimarkSacker ? summarize(jacobian(inst, p.state))
                                                      : summarize(field_jacobian(inst, p.state));
  p.verdict = profile ? localize(*profile, kind, x) : localize(NullclineProfile(inst), kind, x);
  return p;
}

std::optional<BifurcationPoint> try_point(BifurcationKind kind, const ModelInstance& inst, std::string_view param,
                                         double x, const NullclineProfile* profile) {
  try {
    return make_point(kind, inst, param, x, profile);
  } catch (const Error&) {
    return std::nullopt;
  }
}

// Branch labels along a locus. The sign of g' does not depend on the free
// or conditioning parameter; for Crowley-Martin it does not depend on c, and
// c = 0 keeps the whole interval (0, k) free of the pole.
NullclineProfile reference_profile(const ModelInstance& m) {
  if (is_cm(m.family())) return NullclineProfile(m.with_parameter("c", 0.0));
  return NullclineProfile(m);
}

std::pair<double, double> prey_range(const ModelInstance& m, const LocusOptions& opt) {
  if (opt.x_lo != 0.0 || opt.x_hi != 0.0) return {opt.x_lo, opt.x_hi};
  switch (m.family()) {
    case ModelFamily::Bazykin: return {0.0, m.bazykin_params().k};
    case ModelFamily::HollingIV: return {0.0, m.holling_params().x_intercept()};
    default: return {0.0, m.cm_params().k};
  }
}

std::vector<double> interior_grid(double lo, double hi, int panels) {
  std::vector<double> xs;
  for (int i = 1; i < panels; ++i) xs.push_back(lo + (hi - lo) * i / panels);
  return xs;
}

std::pair<double, double> param_range(const ModelInstance& m, std::string_view param, double x,
                                      const LocusOptions& opt) {
  if (opt.param_lo > 0.0 && opt.param_hi > opt.param_lo) return {opt.param_lo, opt.param_hi};
  if (is_cm(m.family()) && param == "c") {
    const auto& p = m.cm_params();
    const double c_max = std::min(p.a / p.rho, p.a / p.h(x));
    return {1e-9 * c_max, c_max * (1.0 - 1e-12)};
  }
  return {1e-6, 1e6};
}

double field_trace_at(const ModelInstance& inst, double x) {
  return field_jacobian(inst, {x, prey_nullcline(inst, x).g}).trace();
}

// Free-parameter values at which the conditioned trace vanishes at x.
std::vector<double> trace_zero_params(const ModelInstance& m, std::string_view param, double x,
                                      const LocusOptions& opt) {
  auto f = [&](double v) {
    auto inst = conditioned(m, param, v, x);
    return inst ? field_trace_at(*inst, x) : kNaN;
  };
  const auto [lo, hi] = param_range(m, param, x, opt);
  std::vector<double> out;
  for (auto [blo, bhi] : roots::log_sign_change_brackets(f, lo, hi, opt.param_panels)) {
    out.push_back(roots::bisect(f, blo, bhi));
  }
  return out;
}

std::optional<BifurcationPoint> hopf_at(const ModelInstance& m, std::string_view param, double x,
                                        const LocusOptions& opt, const NullclineProfile* profile) {
  for (double v : trace_zero_params(m, param, x, opt)) {
    auto inst = conditioned(m, param, v, x);
    if (!inst) continue;
    auto pt = try_point(BifurcationKind::Hopf, *inst, param, x, profile);
    if (pt && pt->spectral.det > 0.0) return pt;
  }
  return std::nullopt;
}

double max_real(const SpectralSummary& s) { return std::max(s.lambda1.real(), s.lambda2.real()); }
double max_modulus(const SpectralSummary& s) { return std::max(std::abs(s.lambda1), std::abs(s.lambda2)); }

}  // namespace

std::string_view to_string(BifurcationKind k) {
  switch (k) {
    case BifurcationKind::Hopf: return "Hopf";
    case BifurcationKind::BT: return "BT";
    case BifurcationKind::NeimarkSacker: return "NeimarkSacker";
  }
  return "?";
}

std::string_view to_string(WindowRegion r) {
  switch (r) {
    case WindowRegion::Left: return "left";
    case WindowRegion::Inside: return "inside";
    case WindowRegion::Right: return "right";
  }
  return "?";
}

LocalizationVerdict localize(const NullclineProfile& profile, BifurcationKind kind, double x) {
  LocalizationVerdict v;
  v.interval_lo = profile.x_lo();
  v.interval_hi = profile.x_hi();
  for (const auto& cp : profile.critical_points()) {
    if (cp.x < x) v.interval_lo = std::max(v.interval_lo, cp.x);
    if (cp.x > x) v.interval_hi = std::min(v.interval_hi, cp.x);
  }
  v.branch = branch_of(profile, x);
  v.satisfies_principle =
      kind == BifurcationKind::NeimarkSacker ? v.branch == Branch::Descending : v.branch == Branch::Ascending;
  return v;
}

bool verify_point(const BifurcationPoint& p, double tol) {
  const ModelInstance inst = p.instance();
  const Vec2 f = vector_field(inst, p.state);
  if (std::max(std::abs(f.dx), std::abs(f.dy)) > 1e-9 * residual_scale(inst, p.state)) return false;
  const Matrix2 j = p.kind == BifurcationKind::NeimarkSacker ? jacobian(inst, p.state) : field_jacobian(inst, p.state);
  const SpectralSummary s = summarize(j);
  const double scale = s.scale();
  switch (p.kind) {
    case BifurcationKind::Hopf: return std::abs(s.trace) <= tol * scale && s.det > 0.0;
    case BifurcationKind::BT: {
      const double det_scale = std::abs(j.m11 * j.m22) + std::abs(j.m12 * j.m21);
      return std::abs(s.trace) <= tol * scale && std::abs(s.det) <= tol * det_scale;
    }
    case BifurcationKind::NeimarkSacker: return std::abs(s.det - 1.0) <= tol && std::abs(s.trace) < 2.0;
  }
  return false;
}

// --- Bazykin ---------------------------------------------------------------

double bazykin_hopf_critical_a(double k0, double b, double x0, double sigma) {
  const double w = k0 + 2.0 * b;
  return w * w * (w + 2.0 * x0) * sigma / (4.0 * k0 * x0);
}

double bazykin_hopf_det_closed_form(double k0, double b, double x0, double r, double sigma, double e) {
  return e * r * x0 * (k0 + 2.0 * b + 2.0 * x0) * sigma / (k0 + b + x0);
}

BifurcationPoint bazykin_hopf(double k0, double b, double x0, double r, double sigma, double d) {
  for (double v : {k0, b, x0, r, sigma, d}) {
    if (!(v > 0.0) || !std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "bazykin_hopf inputs must be > 0");
  }
  const double a0 = bazykin_hopf_critical_a(k0, b, x0, sigma);
  const ModelInstance base = ModelInstance::bazykin({r, k0 + b + x0, a0, b, 1.0, d, sigma});
  const ModelInstance inst = condition_on_cep(base, 0.5 * k0);
  return make_point(BifurcationKind::Hopf, inst, "a", 0.5 * k0);
}

// --- Crowley-Martin --------------------------------------------------------

double cm_hopf_c0(const CrowleyMartinParams& p, double x) {
  const double k0 = p.k0();
  const double bx = 1.0 + p.b * x;
  return p.a * p.b * x * (k0 - 2.0 * p.b * x) / (p.d * bx * bx * (1.0 + k0 - p.b * x));
}

std::optional<BifurcationPoint> crowley_martin_hopf(const ModelInstance& m, double x) {
  const auto& p = m.cm_params();
  if (!(x > 0.0 && x < p.k)) {
    throw Error(ErrorCode::OutOfDomain, "x=" + std::to_string(x) + " outside (0, k)");
  }
  const double c0 = cm_hopf_c0(p, x);
  if (!(c0 > 0.0)) return std::nullopt;
  auto inst = conditioned(m, "c", c0, x);
  if (!inst) return std::nullopt;
  const auto ref = reference_profile(*inst);
  auto pt = make_point(BifurcationKind::Hopf, *inst, "c", x, &ref);
  if (!(pt.spectral.det > 0.0)) return std::nullopt;
  return pt;
}

std::vector<double> cm_hopf_inverse(const CrowleyMartinParams& p, double c) {
  const double xv = p.vertex();
  auto f = [&](double x) { return cm_hopf_c0(p, x) - c; };
  std::vector<double> out;
  for (auto [lo, hi] : roots::sign_change_brackets(f, 0.0, xv, 2048)) out.push_back(roots::bisect(f, lo, hi));
  return out;
}

std::optional<double> cm_hopf_vertex_branch(const CrowleyMartinParams& p, double c) {
  auto xs = cm_hopf_inverse(p, c);
  if (xs.empty()) return std::nullopt;
  return xs.back();
}

// --- Holling IV ------------------------------------------------------------

HollingHopfBranch holling4_hopf_branch(double h10, double x) {
  const ModelInstance inst = ModelInstance::holling_iv({h10, 0.0, 1.0, 1.0});
  const auto& p = inst.holling_params();
  if (!(x > 0.0 && x < p.x_intercept())) {
    throw Error(ErrorCode::OutOfDomain, "x=" + std::to_string(x) + " outside the Holling IV prey interval");
  }
  HollingHopfBranch out;
  out.x = x;
  out.y0 = prey_nullcline(inst, x).g;
  if (!(out.y0 > 0.0)) throw Error(ErrorCode::NullclineNonpositive, "y0 <= 0 at x=" + std::to_string(x));
  const Matrix2 prey = field_jacobian(inst, {x, out.y0});
  out.prey_entry = prey.m11;
  out.beta0 = x * prey.m11 / out.y0;
  out.delta_eff0 = out.beta0 * out.y0 / x;
  const double ratio = out.y0 / x;
  const Matrix2 j{prey.m11, prey.m12, out.beta0 * ratio * ratio, out.delta_eff0 - 2.0 * out.beta0 * ratio};
  out.det = j.det();
  return out;
}

HollingWindowReport holling4_hopf_window(double h10, int n_samples, double endpoint_tol) {
  if (!(h10 > 0.0)) throw Error(ErrorCode::InvalidArgument, "h10 must be > 0");
  if (n_samples < 3) throw Error(ErrorCode::InvalidArgument, "n_samples must be >= 3");
  const HollingIVParams p{h10, 0.0, 1.0, 1.0};
  HollingWindowReport rep;
  rep.h10 = h10;
  rep.x_min = p.x_min();
  rep.x_max = p.x_max();
  rep.x_right = p.x_intercept();

  auto fail = [&](const HollingWindowSample& s, const std::string& what) {
    throw Error(ErrorCode::PatternViolation,
                "h10=" + std::to_string(h10) + " x=" + std::to_string(s.branch.x) + " (" +
                    std::string(to_string(s.region)) + "): " + what);
  };

  rep.beta_at_x_min = holling4_hopf_branch(h10, rep.x_min).beta0;
  rep.beta_at_x_max = holling4_hopf_branch(h10, rep.x_max).beta0;

  const std::array<std::pair<double, double>, 3> regions{
      {{0.0, rep.x_min}, {rep.x_min, rep.x_max}, {rep.x_max, rep.x_right}}};
  for (int r = 0; r < 3; ++r) {
    const auto [lo, hi] = regions[static_cast<std::size_t>(r)];
    for (int i = 0; i < n_samples; ++i) {
      HollingWindowSample s;
      s.region = static_cast<WindowRegion>(r);
      const double x = lo + (hi - lo) * (i + 1) / (n_samples + 1);
      s.branch = holling4_hopf_branch(h10, x);
      const auto& b = s.branch;
      switch (s.region) {
        case WindowRegion::Left: s.pattern_ok = b.beta0 < 0.0; break;
        case WindowRegion::Inside: s.pattern_ok = b.y0 > 0.0 && b.delta_eff0 > 0.0 && b.beta0 > 0.0 && b.det > 0.0; break;
        case WindowRegion::Right: s.pattern_ok = b.y0 < 0.0 || b.det <= 0.0; break;
      }
      rep.samples.push_back(s);
      if (!s.pattern_ok) fail(s, "sign pattern violated");
    }
  }
  if (std::abs(rep.beta_at_x_min) > endpoint_tol || std::abs(rep.beta_at_x_max) > endpoint_tol) {
    HollingWindowSample s;
    s.branch = holling4_hopf_branch(h10, rep.x_min);
    fail(s, "beta0 does not vanish at a window endpoint");
  }
  return rep;
}

namespace {

using Vec4 = std::array<double, 4>;

struct BTResidual {
  Vec4 r{};
  double scale = 0.0;
};

// Unknowns (y, delta_eff, beta, h10) at fixed x.
BTResidual bt_residual(const Vec4& u, double x) {
  BTResidual out;
  const double y = u[0], de = u[1], be = u[2], h10 = u[3];
  const double s = 3.0 + h10;
  if (!(s > 0.0)) {
    out.r.fill(kNaN);
    return out;
  }
  const double a = 9.0 / (4.0 * s * s);
  const double h1 = h10 / s;
  const double q = a + x * x;
  const double j11 = 1.0 - 2.0 * x - h1 - y * (a - x * x) / (q * q);
  const double j12 = -x / q;
  const double j21 = be * (y / x) * (y / x);
  const double j22 = de - 2.0 * be * y / x;
  out.r = {(1.0 - h1 - x) * q - y, de - be * y / x, j11 + j22, j11 * j22 - j12 * j21};
  out.scale = std::abs(j11) + std::abs(j12) + std::abs(j21) + std::abs(j22) + std::abs(y);
  return out;
}

double inf_norm(const Vec4& v) {
  double m = 0.0;
  for (double e : v) {
    if (!std::isfinite(e)) return std::numeric_limits<double>::infinity();
    m = std::max(m, std::abs(e));
  }
  return m;
}

// Gaussian elimination with partial pivoting; false when singular.
bool solve4(std::array<Vec4, 4> a, Vec4 b, Vec4& x) {
  for (int c = 0; c < 4; ++c) {
    int piv = c;
    for (int r = c + 1; r < 4; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    }
    if (!(std::abs(a[piv][c]) > 1e-300)) return false;
    std::swap(a[c], a[piv]);
    std::swap(b[c], b[piv]);
    for (int r = c + 1; r < 4; ++r) {
      const double f = a[r][c] / a[c][c];
      for (int k = c; k < 4; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  for (int c = 3; c >= 0; --c) {
    double s = b[c];
    for (int k = c + 1; k < 4; ++k) s -= a[c][k] * x[k];
    x[c] = s / a[c][c];
  }
  return true;
}

std::optional<Vec4> bt_newton(Vec4 u, double x) {
  BTResidual res = bt_residual(u, x);
  double norm = inf_norm(res.r);
  for (int it = 0; it < 100; ++it) {
    if (norm <= 1e-12 * res.scale) return u;
    std::array<Vec4, 4> jac{};
    for (int k = 0; k < 4; ++k) {
      const double h = 1e-7 * (1.0 + std::abs(u[k]));
      Vec4 up = u, dn = u;
      up[k] += h;
      dn[k] -= h;
      const auto rp = bt_residual(up, x).r;
      const auto rm = bt_residual(dn, x).r;
      for (int i = 0; i < 4; ++i) jac[i][k] = (rp[i] - rm[i]) / (2.0 * h);
    }
    Vec4 step{};
    if (!solve4(jac, res.r, step)) return std::nullopt;
    double lambda = 1.0;
    bool accepted = false;
    for (int halving = 0; halving <= 30; ++halving) {
      Vec4 next;
      for (int k = 0; k < 4; ++k) next[k] = u[k] - lambda * step[k];
      const BTResidual nres = bt_residual(next, x);
      const double nnorm = inf_norm(nres.r);
      if (nnorm < norm) {
        u = next;
        res = nres;
        norm = nnorm;
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!accepted) break;
  }
  if (norm <= 1e-12 * res.scale) return u;
  return std::nullopt;
}

}  // namespace

std::vector<HollingBTGridResult> holling4_bt(const std::vector<double>& x0_grid) {
  constexpr std::array<double, 8> kSeedsH10{0.1, 0.3, 1.0, 3.0, 10.0, 30.0, 0.03, 100.0};
  std::vector<HollingBTGridResult> out;
  for (double x0 : x0_grid) {
    HollingBTGridResult res;
    res.x0 = x0;
    std::vector<Vec4> solutions;
    for (double h10 : kSeedsH10) {
      Vec4 seed{0.1, 0.1, 0.1, h10};
      if (x0 > 0.0 && x0 < 3.0 / (3.0 + h10)) {
        try {
          const auto br = holling4_hopf_branch(h10, x0);
          seed = {br.y0, br.delta_eff0, br.beta0, h10};
        } catch (const Error&) {
        }
      }
      auto sol = bt_newton(seed, x0);
      if (!sol) continue;
      ++res.converged;
      const Vec4& u = *sol;
      // beta = delta_eff = 0 with x0 at a critical point of g solves the
      // system trivially; rounding can leave those at +1e-20.
      const double mag = std::max({std::abs(u[0]), std::abs(u[1]), std::abs(u[2]), std::abs(u[3])});
      if (!(std::min({u[0], u[1], u[2], u[3]}) > 1e-9 * mag)) {
        ++res.rejected_nonpositive;
        continue;
      }
      const bool dup = std::any_of(solutions.begin(), solutions.end(), [&](const Vec4& v) {
        return std::abs(v[3] - u[3]) <= 1e-8 * std::max(1.0, std::abs(u[3]));
      });
      if (!dup) solutions.push_back(u);
    }
    if (res.converged == 0) res.failure = "no Newton start converged";
    std::sort(solutions.begin(), solutions.end(), [](const Vec4& a, const Vec4& b) { return a[3] < b[3]; });
    for (const auto& u : solutions) {
      try {
        const ModelInstance inst = ModelInstance::holling_iv({u[3], 0.0, u[1], u[2]});
        BifurcationPoint pt;
        pt.kind = BifurcationKind::BT;
        pt.x_star = x0;
        pt.state = {x0, u[0]};
        pt.param_name = "beta";
        pt.param_value = u[2];
        pt.parameters = inst.parameters();
        pt.spectral = summarize(field_jacobian(inst, pt.state));
        pt.verdict = localize(NullclineProfile(inst), BifurcationKind::BT, x0);
        res.points.push_back(pt);
      } catch (const Error& e) {
        res.failure = e.what();
      }
    }
    out.push_back(std::move(res));
  }
  return out;
}

// --- Generic loci ----------------------------------------------------------

std::vector<BifurcationPoint> hopf_locus(const ModelInstance& m, std::string_view free_param,
                                         const LocusOptions& opt) {
  const auto [lo, hi] = prey_range(m, opt);
  const NullclineProfile profile = reference_profile(m);
  std::vector<BifurcationPoint> out;
  for (double x : interior_grid(lo, hi, opt.x_panels)) {
    if (auto pt = hopf_at(m, free_param, x, opt, &profile)) out.push_back(*pt);
  }
  return out;
}

std::vector<BifurcationPoint> bt_locus(const ModelInstance& m, std::string_view free_param,
                                       const LocusOptions& opt) {
  const auto [lo, hi] = prey_range(m, opt);
  // det along the trace-zero curve, whatever its sign.
  const NullclineProfile profile = reference_profile(m);
  auto det_on_locus = [&](double x) {
    auto ps = trace_zero_params(m, free_param, x, opt);
    if (ps.empty()) return kNaN;
    auto inst = conditioned(m, free_param, ps.front(), x);
    if (!inst) return kNaN;
    return field_jacobian(*inst, {x, prey_nullcline(*inst, x).g}).det();
  };
  std::vector<BifurcationPoint> out;
  for (auto [blo, bhi] : roots::sign_change_brackets(det_on_locus, lo + (hi - lo) / opt.x_panels,
                                                     hi - (hi - lo) / opt.x_panels, opt.x_panels - 2)) {
    const double x = roots::bisect(det_on_locus, blo, bhi);
    auto ps = trace_zero_params(m, free_param, x, opt);
    if (ps.empty()) continue;
    auto inst = conditioned(m, free_param, ps.front(), x);
    if (!inst) continue;
    if (auto pt = try_point(BifurcationKind::BT, *inst, free_param, x, &profile)) out.push_back(*pt);
  }
  return out;
}

std::vector<BifurcationPoint> ns_locus(const ModelInstance& m, std::string_view free_param,
                                       const LocusOptions& opt) {
  if (!is_map(m.family())) throw Error(ErrorCode::InvalidArgument, "ns_locus needs the discrete family");
  if (free_param != "c" && free_param != "rho" && free_param != "d") {
    throw Error(ErrorCode::InvalidArgument, "ns_locus free parameter must be c, rho or d");
  }
  const auto [lo, hi] = prey_range(m, opt);
  const NullclineProfile profile = reference_profile(m);
  std::vector<BifurcationPoint> out;
  for (double x : interior_grid(lo, hi, opt.x_panels)) {
    auto f = [&](double v) {
      auto inst = conditioned(m, free_param, v, x);
      if (!inst) return kNaN;
      return jacobian(*inst, {x, prey_nullcline(*inst, x).g}).det() - 1.0;
    };
    const auto [plo, phi] = param_range(m, free_param, x, opt);
    for (auto [blo, bhi] : roots::log_sign_change_brackets(f, plo, phi, opt.param_panels)) {
      const double v = roots::bisect(f, blo, bhi, 0.0, 1e-12);
      auto inst = conditioned(m, free_param, v, x);
      if (!inst) continue;
      auto pt = try_point(BifurcationKind::NeimarkSacker, *inst, free_param, x, &profile);
      if (pt && std::abs(pt->spectral.trace) < 2.0) out.push_back(*pt);
    }
  }
  return out;
}

// --- Transversality --------------------------------------------------------

double hopf_transversality(const std::function<SpectralSummary(double)>& spectrum_at, double value,
                           bool modulus) {
  const double h = 1e-5 * (1.0 + std::abs(value));
  auto metric = [&](double v) {
    const SpectralSummary s = spectrum_at(v);
    return modulus ? max_modulus(s) : max_real(s);
  };
  const double deriv = (metric(value + h) - metric(value - h)) / (2.0 * h);
  if (!(std::abs(deriv) >= 1e-8)) {
    throw Error(ErrorCode::DegenerateCrossing, "eigenvalues do not cross: derivative " + std::to_string(deriv));
  }
  return deriv;
}

double hopf_transversality(const BifurcationPoint& point, const ModelInstance& m) {
  auto spectrum_at = [&](double v) {
    const ModelInstance inst = m.with_parameter(point.param_name, v);
    auto s = refine_equilibrium(inst, point.state);
    if (!s) throw Error(ErrorCode::NoConvergence, "equilibrium lost near the bifurcation value");
    return summarize(is_map(m.family()) ? jacobian(inst, *s) : field_jacobian(inst, *s));
  };
  return hopf_transversality(spectrum_at, point.param_value, is_map(m.family()));
}

}  // namespace ppbif
