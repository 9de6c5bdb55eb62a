#include "ppbif/nullcline.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ppbif/error.hpp"
#include "ppbif/roots.hpp"

namespace ppbif {

std::string_view to_string(Branch b) {
  switch (b) {
    case Branch::Ascending: return "ascending";
    case Branch::Descending: return "descending";
    case Branch::Critical: return "critical";
  }
  return "?";
}

std::string_view to_string(CriticalKind k) { return k == CriticalKind::LocalMin ? "LocalMin" : "LocalMax"; }

std::string_view to_string(NullclineDegree d) {
  switch (d) {
    case NullclineDegree::Quadratic: return "quadratic";
    case NullclineDegree::Cubic: return "cubic";
    case NullclineDegree::Rational: return "rational";
  }
  return "?";
}

NullclineJet prey_nullcline(const ModelInstance& m, double x) {
  switch (m.family()) {
    case ModelFamily::Bazykin: {
      const auto& p = m.bazykin_params();
      const double s = p.r / (p.a * p.k);
      return {s * (p.k - x) * (p.b + x), s * (p.k - p.b - 2.0 * x), -2.0 * s};
    }
    case ModelFamily::HollingIV: {
      const auto& p = m.holling_params();
      const double A = 1.0 - p.h1();
      const double a = p.a();
      return {(A - x) * (a + x * x), -3.0 * x * x + 2.0 * A * x - a, -6.0 * x + 2.0 * A};
    }
    case ModelFamily::CrowleyMartin:
    case ModelFamily::DiscreteCrowleyMartin: {
      const auto& p = m.cm_params();
      const double h = p.h(x);
      const double dh = p.rho * (p.b - 1.0 / p.k - 2.0 * p.b * x / p.k);
      const double d2h = -2.0 * p.rho * p.b / p.k;
      const double den = p.a - p.c * h;
      return {h / den, p.a * dh / (den * den),
              p.a * d2h / (den * den) + 2.0 * p.a * p.c * dh * dh / (den * den * den)};
    }
  }
  return {};
}

namespace {

struct Domain {
  double lo;
  double hi;
  bool lo_open;
};

Domain admissible_domain(const ModelInstance& m) {
  switch (m.family()) {
    case ModelFamily::Bazykin: return {0.0, m.bazykin_params().k, false};
    case ModelFamily::HollingIV: return {0.0, m.holling_params().x_intercept(), false};
    case ModelFamily::CrowleyMartin:
    case ModelFamily::DiscreteCrowleyMartin: {
      const auto& p = m.cm_params();
      if (p.c == 0.0 || p.a - p.c * p.h(p.vertex()) > 0.0) return {0.0, p.k, false};
      // c h(x) = a has two roots in (0, k); keep the component next to x = k.
      // rho (1 - x/k)(1 + b x) = a/c  <=>  (rho b/k) x^2 - rho (b - 1/k) x + (a/c - rho) = 0
      const double qa = p.rho * p.b / p.k;
      const double qb = -p.rho * (p.b - 1.0 / p.k);
      const double qc = p.a / p.c - p.rho;
      const double disc = std::max(0.0, qb * qb - 4.0 * qa * qc);
      const double right = (-qb + std::sqrt(disc)) / (2.0 * qa);
      return {right, p.k, true};
    }
  }
  return {0.0, 1.0, false};
}

std::vector<CriticalPoint> closed_form_critical(const ModelInstance& m, const Domain& dom) {
  std::vector<std::pair<double, CriticalKind>> raw;
  switch (m.family()) {
    case ModelFamily::Bazykin: raw.emplace_back(m.bazykin_params().vertex(), CriticalKind::LocalMax); break;
    case ModelFamily::HollingIV:
      raw.emplace_back(m.holling_params().x_min(), CriticalKind::LocalMin);
      raw.emplace_back(m.holling_params().x_max(), CriticalKind::LocalMax);
      break;
    case ModelFamily::CrowleyMartin:
    case ModelFamily::DiscreteCrowleyMartin:
      raw.emplace_back(m.cm_params().vertex(), CriticalKind::LocalMax);
      break;
  }

  std::vector<CriticalPoint> out;
  for (auto [x, kind] : raw) {
    if (!(x > dom.lo && x < dom.hi)) continue;
    auto dg = [&](double t) { return prey_nullcline(m, t).dg; };
    const double lo = std::max(x - 1e-6, dom.lo + 0.5 * (x - dom.lo));
    const double hi = std::min(x + 1e-6, dom.hi - 0.5 * (dom.hi - x));
    const double glo = dg(lo);
    const double ghi = dg(hi);
    if (!(glo * ghi <= 0.0)) {
      throw Error(ErrorCode::NoConvergence,
                  "g' has no sign change around the closed-form critical point x=" + std::to_string(x));
    }
    const bool is_max = glo > 0.0;
    if (is_max != (kind == CriticalKind::LocalMax)) {
      throw Error(ErrorCode::NoConvergence, "critical point kind disagrees with the sign change of g'");
    }
    double root = roots::bisect(dg, lo, hi, 0.0, 1e-9);
    for (int i = 0; i < 20; ++i) {
      const auto jet = prey_nullcline(m, root);
      if (jet.d2g == 0.0) break;
      const double step = jet.dg / jet.d2g;
      root -= step;
      if (std::abs(step) <= 1e-12 * std::max(1.0, std::abs(root))) break;
    }
    if (std::abs(root - x) > 1e-9 * std::abs(x)) {
      throw Error(ErrorCode::NoConvergence, "polished root of g' disagrees with the closed form");
    }
    out.push_back({x, kind, prey_nullcline(m, x).g, root});
  }
  return out;
}

}  // namespace

std::vector<CriticalPoint> critical_points(const ModelInstance& m) {
  return closed_form_critical(m, admissible_domain(m));
}

NullclineProfile::NullclineProfile(const ModelInstance& m) : model_(m) {
  const Domain dom = admissible_domain(m);
  x_lo_ = dom.lo;
  x_hi_ = dom.hi;
  lo_open_ = dom.lo_open;
  switch (m.family()) {
    case ModelFamily::Bazykin: degree_ = NullclineDegree::Quadratic; break;
    case ModelFamily::HollingIV: degree_ = NullclineDegree::Cubic; break;
    default: degree_ = NullclineDegree::Rational; break;
  }
  critical_ = closed_form_critical(m, dom);

  // Away from a pole endpoint g' is bounded; skip the first percent there.
  const double start = lo_open_ ? x_lo_ + 0.01 * (x_hi_ - x_lo_) : x_lo_;
  double scale = 0.0;
  constexpr int kSamples = 256;
  for (int i = 0; i <= kSamples; ++i) {
    const double x = start + (x_hi_ - start) * i / kSamples;
    scale = std::max(scale, std::abs(prey_nullcline(m, x).dg));
  }
  slope_scale_ = scale > 0.0 ? scale : 1.0;

  std::vector<double> edges{x_lo_};
  for (const auto& cp : critical_) edges.push_back(cp.x);
  edges.push_back(x_hi_);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double mid = 0.5 * (edges[i] + edges[i + 1]);
    const double slope = prey_nullcline(m, mid).dg;
    cells_.push_back({edges[i], edges[i + 1], slope > 0.0 ? Branch::Ascending : Branch::Descending});
  }
}

bool NullclineProfile::contains(double x) const {
  if (!std::isfinite(x)) return false;
  if (lo_open_ ? x <= x_lo_ : x < x_lo_) return false;
  return x <= x_hi_;
}

std::size_t NullclineProfile::cell_index(double x) const {
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (x <= cells_[i].hi) return i;
  }
  return cells_.size() - 1;
}

double NullclineProfile::value(double x) const { return nullcline_value(*this, x); }

double NullclineProfile::derivative(double x) const {
  if (!contains(x)) throw Error(ErrorCode::OutOfDomain, "x=" + std::to_string(x) + " outside the prey interval");
  return prey_nullcline(model_, x).dg;
}

double nullcline_value(const NullclineProfile& profile, double x) {
  if (!profile.contains(x)) {
    throw Error(ErrorCode::OutOfDomain, "x=" + std::to_string(x) + " outside the admissible prey interval");
  }
  const double g = prey_nullcline(profile.model(), x).g;
  if (!std::isfinite(g) || g < 0.0) {
    throw Error(ErrorCode::OutOfDomain, "x=" + std::to_string(x) + " lies in the pole region a - c h(x) <= 0");
  }
  return g;
}

Branch branch_of(const NullclineProfile& profile, double x) {
  const double slope = profile.derivative(x);
  if (std::abs(slope) <= 1e-10 * profile.slope_scale()) return Branch::Critical;
  return slope > 0.0 ? Branch::Ascending : Branch::Descending;
}

}  // namespace ppbif
