#include "ppbif/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ppbif/error.hpp"
#include "ppbif/roots.hpp"

namespace ppbif {

namespace {

// Predator nullcline value without the positivity filter. Roots of
// g(x) - p(x) can only occur where p(x) = g(x) > 0.
double predator_nullcline_signed(const ModelInstance& m, double x) {
  switch (m.family()) {
    case ModelFamily::Bazykin: {
      const auto& p = m.bazykin_params();
      return (p.e * p.a * x / (x + p.b) - p.d) / p.sigma;
    }
    case ModelFamily::HollingIV: {
      const auto& p = m.holling_params();
      return p.delta_eff() * x / p.beta;
    }
    case ModelFamily::CrowleyMartin:
    case ModelFamily::DiscreteCrowleyMartin: {
      const auto& p = m.cm_params();
      return (p.gamma * p.a * x / (p.d * (1.0 + p.b * x)) - 1.0) / p.c;
    }
  }
  return 0.0;
}

double inf_norm(Vec2 v) { return std::max(std::abs(v.dx), std::abs(v.dy)); }

Equilibrium make_equilibrium(const ModelInstance& m, const NullclineProfile& profile, PlanarState s) {
  Equilibrium eq;
  eq.state = s;
  eq.residual_norm = inf_norm(vector_field(m, s));
  eq.residual_scale = residual_scale(m, s);
  eq.branch = branch_of(profile, s.x);
  eq.cell = profile.cell_index(s.x);
  return eq;
}

// Newton on the full field, accepting steps only while the residual drops.
PlanarState newton_polish(const ModelInstance& m, PlanarState s) {
  double best = inf_norm(vector_field(m, s));
  for (int i = 0; i < 4 && best > 0.0; ++i) {
    const Vec2 f = vector_field(m, s);
    const Matrix2 j = field_jacobian(m, s);
    const double det = j.det();
    if (det == 0.0 || !std::isfinite(det)) break;
    PlanarState next{s.x - (j.m22 * f.dx - j.m12 * f.dy) / det, s.y - (-j.m21 * f.dx + j.m11 * f.dy) / det};
    if (!(next.x > 0.0 && next.y > 0.0)) break;
    const double r = inf_norm(vector_field(m, next));
    if (!(r < best)) break;
    best = r;
    s = next;
  }
  return s;
}

std::optional<Equilibrium> polish_root(const ModelInstance& m, const NullclineProfile& profile, double lo,
                                       double hi) {
  auto r = [&](double x) { return prey_nullcline(m, x).g - predator_nullcline_signed(m, x); };
  const double x = roots::bisect(r, lo, hi, 0.0, 0.0);
  if (!(x > 0.0) || !profile.contains(x)) return std::nullopt;
  const double g = prey_nullcline(m, x).g;
  const double p = predator_nullcline_signed(m, x);
  if (!(g > 0.0) || !(p > 0.0)) return std::nullopt;
  PlanarState best{x, g};
  if (inf_norm(vector_field(m, {x, p})) < inf_norm(vector_field(m, best))) best = {x, p};
  best = newton_polish(m, best);
  return make_equilibrium(m, profile, best);
}

}  // namespace

std::optional<double> predator_nullcline_y(const ModelInstance& m, double x) {
  if (!(x > 0.0)) return std::nullopt;
  if ((m.family() == ModelFamily::CrowleyMartin || m.family() == ModelFamily::DiscreteCrowleyMartin) &&
      m.cm_params().c == 0.0) {
    return std::nullopt;
  }
  const double y = predator_nullcline_signed(m, x);
  if (!(y > 0.0) || !std::isfinite(y)) return std::nullopt;
  return y;
}

std::vector<Equilibrium> find_coexistence_equilibria(const ModelInstance& m) {
  return find_coexistence_equilibria(m, NullclineProfile(m));
}

std::vector<Equilibrium> find_coexistence_equilibria(const ModelInstance& m, const NullclineProfile& profile) {
  std::vector<Equilibrium> found;

  const bool cm = m.family() == ModelFamily::CrowleyMartin || m.family() == ModelFamily::DiscreteCrowleyMartin;
  if (cm && m.cm_params().c == 0.0) {
    // Vertical predator nullcline gamma a x / (1 + b x) = d.
    const auto& p = m.cm_params();
    const double denom = p.gamma * p.a - p.d * p.b;
    if (denom > 0.0) {
      const double x = p.d / denom;
      if (profile.contains(x) && x > 0.0) {
        const double g = prey_nullcline(m, x).g;
        if (g > 0.0) found.push_back(make_equilibrium(m, profile, newton_polish(m, {x, g})));
      }
    }
    return found;
  }

  const double width = profile.x_hi() - profile.x_lo();
  const double lo = profile.lo_open() ? profile.x_lo() + 1e-12 * width : profile.x_lo();
  const double hi = profile.x_hi();
  auto r = [&](double x) { return prey_nullcline(m, x).g - predator_nullcline_signed(m, x); };

  int panels = 512;
  auto brackets = roots::sign_change_brackets(r, lo, hi, panels);
  for (std::size_t i = 1; i < brackets.size(); ++i) {
    if (brackets[i].first - brackets[i - 1].second < 4.0 * (hi - lo) / panels) {
      panels = 4096;
      brackets = roots::sign_change_brackets(r, lo, hi, panels);
      break;
    }
  }

  for (auto [blo, bhi] : brackets) {
    auto eq = polish_root(m, profile, blo, bhi);
    if (!eq) continue;
    if (eq->residual_norm > 1e-10 * eq->residual_scale) continue;
    found.push_back(*eq);
  }

  std::sort(found.begin(), found.end(),
            [](const Equilibrium& a, const Equilibrium& b) { return a.state.x < b.state.x; });
  std::vector<Equilibrium> merged;
  for (const auto& eq : found) {
    if (!merged.empty() && std::abs(eq.state.x - merged.back().state.x) <= 1e-9) {
      if (eq.residual_norm < merged.back().residual_norm) merged.back() = eq;
      continue;
    }
    merged.push_back(eq);
  }
  return merged;
}

std::vector<PlanarState> boundary_equilibria(const ModelInstance& m) {
  switch (m.family()) {
    case ModelFamily::Bazykin: return {{0.0, 0.0}, {m.bazykin_params().k, 0.0}};
    case ModelFamily::HollingIV: return {{m.holling_params().x_intercept(), 0.0}};
    case ModelFamily::CrowleyMartin:
    case ModelFamily::DiscreteCrowleyMartin: return {{0.0, 0.0}, {m.cm_params().k, 0.0}};
  }
  return {};
}

ModelInstance condition_on_cep(const ModelInstance& m, double x) {
  const double y = prey_nullcline(m, x).g;
  bool ok = x > 0.0 && std::isfinite(y) && y > 0.0;
  if (ok && (m.family() == ModelFamily::CrowleyMartin || m.family() == ModelFamily::DiscreteCrowleyMartin)) {
    const auto& p = m.cm_params();
    ok = p.a - p.c * p.h(x) > 0.0;
  }
  if (!ok) {
    throw Error(ErrorCode::NullclineNonpositive,
                "prey nullcline is not positive at x=" + std::to_string(x));
  }
  switch (m.family()) {
    case ModelFamily::Bazykin: {
      const auto& p = m.bazykin_params();
      return m.with_parameter("e", (p.d + p.sigma * y) * (x + p.b) / (p.a * x));
    }
    case ModelFamily::HollingIV: {
      const auto& p = m.holling_params();
      return m.with_parameter("delta", p.beta * y / x + p.h2);
    }
    case ModelFamily::CrowleyMartin:
    case ModelFamily::DiscreteCrowleyMartin: {
      const auto& p = m.cm_params();
      return m.with_parameter("gamma", p.d * (1.0 + p.b * x) * (1.0 + p.c * y) / (p.a * x));
    }
  }
  return m;
}

std::optional<PlanarState> refine_equilibrium(const ModelInstance& m, PlanarState s, int max_iter) {
  for (int i = 0; i < max_iter; ++i) {
    const Vec2 f = vector_field(m, s);
    const double scale = residual_scale(m, s);
    if (inf_norm(f) <= 1e-13 * std::max(scale, 1e-300)) return s;
    const Matrix2 j = field_jacobian(m, s);
    const double det = j.det();
    if (det == 0.0 || !std::isfinite(det)) return std::nullopt;
    PlanarState next{s.x - (j.m22 * f.dx - j.m12 * f.dy) / det, s.y - (-j.m21 * f.dx + j.m11 * f.dy) / det};
    // Damp steps that would leave the open quadrant.
    double lambda = 1.0;
    while ((next.x <= 0.0 || next.y <= 0.0) && lambda > 1e-6) {
      lambda *= 0.5;
      next = {s.x - lambda * (j.m22 * f.dx - j.m12 * f.dy) / det,
              s.y - lambda * (-j.m21 * f.dx + j.m11 * f.dy) / det};
    }
    if (next.x <= 0.0 || next.y <= 0.0 || !std::isfinite(next.x) || !std::isfinite(next.y)) return std::nullopt;
    if (std::abs(next.x - s.x) <= 1e-15 * s.x && std::abs(next.y - s.y) <= 1e-15 * s.y) return next;
    s = next;
  }
  const double r = inf_norm(vector_field(m, s));
  if (r <= 1e-10 * residual_scale(m, s)) return s;
  return std::nullopt;
}

}  // namespace ppbif
