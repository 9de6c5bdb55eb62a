#include "ppbif/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ppbif/equilibria.hpp"
#include "ppbif/error.hpp"
#include "ppbif/spectral.hpp"

namespace ppbif {

namespace {

constexpr double kOverflow = 1e12;

bool finite_state(PlanarState s) {
  return std::isfinite(s.x) && std::isfinite(s.y) && std::abs(s.x) < kOverflow && std::abs(s.y) < kOverflow;
}

void clip(Trajectory& t, PlanarState& s) {
  for (double* v : {&s.x, &s.y}) {
    if (*v < 0.0) {
      t.clipped = true;
      t.max_undershoot = std::max(t.max_undershoot, -*v);
      *v = 0.0;
    }
  }
}

PlanarState axpy(PlanarState s, double h, Vec2 k) { return {s.x + h * k.dx, s.y + h * k.dy}; }

// Least-squares slope of v against t.
double slope(const std::vector<double>& t, const std::vector<double>& v) {
  const double n = static_cast<double>(t.size());
  if (t.size() < 2) return 0.0;
  double mt = 0.0, mv = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    mt += t[i];
    mv += v[i];
  }
  mt /= n;
  mv /= n;
  double stt = 0.0, stv = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    stt += (t[i] - mt) * (t[i] - mt);
    stv += (t[i] - mt) * (v[i] - mv);
  }
  return stt > 0.0 ? stv / stt : 0.0;
}

}  // namespace

std::string_view to_string(OrbitKind k) {
  switch (k) {
    case OrbitKind::ConvergesToEquilibrium: return "ConvergesToEquilibrium";
    case OrbitKind::LimitCycle: return "LimitCycle";
    case OrbitKind::InvariantCircle: return "InvariantCircle";
    case OrbitKind::Divergent: return "Divergent";
    case OrbitKind::Undetermined: return "Undetermined";
  }
  return "?";
}

Trajectory integrate_flow(const ModelInstance& m, PlanarState s0, double t_end, double dt, std::size_t record_every) {
  if (is_map(m.family())) throw Error(ErrorCode::InvalidArgument, "integrate_flow needs a flow family");
  if (!(dt > 0.0) || !(t_end > 0.0)) throw Error(ErrorCode::InvalidArgument, "dt and t_end must be > 0");
  if (record_every == 0) record_every = 1;
  const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
  const double h = t_end / static_cast<double>(steps);

  Trajectory tr;
  tr.step = h;
  tr.method_order = 4;
  tr.times.reserve(steps / record_every + 2);
  tr.states.reserve(steps / record_every + 2);
  tr.times.push_back(0.0);
  tr.states.push_back(s0);

  PlanarState s = s0;
  for (std::size_t i = 1; i <= steps; ++i) {
    const Vec2 k1 = vector_field(m, s);
    const Vec2 k2 = vector_field(m, axpy(s, 0.5 * h, k1));
    const Vec2 k3 = vector_field(m, axpy(s, 0.5 * h, k2));
    const Vec2 k4 = vector_field(m, axpy(s, h, k3));
    PlanarState next{s.x + h / 6.0 * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx),
                     s.y + h / 6.0 * (k1.dy + 2.0 * k2.dy + 2.0 * k3.dy + k4.dy)};
    if (!finite_state(next)) {
      tr.diverged = true;
      break;
    }
    clip(tr, next);
    s = next;
    if (i % record_every == 0 || i == steps) {
      tr.times.push_back(h * static_cast<double>(i));
      tr.states.push_back(s);
    }
  }
  return tr;
}

Trajectory iterate_map(const ModelInstance& m, PlanarState s0, std::size_t n, std::size_t record_every) {
  if (!is_map(m.family())) throw Error(ErrorCode::InvalidArgument, "iterate_map needs the discrete family");
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "iteration count must be >= 1");
  if (record_every == 0) record_every = 1;
  Trajectory tr;
  tr.step = 1.0;
  tr.method_order = 1;
  tr.is_map = true;
  tr.times.push_back(0.0);
  tr.states.push_back(s0);
  PlanarState s = s0;
  for (std::size_t i = 1; i <= n; ++i) {
    PlanarState next = map_step(m, s);
    if (!finite_state(next)) {
      tr.diverged = true;
      break;
    }
    clip(tr, next);
    s = next;
    if (i % record_every == 0 || i == n) {
      tr.times.push_back(static_cast<double>(i));
      tr.states.push_back(s);
    }
  }
  return tr;
}

OscillationVerdict classify_orbit(const Trajectory& traj, PlanarState ref) {
  const std::size_t n = traj.states.size();
  const std::size_t start = n / 2;
  OscillationVerdict v;
  if (traj.diverged) {
    v.kind = OrbitKind::Divergent;
    return v;
  }
  if (n - start < 1000) {
    throw Error(ErrorCode::InsufficientSamples,
                "need 1000 samples after the transient, have " + std::to_string(n - start));
  }
  const double ref_scale = 1.0 + std::abs(ref.x) + std::abs(ref.y);

  double r_max = 0.0, x_lo = traj.states[start].x, x_hi = x_lo;
  std::vector<double> ts, logs;
  for (std::size_t i = start; i < n; ++i) {
    const auto s = traj.states[i];
    if (!std::isfinite(s.x) || !std::isfinite(s.y)) {
      v.kind = OrbitKind::Divergent;
      return v;
    }
    const double r = std::hypot(s.x - ref.x, s.y - ref.y);
    r_max = std::max(r_max, r);
    x_lo = std::min(x_lo, s.x);
    x_hi = std::max(x_hi, s.x);
    if (r > 1e-13 * ref_scale) {
      ts.push_back(traj.times[i]);
      logs.push_back(std::log(r));
    }
  }
  v.amplitude = 0.5 * (x_hi - x_lo);
  if (r_max > 1e6 * ref_scale) {
    v.kind = OrbitKind::Divergent;
    return v;
  }
  if (r_max <= 1e-10 * ref_scale) {
    v.kind = OrbitKind::ConvergesToEquilibrium;
    v.decay_rate = slope(ts, logs);
    return v;
  }

  // Section x = ref.x, crossings with x increasing.
  std::vector<double> ct, cd;
  for (std::size_t i = start + 1; i < n; ++i) {
    const auto a = traj.states[i - 1];
    const auto b = traj.states[i];
    if (a.x < ref.x && b.x >= ref.x) {
      const double f = (ref.x - a.x) / (b.x - a.x);
      const double t = traj.times[i - 1] + f * (traj.times[i] - traj.times[i - 1]);
      const double y = a.y + f * (b.y - a.y);
      ct.push_back(t);
      cd.push_back(std::abs(y - ref.y));
    }
  }
  v.section_returns = ct.size() > 0 ? static_cast<int>(ct.size()) - 1 : 0;
  if (ct.size() >= 2) v.period_estimate = (ct.back() - ct.front()) / static_cast<double>(ct.size() - 1);

  std::vector<double> st, sl;
  for (std::size_t i = 0; i < ct.size(); ++i) {
    if (cd[i] > 1e-12 * ref_scale) {
      st.push_back(ct[i]);
      sl.push_back(std::log(cd[i]));
    }
  }
  v.decay_rate = st.size() >= 6 ? slope(st, sl) : slope(ts, logs);

  if (v.decay_rate < -1e-4) {
    v.kind = OrbitKind::ConvergesToEquilibrium;
    return v;
  }
  int run = 0, best_run = 0;
  for (std::size_t i = 1; i < cd.size(); ++i) {
    const double ratio = cd[i - 1] > 0.0 ? cd[i] / cd[i - 1] : 0.0;
    run = ratio > 0.5 && ratio < 1.5 ? run + 1 : 0;
    best_run = std::max(best_run, run);
  }
  if (best_run >= 5 && v.amplitude > 1e-6) {
    v.kind = traj.is_map ? OrbitKind::InvariantCircle : OrbitKind::LimitCycle;
    return v;
  }
  v.kind = OrbitKind::Undetermined;
  return v;
}

double characteristic_dt(const ModelInstance& m, PlanarState eq) {
  const SpectralSummary s = summarize(field_jacobian(m, eq));
  const double lam = std::max(std::abs(s.lambda1), std::abs(s.lambda2));
  if (!(lam > 0.0) || !std::isfinite(lam)) return 1e-2;
  return std::clamp(1e-3 / lam, 1e-4, 1e-2);
}

CrossingProbe probe_crossing(const BifurcationPoint& point, const ModelInstance& m, double rel_offset) {
  CrossingProbe probe;
  probe.transversality = hopf_transversality(point, m);
  const bool map = is_map(m.family());
  constexpr std::size_t kStored = 40000;

  auto run_side = [&](double factor) {
    SideProbe side;
    side.param_value = point.param_value * factor;
    const ModelInstance inst = m.with_parameter(point.param_name, side.param_value);
    auto eq = refine_equilibrium(inst, point.state);
    if (!eq) throw Error(ErrorCode::NoConvergence, "equilibrium lost at the probe parameter");
    side.equilibrium = *eq;
    const PlanarState s0{eq->x + std::min(1e-3, 0.1 * eq->x), eq->y};
    const SpectralSummary spec = summarize(jacobian(inst, *eq));
    const double rot = std::abs(std::arg(spec.lambda1));
    if (map) {
      const double rate = std::max(std::abs(std::log(std::max(std::abs(spec.lambda1), std::abs(spec.lambda2)))), 1e-6);
      const double turns = rot > 0.0 ? 2.0 * std::numbers::pi / rot : 10.0;
      const auto n = static_cast<std::size_t>(std::clamp(std::max(25.0 / rate, 200.0 * turns), 4000.0, 5e6));
      const auto trj = iterate_map(inst, s0, n, std::max<std::size_t>(1, n / kStored));
      side.verdict = classify_orbit(trj, *eq);
    } else {
      const double rate = std::max(std::abs(std::max(spec.lambda1.real(), spec.lambda2.real())), 1e-6);
      const double period = std::abs(spec.lambda1.imag()) > 0.0 ? 2.0 * std::numbers::pi / std::abs(spec.lambda1.imag())
                                                                 : 1.0;
      const double dt = characteristic_dt(inst, *eq);
      const double t_end = std::min(std::max(25.0 / rate, 200.0 * period), 2e7 * dt);
      const auto steps = static_cast<std::size_t>(t_end / dt);
      const auto trj = integrate_flow(inst, s0, t_end, dt, std::max<std::size_t>(1, steps / kStored));
      side.verdict = classify_orbit(trj, *eq);
    }
    return side;
  };

  probe.below = run_side(1.0 - rel_offset);
  probe.above = run_side(1.0 + rel_offset);
  auto oscillates = [](const OscillationVerdict& v) {
    return v.kind == OrbitKind::LimitCycle || v.kind == OrbitKind::InvariantCircle;
  };
  auto converges = [](const OscillationVerdict& v) { return v.kind == OrbitKind::ConvergesToEquilibrium; };
  probe.flips = (converges(probe.below.verdict) && oscillates(probe.above.verdict)) ||
                (oscillates(probe.below.verdict) && converges(probe.above.verdict));
  probe.side_matches = probe.flips && ((probe.transversality > 0.0) == oscillates(probe.above.verdict));
  return probe;
}

}  // namespace ppbif
