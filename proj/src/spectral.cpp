#include "ppbif/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ppbif/equilibria.hpp"
#include "ppbif/error.hpp"
#include "ppbif/roots.hpp"

namespace ppbif {

double SpectralSummary::scale() const {
  return std::abs(jac.m11) + std::abs(jac.m12) + std::abs(jac.m21) + std::abs(jac.m22);
}

SpectralSummary summarize(const Matrix2& j) {
  SpectralSummary s;
  s.jac = j;
  s.trace = j.trace();
  s.det = j.det();
  s.discriminant = s.trace * s.trace - 4.0 * s.det;
  s.degenerate = std::abs(s.discriminant) <= 1e-14 * s.trace * s.trace;
  if (s.discriminant >= 0.0) {
    const double root = std::sqrt(s.discriminant);
    if (s.trace == 0.0) {
      s.lambda1 = 0.5 * root;
      s.lambda2 = -0.5 * root;
    } else {
      // Avoid cancellation in the smaller root.
      const double big = 0.5 * (s.trace + std::copysign(root, s.trace));
      s.lambda1 = big;
      s.lambda2 = big != 0.0 ? s.det / big : 0.0;
    }
  } else {
    const double im = 0.5 * std::sqrt(-s.discriminant);
    s.lambda1 = {0.5 * s.trace, im};
    s.lambda2 = {0.5 * s.trace, -im};
  }
  return s;
}

SpectralSummary spectral_summary(const ModelInstance& m, PlanarState s) { return summarize(jacobian(m, s)); }

NullclineTrace trace_on_nullcline(const ModelInstance& m, double x) {
  NullclineProfile profile(m);
  const double y = nullcline_value(profile, x);
  if (!(y > 0.0)) throw Error(ErrorCode::OutOfDomain, "g(x) <= 0 at x=" + std::to_string(x));
  const ModelInstance conditioned = condition_on_cep(m, x);

  NullclineTrace out;
  out.state = {x, y};
  out.conditioned_value = conditioned.param(conditioning_parameter(m.family()));
  const Matrix2 j = field_jacobian(conditioned, out.state);
  out.prey_part = j.m11;
  if (m.family() == ModelFamily::CrowleyMartin || m.family() == ModelFamily::DiscreteCrowleyMartin) {
    // c g/(1 + c g) = c h/a on the nullcline.
    const auto& p = m.cm_params();
    out.predator_part = -p.d * p.c * p.h(x) / p.a;
  } else {
    out.predator_part = j.m22;
  }
  if (is_map(m.family())) {
    out.prey_part += 1.0;
    out.predator_part += 1.0;
  }
  out.trace = out.prey_part + out.predator_part;
  return out;
}

RigidityReport rigidity_report(const ModelInstance& m, const CriticalPoint& cp, std::span<const double> samples,
                               std::string parameter_name, double tol) {
  if (parameter_name.empty()) parameter_name = std::string(default_free_parameter(m.family()));
  RigidityReport rep;
  rep.location = cp;
  rep.parameter_name = parameter_name;
  rep.is_map = is_map(m.family());
  rep.max_field_trace = -std::numeric_limits<double>::infinity();
  rep.min_field_det = std::numeric_limits<double>::infinity();

  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());

  bool all_blocked = true;
  bool all_ns_blocked = true;
  int used = 0;
  for (double p : sorted) {
    RigiditySample smp;
    smp.parameter = p;
    try {
      const ModelInstance inst = condition_on_cep(m.with_parameter(parameter_name, p), cp.x);
      const PlanarState s{cp.x, prey_nullcline(inst, cp.x).g};
      const Matrix2 j = field_jacobian(inst, s);
      const SpectralSummary field = summarize(j);
      smp.prey_entry = j.m11;
      smp.field_trace = field.trace;
      smp.field_det = field.det;
      smp.scale = field.scale();
      smp.map_det = summarize(jacobian(inst, s)).det;
      if (!(inst.param(conditioning_parameter(m.family())) > 0.0)) {
        smp.skipped = true;
        smp.reason = "conditioned parameter is not positive";
      }
    } catch (const Error& e) {
      smp.skipped = true;
      smp.reason = e.what();
    }
    if (!smp.skipped) {
      ++used;
      rep.max_abs_prey_entry = std::max(rep.max_abs_prey_entry, std::abs(smp.prey_entry));
      rep.max_field_trace = std::max(rep.max_field_trace, smp.field_trace);
      rep.min_field_det = std::min(rep.min_field_det, smp.field_det);
      if (!(smp.field_trace < -tol * smp.scale)) all_blocked = false;
      if (!(std::abs(smp.map_det - 1.0) > tol)) all_ns_blocked = false;
    }
    rep.samples.push_back(std::move(smp));
  }
  if (used == 0) {
    throw Error(ErrorCode::NoCEPAtCriticalPoint,
                "no sampled " + parameter_name + " admits a coexistence equilibrium at x=" + std::to_string(cp.x));
  }
  rep.hopf_blocked = all_blocked;
  rep.ns_blocked = rep.is_map && all_ns_blocked;

  if (rep.is_map && parameter_name == "c") {
    // Scan the admissible c range for det_map = 1 at the critical point.
    const auto& p = m.cm_params();
    const double c_hi = std::min(p.a / p.rho, p.a / p.h(cp.x)) * (1.0 - 1e-9);
    auto det_minus_one = [&](double c) {
      try {
        const ModelInstance inst = condition_on_cep(m.with_parameter("c", c), cp.x);
        return summarize(jacobian(inst, {cp.x, prey_nullcline(inst, cp.x).g})).det - 1.0;
      } catch (const Error&) {
        return std::numeric_limits<double>::quiet_NaN();
      }
    };
    auto brackets = roots::log_sign_change_brackets(det_minus_one, c_hi * 1e-8, c_hi, 400);
    if (!brackets.empty()) {
      rep.ns_attainable_at = roots::bisect(det_minus_one, brackets.front().first, brackets.front().second);
    }
  }
  return rep;
}

}  // namespace ppbif
