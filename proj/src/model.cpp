#include "ppbif/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ppbif/error.hpp"

namespace ppbif {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MissingSymbol: return "MissingSymbol";
    case ErrorCode::UnknownSymbol: return "UnknownSymbol";
    case ErrorCode::NonPositiveValue: return "NonPositiveValue";
    case ErrorCode::ConstraintViolation: return "ConstraintViolation";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::NullclineNonpositive: return "NullclineNonpositive";
    case ErrorCode::NoCEPAtCriticalPoint: return "NoCEPAtCriticalPoint";
    case ErrorCode::PatternViolation: return "PatternViolation";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::SpectralConditionFailed: return "SpectralConditionFailed";
    case ErrorCode::DegenerateCrossing: return "DegenerateCrossing";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::NonFiniteState: return "NonFiniteState";
    case ErrorCode::EmptyLocus: return "EmptyLocus";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

constexpr std::array<std::string_view, 7> kBazykinSchema{"r", "k", "a", "b", "e", "d", "sigma"};
constexpr std::array<std::string_view, 4> kHollingSchema{"h10", "h2", "delta", "beta"};
constexpr std::array<std::string_view, 7> kCrowleySchema{"rho", "k", "a", "b", "c", "gamma", "d"};
constexpr std::array<std::string_view, 5> kHollingRawSchema{"a", "h1", "h2", "delta", "beta"};

bool may_be_zero(ModelFamily family, std::string_view symbol) {
  switch (family) {
    case ModelFamily::CrowleyMartin:
    case ModelFamily::DiscreteCrowleyMartin: return symbol == "c";
    case ModelFamily::HollingIV: return symbol == "h2";
    case ModelFamily::Bazykin: return false;
  }
  return false;
}

void check_value(ModelFamily family, std::string_view symbol, double v) {
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::NonPositiveValue, std::string(symbol) + " is not finite");
  }
  if (may_be_zero(family, symbol) ? v < 0.0 : v <= 0.0) {
    throw Error(ErrorCode::NonPositiveValue,
                std::string(symbol) + (may_be_zero(family, symbol) ? " must be >= 0" : " must be > 0"));
  }
}

void check_constraints(ModelFamily family, const std::array<double, 7>& v) {
  switch (family) {
    case ModelFamily::Bazykin:
      // r k a b e d sigma
      if (v[1] <= v[3]) {
        throw Error(ErrorCode::ConstraintViolation, "k<=b (the nullcline vertex requires k > b)");
      }
      break;
    case ModelFamily::CrowleyMartin:
    case ModelFamily::DiscreteCrowleyMartin:
      // rho k a b c gamma d
      if (v[3] * v[1] <= 1.0) {
        throw Error(ErrorCode::ConstraintViolation,
                    "bk<=1 (localization hypothesis b*k > 1 for the Crowley-Martin vertex)");
      }
      if (v[2] <= v[4] * v[0]) {
        throw Error(ErrorCode::ConstraintViolation, "a<=c*rho (the prey nullcline needs g(0) > 0)");
      }
      break;
    case ModelFamily::HollingIV: break;
  }
}

}  // namespace

std::string_view family_name(ModelFamily family) {
  switch (family) {
    case ModelFamily::Bazykin: return "Bazykin";
    case ModelFamily::HollingIV: return "HollingIV";
    case ModelFamily::CrowleyMartin: return "CrowleyMartin";
    case ModelFamily::DiscreteCrowleyMartin: return "DiscreteCrowleyMartin";
  }
  return "?";
}

std::optional<ModelFamily> parse_family(std::string_view name) {
  for (auto f : {ModelFamily::Bazykin, ModelFamily::HollingIV, ModelFamily::CrowleyMartin,
                 ModelFamily::DiscreteCrowleyMartin}) {
    if (family_name(f) == name) return f;
  }
  return std::nullopt;
}

std::span<const std::string_view> schema(ModelFamily family) {
  switch (family) {
    case ModelFamily::Bazykin: return kBazykinSchema;
    case ModelFamily::HollingIV: return kHollingSchema;
    case ModelFamily::CrowleyMartin:
    case ModelFamily::DiscreteCrowleyMartin: return kCrowleySchema;
  }
  return {};
}

std::string_view default_free_parameter(ModelFamily family) {
  switch (family) {
    case ModelFamily::Bazykin: return "a";
    case ModelFamily::HollingIV: return "beta";
    case ModelFamily::CrowleyMartin:
    case ModelFamily::DiscreteCrowleyMartin: return "c";
  }
  return "";
}

std::string_view conditioning_parameter(ModelFamily family) {
  switch (family) {
    case ModelFamily::Bazykin: return "e";
    case ModelFamily::HollingIV: return "delta";
    case ModelFamily::CrowleyMartin:
    case ModelFamily::DiscreteCrowleyMartin: return "gamma";
  }
  return "";
}

// ---------------------------------------------------------------------------

double ParameterSet::get(std::string_view symbol) const {
  auto names = schema(family_);
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == symbol) return values_[i];
  }
  for (const auto& [name, value] : derived()) {
    if (name == symbol) return value;
  }
  throw Error(ErrorCode::UnknownSymbol,
              std::string(symbol) + " is not a parameter of " + std::string(family_name(family_)));
}

bool ParameterSet::has(std::string_view symbol) const {
  auto names = schema(family_);
  return std::find(names.begin(), names.end(), symbol) != names.end();
}

std::vector<std::pair<std::string, double>> ParameterSet::named_values() const {
  std::vector<std::pair<std::string, double>> out;
  auto names = schema(family_);
  for (std::size_t i = 0; i < names.size(); ++i) out.emplace_back(std::string(names[i]), values_[i]);
  return out;
}

std::vector<std::pair<std::string, double>> ParameterSet::derived() const {
  const auto& v = values_;
  switch (family_) {
    case ModelFamily::Bazykin: return {{"x_v", 0.5 * (v[1] - v[3])}};
    case ModelFamily::HollingIV: {
      HollingIVParams p{v[0], v[1], v[2], v[3]};
      return {{"h1", p.h1()},       {"a", p.a()},         {"delta_eff", p.delta_eff()},
              {"x_min", p.x_min()}, {"x_max", p.x_max()}, {"x_intercept", p.x_intercept()}};
    }
    case ModelFamily::CrowleyMartin:
    case ModelFamily::DiscreteCrowleyMartin: {
      const double k0 = v[3] * v[1] - 1.0;
      return {{"k0", k0}, {"x_v", k0 / (2.0 * v[3])}};
    }
  }
  return {};
}

ParameterSet validate_parameters(ModelFamily family, const std::map<std::string, double>& raw) {
  ParameterSet out;
  out.family_ = family;

  std::map<std::string, double> canonical = raw;
  if (family == ModelFamily::HollingIV && !raw.contains("h10") && raw.contains("h1")) {
    // Raw five-parameter chart; convert onto the h10 curve.
    for (const auto& [name, _] : raw) {
      if (std::find(kHollingRawSchema.begin(), kHollingRawSchema.end(), name) == kHollingRawSchema.end()) {
        throw Error(ErrorCode::UnknownSymbol, name + " is not a HollingIV symbol");
      }
    }
    for (auto sym : {"a", "h1", "delta", "beta"}) {
      if (!raw.contains(sym)) throw Error(ErrorCode::MissingSymbol, std::string("missing symbol: ") + sym);
    }
    const double h1 = raw.at("h1");
    const double a = raw.at("a");
    check_value(family, "h1", h1);
    check_value(family, "a", a);
    if (h1 >= 1.0) throw Error(ErrorCode::ConstraintViolation, "h1>=1 (h10 = 3 h1/(1 - h1) must be > 0)");
    const double h10 = 3.0 * h1 / (1.0 - h1);
    const double a_expected = 9.0 / (4.0 * (3.0 + h10) * (3.0 + h10));
    if (std::abs(a - a_expected) > 1e-12 * a_expected) {
      throw Error(ErrorCode::ConstraintViolation,
                  "a != 9/(4(3+h10)^2) (raw Holling IV parameters must lie on the h10 reparametrization)");
    }
    canonical.erase("a");
    canonical.erase("h1");
    canonical["h10"] = h10;
  }
  if (family == ModelFamily::HollingIV && !canonical.contains("h2")) canonical["h2"] = 0.0;

  auto names = schema(family);
  for (const auto& [name, _] : canonical) {
    if (std::find(names.begin(), names.end(), name) == names.end()) {
      throw Error(ErrorCode::UnknownSymbol,
                  name + " is not a " + std::string(family_name(family)) + " symbol");
    }
  }
  for (std::size_t i = 0; i < names.size(); ++i) {
    auto it = canonical.find(std::string(names[i]));
    if (it == canonical.end()) {
      throw Error(ErrorCode::MissingSymbol, "missing symbol: " + std::string(names[i]));
    }
    check_value(family, names[i], it->second);
    out.values_[i] = it->second;
  }
  check_constraints(family, out.values_);
  return out;
}

// ---------------------------------------------------------------------------

ModelInstance::ModelInstance(ParameterSet params) : params_(params) {
  const auto& v = params_.values_;
  switch (params_.family()) {
    case ModelFamily::Bazykin: typed_ = BazykinParams{v[0], v[1], v[2], v[3], v[4], v[5], v[6]}; break;
    case ModelFamily::HollingIV: typed_ = HollingIVParams{v[0], v[1], v[2], v[3]}; break;
    case ModelFamily::CrowleyMartin:
    case ModelFamily::DiscreteCrowleyMartin:
      typed_ = CrowleyMartinParams{v[0], v[1], v[2], v[3], v[4], v[5], v[6]};
      break;
  }
}

ModelInstance ModelInstance::create(ModelFamily family, const std::map<std::string, double>& raw) {
  return ModelInstance(validate_parameters(family, raw));
}

ModelInstance ModelInstance::bazykin(const BazykinParams& p) {
  return create(ModelFamily::Bazykin,
                {{"r", p.r}, {"k", p.k}, {"a", p.a}, {"b", p.b}, {"e", p.e}, {"d", p.d}, {"sigma", p.sigma}});
}

ModelInstance ModelInstance::holling_iv(const HollingIVParams& p) {
  return create(ModelFamily::HollingIV, {{"h10", p.h10}, {"h2", p.h2}, {"delta", p.delta}, {"beta", p.beta}});
}

ModelInstance ModelInstance::crowley_martin(const CrowleyMartinParams& p) {
  return create(ModelFamily::CrowleyMartin, {{"rho", p.rho},
                                             {"k", p.k},
                                             {"a", p.a},
                                             {"b", p.b},
                                             {"c", p.c},
                                             {"gamma", p.gamma},
                                             {"d", p.d}});
}

ModelInstance ModelInstance::discrete_crowley_martin(const CrowleyMartinParams& p) {
  return create(ModelFamily::DiscreteCrowleyMartin, {{"rho", p.rho},
                                                     {"k", p.k},
                                                     {"a", p.a},
                                                     {"b", p.b},
                                                     {"c", p.c},
                                                     {"gamma", p.gamma},
                                                     {"d", p.d}});
}

ModelInstance ModelInstance::with_parameter(std::string_view symbol, double value) const {
  ParameterSet next = params_;
  auto names = schema(family());
  auto it = std::find(names.begin(), names.end(), symbol);
  if (it == names.end()) {
    throw Error(ErrorCode::UnknownSymbol,
                std::string(symbol) + " is not a " + std::string(family_name(family())) + " symbol");
  }
  check_value(family(), symbol, value);
  next.values_[static_cast<std::size_t>(it - names.begin())] = value;
  check_constraints(family(), next.values_);
  return ModelInstance(next);
}

// ---------------------------------------------------------------------------

namespace {

Vec2 bazykin_field(const BazykinParams& p, PlanarState s) {
  const double response = p.a * s.x * s.y / (s.x + p.b);
  return {p.r * s.x * (1.0 - s.x / p.k) - response, p.e * response - p.d * s.y - p.sigma * s.y * s.y};
}

Matrix2 bazykin_jac(const BazykinParams& p, PlanarState s) {
  const double xb = s.x + p.b;
  return {p.r * (1.0 - 2.0 * s.x / p.k) - p.a * p.b * s.y / (xb * xb), -p.a * s.x / xb,
          p.e * p.a * p.b * s.y / (xb * xb), p.e * p.a * s.x / xb - p.d - 2.0 * p.sigma * s.y};
}

Vec2 holling_field(const HollingIVParams& p, PlanarState s) {
  const double a = p.a();
  const double dx = s.x * (1.0 - s.x) - s.x * s.y / (a + s.x * s.x) - p.h1() * s.x;
  double dy = 0.0;
  if (s.x > 0.0) {
    dy = s.y * (p.delta - p.beta * s.y / s.x) - p.h2 * s.y;
  } else if (s.y > 0.0) {
    dy = -std::numeric_limits<double>::infinity();  // Leslie term beta y^2 / x
  }
  return {dx, dy};
}

Matrix2 holling_jac(const HollingIVParams& p, PlanarState s) {
  const double a = p.a();
  const double q = a + s.x * s.x;
  const double ratio = s.y / s.x;
  return {1.0 - 2.0 * s.x - p.h1() - s.y * (a - s.x * s.x) / (q * q), -s.x / q, p.beta * ratio * ratio,
          p.delta_eff() - 2.0 * p.beta * ratio};
}

Vec2 cm_field(const CrowleyMartinParams& p, PlanarState s) {
  const double response = p.a * s.x * s.y / ((1.0 + p.b * s.x) * (1.0 + p.c * s.y));
  return {p.rho * s.x * (1.0 - s.x / p.k) - response, p.gamma * response - p.d * s.y};
}

Matrix2 cm_jac(const CrowleyMartinParams& p, PlanarState s) {
  const double bx = 1.0 + p.b * s.x;
  const double cy = 1.0 + p.c * s.y;
  const double rx = p.a * s.y / (bx * bx * cy);  // d/dx of a x y / (bx cy)
  const double ry = p.a * s.x / (bx * cy * cy);  // d/dy
  return {p.rho * (1.0 - 2.0 * s.x / p.k) - rx, -ry, p.gamma * rx, p.gamma * ry - p.d};
}

}  // namespace

Vec2 vector_field(const ModelInstance& m, PlanarState s) {
  switch (m.family()) {
    case ModelFamily::Bazykin: return bazykin_field(m.bazykin_params(), s);
    case ModelFamily::HollingIV: return holling_field(m.holling_params(), s);
    case ModelFamily::CrowleyMartin:
    case ModelFamily::DiscreteCrowleyMartin: return cm_field(m.cm_params(), s);
  }
  return {};
}

PlanarState map_step(const ModelInstance& m, PlanarState s) {
  const Vec2 f = vector_field(m, s);
  return {s.x + f.dx, s.y + f.dy};
}

Matrix2 field_jacobian(const ModelInstance& m, PlanarState s) {
  switch (m.family()) {
    case ModelFamily::Bazykin: return bazykin_jac(m.bazykin_params(), s);
    case ModelFamily::HollingIV: return holling_jac(m.holling_params(), s);
    case ModelFamily::CrowleyMartin:
    case ModelFamily::DiscreteCrowleyMartin: return cm_jac(m.cm_params(), s);
  }
  return {};
}

Matrix2 jacobian(const ModelInstance& m, PlanarState s) {
  Matrix2 j = field_jacobian(m, s);
  if (is_map(m.family())) {
    j.m11 += 1.0;
    j.m22 += 1.0;
  }
  return j;
}

double residual_scale(const ModelInstance& m, PlanarState s) {
  double terms[4] = {0, 0, 0, 0};
  switch (m.family()) {
    case ModelFamily::Bazykin: {
      const auto& p = m.bazykin_params();
      const double resp = p.a * s.x * s.y / (s.x + p.b);
      terms[0] = p.r * s.x;
      terms[1] = resp;
      terms[2] = p.e * resp + p.d * s.y;
      terms[3] = p.sigma * s.y * s.y;
      break;
    }
    case ModelFamily::HollingIV: {
      const auto& p = m.holling_params();
      terms[0] = s.x;
      terms[1] = s.x * s.y / (p.a() + s.x * s.x);
      terms[2] = (p.delta + p.h2) * s.y;
      terms[3] = s.x > 0.0 ? p.beta * s.y * s.y / s.x : 0.0;
      break;
    }
    case ModelFamily::CrowleyMartin:
    case ModelFamily::DiscreteCrowleyMartin: {
      const auto& p = m.cm_params();
      const double resp = p.a * s.x * s.y / ((1.0 + p.b * s.x) * (1.0 + p.c * s.y));
      terms[0] = p.rho * s.x;
      terms[1] = resp;
      terms[2] = p.gamma * resp;
      terms[3] = p.d * s.y;
      break;
    }
  }
  return std::max({std::abs(terms[0]), std::abs(terms[1]), std::abs(terms[2]), std::abs(terms[3])});
}

}  // namespace ppbif
