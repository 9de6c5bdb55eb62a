#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace ppbif {

enum class ModelFamily { Bazykin, HollingIV, CrowleyMartin, DiscreteCrowleyMartin };

std::string_view family_name(ModelFamily family);
std::optional<ModelFamily> parse_family(std::string_view name);

/// True for the forward-Euler Crowley-Martin map, false for the three flows.
constexpr bool is_map(ModelFamily family) { return family == ModelFamily::DiscreteCrowleyMartin; }

/// Ordered symbol names accepted by validate_parameters for a family.
std::span<const std::string_view> schema(ModelFamily family);

/// The parameter each theorem treats as the bifurcation parameter.
std::string_view default_free_parameter(ModelFamily family);

/// The parameter solved from the predator equation to place an equilibrium
/// at a prescribed point of the prey nullcline (e, delta, gamma).
std::string_view conditioning_parameter(ModelFamily family);

struct PlanarState {
  double x = 0.0;  // prey
  double y = 0.0;  // predator
};

struct Vec2 {
  double dx = 0.0;
  double dy = 0.0;
};

struct Matrix2 {
  double m11 = 0.0, m12 = 0.0;
  double m21 = 0.0, m22 = 0.0;

  double trace() const { return m11 + m22; }
  double det() const { return m11 * m22 - m12 * m21; }
};

struct BazykinParams {
  double r, k, a, b, e, d, sigma;
  double vertex() const { return 0.5 * (k - b); }
};

/// Leslie-type Holling IV system stored in the (h10, h2, delta, beta) chart.
struct HollingIVParams {
  double h10, h2, delta, beta;

  double shift() const { return 3.0 + h10; }
  double h1() const { return h10 / shift(); }
  double a() const { return 9.0 / (4.0 * shift() * shift()); }
  double delta_eff() const { return delta - h2; }
  double x_min() const { return 1.0 / (2.0 * shift()); }
  double x_max() const { return 3.0 / (2.0 * shift()); }
  /// Positive root of the linear factor of the cubic prey nullcline.
  double x_intercept() const { return 3.0 / shift(); }
};

/// Shared by the Crowley-Martin flow and its forward-Euler map.
struct CrowleyMartinParams {
  double rho, k, a, b, c, gamma, d;

  double k0() const { return b * k - 1.0; }
  double vertex() const { return k0() / (2.0 * b); }
  /// h(x) = rho (1 - x/k)(1 + b x); the prey nullcline is h / (a - c h).
  double h(double x) const { return rho * (1.0 - x / k) * (1.0 + b * x); }
};

/// Validated, family-keyed parameter values. Values are stored in schema
/// order; HollingIV is always held in the (h10, h2, delta, beta) chart.
class ParameterSet {
 public:
  ParameterSet() = default;

  ModelFamily family() const { return family_; }
  double get(std::string_view symbol) const;
  bool has(std::string_view symbol) const;
  std::vector<std::pair<std::string, double>> named_values() const;
  /// k0, x_v, x_min, x_max, h1, a, delta_eff where defined for the family.
  std::vector<std::pair<std::string, double>> derived() const;

 private:
  friend ParameterSet validate_parameters(ModelFamily, const std::map<std::string, double>&);
  friend class ModelInstance;

  ModelFamily family_ = ModelFamily::Bazykin;
  std::array<double, 7> values_{};
};

/// Checks the family constraints and returns the canonical parameter set.
/// HollingIV also accepts the raw chart {a, h1, h2, delta, beta} when a and
/// h1 lie on the (h10) reparametrization curve; h2 defaults to 0.
ParameterSet validate_parameters(ModelFamily family, const std::map<std::string, double>& raw);

/// Immutable model bound to a validated parameter set.
class ModelInstance {
 public:
  explicit ModelInstance(ParameterSet params);

  static ModelInstance create(ModelFamily family, const std::map<std::string, double>& raw);
  static ModelInstance bazykin(const BazykinParams& p);
  static ModelInstance holling_iv(const HollingIVParams& p);
  static ModelInstance crowley_martin(const CrowleyMartinParams& p);
  static ModelInstance discrete_crowley_martin(const CrowleyMartinParams& p);

  ModelFamily family() const { return params_.family(); }
  const ParameterSet& parameters() const { return params_; }
  double param(std::string_view symbol) const { return params_.get(symbol); }

  /// Copy with one symbol replaced; the result is validated again.
  ModelInstance with_parameter(std::string_view symbol, double value) const;

  const BazykinParams& bazykin_params() const { return std::get<BazykinParams>(typed_); }
  const HollingIVParams& holling_params() const { return std::get<HollingIVParams>(typed_); }
  const CrowleyMartinParams& cm_params() const { return std::get<CrowleyMartinParams>(typed_); }

 private:
  ParameterSet params_;
  std::variant<BazykinParams, HollingIVParams, CrowleyMartinParams> typed_;
};

/// Right-hand side of the flow. For the map this is the displacement
/// F(x, y) = (x_{n+1} - x_n, y_{n+1} - y_n), i.e. the Crowley-Martin field.
Vec2 vector_field(const ModelInstance& m, PlanarState s);

/// One step of the map (s + F(s)); for flows this is s + vector_field.
PlanarState map_step(const ModelInstance& m, PlanarState s);

/// Analytic Jacobian of the right-hand side; identity + field Jacobian for the map.
Matrix2 jacobian(const ModelInstance& m, PlanarState s);

/// Jacobian of the underlying vector field (equal to jacobian() for flows).
Matrix2 field_jacobian(const ModelInstance& m, PlanarState s);

/// Largest absolute additive term of the vector field at s; the natural
/// magnitude against which equilibrium residuals are judged.
double residual_scale(const ModelInstance& m, PlanarState s);

}  // namespace ppbif
