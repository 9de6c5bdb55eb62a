#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "ppbif/model.hpp"

namespace ppbif {

enum class Branch { Ascending, Descending, Critical };
enum class CriticalKind { LocalMin, LocalMax };
enum class NullclineDegree { Quadratic, Cubic, Rational };

std::string_view to_string(Branch b);
std::string_view to_string(CriticalKind k);
std::string_view to_string(NullclineDegree d);

/// g, g' and g'' of the prey nullcline y = g(x). No domain checks.
struct NullclineJet {
  double g = 0.0;
  double dg = 0.0;
  double d2g = 0.0;
};
NullclineJet prey_nullcline(const ModelInstance& m, double x);

struct CriticalPoint {
  double x = 0.0;  // closed form, authoritative
  CriticalKind kind = CriticalKind::LocalMax;
  double g_value = 0.0;
  double polished_x = 0.0;  // bisection + Newton root of g', kept as a consistency check
};

struct BranchCell {
  double lo = 0.0;
  double hi = 0.0;
  Branch monotonicity = Branch::Ascending;
};

class NullclineProfile {
 public:
  explicit NullclineProfile(const ModelInstance& m);

  const ModelInstance& model() const { return model_; }
  double x_lo() const { return x_lo_; }
  double x_hi() const { return x_hi_; }
  /// True when x_lo itself is excluded (CM component bounded by a pole).
  bool lo_open() const { return lo_open_; }
  bool contains(double x) const;

  NullclineDegree degree() const { return degree_; }
  const std::vector<CriticalPoint>& critical_points() const { return critical_; }
  const std::vector<BranchCell>& cells() const { return cells_; }
  /// Index into cells() of the cell containing x.
  std::size_t cell_index(double x) const;
  /// max |g'| sampled over the interval; the "critical" band is relative to it.
  double slope_scale() const { return slope_scale_; }

  double value(double x) const;
  double derivative(double x) const;

 private:
  ModelInstance model_;
  double x_lo_ = 0.0;
  double x_hi_ = 0.0;
  bool lo_open_ = false;
  NullclineDegree degree_ = NullclineDegree::Quadratic;
  std::vector<CriticalPoint> critical_;
  std::vector<BranchCell> cells_;
  double slope_scale_ = 1.0;
};

/// g(x); throws OutOfDomain outside the admissible interval (including the
/// Crowley-Martin pole region a - c h(x) <= 0).
double nullcline_value(const NullclineProfile& profile, double x);

/// Closed-form critical points, ascending in x, each verified against a
/// numerically polished root of g'. Throws NoConvergence if the closed
/// form and the numerical root disagree.
std::vector<CriticalPoint> critical_points(const ModelInstance& m);

/// Sign classification of g'(x) with band |g'| <= 1e-10 * slope_scale.
Branch branch_of(const NullclineProfile& profile, double x);

}  // namespace ppbif
