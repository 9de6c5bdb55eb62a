#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ppbif/model.hpp"
#include "ppbif/nullcline.hpp"
#include "ppbif/spectral.hpp"

namespace ppbif {

enum class BifurcationKind { Hopf, BT, NeimarkSacker };
std::string_view to_string(BifurcationKind k);

struct LocalizationVerdict {
  double interval_lo = 0.0;  // nearest critical point below x*, or the left end of the prey interval
  double interval_hi = 0.0;  // nearest critical point above x*, or the right end
  Branch branch = Branch::Ascending;
  bool satisfies_principle = false;
};

/// Hopf and BT belong on ascending branches, Neimark-Sacker on descending ones.
LocalizationVerdict localize(const NullclineProfile& profile, BifurcationKind kind, double x);

struct BifurcationPoint {
  BifurcationKind kind = BifurcationKind::Hopf;
  double x_star = 0.0;
  PlanarState state;
  std::string param_name;
  double param_value = 0.0;
  ParameterSet parameters;  // full parameter set at the point
  SpectralSummary spectral;
  LocalizationVerdict verdict;

  ModelInstance instance() const { return ModelInstance(parameters); }
};

/// Recomputes the Jacobian from the stored parameters and state and checks
/// the defining conditions of the point's kind with the given relative
/// tolerance (Hopf: |tr| <= tol*scale, det > 0; BT: |tr|, |det| <= tol*scale;
/// NS: |det-1| <= tol, |tr| < 2). The equilibrium residual is also checked.
bool verify_point(const BifurcationPoint& p, double tol = 1e-10);

// --- Bazykin ---------------------------------------------------------------

/// Hopf point of the Bazykin model on the family k = k0 + b + x0 with the
/// closed-form critical a0; e is solved from the predator equation with the
/// given d (trace and P0 do not depend on d).
BifurcationPoint bazykin_hopf(double k0, double b, double x0, double r, double sigma, double d = 0.1);

/// a0 = (k0+2b)^2 (k0+2b+2x0) sigma / (4 k0 x0).
double bazykin_hopf_critical_a(double k0, double b, double x0, double sigma);

/// The closed-form determinant e r x0 (k0+2b+2x0) sigma / (k0+b+x0) that is
/// commonly quoted for this point. It does not agree with the Jacobian in
/// general; kept so the discrepancy can be measured.
double bazykin_hopf_det_closed_form(double k0, double b, double x0, double r, double sigma, double e);

// --- Crowley-Martin --------------------------------------------------------

/// c0(x) = a b x (k0 - 2bx) / (d (1+bx)^2 (1 + k0 - bx)): the interference
/// value at which the conditioned trace vanishes at x.
double cm_hopf_c0(const CrowleyMartinParams& p, double x);

/// Hopf point at prey coordinate x with c = c0(x) and gamma conditioned.
/// nullopt when c0 <= 0, when c0 makes the instance inadmissible, or when
/// the determinant is not positive. Throws OutOfDomain unless 0 < x < k.
std::optional<BifurcationPoint> crowley_martin_hopf(const ModelInstance& m, double x);

/// All x in (0, x_v) with c0(x) = c, ascending. c0 vanishes at both ends
/// of (0, x_v), so there are generically two roots.
std::vector<double> cm_hopf_inverse(const CrowleyMartinParams& p, double c);

/// The largest root of c0(x) = c: the branch that tends to x_v as c -> 0.
std::optional<double> cm_hopf_vertex_branch(const CrowleyMartinParams& p, double c);

// --- Holling IV ------------------------------------------------------------

struct HollingHopfBranch {
  double x = 0.0;
  double y0 = 0.0;
  double delta_eff0 = 0.0;
  double beta0 = 0.0;
  double det = 0.0;
  double prey_entry = 0.0;  // J11 on the nullcline
};

/// Eliminates (y, delta_eff, beta) from f1 = 0, f2 = 0, trace = 0 at fixed
/// x. Values are returned regardless of sign. Throws OutOfDomain outside
/// (0, 3/(3+h10)) and NullclineNonpositive when y0 <= 0.
HollingHopfBranch holling4_hopf_branch(double h10, double x);

enum class WindowRegion { Left, Inside, Right };
std::string_view to_string(WindowRegion r);

struct HollingWindowSample {
  WindowRegion region = WindowRegion::Inside;
  HollingHopfBranch branch;
  bool pattern_ok = false;
};

struct HollingWindowReport {
  double h10 = 0.0;
  double x_min = 0.0;
  double x_max = 0.0;
  double x_right = 0.0;
  double beta_at_x_min = 0.0;
  double beta_at_x_max = 0.0;
  std::vector<HollingWindowSample> samples;
};

/// Samples n points in each of (0, x_min), (x_min, x_max), (x_max, x_right)
/// and checks the sign pattern: all four quantities positive inside,
/// beta0 < 0 on the left, y0 < 0 or det <= 0 on the right. Throws
/// PatternViolation naming the first offending sample.
HollingWindowReport holling4_hopf_window(double h10, int n_samples, double endpoint_tol = 1e-10);

struct HollingBTGridResult {
  double x0 = 0.0;
  std::vector<BifurcationPoint> points;  // all unknowns positive
  int converged = 0;                     // Newton runs that met the tolerance
  int rejected_nonpositive = 0;          // converged, but some unknown <= 0
  std::string failure;                   // set when no start converged
};

/// Solves {f1 = 0, f2 = 0, trace = 0, det = 0} for (y, delta_eff, beta, h10)
/// at each x0 by damped Newton from 8 starts.
std::vector<HollingBTGridResult> holling4_bt(const std::vector<double>& x0_grid);

// --- Generic loci ----------------------------------------------------------

struct LocusOptions {
  double x_lo = 0.0;  // 0,0 means the admissible prey interval
  double x_hi = 0.0;
  int x_panels = 256;
  int param_panels = 200;
  /// Parameter search range; 0,0 means an automatic range.
  double param_lo = 0.0;
  double param_hi = 0.0;
};

/// Scans x; at each grid point conditions the CEP parameter and solves
/// trace = 0 for the free parameter by bracketing + bisection. Keeps det > 0.
std::vector<BifurcationPoint> hopf_locus(const ModelInstance& m, std::string_view free_param,
                                         const LocusOptions& opt = {});

/// Sign changes of det along the Hopf locus, refined in x by bisection.
std::vector<BifurcationPoint> bt_locus(const ModelInstance& m, std::string_view free_param,
                                       const LocusOptions& opt = {});

/// Discrete Crowley-Martin only: at each x solves det_map = 1 for the free
/// parameter (c, rho or d) with gamma conditioned; keeps |trace_map| < 2.
std::vector<BifurcationPoint> ns_locus(const ModelInstance& m, std::string_view free_param = "c",
                                       const LocusOptions& opt = {});

// --- Transversality --------------------------------------------------------

/// d/dp of max Re(lambda) (flows) or max |lambda| (maps) by central
/// differences with step 1e-5 (1 + |p|), re-finding the equilibrium on each
/// side. Throws DegenerateCrossing when |derivative| < 1e-8.
double hopf_transversality(const BifurcationPoint& point, const ModelInstance& m);

/// Same finite-difference rule on a caller-supplied spectrum.
double hopf_transversality(const std::function<SpectralSummary(double)>& spectrum_at, double value,
                           bool modulus);

}  // namespace ppbif
