#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ppbif/model.hpp"
#include "ppbif/nullcline.hpp"

namespace ppbif {

struct SpectralSummary {
  Matrix2 jac;
  double trace = 0.0;
  double det = 0.0;
  double discriminant = 0.0;  // trace^2 - 4 det
  std::complex<double> lambda1;
  std::complex<double> lambda2;
  /// |discriminant| <= 1e-14 trace^2: repeated eigenvalue, neither
  /// classified as a real pair nor as a complex pair.
  bool degenerate = false;

  /// Sum of |J_ij|, the scale for trace/det tolerances.
  double scale() const;
};

SpectralSummary summarize(const Matrix2& j);
SpectralSummary spectral_summary(const ModelInstance& m, PlanarState s);

/// Trace of the Jacobian at the equilibrium placed at (x, g(x)) by
/// conditioning the predator equation (see condition_on_cep), split into
/// its prey (J11) and predator (J22) diagonal contributions. For the map
/// the entries are those of the map Jacobian (1 + field entries).
struct NullclineTrace {
  double trace = 0.0;
  double prey_part = 0.0;
  double predator_part = 0.0;
  PlanarState state;
  double conditioned_value = 0.0;  // e, delta or gamma that makes `state` a CEP
};

NullclineTrace trace_on_nullcline(const ModelInstance& m, double x);

struct RigiditySample {
  double parameter = 0.0;
  bool skipped = false;
  std::string reason;
  double prey_entry = 0.0;  // J11 of the field
  double field_trace = 0.0;
  double field_det = 0.0;
  double map_det = 0.0;  // det of the map Jacobian (maps only)
  double scale = 0.0;
};

struct RigidityReport {
  CriticalPoint location;
  std::string parameter_name;
  std::vector<RigiditySample> samples;
  double max_abs_prey_entry = 0.0;
  double max_field_trace = 0.0;
  double min_field_det = 0.0;
  bool hopf_blocked = false;
  bool is_map = false;
  bool ns_blocked = false;
  /// Maps only: a value of the bifurcation parameter (if one exists in the
  /// admissible range) at which det_map = 1 is reached at the critical point.
  std::optional<double> ns_attainable_at;
};

/// Spectrum at the critical point for each sampled value of the
/// bifurcation parameter (default: the family's free parameter), with the
/// CEP conditioned at the critical point. Throws NoCEPAtCriticalPoint if
/// no sample admits a CEP there.
RigidityReport rigidity_report(const ModelInstance& m, const CriticalPoint& cp, std::span<const double> samples,
                               std::string parameter_name = {}, double tol = 1e-10);

}  // namespace ppbif
