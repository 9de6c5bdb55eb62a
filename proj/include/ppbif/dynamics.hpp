#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "ppbif/bifurcation.hpp"
#include "ppbif/model.hpp"

namespace ppbif {

struct Trajectory {
  std::vector<double> times;  // time for flows, iteration index for maps
  std::vector<PlanarState> states;
  double step = 0.0;
  int method_order = 4;  // 4 for RK4, 1 for the map (exact iteration)
  bool is_map = false;
  bool clipped = false;   // a coordinate went below 0 and was clipped
  double max_undershoot = 0.0;
  bool diverged = false;  // non-finite or overflowing state; integration stopped
};

/// Classical fixed-step RK4 up to t_end, recording every `record_every`-th
/// step (the initial and final states are always recorded).
Trajectory integrate_flow(const ModelInstance& m, PlanarState s0, double t_end, double dt,
                          std::size_t record_every = 1);

/// n steps of the map.
Trajectory iterate_map(const ModelInstance& m, PlanarState s0, std::size_t n, std::size_t record_every = 1);

enum class OrbitKind { ConvergesToEquilibrium, LimitCycle, InvariantCircle, Divergent, Undetermined };
std::string_view to_string(OrbitKind k);

struct OscillationVerdict {
  OrbitKind kind = OrbitKind::Undetermined;
  double amplitude = 0.0;                // half the prey range over the analysed tail
  std::optional<double> period_estimate;  // mean time between section returns
  double decay_rate = 0.0;               // slope of log distance per unit time
  int section_returns = 0;
};

/// Discards the first half of the samples, then classifies the rest.
/// Throws InsufficientSamples when fewer than 1000 samples remain.
OscillationVerdict classify_orbit(const Trajectory& traj, PlanarState reference);

/// 1e-3 / max|lambda| at the equilibrium, clamped to [1e-4, 1e-2].
double characteristic_dt(const ModelInstance& m, PlanarState equilibrium);

struct SideProbe {
  double param_value = 0.0;
  PlanarState equilibrium;
  OscillationVerdict verdict;
};

struct CrossingProbe {
  SideProbe below;
  SideProbe above;
  double transversality = 0.0;
  bool flips = false;         // one side converges, the other oscillates
  bool side_matches = false;  // the oscillating side is where the eigenvalues have crossed outward
};

/// Simulates at param * (1 -/+ rel_offset) from the equilibrium displaced
/// by 1e-3 in x and classifies both orbits.
CrossingProbe probe_crossing(const BifurcationPoint& point, const ModelInstance& m, double rel_offset = 0.05);

}  // namespace ppbif
