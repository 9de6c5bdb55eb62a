#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ppbif/bifurcation.hpp"
#include "ppbif/dynamics.hpp"
#include "ppbif/equilibria.hpp"
#include "ppbif/model.hpp"
#include "ppbif/nullcline.hpp"
#include "ppbif/spectral.hpp"

namespace ppbif {

enum class Check { Hopf, BT, NS, Rigidity, DynamicsConfirm };
std::string_view to_string(Check c);
std::optional<Check> parse_check(std::string_view name);

/// splitmix64 finalizer; used to derive per-sample seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// mt19937_64 with a fixed 53-bit conversion to [0, 1), so draws do not
/// depend on the standard library's distribution implementations.
class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed);
  double uniform();
  double log_uniform(double lo, double hi);

 private:
  std::mt19937_64 engine_;
};

struct DecadeRange {
  double lo = 0.1;
  double hi = 10.0;
};

struct SweepConfig {
  ModelFamily family = ModelFamily::Bazykin;
  std::string free_param;                       // empty: family default
  std::map<std::string, DecadeRange> ranges;    // per-symbol log-uniform ranges (default [0.1, 10])
  std::map<std::string, double> fixed;          // symbols held at a value instead of drawn
  std::size_t samples = 1;
  std::uint64_t seed = 0;
  std::set<Check> checks;
  std::size_t dynamics_cap = 20;
  int x_panels = 32;
  int param_panels = 24;
  bool record_points = false;  // full point records per sample (large); counterexamples are always full
  unsigned threads = 0;        // 0: hardware concurrency
};

struct LocusSummary {
  BifurcationKind kind = BifurcationKind::Hopf;
  std::size_t count = 0;
  double x_lo = 0.0;  // smallest x* on the locus
  double x_hi = 0.0;  // largest x*
  std::size_t violations = 0;
};

struct RigidityCheck {
  CriticalPoint location;
  bool evaluated = false;
  std::string reason;  // why not evaluated
  bool hopf_blocked = false;
  bool ns_blocked = false;
  std::optional<double> ns_attainable_at;
  double max_abs_prey_entry = 0.0;
  double max_field_trace = 0.0;
};

struct DynamicsCheck {
  BifurcationKind kind = BifurcationKind::Hopf;
  double x_star = 0.0;
  double param_value = 0.0;
  bool evaluated = false;
  std::string reason;
  OrbitKind below = OrbitKind::Undetermined;
  OrbitKind above = OrbitKind::Undetermined;
  double transversality = 0.0;
  bool flips = false;
  bool side_matches = false;
};

struct SampleRecord {
  std::size_t index = 0;
  std::uint64_t seed = 0;  // per-sample stream seed
  int redraws = 0;
  bool skipped = false;
  std::string skip_reason;
  std::vector<std::pair<std::string, double>> parameters;
  std::vector<CriticalPoint> critical_points;
  std::vector<Equilibrium> equilibria;
  std::vector<LocusSummary> loci;
  std::vector<BifurcationPoint> points;  // only when record_points
  std::vector<RigidityCheck> rigidity;
  std::vector<DynamicsCheck> dynamics;
  std::vector<std::string> notes;
};

struct Counterexample {
  std::size_t sample_index = 0;
  std::uint64_t campaign_seed = 0;
  std::uint64_t sample_seed = 0;
  Check check = Check::Hopf;
  std::string description;
  std::vector<std::pair<std::string, double>> parameters;
  std::optional<BifurcationPoint> point;  // first confirmed violating point of the locus
  std::size_t violating_points = 1;       // confirmed violations merged into this entry
  bool confirmed_at_tight_tolerance = false;
};

struct SweepSummary {
  std::size_t samples = 0;
  std::size_t skipped = 0;
  std::map<std::string, std::size_t> points_by_kind;
  std::map<std::size_t, std::size_t> equilibrium_count;  // #CEPs -> #samples
  std::size_t rigidity_evaluated = 0;
  std::size_t rigidity_blocked = 0;
  std::size_t dynamics_evaluated = 0;
  std::size_t dynamics_flips = 0;
  std::size_t discarded_after_reverification = 0;
  std::size_t counterexamples = 0;
  std::size_t violating_points = 0;  // confirmed violating points across all counterexample entries
};

struct SweepReport {
  SweepConfig config;
  std::vector<SampleRecord> samples;
  std::vector<Counterexample> counterexamples;
  SweepSummary summary;
  double wall_time_s = 0.0;  // not serialized
};

/// Validates the config (throws InvalidArgument / UnknownSymbol).
void validate_sweep_config(const SweepConfig& cfg);

SweepReport run_sweep(const SweepConfig& cfg);

struct DualityEntry {
  double c = 0.0;
  double x_v = 0.0;
  std::vector<double> hopf_x;
  std::vector<double> ns_x;
  bool hopf_empty = true;
  bool ns_empty = true;
  bool ordered = false;  // max hopf_x < x_v < min ns_x (only meaningful when both are nonempty)
};

struct DualityReport {
  CrowleyMartinParams shared{};
  std::vector<DualityEntry> entries;
  std::size_t both_nonempty = 0;
  std::size_t ordered = 0;
};

/// Hopf x* (flow, c0(x) = c) and Neimark-Sacker x* (map, det = 1) on the
/// same nullcline for n log-spaced c in [c_lo, c_hi]; gamma is solved at
/// each point.
DualityReport duality_report(const CrowleyMartinParams& shared, double c_lo, double c_hi, int n = 50);

}  // namespace ppbif
