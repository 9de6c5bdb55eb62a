#pragma once

#include <json.hpp>

#include "ppbif/bifurcation.hpp"
#include "ppbif/dynamics.hpp"
#include "ppbif/equilibria.hpp"
#include "ppbif/harness.hpp"
#include "ppbif/nullcline.hpp"
#include "ppbif/spectral.hpp"

namespace ppbif {

void to_json(nlohmann::json& j, const PlanarState& s);
void to_json(nlohmann::json& j, const ParameterSet& p);
void to_json(nlohmann::json& j, const CriticalPoint& cp);
void to_json(nlohmann::json& j, const Equilibrium& e);
void to_json(nlohmann::json& j, const SpectralSummary& s);
void to_json(nlohmann::json& j, const LocalizationVerdict& v);
void to_json(nlohmann::json& j, const BifurcationPoint& p);
void to_json(nlohmann::json& j, const RigidityReport& r);
void to_json(nlohmann::json& j, const HollingHopfBranch& b);
void to_json(nlohmann::json& j, const HollingWindowReport& r);
void to_json(nlohmann::json& j, const HollingBTGridResult& r);
void to_json(nlohmann::json& j, const OscillationVerdict& v);
void to_json(nlohmann::json& j, const SweepConfig& c);
void to_json(nlohmann::json& j, const SweepReport& r);
void to_json(nlohmann::json& j, const DualityReport& r);

/// Adds an "anchor" field naming the result each entry instantiates.
void annotate_traceability(nlohmann::json& report);

/// Anchor for a bifurcation kind within a family, e.g. "bazykin-hopf-localization".
std::string traceability_anchor(ModelFamily family, BifurcationKind kind);

}  // namespace ppbif
