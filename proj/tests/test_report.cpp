#include <doctest.h>

#include "helpers.hpp"
#include "ppbif/report_json.hpp"

using namespace ppbif;
using nlohmann::json;

TEST_CASE("bifurcation point serialization round-trips") {
  const auto pt = bazykin_hopf(1, 1, 1, 1, 1);
  const json j = pt;
  const auto back = json::parse(j.dump());
  CHECK(back == j);
  CHECK(back["kind"] == "Hopf");
  CHECK(back["critical_param_value"].get<double>() == pt.param_value);
  CHECK(back["verdict"]["branch"] == "ascending");
}

TEST_CASE("doubles survive a text round-trip bit for bit") {
  const double v = 0.1 + 0.2;
  CHECK(json::parse(json(v).dump()).get<double>() == v);
}

TEST_CASE("traceability anchors") {
  json j = json::array({json(bazykin_hopf(1, 1, 1, 1, 1))});
  annotate_traceability(j);
  CHECK(j[0]["anchor"] == "bazykin-hopf-localization");
  CHECK(traceability_anchor(ModelFamily::DiscreteCrowleyMartin, BifurcationKind::NeimarkSacker) ==
        "discrete-crowley-martin-neimark-sacker-localization");
}
