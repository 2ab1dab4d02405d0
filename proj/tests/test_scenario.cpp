#include <gtest/gtest.h>

#include "radlab/report.hpp"
#include "radlab/scenario.hpp"

using namespace radlab;
using njson = nlohmann::json;

namespace {
std::string config_error(const njson& j, auto&& parse) {
  try {
    parse(ConfigNode(j, ""));
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConfigError);
    return e.what();
  }
  return "";
}
}  // namespace

TEST(Scenario, ModelAndDomain) {
  const njson j = njson::parse(R"({"model": {"kind": "hyperbolic", "m": 3, "p": 2.5, "kappa": 0.5},
                                   "domain": {"kind": "annulus", "inner": 1, "outer": 2, "elements": 10}})");
  const ConfigNode root(j, "");
  const auto mm = parse_model(root.child("model"));
  EXPECT_EQ(mm.m(), 3);
  EXPECT_DOUBLE_EQ(mm.p(), 2.5);
  EXPECT_DOUBLE_EQ(*mm.warping().kappa(), 0.5);
  const auto mesh = parse_domain(root.child("domain"), mm);
  EXPECT_EQ(mesh.num_nodes(), 11u);
  EXPECT_DOUBLE_EQ(mesh.inner(), 1.0);
}

TEST(Scenario, ProfilesEvaluate) {
  const auto E3 = ModelManifold::euclidean(3, 2.0);
  const njson j = njson::parse(R"({"kind": "sum", "scale": 2, "terms": [
      {"kind": "constant", "value": 1},
      {"kind": "step", "value": 3, "radius": 2},
      {"kind": "hardy", "scale": 4, "core": 0.5}]})");
  const auto f = parse_profile(ConfigNode(j, "v"), &E3);
  EXPECT_NEAR(f(1.0), 2.0 * (1.0 + 3.0 + 4.0 * 0.25), 1e-9);
  EXPECT_NEAR(f(0.1), 2.0 * (1.0 + 3.0 + 4.0 * 0.25 / 0.25), 1e-9);
  EXPECT_NEAR(f(3.0), 2.0 * (1.0 + 4.0 * 0.25 / 9.0), 1e-9);
  EXPECT_DOUBLE_EQ(parse_profile(ConfigNode(njson(0.7), "v"), &E3)(5.0), 0.7);
}

TEST(Scenario, ErrorsCarryFieldPath) {
  const njson neg = njson::parse(R"({"ladder": {"inner": -1, "first_outer": 2}})");
  EXPECT_NE(config_error(neg, [](const ConfigNode& r) { parse_ladder(r.child("ladder")); }).find("ladder.inner"), std::string::npos);
  const njson kind = njson::parse(R"({"model": {"kind": "spherical", "m": 3}})");
  EXPECT_NE(config_error(kind, [](const ConfigNode& r) { parse_model(r.child("model")); }).find("model.kind"), std::string::npos);
  const njson missing = njson::parse(R"({"model": {"kind": "euclidean"}})");
  EXPECT_NE(config_error(missing, [](const ConfigNode& r) { parse_model(r.child("model")); }).find("model.m"), std::string::npos);
  const njson terms = njson::parse(R"({"v": {"kind": "sum", "terms": [{"kind": "constant", "value": 1}, {"kind": "bump"}]}})");
  EXPECT_NE(config_error(terms, [](const ConfigNode& r) { parse_profile(r.child("v"), nullptr); }).find("v.terms[1]"),
            std::string::npos);
  const njson version = njson::parse(R"({"schema_version": 9})");
  EXPECT_FALSE(config_error(version, [](const ConfigNode& r) { check_schema(r); }).empty());
}

TEST(Scenario, ReportFormatting) {
  nlohmann::ordered_json j = report_header("test");
  j["x"] = 0.1;
  j["n"] = 3;
  j["bad"] = std::numeric_limits<double>::quiet_NaN();
  const std::string s = to_report_text(j);
  EXPECT_NE(s.find("\"schema_version\": 1"), std::string::npos);
  EXPECT_NE(s.find("0.10000000000000001"), std::string::npos);
  EXPECT_NE(s.find("\"n\": 3"), std::string::npos);
  EXPECT_NE(s.find("\"nan\""), std::string::npos);
  EXPECT_EQ(s, to_report_text(j));
}
