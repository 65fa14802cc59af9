#include <gtest/gtest.h>

#include "finsler/io.hpp"

using namespace finsler;

TEST(SpecParse, Families) {
  const MetricSpec r = parse_metric_spec(Json::parse(R"({"family": "RandersShen", "a": [0.3, 0.1], "sign": -1})"));
  EXPECT_EQ(r.family(), Family::RandersShen);
  EXPECT_EQ(r.dim(), 2);
  EXPECT_EQ(r.sign(), -1);
  EXPECT_EQ(r.lambda(), -0.25);

  const MetricSpec k = parse_metric_spec(Json::parse(R"({"family": "Klein", "n": 3})"));
  EXPECT_EQ(k.dim(), 3);
  EXPECT_EQ(k.lambda(), -1.0);

  const MetricSpec b = parse_metric_spec(Json::parse(R"({"family": "BryantShenPointwise", "alpha": 0.5})"));
  EXPECT_DOUBLE_EQ(b.alpha(), 0.5);
  EXPECT_EQ(b.lambda(), 1.0);

  const MetricSpec p = parse_metric_spec(Json::parse(
      R"({"family": "PolarProfilePointwise", "lambda": 1, "profile": {"F": {"c0": 0, "cos": [0, 0.1]}, "P": {"c0": 0.5}}})"));
  EXPECT_TRUE(p.is_pointwise());
}

TEST(SpecParse, CustomNormMatchesRanders) {
  const MetricSpec c = parse_metric_spec(Json::parse(R"({"family": "CustomPointwise", "lambda": -0.25,
      "F0": {"quadratic": [[1, 0], [0, 1]], "linear": [0.3, 0.1]},
      "P0": {"quadratic": [[0.25, 0], [0, 0.25]], "linear": [-0.15, -0.05]}})"));
  const MetricSpec r = MetricSpec::randers_shen({0.3, 0.1}, 1);
  const Eigen::VectorXd x = Eigen::Vector2d::Zero(), y = Eigen::Vector2d(0.4, -0.8);
  EXPECT_NEAR(finsler_value(c, x, y), finsler_value(r, x, y), 1e-15);
  EXPECT_NEAR(projective_factor(c, x, y), projective_factor(r, x, y), 1e-15);
  CertifyParams params;
  params.randers_a = std::vector<double>{0.3, 0.1};
  EXPECT_EQ(certify(c, Condition::C, params).status, CertifyStatus::Certified);
}

TEST(SpecParse, Errors) {
  EXPECT_THROW(parse_metric_spec(Json::parse("[1, 2]")), SpecParseError);
  EXPECT_THROW(parse_metric_spec(Json::parse(R"({"n": 2})")), SpecParseError);
  EXPECT_THROW(parse_metric_spec(Json::parse(R"({"family": "Funk"})")), SpecParseError);
  EXPECT_THROW(parse_metric_spec(Json::parse(R"({"family": "RandersShen", "a": [0.9, 0.9]})")), SpecParseError);
  EXPECT_THROW(parse_metric_spec(Json::parse(R"({"family": "RandersShen", "a": "x"})")), SpecParseError);
  EXPECT_THROW(parse_metric_spec(Json::parse(R"({"family": "RandersShen", "n": 3, "a": [0.1, 0.1]})")), SpecParseError);
  EXPECT_THROW(parse_metric_spec(Json::parse(R"({"family": "CustomPointwise", "F0": {}})")), SpecParseError);
  EXPECT_THROW(parse_metric_spec(Json::parse(R"({"family": "Euclidean", "n": 1})")), SpecParseError);
  EXPECT_THROW(load_metric_spec("/nonexistent/spec.json"), SpecParseError);
}

TEST(Report, JsonShapeAndNonFiniteNumbers) {
  const CertificationReport rep = certify(MetricSpec::randers_shen({0.3, 0.1}, 1), Condition::C);
  const Json j = report_to_json(rep);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  const std::vector<std::string> want{"condition", "hypotheses", "singular_values", "rank", "rel_gap", "grid", "verdict"};
  EXPECT_EQ(keys, want);
  EXPECT_EQ(j["singular_values"].size(), 4u);
  EXPECT_EQ(j["grid"]["N"], 256);

  Hypothesis h{"x", false, std::nan("")};
  EXPECT_EQ(hypothesis_to_json(h)["residual"], "nan");
}

TEST(Format, RoundTripsDoubles) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23}) EXPECT_EQ(std::stod(format_double(v)), v);
  EXPECT_EQ(hex64(fnv1a64("")), "cbf29ce484222325");
  EXPECT_EQ(hex64(fnv1a64("a")), "af63dc4c8601ec8c");
}
