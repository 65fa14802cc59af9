#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "finsler/holonomy.hpp"

using namespace finsler;

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::VectorXd v2(double a, double b) { return Eigen::Vector2d(a, b); }

std::vector<PolarProfile> lemma_profiles() {
  return {PolarProfile::constant(0.2), PolarProfile::fourier(0.0, {0.0, 0.1}, {}),
          PolarProfile::fourier(0.1, {}, {0.0, 0.1}), PolarProfile::fourier(-0.3, {0.05, 0.1, 0.0, 0.02}, {0.0, 0.03}),
          profile_from_function(pointwise_at_origin(MetricSpec::randers_shen({0.3, 0.1}, 1)).F0, "randers")};
}

}  // namespace

TEST(Transport, PreservesFAndIsHomogeneous) {
  for (const auto& spec : {MetricSpec::randers_shen({0.3, 0.1}, 1), MetricSpec::klein(2)}) {
    const Path loop = square_loop(v2(0, 0), 0.3);
    const Eigen::VectorXd y = v2(0.6, -0.5);
    const TransportResult a = parallel_transport(spec, loop, y);
    const TransportResult b = parallel_transport(spec, loop, 3.0 * y);
    EXPECT_LE(a.F_drift, kTransportDriftTol);
    EXPECT_LE((b.y_end - 3.0 * a.y_end).norm() / a.y_end.norm(), 1e-8);
  }
}

TEST(Transport, EuclideanIsTrivial) {
  const TransportResult r = parallel_transport(MetricSpec::euclidean(2), square_loop(v2(0.1, 0.1), 0.5), v2(1, 2));
  EXPECT_LE((r.y_end - v2(1, 2)).norm(), 1e-12);
}

TEST(Holonomy, RiemannianLoopsAreLinearRandersIsNot) {
  const Path loop = square_loop(v2(0, 0), 0.3);
  const double eu = nonlinearity_defect(loop_holonomy(MetricSpec::euclidean(2), loop, 64, 1));
  const double kl = nonlinearity_defect(loop_holonomy(MetricSpec::klein(2), loop, 64, 1));
  EXPECT_LE(eu, 1e-7);
  EXPECT_LE(kl, 1e-7);
  for (int sign : {1, -1}) {
    const HolonomyMap m = loop_holonomy(MetricSpec::randers_shen({0.0, 0.0}, sign), loop, 64, 1);
    EXPECT_GT(nonlinearity_defect(m), 1e-4);
    EXPECT_LE(m.max_F_drift, kTransportDriftTol);
    for (bool ok : m.valid) EXPECT_TRUE(ok);
  }
}

TEST(Holonomy, TooFewSamplesIsAnError) {
  const auto m = loop_holonomy(MetricSpec::euclidean(2), square_loop(v2(0, 0), 0.3), 8, 1);
  EXPECT_THROW(nonlinearity_defect(m), SamplingError);
}

TEST(Profile, RandersProfileHasClosedForm) {
  const PolarProfile p = profile_from_function(pointwise_at_origin(MetricSpec::randers_shen({0.3, 0.1}, 1)).F0, "F");
  for (int k = 0; k < 16; ++k) {
    const double t = 2 * kPi * k / 16;
    EXPECT_NEAR(p.r(t), -std::log(1 + 0.3 * std::cos(t) + 0.1 * std::sin(t)), 1e-14);
  }
}

TEST(Profile, ConvexityVerdicts) {
  EXPECT_EQ(strong_convexity_check(PolarProfile::constant(0.0)).verdict, Convexity::StronglyConvex);
  EXPECT_EQ(strong_convexity_check(PolarProfile::fourier(0.0, {}, {0.0, 0.1})).verdict, Convexity::StronglyConvex);
  // -log cos t traces the straight line y1 = 1: kappa vanishes identically
  const PolarProfile line{ProfileProgram([](const auto& t) { return -finsler::log(finsler::cos(t)); }), "line", false};
  const ConvexityReport rep = strong_convexity_check(line, 256, std::array<double, 2>{-1.0, 1.0});
  EXPECT_EQ(rep.verdict, Convexity::FlatPoint);
  EXPECT_LE(rep.min_abs_kappa, 1e-8);
  // a large second harmonic makes the indicatrix non-convex
  EXPECT_EQ(strong_convexity_check(PolarProfile::fourier(0.0, {0.0, 0.5}, {})).verdict, Convexity::FlatPoint);
  EXPECT_THROW(strong_convexity_check(PolarProfile::constant(0.0), 16), std::invalid_argument);
}

TEST(Profile, CurvatureOfCircleIsReciprocalRadius) {
  // r = c gives the circle of radius exp(-c)
  EXPECT_NEAR(profile_curvature(PolarProfile::constant(0.5), 0.3), std::exp(0.5), 1e-12);
}

TEST(LemmaExpr, ProofSignMatchesOracle) {
  for (const auto& p : lemma_profiles()) {
    for (double t : uniform_angle_grid(64)) {
      const auto got = lemma_expr_values(p, t, ExprSign::Proof);
      const auto want = lemma_expr_oracle(p, t);
      for (int i = 0; i < 3; ++i) EXPECT_NEAR(got[i], want[i], 1e-8) << p.label() << " t=" << t;
    }
  }
}

TEST(LemmaExpr, StatementSignFailsOracle) {
  // regression pin: the flipped sign is off by O(1)
  double worst = 0.0;
  for (const auto& p : lemma_profiles()) {
    for (double t : uniform_angle_grid(64)) {
      const auto got = lemma_expr_values(p, t, ExprSign::Statement);
      const auto want = lemma_expr_oracle(p, t);
      for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(got[i] - want[i]));
    }
  }
  EXPECT_GT(worst, 0.1);
}

TEST(Gram, TrigQuadrupleIsDiagonal) {
  const int N = 256;
  Quadruple q{sample_function("1", N, [](double) { return 1.0; }),
              sample_function("cos", N, [](double t) { return std::cos(t); }),
              sample_function("sin", N, [](double t) { return std::sin(t); }),
              sample_function("cos sin", N, [](double t) { return std::cos(t) * std::sin(t); })};
  const GramCertificate c = gram_rank(q);
  Eigen::Matrix4d want = Eigen::Vector4d(1, 0.5, 0.5, 0.125).asDiagonal();
  EXPECT_LE((c.gram - want).cwiseAbs().maxCoeff(), 1e-3);
  EXPECT_EQ(c.rank, 4);
  EXPECT_EQ(c.verdict, GramVerdict::CertifiedIndependent);
  EXPECT_NEAR(c.rel_gap, 0.125, 1e-10);
}

TEST(Gram, ExactDependenciesAreDegenerate) {
  const int N = 256;
  Quadruple q{sample_function("1", N, [](double) { return 1.0; }),
              sample_function("cos", N, [](double t) { return std::cos(t); }),
              sample_function("cos^2", N, [](double t) { return std::cos(t) * std::cos(t); }),
              sample_function("cos 2t", N, [](double t) { return std::cos(2 * t); })};
  const GramCertificate c = gram_rank(q);
  EXPECT_LE(c.rank, 3);
  EXPECT_EQ(c.verdict, GramVerdict::Degenerate);
  EXPECT_THROW(gram_rank(independence_quadruple_C({0.3, 0.1}, -0.25, 1, 32)), std::invalid_argument);
}

TEST(Gram, ConditionCQuadruples) {
  const GramCertificate c = gram_rank(independence_quadruple_C({0.3, 0.1}, -0.25));
  EXPECT_EQ(c.rank, 4);
  EXPECT_GT(c.rel_gap, 1e-3);
  // control: a = 0, lambda = 1 collapses to a rank-3 family
  const GramCertificate ctrl = gram_rank(independence_quadruple_C({0.0, 0.0}, 1.0));
  EXPECT_EQ(ctrl.rank, 3);
  EXPECT_EQ(ctrl.verdict, GramVerdict::Degenerate);
}

TEST(Certify, RandersConditionC) {
  const CertificationReport r = certify(MetricSpec::randers_shen({0.3, 0.1}, 1), Condition::C);
  EXPECT_EQ(r.status, CertifyStatus::Certified);
  EXPECT_EQ(r.verdict, kCertifiedVerdict);
  EXPECT_GT(r.certificate.rel_gap, 1e-3);
  EXPECT_TRUE(r.doubled_N_consistent);
  EXPECT_EQ(r.certificate.verdict, r.certificate_doubled.verdict);
  for (const auto& h : r.hypotheses) EXPECT_TRUE(h.pass) << h.name;
}

TEST(Certify, BryantShenConditionB) {
  const CertificationReport r = certify(MetricSpec::bryant_shen_pointwise(2, kPi / 6), Condition::B);
  EXPECT_EQ(r.status, CertifyStatus::Certified);
  EXPECT_GT(r.certificate.rel_gap, 1e-3);
  EXPECT_TRUE(r.doubled_N_consistent);
  ASSERT_TRUE(r.recovered_c.has_value());
  EXPECT_NEAR(*r.recovered_c, std::tan(kPi / 6), 1e-10);
}

TEST(Certify, HypothesisViolations) {
  // P0 = 0 and zero curvature
  const CertificationReport eu = certify(MetricSpec::euclidean(2), Condition::B);
  EXPECT_EQ(eu.status, CertifyStatus::HypothesisViolation);
  EXPECT_FALSE(eu.failed.empty());
  // Randers data is not a scalar product
  const CertificationReport a = certify(MetricSpec::randers_shen({0.3, 0.1}, 1), Condition::A);
  EXPECT_EQ(a.status, CertifyStatus::HypothesisViolation);
  EXPECT_NE(a.failed.find("F0_scalar_product"), std::string::npos);
}

TEST(Certify, IsDeterministic) {
  const auto spec = MetricSpec::randers_shen({0.3, 0.1}, -1);
  const CertificationReport a = certify(spec, Condition::C), b = certify(spec, Condition::C);
  EXPECT_EQ(a.certificate.singular_values, b.certificate.singular_values);
  EXPECT_EQ(a.verdict, b.verdict);
}

TEST(Condition, NamesRoundTrip) {
  for (Condition c : {Condition::A, Condition::B, Condition::C, Condition::General}) {
    EXPECT_EQ(parse_condition(condition_name(c)), c);
  }
  EXPECT_THROW(parse_condition("D"), std::invalid_argument);
}

TEST(Certify, CorrectedProductCoefficientStillCertifies) {
  // with the second covariant derivative carrying 3 P_k P_j, the fourth
  // function becomes 4 P1 P2 - lambda g12
  const auto c = pointwise_at_origin(MetricSpec::randers_shen({0.3, 0.1}, 1));
  EXPECT_EQ(gram_rank(independence_quadruple(c, Condition::General, 256, 4.0)).verdict, GramVerdict::CertifiedIndependent);
  const auto b = pointwise_at_origin(MetricSpec::bryant_shen_pointwise(2, kPi / 6));
  EXPECT_EQ(gram_rank(independence_quadruple(b, Condition::B, 256, 4.0)).verdict, GramVerdict::CertifiedIndependent);
}
