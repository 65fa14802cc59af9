#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "finsler/metrics.hpp"

using namespace finsler;

namespace {

Eigen::VectorXd v2(double a, double b) { return Eigen::Vector2d(a, b); }

}  // namespace

TEST(FinslerValue, RandersAtOriginMatchesRandersForm) {
  EXPECT_NEAR(finsler_value(MetricSpec::randers_shen({0, 0}, 1), v2(0, 0), v2(3, 4)), 5.0, 1e-15);
  EXPECT_NEAR(finsler_value(MetricSpec::randers_shen({0.5, 0}, 1), v2(0, 0), v2(1, 0)), 1.5, 1e-15);
  EXPECT_NEAR(finsler_value(MetricSpec::randers_shen({0.5, 0}, -1), v2(0, 0), v2(1, 0)), 0.5, 1e-15);
  EXPECT_NEAR(finsler_value(MetricSpec::euclidean(2), v2(0.4, 7), v2(3, 4)), 5.0, 1e-15);
}

TEST(FinslerValue, ChartViolationsAreDomainErrors) {
  const auto rs = MetricSpec::randers_shen({0.1, 0.2}, 1);
  EXPECT_THROW(finsler_value(rs, v2(1.0, 0), v2(1, 0)), DomainError);
  EXPECT_THROW(finsler_value(rs, v2(1.0 - 1e-7, 0), v2(1, 0)), DomainError);
  EXPECT_NO_THROW(finsler_value(rs, v2(1.0 - 2e-6, 0), v2(1, 0)));
  const auto bs = MetricSpec::bryant_shen_pointwise(2, 0.3);
  EXPECT_THROW(finsler_value(bs, v2(0.1, 0), v2(1, 0)), DomainError);
  EXPECT_THROW(finsler_value(rs, v2(0, 0), v2(0, 0)), DegenerateInputError);
}

TEST(FinslerValue, ConstructorsRejectBadParameters) {
  EXPECT_THROW(MetricSpec::randers_shen({0.8, 0.7}, 1), std::invalid_argument);
  EXPECT_THROW(MetricSpec::randers_shen({0.1, 0.1}, 2), std::invalid_argument);
  EXPECT_THROW(MetricSpec::bryant_shen_pointwise(2, 1.6), std::invalid_argument);
  EXPECT_THROW(MetricSpec::euclidean(1), std::invalid_argument);
}

TEST(MetricTensor, EuclideanAndKleinAtOriginAreIdentity) {
  EXPECT_NEAR((metric_tensor(MetricSpec::euclidean(2), v2(0.3, 0.1), v2(1, 0)) - Eigen::Matrix2d::Identity()).norm(),
              0.0, 1e-14);
  for (auto y : {v2(1, 0), v2(0.3, -2), v2(-1, 1)}) {
    EXPECT_NEAR((metric_tensor(MetricSpec::klein(2), v2(0, 0), y) - Eigen::Matrix2d::Identity()).norm(), 0.0, 1e-14);
  }
}

TEST(MetricTensor, RandersG12MatchesClosedForm) {
  // F = |y| + a1 y1 at x = 0; g = F F'' + F' F'^T, so with u = y/|y|
  // g12 = (1 + a1 u1)(-u1 u2) + (u1 + a1)(u2).
  const double a1 = 0.5;
  const auto spec = MetricSpec::randers_shen({a1, 0}, 1);
  for (int k = 0; k < 20; ++k) {
    const double t = 0.1 + 2.0 * std::numbers::pi * k / 20;
    const Eigen::VectorXd y = 1.7 * v2(std::cos(t), std::sin(t));
    const double u1 = std::cos(t), u2 = std::sin(t);
    const double want = (1 + a1 * u1) * (-u1 * u2) + (u1 + a1) * u2;
    EXPECT_NEAR(metric_tensor(spec, v2(0, 0), y)(0, 1), want, 1e-13);
  }
}

TEST(MetricTensor, ContractionGivesFSquaredAndIsPositiveDefinite) {
  for (const auto& spec : {MetricSpec::randers_shen({0.3, 0.1}, 1), MetricSpec::randers_shen({0.3, 0.1}, -1),
                           MetricSpec::klein(2)}) {
    for (const auto& p : sample_chart(spec, 100, 7)) {
      const Eigen::MatrixXd g = metric_tensor(spec, p.x, p.y);
      const double F = finsler_value(spec, p.x, p.y);
      EXPECT_NEAR(p.y.dot(g * p.y), F * F, 1e-9 * F * F);
      EXPECT_GT(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(g).eigenvalues()(0), 0.0);
    }
  }
}

TEST(MetricTensor, IndefiniteNormIsReported) {
  // |y| + 1.5 y1 goes negative near -e1, where g is indefinite
  ScalarProgram bad([](auto, auto y) { return finsler::sqrt(finsler::norm_sq(y)) + y[0] * 1.5; });
  const auto spec = MetricSpec::custom_pointwise(2, bad, bad, 0.0);
  EXPECT_THROW(metric_tensor(spec, v2(0, 0), v2(-1, 0.1)), MetricDegeneracyError);
}

TEST(ProjectiveFactor, KnownValues) {
  const std::vector<double> a{0.3, 0.1};
  const auto rs = MetricSpec::randers_shen(a, 1);
  for (const auto& y : {v2(1, 0), v2(0.3, -0.7), v2(-2, 1)}) {
    EXPECT_NEAR(projective_factor(rs, v2(0, 0), y), 0.5 * (y.norm() - (a[0] * y(0) + a[1] * y(1))), 1e-15);
  }
  const double alpha = 0.4;
  EXPECT_NEAR(projective_factor(MetricSpec::bryant_shen_pointwise(3, alpha), Eigen::Vector3d::Zero(),
                                Eigen::Vector3d(1, 2, 2)),
              3 * std::sin(alpha), 1e-15);
  EXPECT_EQ(projective_factor(MetricSpec::euclidean(2), v2(0.1, 0.2), v2(1, 1)), 0.0);
}

TEST(ProjectiveFactor, ClosedFormAgreesWithDerivedForm) {
  for (int sign : {1, -1}) {
    const auto spec = MetricSpec::randers_shen({0.3, 0.1}, sign);
    for (const auto& p : sample_chart(spec, 100, 11)) {
      const double closed = projective_factor(spec, p.x, p.y, ProjectiveRoute::ClosedForm);
      const double derived = projective_factor(spec, p.x, p.y, ProjectiveRoute::Derived);
      EXPECT_NEAR(closed, derived, 1e-8 * std::max(1.0, std::abs(closed)));
    }
  }
  const auto k = MetricSpec::klein(3);
  for (const auto& p : sample_chart(k, 20, 3)) {
    EXPECT_NEAR(projective_factor(k, p.x, p.y), projective_factor(k, p.x, p.y, ProjectiveRoute::Derived), 1e-12);
  }
}

TEST(ProjectiveFactor, DerivedFormNeedsAGlobalFamily) {
  const auto bs = MetricSpec::bryant_shen_pointwise(2, 0.2);
  EXPECT_THROW(projective_factor(bs, v2(0, 0), v2(1, 0), ProjectiveRoute::Derived), UnsupportedError);
}

TEST(Homogeneity, EulerResidualsAndReversibility) {
  const auto eu = check_homogeneity(MetricSpec::euclidean(2), sample_chart(MetricSpec::euclidean(2), 30, 1));
  EXPECT_LE(eu.euler_residual, 1e-15);
  EXPECT_TRUE(eu.absolutely_homogeneous);
  const auto rs = MetricSpec::randers_shen({0.2, -0.4, 0.1}, -1);
  const auto rep = check_homogeneity(rs, sample_chart(rs, 50, 5));
  EXPECT_LE(rep.euler_residual, 1e-10);
  EXPECT_LE(rep.scaling_residual, 1e-12);
  EXPECT_FALSE(rep.absolutely_homogeneous);
  EXPECT_GT(rep.reversibility_defect, 1e-3);
}

TEST(SampleChart, ReproducibleAndInsideChart) {
  const auto rs = MetricSpec::randers_shen({0.1, 0.1}, 1);
  const auto a = sample_chart(rs, 40, 99);
  const auto b = sample_chart(rs, 40, 99);
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].x, b[k].x);
    EXPECT_EQ(a[k].y, b[k].y);
    EXPECT_LE(a[k].x.norm(), 0.6);
  }
  for (const auto& p : sample_chart(MetricSpec::bryant_shen_pointwise(2, 0.1), 10, 1)) EXPECT_EQ(p.x.norm(), 0.0);
}

TEST(PointwiseData, RandersAtOriginIsRandersForm) {
  const auto d = pointwise_at_origin(MetricSpec::randers_shen({0.3, 0.1}, -1));
  const std::vector<double> x{0.0, 0.0}, y{0.6, 0.8};
  EXPECT_NEAR(d.F0.call<double>(as_span(x), as_span(y)), 1.0 - 0.26, 1e-15);
  EXPECT_NEAR(d.P0.call<double>(as_span(x), as_span(y)), 0.5 * (-1.0 - 0.26), 1e-15);
  EXPECT_EQ(d.lambda, -0.25);
}

TEST(Family, NamesRoundTrip) {
  for (Family f : {Family::Euclidean, Family::Klein, Family::RandersShen, Family::BryantShenPointwise,
                   Family::PolarProfilePointwise, Family::CustomPointwise}) {
    EXPECT_EQ(parse_family(family_name(f)), f);
  }
  EXPECT_THROW(parse_family("Funk"), std::invalid_argument);
}
