#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "finsler/holonomy.hpp"
#include "finsler/spray.hpp"
#include "finsler/submanifold.hpp"

using namespace finsler;

namespace {

Eigen::VectorXd v2(double a, double b) { return Eigen::Vector2d(a, b); }

MetricSpec parent() { return MetricSpec::randers_shen({0.3, 0.1, 0.2}, 1); }

}  // namespace

TEST(Restriction, RandersRestrictsToRanders) {
  const PlaneRestriction r = restrict_to_plane(parent(), coordinate_plane(3, 0, 1));
  EXPECT_EQ(r.restricted.family(), Family::RandersShen);
  EXPECT_EQ(r.restricted.dim(), 2);
  EXPECT_DOUBLE_EQ(r.restricted.a()[0], 0.3);
  EXPECT_DOUBLE_EQ(r.restricted.a()[1], 0.1);
  for (const auto& p : sample_chart(r.restricted, 20, 4)) {
    EXPECT_NEAR(finsler_value(r.restricted, p.x, p.y), finsler_value(parent(), r.embed(p.x), r.embed(p.y)), 1e-14);
  }
}

TEST(Restriction, TransversalSprayVanishes) {
  const PlaneRestriction r = restrict_to_plane(parent(), coordinate_plane(3, 0, 1));
  for (const auto& p : sample_chart(r.restricted, 50, 12)) EXPECT_LE(transversal_spray_residual(r, p.x, p.y), 1e-10);
}

TEST(Restriction, CurvatureExtendsTheParent) {
  const PlaneRestriction r = restrict_to_plane(parent(), coordinate_plane(3, 0, 1));
  for (const auto& p : sample_chart(r.restricted, 30, 13)) {
    EXPECT_LE(curvature_extension_check(r, p.x, p.y, v2(1, 0), v2(0, 1)), 1e-7);
    EXPECT_LE(curvature_transversal_residual(r, p.x, p.y, v2(0.3, 1), v2(-1, 0.5)), 1e-7);
  }
}

TEST(Restriction, RotatedFrameWorks) {
  Eigen::MatrixXd E(3, 2);
  E << 1, 0, 0, 1 / std::sqrt(2.0), 0, 1 / std::sqrt(2.0);
  const PlaneRestriction r = restrict_to_plane(parent(), frame_plane(E));
  EXPECT_NEAR(r.restricted.a()[1], 0.3 / std::sqrt(2.0), 1e-15);
  for (const auto& p : sample_chart(r.restricted, 20, 14)) {
    EXPECT_LE(transversal_spray_residual(r, p.x, p.y), 1e-10);
    EXPECT_LE(curvature_extension_check(r, p.x, p.y, v2(1, 0), v2(0, 1)), 1e-7);
  }
}

TEST(Restriction, GeodesicsAndTransportStayInThePlane) {
  const PlaneRestriction r = restrict_to_plane(parent(), coordinate_plane(3, 0, 2));
  const Eigen::VectorXd x0 = v2(0.1, -0.1), y0 = v2(0.4, 0.7);
  const GeodesicTrace low = geodesic_integrate(r.restricted, x0, y0, 0.5, {}, 10);
  const GeodesicTrace high = geodesic_integrate(r.parent, r.embed(x0), r.embed(y0), 0.5, {}, 10);
  for (std::size_t k = 0; k < low.points.size(); ++k) {
    EXPECT_LE((r.embed(low.points[k].x) - high.points[k].x).norm(), 1e-8);
  }
  const Path loop2 = square_loop(v2(0, 0), 0.3);
  Path loop3;
  for (const auto& v : loop2) loop3.push_back(r.embed(v));
  const TransportResult a = parallel_transport(r.restricted, loop2, y0);
  const TransportResult b = parallel_transport(r.parent, loop3, r.embed(y0));
  EXPECT_LE((r.embed(a.y_end) - b.y_end).norm(), 1e-9);
}

TEST(Restriction, RejectsBadInput) {
  EXPECT_THROW(restrict_to_plane(MetricSpec::randers_shen({0.1, 0.1}, 1), coordinate_plane(2, 0, 1)),
               std::invalid_argument);
  Eigen::MatrixXd skew(3, 2);
  skew << 1, 1, 0, 1, 0, 0;
  EXPECT_THROW(frame_plane(skew), UnsupportedError);
  EXPECT_THROW(coordinate_plane(3, 1, 1), std::invalid_argument);
  EXPECT_THROW(coordinate_plane(3, 0, 3), std::invalid_argument);
}

TEST(CertifyViaPlane, ReproducesTheSurfaceVerdict) {
  const CertificationReport via = certify_via_plane(parent(), coordinate_plane(3, 0, 1), Condition::C);
  const CertificationReport direct = certify(MetricSpec::randers_shen({0.3, 0.1}, 1), Condition::C);
  EXPECT_EQ(via.status, CertifyStatus::Certified);
  EXPECT_EQ(via.verdict, direct.verdict);
  EXPECT_NEAR(via.certificate.rel_gap, direct.certificate.rel_gap, 1e-12);
}

TEST(CertifyViaPlane, OtherFamilies) {
  const CertificationReport bs =
      certify_via_plane(MetricSpec::bryant_shen_pointwise(3, std::numbers::pi / 6), coordinate_plane(3, 1, 2), Condition::B);
  EXPECT_EQ(bs.status, CertifyStatus::Certified);
  const CertificationReport eu = certify_via_plane(MetricSpec::euclidean(3), coordinate_plane(3, 0, 1), Condition::A);
  EXPECT_EQ(eu.status, CertifyStatus::HypothesisViolation);
}
