#include <gtest/gtest.h>

#include <cmath>

#include "finsler/diffengine.hpp"
#include "finsler/metrics.hpp"

using namespace finsler;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  int i = 0;
  for (double d : v) out(i++) = d;
  return out;
}

}  // namespace

TEST(Taylor, ProductAndQuotientMatchHandDerivatives) {
  const JetSpace& space = JetSpace::get({{1, 3}}, 3);
  const T1 t = T1::variable(space, 0, 0.7);
  const T1 f = t * t * t / (t + 1.0);
  // f = t^3/(t+1); f' = (2t^3 + 3t^2)/(t+1)^2
  const double d1 = (2 * 0.343 + 3 * 0.49) / (1.7 * 1.7);
  const int e1[] = {1};
  EXPECT_NEAR(f.value(), 0.343 / 1.7, 1e-15);
  EXPECT_NEAR(f.derivative(e1), d1, 1e-14);
}

TEST(Taylor, ElementaryFunctionsThirdDerivative) {
  const JetSpace& space = JetSpace::get({{1, 3}}, 3);
  const T1 t = T1::variable(space, 0, 0.3);
  const int e3[] = {3};
  EXPECT_NEAR(sin(t).derivative(e3), -std::cos(0.3), 1e-14);
  EXPECT_NEAR(cos(t).derivative(e3), std::sin(0.3), 1e-14);
  EXPECT_NEAR(exp(t).derivative(e3), std::exp(0.3), 1e-14);
  EXPECT_NEAR(log(t).derivative(e3), 2.0 / (0.3 * 0.3 * 0.3), 1e-11);
  EXPECT_NEAR(sqrt(t).derivative(e3), 3.0 / 8.0 * std::pow(0.3, -2.5), 1e-11);
  // d/dt atan2(sin t, cos t) = 1 on every branch
  for (double a : {0.3, 2.0, 3.1, -2.5}) {
    const T1 s = T1::variable(space, 0, a);
    const T1 ang = atan2(sin(s), cos(s));
    const int e1[] = {1};
    EXPECT_NEAR(ang.derivative(e1), 1.0, 1e-13) << a;
    EXPECT_NEAR(ang.derivative(e3), 0.0, 1e-12) << a;
  }
}

TEST(Taylor, NestedJetsGiveMixedPartials) {
  // f(u, v) = exp(u v) differentiated with u in the outer and v in the inner jet.
  const JetSpace& inner = JetSpace::get({{1, 2}}, 2);
  const JetSpace& outer = JetSpace::get({{1, 1}}, 1);
  const T1 v = T1::variable(inner, 0, 0.5);
  const T2 u = T2::variable(outer, 0, T1(0.4));
  const T2 f = exp(u * T2(v));
  const int e1[] = {1};
  const int e2[] = {2};
  // d/du d^2/dv^2 exp(uv) = (2u + u^2 v) exp(uv)
  const double want = (2 * 0.4 + 0.16 * 0.5) * std::exp(0.2);
  EXPECT_NEAR(f.derivative(e1).derivative(e2), want, 1e-14);
}

TEST(Taylor, MixingSpacesThrows) {
  const JetSpace& a = JetSpace::get({{1, 2}}, 2);
  const JetSpace& b = JetSpace::get({{2, 1}}, 1);
  const T1 x = T1::variable(a, 0, 1.0);
  const T1 y = T1::variable(b, 0, 1.0);
  EXPECT_THROW((void)(x + y), std::logic_error);
}

TEST(LiftEval, EuclideanJetsAtUnitVector) {
  const auto spec = MetricSpec::euclidean(2);
  const Jet j = lift_eval(spec.finsler_program(), vec({0, 0}), vec({1, 0}), {1, 3});
  EXPECT_DOUBLE_EQ(j.value, 1.0);
  EXPECT_NEAR(j.dy(0), 1.0, 1e-15);
  EXPECT_NEAR(j.dy(1), 0.0, 1e-15);
  EXPECT_NEAR(j.dyy(0, 0), 0.0, 1e-15);
  EXPECT_NEAR(j.dyy(1, 1), 1.0, 1e-15);
  EXPECT_NEAR(j.dyy(0, 1), 0.0, 1e-15);
  EXPECT_NEAR(j.dx.norm(), 0.0, 1e-15);
  // d^3|y|/dy0 dy1 dy1 at (1, 0) = -1
  EXPECT_NEAR(j.dyyy(0, 1, 1), -1.0, 1e-14);
}

TEST(LiftEval, UnrequestedSlotsStayEmpty) {
  const auto spec = MetricSpec::euclidean(3);
  const Jet j = lift_eval(spec.finsler_program(), vec({0, 0, 0}), vec({1, 2, 3}), {0, 1});
  EXPECT_EQ(j.dy.size(), 3);
  EXPECT_EQ(j.dyy.size(), 0);
  EXPECT_EQ(j.dx.size(), 0);
}

TEST(LiftEval, RejectsProfileOutsideContract) {
  const auto spec = MetricSpec::euclidean(2);
  EXPECT_THROW(lift_eval(spec.finsler_program(), vec({0, 0}), vec({1, 0}), {2, 1}), UnsupportedError);
}

TEST(LiftEval, DegenerateTangentVectorIsRejected) {
  const auto spec = MetricSpec::klein(2);
  EXPECT_THROW(lift_eval(spec.finsler_program(), vec({0.1, 0}), vec({0, 1e-13}), {}), DegenerateInputError);
}

TEST(LiftEval, MatchesFiniteDifferencesOnRanders) {
  const auto spec = MetricSpec::randers_shen({0.3, -0.2}, 1);
  const auto x = vec({0.2, -0.1});
  const auto y = vec({0.8, 0.5});
  const Jet j = lift_eval(spec.finsler_program(), x, y, {1, 3});
  using K = Partial::Kind;
  for (int i = 0; i < 2; ++i) {
    const Partial dyi[] = {{K::Y, i}};
    EXPECT_NEAR(j.dy(i), fd_oracle(spec.finsler_program(), x, y, dyi), 1e-9);
    const Partial dxi[] = {{K::X, i}};
    EXPECT_NEAR(j.dx(i), fd_oracle(spec.finsler_program(), x, y, dxi), 1e-9);
    for (int k = 0; k < 2; ++k) {
      const Partial dyy[] = {{K::Y, i}, {K::Y, k}};
      EXPECT_NEAR(j.dyy(i, k), fd_oracle(spec.finsler_program(), x, y, dyy), 1e-7);
      const Partial dxy[] = {{K::X, i}, {K::Y, k}};
      EXPECT_NEAR(j.dxdy(i, k), fd_oracle(spec.finsler_program(), x, y, dxy), 1e-7);
      const Partial dxyy[] = {{K::X, i}, {K::Y, k}, {K::Y, 0}};
      EXPECT_NEAR(j.dxdydy(i, k, 0), fd_oracle(spec.finsler_program(), x, y, dxyy), 1e-5);
    }
  }
}

TEST(LiftEval, EulerRelationsHold) {
  const auto spec = MetricSpec::randers_shen({0.1, 0.4, -0.3}, -1);
  const auto x = vec({0.1, 0.2, -0.3});
  const auto y = vec({-0.4, 1.1, 0.6});
  const Jet j = lift_eval(spec.finsler_program(), x, y, {0, 3});
  EXPECT_NEAR(j.dy.dot(y), j.value, 1e-14);
  EXPECT_NEAR((j.dyy * y).norm(), 0.0, 1e-14);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += j.dyyy(a, b, k) * y(k);
      EXPECT_NEAR(s, -j.dyy(a, b), 1e-13);
    }
}

TEST(LiftEval, NonFiniteValueIsDomainError) {
  const auto spec = MetricSpec::klein(2);
  // outside the ball the square root argument goes negative for some y
  EXPECT_THROW(lift_eval(spec.finsler_program(), vec({1.5, 0}), vec({0, 1}), {}), DomainError);
}
