#include "finsler/spray.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace finsler {

SprayModel spray_model(const MetricSpec& spec, SprayRoute route) {
  if (route == SprayRoute::Generic && spec.is_pointwise()) {
    throw UnsupportedError("the generic spray needs x-derivatives of F; pointwise families have none");
  }
  return {spec.dim(), route, spec.finsler_program(), spec.projective_program()};
}

SprayData geodesic_coefficients(const MetricSpec& spec, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                SprayRoute route) {
  spec.check_point(x, y);
  const SprayModel m = spray_model(spec, route);
  const auto xv = to_std(x);
  const auto yv = to_std(y);
  const SprayT<double> s = spray_at<double>(m, as_span(xv), as_span(yv));
  const int n = spec.dim();
  SprayData d;
  d.x = x;
  d.y = y;
  d.G.resize(n);
  d.Gj.resize(n, n);
  d.Gjk = Tensor3(n);
  for (int i = 0; i < n; ++i) {
    d.G(i) = s.G[static_cast<std::size_t>(i)];
    for (int j = 0; j < n; ++j) {
      d.Gj(i, j) = s.Gj(i, j);
      for (int k = 0; k < n; ++k) d.Gjk(i, j, k) = s.Gjk(i, j, k);
    }
  }
  if (!d.G.allFinite() || !d.Gj.allFinite()) throw DomainError("geodesic coefficients are not finite");
  return d;
}

HorizontalLift horizontal_lift(const MetricSpec& spec, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                               const Eigen::VectorXd& v) {
  const SprayData s = geodesic_coefficients(spec, x, y);
  return {v, -(s.Gj * v)};
}

namespace {

OdeRhs geodesic_rhs(const MetricSpec& spec, SprayRoute route) {
  const int n = spec.dim();
  const SprayModel m = spray_model(spec, route);
  return [n, m, &spec](double, const Eigen::VectorXd& s) {
    const Eigen::VectorXd x = s.head(n);
    const Eigen::VectorXd v = s.tail(n);
    spec.check_point(x, v);
    const auto xv = to_std(x);
    const auto vv = to_std(v);
    std::vector<double> G;
    if (m.route == SprayRoute::Projective) {
      const double p = m.P.call<double>(as_span(xv), as_span(vv));
      G.resize(vv.size());
      for (std::size_t i = 0; i < vv.size(); ++i) G[i] = p * vv[i];
    } else {
      G = generic_geodesic_coefficients<double>(m.F, as_span(xv), as_span(vv));
    }
    Eigen::VectorXd ds(2 * n);
    ds.head(n) = v;
    for (int i = 0; i < n; ++i) ds(n + i) = -2.0 * G[static_cast<std::size_t>(i)];
    if (!ds.allFinite()) throw DomainError("geodesic right-hand side is not finite");
    return ds;
  };
}

OdeEvent chart_event(const MetricSpec& spec) {
  if (!spec.is_ball_chart()) return {};
  const int n = spec.dim();
  return [n](double, const Eigen::VectorXd& s) { return (1.0 - kBallMargin) - s.head(n).norm(); };
}

}  // namespace

GeodesicTrace geodesic_integrate(const MetricSpec& spec, const Eigen::VectorXd& x0, const Eigen::VectorXd& y0, double T,
                                 const OdeOptions& options, int samples, SprayRoute route) {
  spec.check_point(x0, y0);
  if (spec.is_pointwise()) throw DomainError("geodesics need a global family");
  if (!(T > 0.0) || samples < 1) throw std::invalid_argument("geodesic_integrate: need T > 0 and samples >= 1");
  const int n = spec.dim();
  Eigen::VectorXd s0(2 * n);
  s0 << x0, y0;

  GeodesicTrace trace;
  trace.points.push_back({0.0, x0, y0});
  int next = 1;
  auto observer = [&](const DenseSegment& seg) {
    while (next <= samples) {
      const double t = T * next / samples;
      if (t > seg.t1 * (1 + 1e-15)) break;
      const Eigen::VectorXd s = next == samples && seg.t1 == T ? seg.y1 : seg(t);
      trace.points.push_back({t, s.head(n), s.tail(n)});
      ++next;
    }
  };
  const OdeResult r = integrate_ode(geodesic_rhs(spec, route), 0.0, s0, T, options, chart_event(spec), observer);
  if (r.event_hit) {
    throw ChartExitError("geodesic leaves the chart at t = " + std::to_string(r.t_end), r.t_end);
  }
  trace.steps = r.steps;
  trace.rejected_steps = r.rejected_steps;
  return trace;
}

std::optional<double> chart_exit_time(const MetricSpec& spec, const Eigen::VectorXd& x0, const Eigen::VectorXd& y0,
                                      double t_max, const OdeOptions& options) {
  spec.check_point(x0, y0);
  if (!spec.is_ball_chart()) return std::nullopt;
  const int n = spec.dim();
  Eigen::VectorXd s0(2 * n);
  s0 << x0, y0;
  const OdeResult r = integrate_ode(geodesic_rhs(spec, SprayRoute::Projective), 0.0, s0, t_max, options,
                                    chart_event(spec));
  if (r.event_hit) return r.t_end;
  return std::nullopt;
}

double chord_deviation(const GeodesicTrace& trace) {
  if (trace.points.empty()) return 0.0;
  const Eigen::VectorXd& p = trace.points.front().x;
  const Eigen::VectorXd d = trace.points.front().v.normalized();
  double worst = 0.0;
  for (const auto& q : trace.points) {
    const Eigen::VectorXd w = q.x - p;
    worst = std::max(worst, (w - w.dot(d) * d).norm());
  }
  return worst;
}

}  // namespace finsler
