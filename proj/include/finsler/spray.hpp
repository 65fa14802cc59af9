#pragma once

// Geodesic coefficients, horizontal lift and geodesic integration.

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "finsler/kernels.hpp"
#include "finsler/metrics.hpp"
#include "finsler/ode.hpp"

namespace finsler {

struct SprayData {
  Eigen::VectorXd x;
  Eigen::VectorXd y;
  Eigen::VectorXd G;    // G^i
  Eigen::MatrixXd Gj;   // G^i_j
  Tensor3 Gjk;          // G^i_jk
};

/// Kernel inputs for a metric. The generic route needs a global family.
SprayModel spray_model(const MetricSpec& spec, SprayRoute route = SprayRoute::Projective);

SprayData geodesic_coefficients(const MetricSpec& spec, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                SprayRoute route = SprayRoute::Projective);

/// Components of the horizontal lift of v at (x, y) in the (d/dx, d/dy) splitting.
struct HorizontalLift {
  Eigen::VectorXd horizontal;  // v
  Eigen::VectorXd vertical;    // -G^i_k v^k
};

HorizontalLift horizontal_lift(const MetricSpec& spec, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                               const Eigen::VectorXd& v);

struct GeodesicPoint {
  double t = 0.0;
  Eigen::VectorXd x;
  Eigen::VectorXd v;
};

struct GeodesicTrace {
  std::vector<GeodesicPoint> points;  // uniform in t, endpoints included
  int steps = 0;
  int rejected_steps = 0;
};

/// Solves x'' + 2 G(x, x') = 0 on [0, T], sampled at `samples` + 1 uniform
/// times. Throws ChartExitError (carrying the exit time) when the curve
/// reaches |x| = 1 - 1e-6 on a ball chart before T.
GeodesicTrace geodesic_integrate(const MetricSpec& spec, const Eigen::VectorXd& x0, const Eigen::VectorXd& y0, double T,
                                 const OdeOptions& options = {}, int samples = 200,
                                 SprayRoute route = SprayRoute::Projective);

/// First time the geodesic leaves the chart, if it does so before t_max.
std::optional<double> chart_exit_time(const MetricSpec& spec, const Eigen::VectorXd& x0, const Eigen::VectorXd& y0,
                                      double t_max, const OdeOptions& options = {});

/// Largest distance of the trace from the line through x(0) along x'(0).
double chord_deviation(const GeodesicTrace& trace);

}  // namespace finsler
