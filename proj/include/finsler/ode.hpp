#pragma once

// Adaptive Dormand-Prince 4(5) integrator with cubic Hermite dense output
// and a single terminal event.

#include <functional>
#include <limits>

#include <Eigen/Dense>

namespace finsler {

struct OdeOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double initial_step = 1e-3;
  double max_step = std::numeric_limits<double>::infinity();
  double min_step = 1e-14;
  int max_steps = 200000;
};

/// dy/dt = f(t, y). A DomainError thrown by f rejects the current step.
using OdeRhs = std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)>;
/// Integration stops where g(t, y) changes sign from positive to non-positive.
using OdeEvent = std::function<double(double, const Eigen::VectorXd&)>;

/// One accepted step, enough for cubic Hermite interpolation.
struct DenseSegment {
  double t0 = 0.0;
  double t1 = 0.0;
  Eigen::VectorXd y0, y1, f0, f1;

  Eigen::VectorXd operator()(double t) const;
};

using OdeObserver = std::function<void(const DenseSegment&)>;

struct OdeResult {
  double t_end = 0.0;
  Eigen::VectorXd y_end;
  bool event_hit = false;
  int steps = 0;
  int rejected_steps = 0;
};

/// Integrates from t0 to t1 (t1 > t0). Throws StepFailureError when the step
/// size underflows or the step budget runs out.
OdeResult integrate_ode(const OdeRhs& f, double t0, const Eigen::VectorXd& y0, double t1, const OdeOptions& options,
                        const OdeEvent& event = {}, const OdeObserver& observer = {});

}  // namespace finsler
