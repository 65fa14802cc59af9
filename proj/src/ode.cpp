#include "finsler/ode.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "finsler/errors.hpp"

namespace finsler {

Eigen::VectorXd DenseSegment::operator()(double t) const {
  const double h = t1 - t0;
  if (h == 0.0) return y0;
  const double s = (t - t0) / h;
  const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
  const double h10 = s * (1 - s) * (1 - s);
  const double h01 = s * s * (3 - 2 * s);
  const double h11 = s * s * (s - 1);
  return h00 * y0 + h10 * h * f0 + h01 * y1 + h11 * h * f1;
}

namespace {

// Dormand-Prince tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

struct Trial {
  bool ok = false;
  Eigen::VectorXd y1, f1;
  double err = 0.0;
};

Trial dopri_step(const OdeRhs& f, double t, const Eigen::VectorXd& y, const Eigen::VectorXd& k1, double h,
                 const OdeOptions& o) {
  Trial tr;
  try {
    const Eigen::VectorXd k2 = f(t + c2 * h, y + h * (a21 * k1));
    const Eigen::VectorXd k3 = f(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
    const Eigen::VectorXd k4 = f(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const Eigen::VectorXd k5 = f(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Eigen::VectorXd k6 = f(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    tr.y1 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    tr.f1 = f(t + h, tr.y1);
    const Eigen::VectorXd e = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * tr.f1);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < e.size(); ++i) {
      const double sc = o.atol + o.rtol * std::max(std::abs(y(i)), std::abs(tr.y1(i)));
      acc += (e(i) / sc) * (e(i) / sc);
    }
    tr.err = std::sqrt(acc / static_cast<double>(e.size()));
    tr.ok = std::isfinite(tr.err) && tr.y1.allFinite();
  } catch (const DomainError&) {
    tr.ok = false;
  }
  return tr;
}

// Root of g along the dense segment, by bisection on the interpolant.
double locate_event(const OdeEvent& g, const DenseSegment& seg) {
  double lo = seg.t0, hi = seg.t1;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid, seg(mid)) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

}  // namespace

OdeResult integrate_ode(const OdeRhs& f, double t0, const Eigen::VectorXd& y0, double t1, const OdeOptions& o,
                        const OdeEvent& event, const OdeObserver& observer) {
  OdeResult res;
  res.t_end = t0;
  res.y_end = y0;
  if (!(t1 > t0)) return res;

  double t = t0;
  Eigen::VectorXd y = y0;
  Eigen::VectorXd k1 = f(t, y);
  double h = std::min({o.initial_step, o.max_step, t1 - t0});
  double g_prev = event ? event(t, y) : 1.0;

  while (t < t1) {
    if (res.steps + res.rejected_steps >= o.max_steps) throw StepFailureError("ODE step budget exhausted");
    const bool last = t + h >= t1;
    if (last) h = t1 - t;
    const Trial tr = dopri_step(f, t, y, k1, h, o);
    if (!tr.ok || tr.err > 1.0) {
      ++res.rejected_steps;
      const double fac = tr.ok ? std::max(0.2, 0.9 * std::pow(tr.err, -0.2)) : 0.25;
      h *= fac;
      if (h < o.min_step) {
        throw StepFailureError("ODE step size underflow at t = " + std::to_string(t));
      }
      continue;
    }
    DenseSegment seg{t, last ? t1 : t + h, y, tr.y1, k1, tr.f1};
    ++res.steps;
    if (event) {
      const double g_new = event(seg.t1, tr.y1);
      if (g_prev > 0.0 && g_new <= 0.0) {
        const double te = locate_event(event, seg);
        DenseSegment cut{seg.t0, te, seg.y0, seg(te), seg.f0, Eigen::VectorXd()};
        try {
          cut.f1 = f(te, cut.y1);
        } catch (const DomainError&) {
          cut.f1 = seg.f1;
        }
        if (observer) observer(cut);
        res.t_end = te;
        res.y_end = cut.y1;
        res.event_hit = true;
        return res;
      }
      g_prev = g_new;
    }
    if (observer) observer(seg);
    t = seg.t1;
    y = tr.y1;
    k1 = tr.f1;
    const double fac = tr.err > 0.0 ? std::min(5.0, std::max(0.2, 0.9 * std::pow(tr.err, -0.2))) : 5.0;
    h = std::min(h * fac, o.max_step);
  }
  res.t_end = t;
  res.y_end = y;
  return res;
}

}  // namespace finsler
