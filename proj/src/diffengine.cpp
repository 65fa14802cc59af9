#include "finsler/diffengine.hpp"

#include <cmath>
#include <string>

namespace finsler {

void require_nondegenerate(const Eigen::VectorXd& y) {
  if (!(y.norm() > kDegenerateY)) {
    throw DegenerateInputError("tangent vector is (numerically) zero: |y| <= 1e-12");
  }
}

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string(what) + ": program left its chart (non-finite value)");
}

}  // namespace

Jet lift_eval(const ScalarProgram& program, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
              OrderProfile profile) {
  if (profile.x_order < 0 || profile.x_order > 1 || profile.y_order < 0 || profile.y_order > 3) {
    throw UnsupportedError("lift_eval: order profile outside (x <= 1, y <= 3)");
  }
  if (x.size() != y.size()) throw std::invalid_argument("lift_eval: x and y dimensions differ");
  require_nondegenerate(y);

  const int n = static_cast<int>(y.size());
  // dx*dy*dy needs total order 3 even when y_order is smaller.
  const int total = profile.x_order + profile.y_order;
  const std::vector<double> xv = to_std(x);
  const std::vector<double> yv = to_std(y);
  const T1 t = lift_generic<double>(program, as_span(xv), as_span(yv), profile.x_order, profile.y_order, total);
  XYJetReader<double> r(t, n);

  Jet jet;
  jet.n = n;
  jet.profile = profile;
  jet.value = r.value();
  require_finite(jet.value, "lift_eval");

  if (profile.y_order >= 1) {
    jet.dy.resize(n);
    for (int i = 0; i < n; ++i) jet.dy(i) = r.dy(i);
  }
  if (profile.y_order >= 2) {
    jet.dyy.resize(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) jet.dyy(i, j) = r.dyy(i, j);
    }
  }
  if (profile.y_order >= 3) {
    jet.dyyy = Tensor3(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) jet.dyyy(i, j, k) = r.dyyy(i, j, k);
      }
    }
  }
  if (profile.x_order >= 1) {
    jet.dx.resize(n);
    for (int i = 0; i < n; ++i) jet.dx(i) = r.dx(i);
    if (profile.y_order >= 1) {
      jet.dxdy.resize(n, n);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) jet.dxdy(i, j) = r.dxdy(i, j);
      }
    }
    if (profile.y_order >= 2) {
      jet.dxdydy = Tensor3(n);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          for (int k = 0; k < n; ++k) jet.dxdydy(i, j, k) = r.dxdydy(i, j, k);
        }
      }
    }
  }

  for (int i = 0; i < jet.dy.size(); ++i) require_finite(jet.dy(i), "lift_eval");
  for (int i = 0; i < jet.dyy.size(); ++i) require_finite(jet.dyy.data()[i], "lift_eval");
  for (double v : jet.dyyy.data()) require_finite(v, "lift_eval");
  for (int i = 0; i < jet.dx.size(); ++i) require_finite(jet.dx(i), "lift_eval");
  for (int i = 0; i < jet.dxdy.size(); ++i) require_finite(jet.dxdy.data()[i], "lift_eval");
  for (double v : jet.dxdydy.data()) require_finite(v, "lift_eval");
  return jet;
}

namespace {

double eval_at(const ScalarProgram& program, const std::vector<double>& x, const std::vector<double>& y) {
  const double v = program.call<double>(as_span(x), as_span(y));
  require_finite(v, "fd_oracle");
  return v;
}

// Tensor-product central stencil: sum over sign patterns of f(p + h s)
// weighted by prod(s) / (2h)^k.
double central_stencil(const ScalarProgram& program, const std::vector<double>& x,
                       const std::vector<double>& y, std::span<const Partial> idx, double h) {
  const std::size_t k = idx.size();
  if (k == 0) return eval_at(program, x, y);
  double sum = 0.0;
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    xs = x;
    ys = y;
    double sign = 1.0;
    for (std::size_t b = 0; b < k; ++b) {
      const double s = (mask >> b & 1U) ? -1.0 : 1.0;
      sign *= s;
      auto& target = idx[b].kind == Partial::Kind::X ? xs : ys;
      target[static_cast<std::size_t>(idx[b].index)] += s * h;
    }
    sum += sign * eval_at(program, xs, ys);
  }
  return sum / std::pow(2.0 * h, static_cast<double>(k));
}

}  // namespace

double fd_oracle(const ScalarProgram& program, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                 std::span<const Partial> multi_index, FdOptions options) {
  require_nondegenerate(y);
  const int n = static_cast<int>(y.size());
  for (const auto& p : multi_index) {
    if (p.index < 0 || p.index >= n) throw std::out_of_range("fd_oracle: variable index out of range");
  }
  const std::vector<double> xv = to_std(x);
  const std::vector<double> yv = to_std(y);
  if (multi_index.empty()) return eval_at(program, xv, yv);

  const double order_scale = std::pow(10.0, static_cast<double>(multi_index.size()) - 1.0);
  const double h = options.base_step * order_scale * std::max(1.0, y.norm());
  const double coarse = central_stencil(program, xv, yv, multi_index, h);
  if (!options.richardson) return coarse;
  const double fine = central_stencil(program, xv, yv, multi_index, 0.5 * h);
  return (4.0 * fine - coarse) / 3.0;
}

}  // namespace finsler
