#include "finsler/curvature.hpp"

#include <algorithm>
#include <cmath>

#include "finsler/spray.hpp"

namespace finsler {

namespace {

void require_global(const MetricSpec& spec, const char* what) {
  if (spec.is_pointwise()) {
    throw UnsupportedError(std::string(what) + " needs x-derivatives; " + std::string(family_name(spec.family())) +
                           " only carries data at x = 0");
  }
}

Eigen::VectorXd to_vec(const std::vector<double>& v) { return to_eigen(v); }

// Curvature tensor flattened to n^3 entries, as a program.
FieldProgram curvature_program(const SprayModel& m) {
  return FieldProgram([m](auto x, auto y) {
    using T = elem_t<decltype(x)>;
    const CubeArray<T> R = curvature_at<T>(m, x, y);
    return R.data();
  });
}

}  // namespace

Tensor3 riemann_curvature(const MetricSpec& spec, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                          SprayRoute route) {
  require_global(spec, "curvature");
  spec.check_point(x, y);
  const SprayModel m = spray_model(spec, route);
  const auto xv = to_std(x);
  const auto yv = to_std(y);
  return curvature_at<double>(m, as_span(xv), as_span(yv));
}

FlagCurvatureResidual flag_curvature_residual(const MetricSpec& spec, const Eigen::VectorXd& x,
                                              const Eigen::VectorXd& y, double lambda) {
  const Tensor3 R = riemann_curvature(spec, x, y);
  const Eigen::MatrixXd g = metric_tensor(spec, x, y);
  const Eigen::VectorXd gy = g * y;
  const int n = spec.dim();
  double dp = 0.0, dm = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const double model = lambda * ((i == k ? gy(j) : 0.0) - (i == j ? gy(k) : 0.0));
        dp = std::max(dp, std::abs(R(i, j, k) - model));
        dm = std::max(dm, std::abs(R(i, j, k) + model));
      }
    }
  }
  const double scale = 1.0 + max_abs(R);
  FlagCurvatureResidual out;
  out.residual_plus = dp / scale;
  out.residual_minus = dm / scale;
  out.matched_sign = out.residual_plus <= out.residual_minus ? 1 : -1;
  out.residual = std::min(out.residual_plus, out.residual_minus);
  return out;
}

Eigen::VectorXd IndicatrixVectorField::operator()(const Eigen::VectorXd& y) const { return at(x, y); }

Eigen::VectorXd IndicatrixVectorField::at(const Eigen::VectorXd& x_other, const Eigen::VectorXd& y) const {
  require_nondegenerate(y);
  const auto xv = to_std(x_other);
  const auto yv = to_std(y);
  return to_vec(field.call<double>(as_span(xv), as_span(yv)));
}

IndicatrixVectorField curvature_vector_field(const MetricSpec& spec, const Eigen::VectorXd& x,
                                             const Eigen::VectorXd& X, const Eigen::VectorXd& Y) {
  require_global(spec, "curvature vector field");
  spec.check_base_point(x);
  const int n = spec.dim();
  if (X.size() != n || Y.size() != n) throw std::invalid_argument("curvature_vector_field: wrong dimension");
  const SprayModel m = spray_model(spec);
  const std::vector<double> Xv = to_std(X), Yv = to_std(Y);
  FieldProgram f([m, Xv, Yv](auto xs, auto ys) {
    using T = elem_t<decltype(xs)>;
    const CubeArray<T> R = curvature_at<T>(m, xs, ys);
    const int d = R.dim();
    std::vector<T> xi(static_cast<std::size_t>(d), T(0.0));
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        for (int k = 0; k < d; ++k) {
          const double c = Xv[static_cast<std::size_t>(j)] * Yv[static_cast<std::size_t>(k)];
          if (c != 0.0) xi[static_cast<std::size_t>(i)] += R(i, j, k) * c;
        }
      }
    }
    return xi;
  });
  return {n, x, std::move(f), "R(X,Y)"};
}

IndicatrixVectorField berwald_covariant_derivative(const MetricSpec& spec, const IndicatrixVectorField& xi,
                                                   const Eigen::VectorXd& X) {
  require_global(spec, "Berwald covariant derivative");
  if (X.size() != spec.dim()) throw std::invalid_argument("berwald_covariant_derivative: wrong dimension");
  const SprayModel m = spray_model(spec);
  const std::vector<double> Xv = to_std(X);
  FieldProgram inner = xi.field;
  FieldProgram f([m, inner, Xv](auto xs, auto ys) {
    using T = elem_t<decltype(xs)>;
    return berwald_derivative_at<T>(m, inner, Xv, xs, ys);
  });
  return {xi.n, xi.x, std::move(f), "nabla(" + xi.provenance + ")"};
}

Eigen::VectorXd first_covariant_closed_form(const MetricSpec& spec, const Eigen::VectorXd& x,
                                            const Eigen::VectorXd& y, const Eigen::VectorXd& W) {
  if (spec.dim() != 2) throw UnsupportedError("the closed form covers surfaces (n = 2) only");
  require_global(spec, "covariant derivative");
  spec.check_point(x, y);
  const Jet p = lift_eval(spec.projective_program(), x, y, {0, 1});
  const auto xi = curvature_vector_field(spec, x, Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1));
  return 3.0 * p.dy.dot(W) * xi(y);
}

SecondCovariant second_covariant_closed_form(const MetricSpec& spec, const Eigen::VectorXd& x,
                                             const Eigen::VectorXd& y, const Eigen::VectorXd& W,
                                             const Eigen::VectorXd& Z) {
  if (spec.dim() != 2) throw UnsupportedError("the closed form covers surfaces (n = 2) only");
  require_global(spec, "covariant derivative");
  spec.check_point(x, y);
  const Jet p = lift_eval(spec.projective_program(), x, y, {1, 2});
  const auto xi = curvature_vector_field(spec, x, Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1));
  const Eigen::VectorXd v = xi(y);
  // dxdy(j, k) = d^2 P / dx^j dy^k
  const double mixed = Z.dot(p.dxdy * W) - p.value * Z.dot(p.dyy * W);
  const double prod = p.dy.dot(W) * p.dy.dot(Z);
  SecondCovariant out;
  out.closed_form = 3.0 * (mixed + 3.0 * prod) * v;
  out.closed_form_unit_coefficient = 3.0 * (mixed + prod) * v;
  out.nested = berwald_covariant_derivative(spec, berwald_covariant_derivative(spec, xi, W), Z)(y);
  return out;
}

double projective_identity_residual(const MetricSpec& spec, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                    double lambda) {
  require_global(spec, "projective identity");
  spec.check_point(x, y);
  const Jet p = lift_eval(spec.projective_program(), x, y, {1, 2});
  const Eigen::MatrixXd g = metric_tensor(spec, x, y);
  const int n = spec.dim();
  double worst = 0.0;
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      const double lhs = p.dxdy(k, l) - p.value * p.dyy(k, l) + p.dy(k) * p.dy(l);
      const double rhs = 2.0 * p.dy(k) * p.dy(l) - lambda * g(k, l);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  return worst;
}

double nabla_R_residual(const MetricSpec& spec, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                        const Eigen::VectorXd& W) {
  require_global(spec, "nabla R");
  spec.check_point(x, y);
  const int n = spec.dim();
  const SprayModel m = spray_model(spec);
  const auto xv = to_std(x);
  const auto yv = to_std(y);
  const auto Rj = lift_field<double>(curvature_program(m), as_span(xv), as_span(yv), 1, 1, 1);
  const SprayT<double> s = spray_at<double>(m, as_span(xv), as_span(yv));
  auto idx = [n](int i, int j, int k) { return static_cast<std::size_t>((i * n + j) * n + k); };
  auto R = [&](int i, int j, int k) { return Rj[idx(i, j, k)].value(); };

  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        XYJetReader<double> r(Rj[idx(i, j, k)], n);
        double acc = 0.0;
        for (int l = 0; l < n; ++l) {
          if (W(l) == 0.0) continue;
          double t = r.dx(l);
          for (int q = 0; q < n; ++q) {
            t -= s.Gj(q, l) * r.dy(q);
            t += s.Gjk(i, l, q) * R(q, j, k);
            t -= s.Gjk(q, l, j) * R(i, q, k);
            t -= s.Gjk(q, l, k) * R(i, j, q);
          }
          acc += t * W(l);
        }
        worst = std::max(worst, std::abs(acc));
      }
    }
  }
  return worst;
}

}  // namespace finsler
