#pragma once

// Curvature of the spray, curvature vector fields and their horizontal
// Berwald derivatives.

#include <string>

#include <Eigen/Dense>

#include "finsler/kernels.hpp"
#include "finsler/metrics.hpp"

namespace finsler {

/// R^i_jk at (x, y); antisymmetric in (j, k). Global families only.
Tensor3 riemann_curvature(const MetricSpec& spec, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                          SprayRoute route = SprayRoute::Projective);

struct FlagCurvatureResidual {
  /// min over the two sign conventions
  double residual = 0.0;
  /// +1: R = lambda (d^i_k g_jm y^m - d^i_j g_km y^m); -1: the opposite order
  int matched_sign = 1;
  double residual_plus = 0.0;
  double residual_minus = 0.0;
};

/// |R -+ lambda (...)|_inf / (1 + |R|_inf) for both signs.
FlagCurvatureResidual flag_curvature_residual(const MetricSpec& spec, const Eigen::VectorXd& x,
                                              const Eigen::VectorXd& y, double lambda);

/// A vertical vector field y -> xi(x, y) over a base point. The program also
/// depends on x so that it can be differentiated horizontally.
struct IndicatrixVectorField {
  int n = 2;
  Eigen::VectorXd x;
  FieldProgram field;
  std::string provenance;

  Eigen::VectorXd operator()(const Eigen::VectorXd& y) const;
  Eigen::VectorXd at(const Eigen::VectorXd& x_other, const Eigen::VectorXd& y) const;
};

/// xi(y) = R(X, Y)(x, y), i.e. R^i_jk X^j Y^k.
IndicatrixVectorField curvature_vector_field(const MetricSpec& spec, const Eigen::VectorXd& x,
                                             const Eigen::VectorXd& X, const Eigen::VectorXd& Y);

/// Horizontal Berwald derivative along the constant vector X.
IndicatrixVectorField berwald_covariant_derivative(const MetricSpec& spec, const IndicatrixVectorField& xi,
                                                   const Eigen::VectorXd& X);

/// 3 (dP/dy^k) W^k xi for the surface curvature field xi = R(e1, e2).
Eigen::VectorXd first_covariant_closed_form(const MetricSpec& spec, const Eigen::VectorXd& x,
                                            const Eigen::VectorXd& y, const Eigen::VectorXd& W);

struct SecondCovariant {
  /// 3 {P_{x^j y^k} - P P_{kj} + 3 P_k P_j} W^k Z^j xi, the derivation rule
  /// applied to the first closed form.
  Eigen::VectorXd closed_form;
  /// 3 {P_{x^j y^k} - P P_{kj} + P_k P_j} W^k Z^j xi, coefficient 1 on the
  /// last product.
  Eigen::VectorXd closed_form_unit_coefficient;
  /// Nested generic path: nabla_Z (nabla_W xi).
  Eigen::VectorXd nested;
};

SecondCovariant second_covariant_closed_form(const MetricSpec& spec, const Eigen::VectorXd& x,
                                             const Eigen::VectorXd& y, const Eigen::VectorXd& W,
                                             const Eigen::VectorXd& Z);

/// max_kl |(P_{x^k y^l} - P P_kl + P_k P_l) - (2 P_k P_l - lambda g_kl)|.
double projective_identity_residual(const MetricSpec& spec, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                    double lambda);

/// |nabla_W R|_inf with the curvature tensor differentiated slot-wise.
double nabla_R_residual(const MetricSpec& spec, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                        const Eigen::VectorXd& W);

}  // namespace finsler
