#pragma once

// Catalog of Finsler metric families.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "finsler/diffengine.hpp"
#include "finsler/profile.hpp"

namespace finsler {

enum class Family {
  Euclidean,
  Klein,
  RandersShen,
  BryantShenPointwise,
  PolarProfilePointwise,
  CustomPointwise,
};

std::string_view family_name(Family f);
/// Inverse of family_name; throws std::invalid_argument on unknown names.
Family parse_family(std::string_view name);

/// Margin kept from the unit sphere by ball charts.
inline constexpr double kBallMargin = 1e-6;

/// Data of a metric at the single point x = 0.
struct PointwiseData {
  int n = 2;
  ScalarProgram F0;
  ScalarProgram P0;
  double lambda = 0.0;
};

/// Immutable description of a Finsler family: F, its projective factor and
/// known constants.
class MetricSpec {
 public:
  static MetricSpec euclidean(int n);
  /// Beltrami-Klein metric on the unit ball, flag curvature -1.
  static MetricSpec klein(int n);
  /// Projectively flat Randers metric on the unit ball, |a| < 1, sign = +-1.
  static MetricSpec randers_shen(std::vector<double> a, int sign, double lambda = -0.25);
  /// F(0, y) = |y| cos(alpha), P(0, y) = |y| sin(alpha), |alpha| < pi/2.
  static MetricSpec bryant_shen_pointwise(int n, double alpha, double lambda = 1.0);
  static MetricSpec polar_profile_pointwise(PolarProfile profile_F, PolarProfile profile_P, double lambda);
  static MetricSpec custom_pointwise(int n, ScalarProgram F0, ScalarProgram P0, double lambda,
                                     std::string label = "custom");

  Family family() const { return family_; }
  int dim() const { return n_; }
  const std::vector<double>& a() const { return a_; }
  int sign() const { return sign_; }
  double alpha() const { return alpha_; }
  std::optional<double> c() const { return c_; }
  std::optional<double> lambda() const { return lambda_; }
  const std::optional<PolarProfile>& profile_F() const { return profile_F_; }
  const std::optional<PolarProfile>& profile_P() const { return profile_P_; }
  const std::string& label() const { return label_; }

  /// Pointwise families are only defined at x = 0.
  bool is_pointwise() const;
  bool is_ball_chart() const;
  bool has_closed_form_projective_factor() const { return closed_P_; }

  const ScalarProgram& finsler_program() const { return F_; }
  /// Closed form when the family has one, otherwise (1/2F) dF/dx^i y^i.
  const ScalarProgram& projective_program() const { return P_; }
  /// (1/2F) dF/dx^i y^i evaluated through nested jets (global families).
  const ScalarProgram& derived_projective_program() const;

  /// Throws DomainError / DegenerateInputError when (x, y) is unusable.
  void check_point(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
  void check_base_point(const Eigen::VectorXd& x) const;

  MetricSpec with_lambda(std::optional<double> lambda) const;

 private:
  MetricSpec() = default;

  Family family_ = Family::Euclidean;
  int n_ = 2;
  std::vector<double> a_;
  int sign_ = 1;
  double alpha_ = 0.0;
  std::optional<double> c_;
  std::optional<double> lambda_;
  std::optional<PolarProfile> profile_F_;
  std::optional<PolarProfile> profile_P_;
  std::string label_;
  bool closed_P_ = false;
  ScalarProgram F_;
  ScalarProgram P_;
  ScalarProgram P_derived_;
};

/// (1/2F) dF/dx^i y^i as a program, differentiating F through one extra jet
/// level.
ScalarProgram derive_projective_factor(const ScalarProgram& F, int n);

PointwiseData pointwise_at_origin(const MetricSpec& spec);

double finsler_value(const MetricSpec& spec, const Eigen::VectorXd& x, const Eigen::VectorXd& y);

/// g_ij = 1/2 d^2 F^2 / dy^i dy^j. Throws MetricDegeneracyError when g is not
/// positive definite.
Eigen::MatrixXd metric_tensor(const MetricSpec& spec, const Eigen::VectorXd& x, const Eigen::VectorXd& y);

enum class ProjectiveRoute { Auto, ClosedForm, Derived };

double projective_factor(const MetricSpec& spec, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                         ProjectiveRoute route = ProjectiveRoute::Auto);

struct ChartPoint {
  Eigen::VectorXd x;
  Eigen::VectorXd y;
};

/// Reproducible random (x, y) samples. Ball charts draw |x| <= radius,
/// pointwise families use x = 0.
std::vector<ChartPoint> sample_chart(const MetricSpec& spec, int count, std::uint64_t seed, double radius = 0.6);

struct HomogeneityReport {
  /// max |y^k dF/dy^k - F| / F
  double euler_residual = 0.0;
  /// max |F(s y) - s F(y)| / (s F(y)) for s in {0.5, 2.5}
  double scaling_residual = 0.0;
  /// max |F(-y) - F(y)| / F(y)
  double reversibility_defect = 0.0;
  bool absolutely_homogeneous = false;
};

HomogeneityReport check_homogeneity(const MetricSpec& spec, const std::vector<ChartPoint>& samples);

}  // namespace finsler
