#pragma once

// Nonlinear parallel transport, loop holonomy, polar-profile analysis and
// the rank-4 independence certifier for surfaces.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "finsler/metrics.hpp"
#include "finsler/ode.hpp"
#include "finsler/profile.hpp"

namespace finsler {

// ---------------------------------------------------------------------------
// Transport

/// Polyline in the chart, traversed vertex to vertex.
using Path = std::vector<Eigen::VectorXd>;

/// (0,0) -> (s,0) -> (s,s) -> (0,s) -> (0,0) in the (i, j) coordinate plane,
/// translated to `origin`.
Path square_loop(const Eigen::VectorXd& origin, double side, int i = 0, int j = 1);

inline constexpr double kTransportDriftTol = 1e-7;
inline constexpr double kCollapseThreshold = 1e-12;

struct TransportResult {
  Eigen::VectorXd y_end;
  double F_drift = 0.0;  // max relative change of F along the path
  int steps = 0;
  int rejected_steps = 0;
};

/// Solves dX/ds + G^i_j(c(s), X) c'^j(s) = 0 along each segment. Throws
/// TransportCollapseError when |X| drops below 1e-12 and DomainError when the
/// path leaves the chart.
TransportResult parallel_transport(const MetricSpec& spec, const Path& path, const Eigen::VectorXd& y0,
                                   const OdeOptions& options = {});

/// Transport sampled on points of the indicatrix at the loop's base point.
struct HolonomyMap {
  Eigen::VectorXd x;
  std::vector<Eigen::VectorXd> input;   // F(x, input) = 1
  std::vector<Eigen::VectorXd> output;  // radially re-projected onto F = 1
  std::vector<double> correction;       // |F(x, raw output) - 1|
  std::vector<bool> valid;              // correction <= 1e-6
  double max_F_drift = 0.0;
};

inline constexpr double kProjectionTol = 1e-6;

/// n = 2 samples a uniform angle grid; higher dimensions use seeded random
/// directions.
HolonomyMap loop_holonomy(const MetricSpec& spec, const Path& loop, int samples, std::uint64_t seed = 1,
                          const OdeOptions& options = {});

/// Max residual of the best least-squares linear fit output ~ A input,
/// relative to max |input|. Needs at least 32 valid samples.
double nonlinearity_defect(const HolonomyMap& map);

/// Same measure for raw sample pairs.
double nonlinearity_defect(const std::vector<Eigen::VectorXd>& input, const std::vector<Eigen::VectorXd>& output);

// ---------------------------------------------------------------------------
// Polar profiles

/// r(t) = -log phi(cos t, sin t) for a positive 1-homogeneous phi on the plane.
PolarProfile profile_from_function(const ScalarProgram& phi, std::string label = "phi");

/// kappa = -e^r / sqrt(rdot^2 + 1) (rddot - rdot^2 - 1)
double profile_curvature(const PolarProfile& profile, double t);

enum class Convexity { StronglyConvex, FlatPoint, Inconclusive };

struct ConvexityReport {
  Convexity verdict = Convexity::Inconclusive;
  double min_abs_kappa = 0.0;
  double max_abs_kappa = 0.0;
  double t_star = 0.0;                    // grid angle with the smallest |kappa|
  std::array<double, 2> bracket{0, 0};    // grid cell containing it (or the sign change)
};

/// Grid check of kappa != 0 over [t0, t1) (default a full turn). grid_size >= 256.
ConvexityReport strong_convexity_check(const PolarProfile& profile, int grid_size = 256,
                                       std::optional<std::array<double, 2>> interval = std::nullopt);

std::string_view convexity_name(Convexity c);

enum class ExprSign {
  /// (rddot - rdot^2 - 1) e^{-2r} sin t cos t, what direct differentiation gives
  Proof,
  /// (rdot^2 + 1 - rddot) e^{-2r} sin t cos t
  Statement,
};

/// (P_y1, P_y2, P P_y1y2) at angle t for P(0, y) = e^{-r(t)} |y|, |y| = 1.
std::array<double, 3> lemma_expr_values(const PolarProfile& profile, double t, ExprSign sign = ExprSign::Proof);

/// The same three numbers from jets of e^{-r(t)} |y| at y = (cos t, sin t).
std::array<double, 3> lemma_expr_oracle(const PolarProfile& profile, double t);

// ---------------------------------------------------------------------------
// Independence certification

inline constexpr int kMinGrid = 64;
inline constexpr int kDefaultGrid = 256;

struct IndicatrixFunctionSample {
  std::vector<double> grid;    // t_k = 2 pi k / N
  std::vector<double> values;
  std::string label;
};

std::vector<double> uniform_angle_grid(int N);
IndicatrixFunctionSample sample_function(const std::string& label, int N, const std::function<double(double)>& f);

using Quadruple = std::array<IndicatrixFunctionSample, 4>;

enum class Condition { A, B, C, General };

std::string_view condition_name(Condition c);
Condition parse_condition(std::string_view s);

/// {1, P_1, P_2, k P_1 P_2 - lambda g_12} at x = 0 (General), with the
/// condition-specific forms for A and B. `product_coefficient` is k.
Quadruple independence_quadruple(const PointwiseData& data, Condition condition, int N = kDefaultGrid,
                                 double product_coefficient = 2.0);

/// {1, cos t, sin t, (1 - lambda) cos t sin t -+ (a1 cos t + a2 sin t) cos t sin t}.
Quadruple independence_quadruple_C(const std::vector<double>& a, double lambda, int sign = 1,
                                   int N = kDefaultGrid);

enum class GramVerdict { CertifiedIndependent, Degenerate, Inconclusive };

std::string_view gram_verdict_name(GramVerdict v);

inline constexpr double kRankTol = 1e-8;
inline constexpr double kCertifyGap = 1e-6;

struct GramCertificate {
  std::array<double, 4> singular_values{};
  Eigen::Matrix4d gram = Eigen::Matrix4d::Zero();
  int rank = 0;
  double rel_gap = 0.0;
  int grid_size = 0;
  double tolerance = kRankTol;
  double certify_threshold = kCertifyGap;
  GramVerdict verdict = GramVerdict::Inconclusive;
};

GramCertificate gram_rank(const Quadruple& q, double tolerance = kRankTol, double certify_threshold = kCertifyGap);

struct Hypothesis {
  std::string name;
  bool pass = false;
  double residual = 0.0;
};

struct CertifyParams {
  int grid = kDefaultGrid;
  double tolerance = kRankTol;
  double certify_threshold = kCertifyGap;
  /// Required for condition C on non-Randers data.
  std::optional<std::vector<double>> randers_a;
  int randers_sign = 1;
};

enum class CertifyStatus { Certified, HypothesisViolation, Inconclusive, Degenerate };

inline constexpr const char* kCertifiedVerdict = "infinite-dimensional holonomy certified (numerically)";

struct CertificationReport {
  Condition condition = Condition::General;
  std::vector<Hypothesis> hypotheses;
  GramCertificate certificate;         // at N
  GramCertificate certificate_doubled; // at 2N
  bool doubled_N_consistent = false;
  CertifyStatus status = CertifyStatus::Inconclusive;
  std::string verdict;
  std::optional<double> recovered_c;   // condition B
  std::string failed;                  // names of failed hypotheses, comma separated
};

std::string_view status_verdict(CertifyStatus s);

CertificationReport certify(const PointwiseData& data, Condition condition, const CertifyParams& params = {});
/// Uses the pointwise data of `spec` at x = 0; RandersShen supplies a and
/// the sign for condition C.
CertificationReport certify(const MetricSpec& spec, Condition condition, CertifyParams params = {});

}  // namespace finsler
