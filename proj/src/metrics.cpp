#include "finsler/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "finsler/sampling.hpp"

namespace finsler {

std::string_view family_name(Family f) {
  switch (f) {
    case Family::Euclidean:
      return "Euclidean";
    case Family::Klein:
      return "Klein";
    case Family::RandersShen:
      return "RandersShen";
    case Family::BryantShenPointwise:
      return "BryantShenPointwise";
    case Family::PolarProfilePointwise:
      return "PolarProfilePointwise";
    case Family::CustomPointwise:
      return "CustomPointwise";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  for (Family f : {Family::Euclidean, Family::Klein, Family::RandersShen, Family::BryantShenPointwise,
                   Family::PolarProfilePointwise, Family::CustomPointwise}) {
    if (family_name(f) == name) return f;
  }
  throw std::invalid_argument("unknown metric family '" + std::string(name) + "'");
}

ScalarProgram derive_projective_factor(const ScalarProgram& F, int n) {
  return ScalarProgram([F, n](auto x, auto y) {
    using T = elem_t<decltype(x)>;
    if constexpr (can_nest<T>) {
      const JetSpace& space = JetSpace::get({{n, 1}}, 1);
      auto xs = seed_variables<T>(&space, x, 0);
      auto ys = seed_variables<T>(nullptr, y, -1);
      const Taylor<T> f = F.call<Taylor<T>>(as_span(xs), as_span(ys));
      T directional(0.0);
      std::vector<int> e(static_cast<std::size_t>(n), 0);
      for (int i = 0; i < n; ++i) {
        e[static_cast<std::size_t>(i)] = 1;
        directional += f.derivative(e) * y[static_cast<std::size_t>(i)];
        e[static_cast<std::size_t>(i)] = 0;
      }
      return directional / (f.value() * 2.0);
    } else {
      throw_depth_exceeded("derived projective factor");
      return T(0.0);
    }
  });
}

namespace {

// sqrt(|y|^2 - (|x|^2 |y|^2 - <x,y>^2)) / (1 - |x|^2)
template <class T>
T klein_part(std::span<const T> x, std::span<const T> y, T& one_minus_xx, T& xy) {
  const T xx = norm_sq(x);
  const T yy = norm_sq(y);
  xy = dot(x, y);
  one_minus_xx = T(1.0) - xx;
  return sqrt(yy - (xx * yy - xy * xy));
}

}  // namespace

MetricSpec MetricSpec::euclidean(int n) {
  if (n < 2) throw std::invalid_argument("dimension must be >= 2");
  MetricSpec s;
  s.family_ = Family::Euclidean;
  s.n_ = n;
  s.lambda_ = 0.0;
  s.label_ = "Euclidean";
  s.closed_P_ = true;
  s.F_ = ScalarProgram([](auto /*x*/, auto y) { return sqrt(norm_sq(y)); });
  s.P_ = ScalarProgram([](auto x, auto /*y*/) {
    using T = elem_t<decltype(x)>;
    return T(0.0);
  });
  s.P_derived_ = derive_projective_factor(s.F_, n);
  return s;
}

MetricSpec MetricSpec::klein(int n) {
  if (n < 2) throw std::invalid_argument("dimension must be >= 2");
  MetricSpec s;
  s.family_ = Family::Klein;
  s.n_ = n;
  s.lambda_ = -1.0;
  s.label_ = "Klein";
  s.closed_P_ = true;
  s.F_ = ScalarProgram([](auto x, auto y) {
    using T = elem_t<decltype(x)>;
    T denom, xy;
    const T root = klein_part(x, y, denom, xy);
    return root / denom;
  });
  s.P_ = ScalarProgram([](auto x, auto y) {
    using T = elem_t<decltype(x)>;
    return dot(x, y) / (T(1.0) - norm_sq(x));
  });
  s.P_derived_ = derive_projective_factor(s.F_, n);
  return s;
}

MetricSpec MetricSpec::randers_shen(std::vector<double> a, int sign, double lambda) {
  const int n = static_cast<int>(a.size());
  if (n < 2) throw std::invalid_argument("dimension must be >= 2");
  if (sign != 1 && sign != -1) throw std::invalid_argument("RandersShen sign must be +1 or -1");
  double aa = 0.0;
  for (double v : a) aa += v * v;
  if (!(std::sqrt(aa) < 1.0)) throw std::invalid_argument("RandersShen requires |a| < 1");

  MetricSpec s;
  s.family_ = Family::RandersShen;
  s.n_ = n;
  s.a_ = a;
  s.sign_ = sign;
  s.lambda_ = lambda;
  s.label_ = "RandersShen";
  s.closed_P_ = true;
  const double sg = sign;
  s.F_ = ScalarProgram([a, sg](auto x, auto y) {
    using T = elem_t<decltype(x)>;
    T denom, xy;
    const T root = klein_part(x, y, denom, xy);
    const T one_form = dot(a, y) / (dot(a, x) + 1.0);
    return root / denom + (xy / denom + one_form) * sg;
  });
  s.P_ = ScalarProgram([a, sg](auto x, auto y) {
    using T = elem_t<decltype(x)>;
    T denom, xy;
    const T root = klein_part(x, y, denom, xy);
    const T one_form = dot(a, y) / (dot(a, x) + 1.0);
    return ((root * sg + xy) / denom - one_form) * 0.5;
  });
  s.P_derived_ = derive_projective_factor(s.F_, n);
  return s;
}

MetricSpec MetricSpec::bryant_shen_pointwise(int n, double alpha, double lambda) {
  if (n < 2) throw std::invalid_argument("dimension must be >= 2");
  if (!(std::abs(alpha) < std::numbers::pi / 2)) throw std::invalid_argument("BryantShen requires |alpha| < pi/2");
  MetricSpec s;
  s.family_ = Family::BryantShenPointwise;
  s.n_ = n;
  s.alpha_ = alpha;
  s.lambda_ = lambda;
  s.c_ = std::tan(alpha);
  s.label_ = "BryantShenPointwise";
  s.closed_P_ = true;
  const double ca = std::cos(alpha);
  const double sa = std::sin(alpha);
  s.F_ = ScalarProgram([ca](auto /*x*/, auto y) { return sqrt(norm_sq(y)) * ca; });
  s.P_ = ScalarProgram([sa](auto /*x*/, auto y) { return sqrt(norm_sq(y)) * sa; });
  return s;
}

MetricSpec MetricSpec::polar_profile_pointwise(PolarProfile profile_F, PolarProfile profile_P, double lambda) {
  MetricSpec s;
  s.family_ = Family::PolarProfilePointwise;
  s.n_ = 2;
  s.lambda_ = lambda;
  s.label_ = "PolarProfilePointwise";
  s.closed_P_ = true;
  s.F_ = profile_F.homogeneous_function();
  s.P_ = profile_P.homogeneous_function();
  s.profile_F_ = std::move(profile_F);
  s.profile_P_ = std::move(profile_P);
  return s;
}

MetricSpec MetricSpec::custom_pointwise(int n, ScalarProgram F0, ScalarProgram P0, double lambda, std::string label) {
  if (n < 2) throw std::invalid_argument("dimension must be >= 2");
  MetricSpec s;
  s.family_ = Family::CustomPointwise;
  s.n_ = n;
  s.lambda_ = lambda;
  s.label_ = std::move(label);
  s.closed_P_ = true;
  s.F_ = std::move(F0);
  s.P_ = std::move(P0);
  return s;
}

bool MetricSpec::is_pointwise() const {
  return family_ == Family::BryantShenPointwise || family_ == Family::PolarProfilePointwise ||
         family_ == Family::CustomPointwise;
}

bool MetricSpec::is_ball_chart() const { return family_ == Family::Klein || family_ == Family::RandersShen; }

const ScalarProgram& MetricSpec::derived_projective_program() const {
  if (is_pointwise()) {
    throw UnsupportedError("pointwise family carries no x-dependence to derive a projective factor from");
  }
  return P_derived_;
}

MetricSpec MetricSpec::with_lambda(std::optional<double> lambda) const {
  MetricSpec s = *this;
  s.lambda_ = lambda;
  return s;
}

void MetricSpec::check_base_point(const Eigen::VectorXd& x) const {
  if (x.size() != n_) throw std::invalid_argument("base point has wrong dimension");
  if (!x.allFinite()) throw DomainError("base point is not finite");
  if (is_pointwise() && x.norm() != 0.0) {
    throw DomainError(std::string(family_name(family_)) + " is only defined at x = 0");
  }
  if (is_ball_chart() && !(x.norm() <= 1.0 - kBallMargin)) {
    throw DomainError("base point outside the unit-ball chart (|x| > 1 - 1e-6)");
  }
}

void MetricSpec::check_point(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
  check_base_point(x);
  if (y.size() != n_) throw std::invalid_argument("tangent vector has wrong dimension");
  require_nondegenerate(y);
}

PointwiseData pointwise_at_origin(const MetricSpec& spec) {
  const int n = spec.dim();
  const ScalarProgram F = spec.finsler_program();
  const ScalarProgram P = spec.projective_program();
  // Freeze x = 0 so the pointwise data no longer depends on the base point.
  auto at_origin = [n](ScalarProgram prog) {
    return ScalarProgram([prog, n](auto /*x*/, auto y) {
      using T = elem_t<decltype(y)>;
      const std::vector<T> zero(static_cast<std::size_t>(n), T(0.0));
      return prog.call<T>(as_span(zero), y);
    });
  };
  return {n, at_origin(F), at_origin(P), spec.lambda().value_or(0.0)};
}

double finsler_value(const MetricSpec& spec, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  spec.check_point(x, y);
  const auto xv = to_std(x);
  const auto yv = to_std(y);
  const double v = spec.finsler_program().call<double>(as_span(xv), as_span(yv));
  if (!std::isfinite(v) || v <= 0.0) throw DomainError("Finsler function is not positive at the given point");
  return v;
}

Eigen::MatrixXd metric_tensor(const MetricSpec& spec, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  spec.check_point(x, y);
  const Jet j = lift_eval(spec.finsler_program(), x, y, {0, 2});
  Eigen::MatrixXd g = j.dy * j.dy.transpose() + j.value * j.dyy;
  g = 0.5 * (g + g.transpose());
  Eigen::LLT<Eigen::MatrixXd> llt(g);
  if (llt.info() != Eigen::Success) {
    throw MetricDegeneracyError("metric tensor is not positive definite at the given point");
  }
  return g;
}

double projective_factor(const MetricSpec& spec, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                         ProjectiveRoute route) {
  spec.check_point(x, y);
  const auto xv = to_std(x);
  const auto yv = to_std(y);
  const ScalarProgram& P = route == ProjectiveRoute::Derived ? spec.derived_projective_program()
                                                              : spec.projective_program();
  const double v = P.call<double>(as_span(xv), as_span(yv));
  if (!std::isfinite(v)) throw DomainError("projective factor is not finite at the given point");
  return v;
}

std::vector<ChartPoint> sample_chart(const MetricSpec& spec, int count, std::uint64_t seed, double radius) {
  SampleStream rng(seed);
  const int n = spec.dim();
  std::vector<ChartPoint> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int s = 0; s < count; ++s) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) y(i) = rng.uniform(-1.0, 1.0);
    while (y.norm() < 0.1) {
      for (int i = 0; i < n; ++i) y(i) = rng.uniform(-1.0, 1.0);
    }
    y *= rng.uniform(0.5, 2.0) / y.norm();
    if (!spec.is_pointwise()) {
      Eigen::VectorXd d(n);
      for (int i = 0; i < n; ++i) d(i) = rng.uniform(-1.0, 1.0);
      const double r = radius * std::pow(rng.uniform(), 1.0 / n);
      if (d.norm() > 0.0) x = d * (r / d.norm());
    }
    out.push_back({x, y});
  }
  return out;
}

HomogeneityReport check_homogeneity(const MetricSpec& spec, const std::vector<ChartPoint>& samples) {
  HomogeneityReport rep;
  for (const auto& p : samples) {
    const Jet j = lift_eval(spec.finsler_program(), p.x, p.y, {0, 1});
    const double F = j.value;
    rep.euler_residual = std::max(rep.euler_residual, std::abs(j.dy.dot(p.y) - F) / std::abs(F));
    for (double s : {0.5, 2.5}) {
      const double Fs = finsler_value(spec, p.x, s * p.y);
      rep.scaling_residual = std::max(rep.scaling_residual, std::abs(Fs - s * F) / std::abs(s * F));
    }
    const double Fm = finsler_value(spec, p.x, -p.y);
    rep.reversibility_defect = std::max(rep.reversibility_defect, std::abs(Fm - F) / std::abs(F));
  }
  rep.absolutely_homogeneous = rep.reversibility_defect <= 1e-10;
  return rep;
}

}  // namespace finsler
