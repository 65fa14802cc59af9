#include "finsler/holonomy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "finsler/sampling.hpp"

namespace finsler {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Eigen::VectorXd unit2(double t) { return Eigen::Vector2d(std::cos(t), std::sin(t)); }

}  // namespace

// ---------------------------------------------------------------------------
// Transport

Path square_loop(const Eigen::VectorXd& origin, double side, int i, int j) {
  Eigen::VectorXd ei = Eigen::VectorXd::Zero(origin.size());
  Eigen::VectorXd ej = ei;
  ei(i) = side;
  ej(j) = side;
  return {origin, origin + ei, origin + ei + ej, origin + ej, origin};
}

TransportResult parallel_transport(const MetricSpec& spec, const Path& path, const Eigen::VectorXd& y0,
                                   const OdeOptions& options) {
  if (path.empty()) throw std::invalid_argument("parallel_transport: empty path");
  const int n = spec.dim();
  // The ball chart is convex, so checking vertices keeps whole segments inside.
  for (const auto& p : path) spec.check_base_point(p);
  spec.check_point(path.front(), y0);

  const ScalarProgram& P = spec.projective_program();
  const double F0 = finsler_value(spec, path.front(), y0);
  TransportResult res;
  res.y_end = y0;

  for (std::size_t s = 0; s + 1 < path.size(); ++s) {
    const Eigen::VectorXd p0 = path[s];
    const Eigen::VectorXd d = path[s + 1] - path[s];
    if (d.norm() == 0.0) continue;
    auto rhs = [&, p0, d](double u, const Eigen::VectorXd& X) -> Eigen::VectorXd {
      if (X.norm() < kCollapseThreshold) {
        throw TransportCollapseError("transported vector collapsed to zero");
      }
      const auto xv = to_std(p0 + u * d);
      const auto yv = to_std(X);
      const Taylor<double> pj = lift_generic<double>(P, as_span(xv), as_span(yv), 0, 1, 1);
      XYJetReader<double> r(pj, n);
      // G^i_j d^j = (P_j d^j) X^i + P d^i
      double pd = 0.0;
      for (int j = 0; j < n; ++j) pd += r.dy(j) * d(j);
      Eigen::VectorXd out = -(pd * X + r.value() * d);
      if (!out.allFinite()) throw DomainError("transport right-hand side is not finite");
      return out;
    };
    auto observer = [&, p0, d](const DenseSegment& seg) {
      const double F = finsler_value(spec, p0 + seg.t1 * d, seg.y1);
      res.F_drift = std::max(res.F_drift, std::abs(F - F0) / F0);
    };
    const OdeResult r = integrate_ode(rhs, 0.0, res.y_end, 1.0, options, {}, observer);
    res.y_end = r.y_end;
    res.steps += r.steps;
    res.rejected_steps += r.rejected_steps;
  }
  if (res.y_end.norm() < kCollapseThreshold) throw TransportCollapseError("transported vector collapsed to zero");
  return res;
}

HolonomyMap loop_holonomy(const MetricSpec& spec, const Path& loop, int samples, std::uint64_t seed,
                          const OdeOptions& options) {
  if (loop.size() < 1) throw std::invalid_argument("loop_holonomy: empty loop");
  if ((loop.back() - loop.front()).norm() > 1e-12) throw std::invalid_argument("loop_holonomy: loop is not closed");
  if (samples < 1) throw std::invalid_argument("loop_holonomy: need at least one sample");
  const int n = spec.dim();
  HolonomyMap map;
  map.x = loop.front();
  SampleStream rng(seed);
  for (int k = 0; k < samples; ++k) {
    Eigen::VectorXd u(n);
    if (n == 2) {
      u = unit2(kTwoPi * k / samples);
    } else {
      do {
        for (int i = 0; i < n; ++i) u(i) = rng.uniform(-1.0, 1.0);
      } while (u.norm() < 0.1 || u.norm() > 1.0);
      u.normalize();
    }
    const Eigen::VectorXd y = u / finsler_value(spec, map.x, u);
    const TransportResult t = parallel_transport(spec, loop, y, options);
    const double Fz = finsler_value(spec, map.x, t.y_end);
    map.input.push_back(y);
    map.output.push_back(t.y_end / Fz);
    map.correction.push_back(std::abs(Fz - 1.0));
    map.valid.push_back(std::abs(Fz - 1.0) <= kProjectionTol);
    map.max_F_drift = std::max(map.max_F_drift, t.F_drift);
  }
  return map;
}

double nonlinearity_defect(const std::vector<Eigen::VectorXd>& input, const std::vector<Eigen::VectorXd>& output) {
  if (input.size() != output.size()) throw std::invalid_argument("nonlinearity_defect: size mismatch");
  if (input.size() < 32) throw SamplingError("nonlinearity_defect needs at least 32 samples");
  const int m = static_cast<int>(input.size());
  const int n = static_cast<int>(input.front().size());
  Eigen::MatrixXd Y(m, n), Z(m, n);
  for (int k = 0; k < m; ++k) {
    Y.row(k) = input[static_cast<std::size_t>(k)].transpose();
    Z.row(k) = output[static_cast<std::size_t>(k)].transpose();
  }
  const Eigen::MatrixXd At = Y.colPivHouseholderQr().solve(Z);
  const Eigen::MatrixXd resid = Z - Y * At;
  double worst = 0.0, scale = 0.0;
  for (int k = 0; k < m; ++k) {
    worst = std::max(worst, resid.row(k).norm());
    scale = std::max(scale, Y.row(k).norm());
  }
  return scale > 0.0 ? worst / scale : 0.0;
}

double nonlinearity_defect(const HolonomyMap& map) {
  std::vector<Eigen::VectorXd> in, out;
  for (std::size_t k = 0; k < map.input.size(); ++k) {
    if (!map.valid[k]) continue;
    in.push_back(map.input[k]);
    out.push_back(map.output[k]);
  }
  return nonlinearity_defect(in, out);
}

// ---------------------------------------------------------------------------
// Polar profiles

PolarProfile profile_from_function(const ScalarProgram& phi, std::string label) {
  ProfileProgram r([phi](const auto& t) {
    using T = std::remove_cvref_t<decltype(t)>;
    const std::vector<T> x(2, T(0.0));
    const std::vector<T> y{cos(t), sin(t)};
    const T v = phi.call<T>(as_span(x), as_span(y));
    if (!(primal(v) > 0.0)) throw DomainError("profile_from_function: phi is not positive on every ray");
    return -log(v);
  });
  // absolute homogeneity shows up as pi-periodicity of r
  bool pi_periodic = true;
  for (int k = 0; k < 64 && pi_periodic; ++k) {
    const double t = kTwoPi * k / 64;
    const double a = r.call<double>(t);
    const double b = r.call<double>(t + std::numbers::pi);
    if (std::abs(a - b) > 1e-12 * (1.0 + std::abs(a))) pi_periodic = false;
  }
  return PolarProfile(std::move(r), std::move(label), pi_periodic);
}

double profile_curvature(const PolarProfile& profile, double t) {
  const ProfileDerivatives d = profile.derivatives(t);
  return -std::exp(d.r) / std::sqrt(d.rdot * d.rdot + 1.0) * (d.rddot - d.rdot * d.rdot - 1.0);
}

std::string_view convexity_name(Convexity c) {
  switch (c) {
    case Convexity::StronglyConvex:
      return "strongly-convex";
    case Convexity::FlatPoint:
      return "has-flat-point";
    case Convexity::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

ConvexityReport strong_convexity_check(const PolarProfile& profile, int grid_size,
                                       std::optional<std::array<double, 2>> interval) {
  if (grid_size < 256) throw std::invalid_argument("strong_convexity_check: grid_size must be >= 256");
  const bool full_turn = !interval.has_value();
  const double t0 = full_turn ? 0.0 : (*interval)[0];
  const double t1 = full_turn ? kTwoPi : (*interval)[1];
  ConvexityReport rep;
  std::vector<double> ts(static_cast<std::size_t>(grid_size)), kappa(ts.size()), rel(ts.size());
  try {
    for (int k = 0; k < grid_size; ++k) {
      const double t = t0 + (t1 - t0) * k / grid_size;
      const ProfileDerivatives d = profile.derivatives(t);
      const double q = d.rddot - d.rdot * d.rdot - 1.0;
      ts[static_cast<std::size_t>(k)] = t;
      kappa[static_cast<std::size_t>(k)] = -std::exp(d.r) / std::sqrt(d.rdot * d.rdot + 1.0) * q;
      // scale-free version of the same zero set
      rel[static_cast<std::size_t>(k)] = std::abs(q) / (1.0 + d.rdot * d.rdot + std::abs(d.rddot));
    }
  } catch (const Error&) {
    return rep;
  }
  for (std::size_t k = 0; k < ts.size(); ++k) {
    if (!std::isfinite(kappa[k]) || !std::isfinite(rel[k])) return rep;
  }
  const double dt = (t1 - t0) / grid_size;
  std::size_t kmin = 0;
  rep.min_abs_kappa = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < ts.size(); ++k) {
    rep.max_abs_kappa = std::max(rep.max_abs_kappa, std::abs(kappa[k]));
    if (std::abs(kappa[k]) < rep.min_abs_kappa) rep.min_abs_kappa = std::abs(kappa[k]);
    if (rel[k] < rel[kmin]) kmin = k;
  }
  rep.t_star = ts[kmin];
  rep.bracket = {ts[kmin] - dt, ts[kmin] + dt};
  if (rel[kmin] <= 1e-8) {
    rep.verdict = Convexity::FlatPoint;
    return rep;
  }
  const std::size_t limit = full_turn ? ts.size() : ts.size() - 1;
  for (std::size_t k = 0; k < limit; ++k) {
    const std::size_t next = (k + 1) % ts.size();
    if (std::signbit(kappa[k]) != std::signbit(kappa[next])) {
      rep.verdict = Convexity::FlatPoint;
      rep.t_star = ts[k];
      rep.bracket = {ts[k], ts[k] + dt};
      return rep;
    }
  }
  rep.verdict = Convexity::StronglyConvex;
  return rep;
}

std::array<double, 3> lemma_expr_values(const PolarProfile& profile, double t, ExprSign sign) {
  const ProfileDerivatives d = profile.derivatives(t);
  const double c = std::cos(t), s = std::sin(t);
  const double e = std::exp(-d.r);
  const double third = (d.rddot - d.rdot * d.rdot - 1.0) * e * e * s * c;
  return {(c + d.rdot * s) * e, (s - d.rdot * c) * e, sign == ExprSign::Proof ? third : -third};
}

std::array<double, 3> lemma_expr_oracle(const PolarProfile& profile, double t) {
  const Jet j = lift_eval(profile.homogeneous_function(), Eigen::Vector2d::Zero(), unit2(t), {0, 2});
  return {j.dy(0), j.dy(1), j.value * j.dyy(0, 1)};
}

// ---------------------------------------------------------------------------
// Independence certification

std::vector<double> uniform_angle_grid(int N) {
  if (N < kMinGrid) throw std::invalid_argument("indicatrix grids need N >= 64");
  std::vector<double> g(static_cast<std::size_t>(N));
  for (int k = 0; k < N; ++k) g[static_cast<std::size_t>(k)] = kTwoPi * k / N;
  return g;
}

IndicatrixFunctionSample sample_function(const std::string& label, int N, const std::function<double(double)>& f) {
  IndicatrixFunctionSample s;
  s.grid = uniform_angle_grid(N);
  s.label = label;
  s.values.reserve(s.grid.size());
  for (double t : s.grid) s.values.push_back(f(t));
  return s;
}

std::string_view condition_name(Condition c) {
  switch (c) {
    case Condition::A:
      return "A";
    case Condition::B:
      return "B";
    case Condition::C:
      return "C";
    case Condition::General:
      return "general";
  }
  return "?";
}

Condition parse_condition(std::string_view s) {
  if (s == "A" || s == "a") return Condition::A;
  if (s == "B" || s == "b") return Condition::B;
  if (s == "C" || s == "c") return Condition::C;
  if (s == "general") return Condition::General;
  throw std::invalid_argument("unknown condition '" + std::string(s) + "' (expected A, B, C or general)");
}

namespace {

// Jets of F0 and P0 on the unit circle.
struct CircleData {
  std::vector<double> t;
  std::vector<Jet> F, P;
};

CircleData circle_data(const PointwiseData& data, int N) {
  if (data.n != 2) throw UnsupportedError("independence tests are for surfaces; restrict to a plane first");
  CircleData c;
  c.t = uniform_angle_grid(N);
  const Eigen::VectorXd x = Eigen::VectorXd::Zero(2);
  for (double t : c.t) {
    c.F.push_back(lift_eval(data.F0, x, unit2(t), {0, 2}));
    c.P.push_back(lift_eval(data.P0, x, unit2(t), {0, 2}));
  }
  return c;
}

double g12(const Jet& F) { return F.value * F.dyy(0, 1) + F.dy(0) * F.dy(1); }

// c minimizing sum (P - c F)^2 and the relative residual max|P - cF| / max|F|
std::pair<double, double> proportionality(const CircleData& c) {
  double pf = 0.0, ff = 0.0;
  for (std::size_t k = 0; k < c.t.size(); ++k) {
    pf += c.P[k].value * c.F[k].value;
    ff += c.F[k].value * c.F[k].value;
  }
  const double coef = ff > 0.0 ? pf / ff : 0.0;
  double worst = 0.0, scale = 0.0;
  for (std::size_t k = 0; k < c.t.size(); ++k) {
    worst = std::max(worst, std::abs(c.P[k].value - coef * c.F[k].value));
    scale = std::max(scale, std::abs(c.F[k].value));
  }
  return {coef, scale > 0.0 ? worst / scale : worst};
}

IndicatrixFunctionSample from_values(const std::string& label, const std::vector<double>& grid,
                                     std::vector<double> values) {
  return {grid, std::move(values), label};
}

}  // namespace

Quadruple independence_quadruple(const PointwiseData& data, Condition condition, int N, double k) {
  if (condition == Condition::C) {
    throw std::invalid_argument("condition C uses independence_quadruple_C or certify");
  }
  const CircleData c = circle_data(data, N);
  const double lambda = data.lambda;
  std::vector<double> one(c.t.size(), 1.0), p1, p2, fourth;
  if (condition == Condition::B) {
    const double coef = proportionality(c).first;
    for (const Jet& F : c.F) {
      p1.push_back(coef * F.dy(0));
      p2.push_back(coef * F.dy(1));
      fourth.push_back(k * coef * coef * F.dy(0) * F.dy(1) - lambda * g12(F));
    }
  } else {
    for (std::size_t i = 0; i < c.t.size(); ++i) {
      const Jet& P = c.P[i];
      p1.push_back(P.dy(0));
      p2.push_back(P.dy(1));
      const double prod = k * P.dy(0) * P.dy(1);
      fourth.push_back(condition == Condition::A ? prod : prod - lambda * g12(c.F[i]));
    }
  }
  return {from_values("1", c.t, std::move(one)), from_values("P_y1", c.t, std::move(p1)),
          from_values("P_y2", c.t, std::move(p2)), from_values("fourth", c.t, std::move(fourth))};
}

Quadruple independence_quadruple_C(const std::vector<double>& a, double lambda, int sign, int N) {
  if (a.size() != 2) throw std::invalid_argument("independence_quadruple_C: a must have two components");
  if (!(std::hypot(a[0], a[1]) < 1.0)) throw std::invalid_argument("independence_quadruple_C: need |a| < 1");
  const double sg = sign >= 0 ? 1.0 : -1.0;
  return {sample_function("1", N, [](double) { return 1.0; }),
          sample_function("cos", N, [](double t) { return std::cos(t); }),
          sample_function("sin", N, [](double t) { return std::sin(t); }),
          sample_function("fourth", N, [&](double t) {
            const double c = std::cos(t), s = std::sin(t);
            return (1.0 - lambda) * c * s - sg * (a[0] * c + a[1] * s) * c * s;
          })};
}

std::string_view gram_verdict_name(GramVerdict v) {
  switch (v) {
    case GramVerdict::CertifiedIndependent:
      return "certified-independent";
    case GramVerdict::Degenerate:
      return "degenerate";
    case GramVerdict::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

GramCertificate gram_rank(const Quadruple& q, double tolerance, double certify_threshold) {
  const std::size_t N = q[0].values.size();
  for (const auto& f : q) {
    if (f.values.size() != N || f.grid != q[0].grid) throw std::invalid_argument("gram_rank: grid mismatch");
  }
  if (N < static_cast<std::size_t>(kMinGrid)) throw std::invalid_argument("gram_rank: need N >= 64");
  if (!(tolerance > 0.0) || !(certify_threshold > 0.0)) throw std::invalid_argument("gram_rank: tolerances must be positive");

  Eigen::MatrixXd A(static_cast<Eigen::Index>(N), 4);
  for (int i = 0; i < 4; ++i) {
    for (std::size_t k = 0; k < N; ++k) A(static_cast<Eigen::Index>(k), i) = q[static_cast<std::size_t>(i)].values[k];
  }
  GramCertificate cert;
  cert.gram = A.transpose() * A / static_cast<double>(N);
  cert.grid_size = static_cast<int>(N);
  cert.tolerance = tolerance;
  cert.certify_threshold = certify_threshold;
  if (!cert.gram.allFinite()) {
    cert.verdict = GramVerdict::Inconclusive;
    return cert;
  }
  Eigen::JacobiSVD<Eigen::Matrix4d> svd(cert.gram);
  const Eigen::Vector4d sv = svd.singularValues();
  for (int i = 0; i < 4; ++i) cert.singular_values[static_cast<std::size_t>(i)] = sv(i);
  const double s1 = sv(0);
  for (int i = 0; i < 4; ++i) {
    if (sv(i) > tolerance * s1) ++cert.rank;
  }
  cert.rel_gap = s1 > 0.0 ? sv(3) / s1 : 0.0;
  if (cert.rel_gap > certify_threshold) {
    cert.verdict = GramVerdict::CertifiedIndependent;
  } else if (cert.rel_gap <= tolerance) {
    cert.verdict = GramVerdict::Degenerate;
  } else {
    cert.verdict = GramVerdict::Inconclusive;
  }
  return cert;
}

std::string_view status_verdict(CertifyStatus s) {
  switch (s) {
    case CertifyStatus::Certified:
      return kCertifiedVerdict;
    case CertifyStatus::HypothesisViolation:
      return "hypothesis violation";
    case CertifyStatus::Inconclusive:
      return "inconclusive";
    case CertifyStatus::Degenerate:
      return "degenerate";
  }
  return "?";
}

namespace {

Hypothesis euler_hypothesis(const std::string& name, const std::vector<Jet>& jets, const std::vector<double>& t) {
  double worst = 0.0;
  for (std::size_t k = 0; k < jets.size(); ++k) {
    const double v = jets[k].value;
    const double e = std::abs(jets[k].dy.dot(unit2(t[k])) - v) / std::max(std::abs(v), 1e-300);
    worst = std::max(worst, e);
  }
  return {name, worst <= 1e-9, worst};
}

// Second check of homogeneity: f(2.5 u) = 2.5 f(u) catches programs whose
// Euler relation holds only at |y| = 1.
double scaling_residual(const ScalarProgram& f, const std::vector<double>& t) {
  const std::vector<double> x(2, 0.0);
  double worst = 0.0;
  for (double s : t) {
    const std::vector<double> u{std::cos(s), std::sin(s)};
    const std::vector<double> v{2.5 * u[0], 2.5 * u[1]};
    const double a = f.call<double>(as_span(x), as_span(u));
    const double b = f.call<double>(as_span(x), as_span(v));
    worst = std::max(worst, std::abs(b - 2.5 * a) / std::max(std::abs(2.5 * a), 1e-300));
  }
  return worst;
}

Hypothesis convexity_hypothesis(const std::string& name, const ScalarProgram& phi, int grid) {
  try {
    const PolarProfile prof = profile_from_function(phi, name);
    const ConvexityReport rep = strong_convexity_check(prof, std::max(grid, 256));
    const double margin = rep.max_abs_kappa > 0.0 ? rep.min_abs_kappa / rep.max_abs_kappa : 0.0;
    return {name, rep.verdict == Convexity::StronglyConvex, margin};
  } catch (const Error&) {
    return {name, false, std::numeric_limits<double>::quiet_NaN()};
  }
}

}  // namespace

CertificationReport certify(const PointwiseData& data, Condition condition, const CertifyParams& params) {
  if (params.grid < kMinGrid) throw std::invalid_argument("certify: grid must be >= 64");
  if (condition == Condition::General) throw std::invalid_argument("certify: choose condition A, B or C");
  CertificationReport rep;
  rep.condition = condition;
  const CircleData c = circle_data(data, params.grid);
  auto& H = rep.hypotheses;

  H.push_back({"nonzero_curvature", std::abs(data.lambda) > 0.0, data.lambda});
  {
    Hypothesis h = euler_hypothesis("F0_positively_homogeneous", c.F, c.t);
    const double s = scaling_residual(data.F0, c.t);
    h.residual = std::max(h.residual, s);
    h.pass = h.residual <= 1e-9;
    H.push_back(h);
    Hypothesis hp = euler_hypothesis("P0_positively_homogeneous", c.P, c.t);
    hp.residual = std::max(hp.residual, scaling_residual(data.P0, c.t));
    hp.pass = hp.residual <= 1e-9;
    H.push_back(hp);
  }
  {
    double min_eig = std::numeric_limits<double>::infinity();
    for (const Jet& F : c.F) {
      Eigen::Matrix2d g = F.dy * F.dy.transpose() + F.value * F.dyy;
      min_eig = std::min(min_eig, Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(g).eigenvalues()(0));
    }
    H.push_back({"F0_metric_positive_definite", min_eig > 0.0, min_eig});
  }

  switch (condition) {
    case Condition::A: {
      double var = 0.0;
      const Eigen::Matrix2d g0 = c.F[0].dy * c.F[0].dy.transpose() + c.F[0].value * c.F[0].dyy;
      for (const Jet& F : c.F) {
        const Eigen::Matrix2d g = F.dy * F.dy.transpose() + F.value * F.dyy;
        var = std::max(var, (g - g0).cwiseAbs().maxCoeff());
      }
      H.push_back({"F0_scalar_product", var <= 1e-8, var});
      H.push_back(convexity_hypothesis("P0_strongly_convex", data.P0, params.grid));
      break;
    }
    case Condition::B: {
      double rev = 0.0;
      for (std::size_t k = 0; k < c.t.size(); ++k) {
        const std::size_t opposite = (k + c.t.size() / 2) % c.t.size();
        rev = std::max(rev, std::abs(c.F[k].value - c.F[opposite].value) / std::abs(c.F[k].value));
      }
      // odd N has no antipodal grid point; fall back to direct evaluation
      if (c.t.size() % 2 == 1) {
        const std::vector<double> x(2, 0.0);
        rev = 0.0;
        for (double t : c.t) {
          const std::vector<double> u{std::cos(t), std::sin(t)}, m{-u[0], -u[1]};
          const double a = data.F0.call<double>(as_span(x), as_span(u));
          const double b = data.F0.call<double>(as_span(x), as_span(m));
          rev = std::max(rev, std::abs(a - b) / std::abs(a));
        }
      }
      H.push_back({"F0_absolutely_homogeneous", rev <= 1e-10, rev});
      H.push_back(convexity_hypothesis("F0_strongly_convex", data.F0, params.grid));
      const auto [coef, resid] = proportionality(c);
      rep.recovered_c = coef;
      H.push_back({"P0_proportional_to_F0", resid <= 1e-8, resid});
      H.push_back({"c_nonzero", std::abs(coef) > 1e-8, coef});
      break;
    }
    case Condition::C: {
      if (!params.randers_a || params.randers_a->size() != 2) {
        H.push_back({"randers_parameters_supplied", false, std::numeric_limits<double>::quiet_NaN()});
        break;
      }
      const auto& a = *params.randers_a;
      const double sg = params.randers_sign >= 0 ? 1.0 : -1.0;
      const double na = std::hypot(a[0], a[1]);
      H.push_back({"a_inside_unit_ball", na < 1.0, na});
      double fr = 0.0, pr = 0.0;
      for (std::size_t k = 0; k < c.t.size(); ++k) {
        const double au = a[0] * std::cos(c.t[k]) + a[1] * std::sin(c.t[k]);
        fr = std::max(fr, std::abs(c.F[k].value - (1.0 + sg * au)));
        pr = std::max(pr, std::abs(c.P[k].value - 0.5 * (sg - au)));
      }
      H.push_back({"F0_randers_form", fr <= 1e-10, fr});
      H.push_back({"P0_randers_form", pr <= 1e-10, pr});
      break;
    }
    case Condition::General:
      break;
  }

  for (const auto& h : H) {
    if (!h.pass) {
      if (!rep.failed.empty()) rep.failed += ",";
      rep.failed += h.name;
    }
  }

  // Condition C samples the unsimplified general quadruple built from F0 and P0.
  const Condition q = condition == Condition::C ? Condition::General : condition;
  bool rank_ok = true;
  try {
    rep.certificate = gram_rank(independence_quadruple(data, q, params.grid), params.tolerance,
                                params.certify_threshold);
    rep.certificate_doubled = gram_rank(independence_quadruple(data, q, 2 * params.grid), params.tolerance,
                                        params.certify_threshold);
  } catch (const Error&) {
    rank_ok = false;
  }
  rep.doubled_N_consistent = rank_ok && rep.certificate.verdict == rep.certificate_doubled.verdict;

  if (!rep.failed.empty()) {
    rep.status = CertifyStatus::HypothesisViolation;
  } else if (!rep.doubled_N_consistent) {
    rep.status = CertifyStatus::Inconclusive;
  } else if (rep.certificate.verdict == GramVerdict::CertifiedIndependent) {
    rep.status = CertifyStatus::Certified;
  } else if (rep.certificate.verdict == GramVerdict::Degenerate) {
    rep.status = CertifyStatus::Degenerate;
  } else {
    rep.status = CertifyStatus::Inconclusive;
  }
  rep.verdict = std::string(status_verdict(rep.status));
  return rep;
}

CertificationReport certify(const MetricSpec& spec, Condition condition, CertifyParams params) {
  if (condition == Condition::C && !params.randers_a && spec.family() == Family::RandersShen) {
    params.randers_a = spec.a();
    params.randers_sign = spec.sign();
  }
  return certify(pointwise_at_origin(spec), condition, params);
}

}  // namespace finsler
