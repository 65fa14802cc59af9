#include "finsler/submanifold.hpp"

#include <stdexcept>
#include <string>

#include "finsler/curvature.hpp"
#include "finsler/spray.hpp"

namespace finsler {

Plane coordinate_plane(int n, int i, int j) {
  if (i < 0 || j < 0 || i >= n || j >= n || i == j) {
    throw std::invalid_argument("coordinate plane needs two distinct indices below n");
  }
  Plane p;
  p.frame = Eigen::MatrixXd::Zero(n, 2);
  p.frame(i, 0) = 1.0;
  p.frame(j, 1) = 1.0;
  p.coordinates = std::array<int, 2>{i, j};
  return p;
}

Plane frame_plane(const Eigen::MatrixXd& E) {
  if (E.cols() != 2 || E.rows() < 2) throw std::invalid_argument("frame must be n x 2");
  const double defect = (E.transpose() * E - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff();
  if (defect > 1e-12) throw UnsupportedError("only orthonormal 2-frames are supported");
  return {E, std::nullopt};
}

namespace {

// f(E x, E y) as a program of plane coordinates.
ScalarProgram compose(const ScalarProgram& f, const Eigen::MatrixXd& E) {
  const int n = static_cast<int>(E.rows());
  return ScalarProgram([f, E, n](auto x, auto y) {
    using T = elem_t<decltype(x)>;
    std::vector<T> X(static_cast<std::size_t>(n), T(0.0)), Y(static_cast<std::size_t>(n), T(0.0));
    for (int i = 0; i < n; ++i) {
      for (int a = 0; a < 2; ++a) {
        const double e = E(i, a);
        if (e == 0.0) continue;
        X[static_cast<std::size_t>(i)] += x[static_cast<std::size_t>(a)] * e;
        Y[static_cast<std::size_t>(i)] += y[static_cast<std::size_t>(a)] * e;
      }
    }
    return f.call<T>(as_span(X), as_span(Y));
  });
}

}  // namespace

PlaneRestriction restrict_to_plane(const MetricSpec& spec, const Plane& plane) {
  const int n = spec.dim();
  if (n < 3) throw std::invalid_argument("restriction needs a parent of dimension >= 3");
  if (plane.frame.rows() != n) throw std::invalid_argument("plane frame has the wrong dimension");
  frame_plane(plane.frame);
  const Eigen::MatrixXd& E = plane.frame;
  const double lambda = spec.lambda().value_or(0.0);

  auto make = [&]() -> MetricSpec {
    switch (spec.family()) {
      case Family::Euclidean:
        return MetricSpec::euclidean(2);
      case Family::Klein:
        return MetricSpec::klein(2);
      case Family::RandersShen: {
        const Eigen::VectorXd a2 = E.transpose() * to_eigen(spec.a());
        return MetricSpec::randers_shen({a2(0), a2(1)}, spec.sign(), lambda);
      }
      case Family::BryantShenPointwise:
        return MetricSpec::bryant_shen_pointwise(2, spec.alpha(), lambda);
      case Family::PolarProfilePointwise:
        throw UnsupportedError("polar profile data is already two-dimensional");
      case Family::CustomPointwise:
        return MetricSpec::custom_pointwise(2, compose(spec.finsler_program(), E),
                                            compose(spec.projective_program(), E), lambda,
                                            spec.label() + "|plane");
    }
    throw UnsupportedError("unknown family");
  };
  MetricSpec restricted = make().with_lambda(spec.lambda());
  return {spec, plane, std::move(restricted)};
}

namespace {

Eigen::MatrixXd normal_projector(const Eigen::MatrixXd& E) {
  return Eigen::MatrixXd::Identity(E.rows(), E.rows()) - E * E.transpose();
}

}  // namespace

double transversal_spray_residual(const PlaneRestriction& r, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const SprayData s = geodesic_coefficients(r.parent, r.embed(x), r.embed(y));
  return (normal_projector(r.plane.frame) * s.G).cwiseAbs().maxCoeff();
}

double curvature_extension_check(const PlaneRestriction& r, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                 const Eigen::VectorXd& X, const Eigen::VectorXd& Y) {
  const Eigen::VectorXd K = curvature_vector_field(r.parent, r.embed(x), r.embed(X), r.embed(Y))(r.embed(y));
  const Eigen::VectorXd Kbar = curvature_vector_field(r.restricted, x, X, Y)(y);
  return (Kbar - r.plane.frame.transpose() * K).cwiseAbs().maxCoeff();
}

double curvature_transversal_residual(const PlaneRestriction& r, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                      const Eigen::VectorXd& X, const Eigen::VectorXd& Y) {
  const Eigen::VectorXd K = curvature_vector_field(r.parent, r.embed(x), r.embed(X), r.embed(Y))(r.embed(y));
  return (normal_projector(r.plane.frame) * K).cwiseAbs().maxCoeff();
}

CertificationReport certify_via_plane(const MetricSpec& spec, const Plane& plane, Condition condition,
                                      const CertifyParams& params) {
  const PlaneRestriction r = restrict_to_plane(spec, plane);
  CertifyParams p = params;
  if (p.randers_a && p.randers_a->size() == static_cast<std::size_t>(spec.dim())) {
    const Eigen::VectorXd a2 = plane.frame.transpose() * to_eigen(*p.randers_a);
    p.randers_a = std::vector<double>{a2(0), a2(1)};
  }
  return certify(r.restricted, condition, p);
}

}  // namespace finsler
