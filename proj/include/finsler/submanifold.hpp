#pragma once

// Restriction of a projectively flat metric to a 2-plane through the origin.

#include <array>
#include <optional>

#include <Eigen/Dense>

#include "finsler/holonomy.hpp"
#include "finsler/metrics.hpp"

namespace finsler {

/// Plane through the chart origin spanned by the orthonormal columns of
/// `frame` (n x 2).
struct Plane {
  Eigen::MatrixXd frame;
  std::optional<std::array<int, 2>> coordinates;
};

/// Plane of the coordinates (i, j), zero-based.
Plane coordinate_plane(int n, int i, int j);
/// Throws UnsupportedError unless the columns of E are orthonormal.
Plane frame_plane(const Eigen::MatrixXd& E);

struct PlaneRestriction {
  MetricSpec parent;
  Plane plane;
  MetricSpec restricted;

  Eigen::VectorXd embed(const Eigen::VectorXd& v2) const { return plane.frame * v2; }
};

/// The induced 2-dimensional metric F(E x, E y). RandersShen restricts to
/// RandersShen with a' = E^T a; Euclidean, Klein and Bryant-Shen data are
/// rotation invariant; custom data is composed with E.
PlaneRestriction restrict_to_plane(const MetricSpec& spec, const Plane& plane);

/// max |G^sigma| of the parent spray over directions normal to the plane at
/// in-plane data (x, y) given in plane coordinates.
double transversal_spray_residual(const PlaneRestriction& r, const Eigen::VectorXd& x, const Eigen::VectorXd& y);

/// |Kbar(X, Y) - E^T K(EX, EY)|_inf at in-plane data.
double curvature_extension_check(const PlaneRestriction& r, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                 const Eigen::VectorXd& X, const Eigen::VectorXd& Y);

/// Normal part of the parent curvature field K(EX, EY) at in-plane data.
double curvature_transversal_residual(const PlaneRestriction& r, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                      const Eigen::VectorXd& X, const Eigen::VectorXd& Y);

CertificationReport certify_via_plane(const MetricSpec& spec, const Plane& plane, Condition condition,
                                      const CertifyParams& params = {});

}  // namespace finsler
