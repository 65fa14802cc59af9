#pragma once

// Spray and curvature kernels, templated over the scalar type so that the
// covariant-derivative code can differentiate them again.
//
// Convention: geodesics solve x'' + 2 G(x, x') = 0, and in projectively flat
// coordinates G^i = P y^i.

#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "finsler/diffengine.hpp"
#include "finsler/errors.hpp"
#include "finsler/program.hpp"
#include "finsler/tensor.hpp"

namespace finsler {

enum class SprayRoute {
  /// G^i = P y^i with the family's projective factor.
  Projective,
  /// G^i = 1/4 g^il ([F^2]_{x^k y^l} y^k - [F^2]_{x^l}), linear solve for g^il.
  Generic,
};

/// What the kernels need to know about a metric.
struct SprayModel {
  int n = 2;
  SprayRoute route = SprayRoute::Projective;
  ScalarProgram F;
  ScalarProgram P;
};

template <class T>
struct SprayT {
  std::vector<T> G;
  SquareArray<T> Gj;  // (i, j) -> G^i_j
  CubeArray<T> Gjk;   // (i, j, k) -> G^i_jk
};

/// P and the derivatives the projective formulas use.
template <class T>
struct ProjectiveJet {
  T P;
  std::vector<T> Py;
  SquareArray<T> Pyy;
  std::vector<T> Px;    // empty unless x derivatives were requested
  SquareArray<T> Pxy;   // (k, j) -> d^2 P / dx^k dy^j
};

template <class T>
ProjectiveJet<T> projective_jet(const ScalarProgram& P, std::span<const T> x, std::span<const T> y, bool with_x) {
  const int n = static_cast<int>(y.size());
  const Taylor<T> t = lift_generic<T>(P, x, y, with_x ? 1 : 0, 2, 2);
  XYJetReader<T> r(t, n);
  ProjectiveJet<T> out;
  out.P = r.value();
  out.Py.resize(static_cast<std::size_t>(n));
  out.Pyy = SquareArray<T>(n);
  for (int k = 0; k < n; ++k) {
    out.Py[static_cast<std::size_t>(k)] = r.dy(k);
    for (int l = 0; l < n; ++l) out.Pyy(k, l) = r.dyy(k, l);
  }
  if (with_x) {
    out.Px.resize(static_cast<std::size_t>(n));
    out.Pxy = SquareArray<T>(n);
    for (int k = 0; k < n; ++k) {
      out.Px[static_cast<std::size_t>(k)] = r.dx(k);
      for (int j = 0; j < n; ++j) out.Pxy(k, j) = r.dxdy(k, j);
    }
  }
  return out;
}

/// G^i = P y^i, G^i_k = P_k y^i + P d^i_k, G^i_kl = P_kl y^i + P_k d^i_l + P_l d^i_k.
template <class T>
SprayT<T> spray_from_projective(const ProjectiveJet<T>& pj, std::span<const T> y) {
  const int n = static_cast<int>(y.size());
  SprayT<T> s;
  s.G.resize(static_cast<std::size_t>(n));
  s.Gj = SquareArray<T>(n);
  s.Gjk = CubeArray<T>(n);
  for (int i = 0; i < n; ++i) {
    const T& yi = y[static_cast<std::size_t>(i)];
    s.G[static_cast<std::size_t>(i)] = pj.P * yi;
    for (int k = 0; k < n; ++k) {
      s.Gj(i, k) = pj.Py[static_cast<std::size_t>(k)] * yi;
      if (i == k) s.Gj(i, k) += pj.P;
      for (int l = 0; l < n; ++l) {
        T v = pj.Pyy(k, l) * yi;
        if (i == l) v += pj.Py[static_cast<std::size_t>(k)];
        if (i == k) v += pj.Py[static_cast<std::size_t>(l)];
        s.Gjk(i, k, l) = v;
      }
    }
  }
  return s;
}

/// Solves A z = b by Gaussian elimination, pivoting on primal magnitudes.
template <class T>
std::vector<T> pivoted_solve(SquareArray<T> A, std::vector<T> b) {
  const int n = A.dim();
  double scale = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) scale = std::max(scale, std::abs(primal(A(i, j))));
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r) {
      if (std::abs(primal(A(r, c))) > std::abs(primal(A(piv, c)))) piv = r;
    }
    if (!(std::abs(primal(A(piv, c))) > 1e-13 * scale)) throw SingularMetricError("metric tensor is singular");
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(A(c, j), A(piv, j));
      std::swap(b[static_cast<std::size_t>(c)], b[static_cast<std::size_t>(piv)]);
    }
    for (int r = c + 1; r < n; ++r) {
      const T f = A(r, c) / A(c, c);
      for (int j = c; j < n; ++j) A(r, j) -= f * A(c, j);
      b[static_cast<std::size_t>(r)] -= f * b[static_cast<std::size_t>(c)];
    }
  }
  std::vector<T> z(static_cast<std::size_t>(n));
  for (int r = n - 1; r >= 0; --r) {
    T acc = b[static_cast<std::size_t>(r)];
    for (int j = r + 1; j < n; ++j) acc -= A(r, j) * z[static_cast<std::size_t>(j)];
    z[static_cast<std::size_t>(r)] = acc / A(r, r);
  }
  return z;
}

/// G^i from F through the metric tensor.
template <class T>
std::vector<T> generic_geodesic_coefficients(const ScalarProgram& F, std::span<const T> x, std::span<const T> y) {
  if constexpr (can_nest<T>) {
    const int n = static_cast<int>(y.size());
    const Taylor<T> f = lift_generic<T>(F, x, y, 1, 2, 2);
    const Taylor<T> f2 = f * f;
    XYJetReader<T> r(f2, n);
    SquareArray<T> g(n);
    std::vector<T> rhs(static_cast<std::size_t>(n), T(0.0));
    for (int i = 0; i < n; ++i) {
      for (int l = 0; l < n; ++l) g(i, l) = r.dyy(i, l) * 0.5;
    }
    for (int l = 0; l < n; ++l) {
      T acc = -r.dx(l);
      for (int k = 0; k < n; ++k) acc += r.dxdy(k, l) * y[static_cast<std::size_t>(k)];
      rhs[static_cast<std::size_t>(l)] = acc * 0.25;
    }
    return pivoted_solve(std::move(g), std::move(rhs));
  } else {
    throw_depth_exceeded("generic geodesic coefficients");
  }
}

/// The geodesic coefficients G^i as a vector program.
inline FieldProgram geodesic_field(const SprayModel& m) {
  if (m.route == SprayRoute::Projective) {
    return FieldProgram([P = m.P](auto x, auto y) {
      using T = elem_t<decltype(x)>;
      const T p = P.call<T>(x, y);
      std::vector<T> G(y.size());
      for (std::size_t i = 0; i < y.size(); ++i) G[i] = p * y[i];
      return G;
    });
  }
  return FieldProgram([F = m.F](auto x, auto y) { return generic_geodesic_coefficients(F, x, y); });
}

/// Vector program evaluated on jets over (x, y).
template <class T>
std::vector<Taylor<T>> lift_field(const FieldProgram& field, std::span<const T> x, std::span<const T> y, int x_order,
                                  int y_order, int total_order) {
  const int n = static_cast<int>(y.size());
  const JetSpace& space = xy_space(n, x_order, y_order, total_order);
  auto xs = seed_variables<T>(&space, x, x_order > 0 ? 0 : -1);
  auto ys = seed_variables<T>(&space, y, y_order > 0 ? n : -1);
  return field.call<Taylor<T>>(as_span(xs), as_span(ys));
}

template <class T>
SprayT<T> spray_at(const SprayModel& m, std::span<const T> x, std::span<const T> y) {
  if (m.route == SprayRoute::Projective) {
    if constexpr (can_nest<T>) {
      return spray_from_projective(projective_jet(m.P, x, y, false), y);
    } else {
      throw_depth_exceeded("spray");
    }
  }
  if constexpr (nesting_depth_v<T> + 2 <= kMaxNesting) {
    const int n = static_cast<int>(y.size());
    const auto G = lift_field<T>(geodesic_field(m), x, y, 0, 2, 2);
    SprayT<T> s;
    s.G.resize(static_cast<std::size_t>(n));
    s.Gj = SquareArray<T>(n);
    s.Gjk = CubeArray<T>(n);
    for (int i = 0; i < n; ++i) {
      XYJetReader<T> r(G[static_cast<std::size_t>(i)], n);
      s.G[static_cast<std::size_t>(i)] = r.value();
      for (int j = 0; j < n; ++j) {
        s.Gj(i, j) = r.dy(j);
        for (int k = 0; k < n; ++k) s.Gjk(i, j, k) = r.dyy(j, k);
      }
    }
    return s;
  } else {
    throw_depth_exceeded("generic spray");
  }
}

/// R^i_jk = d_k G^i_j - d_j G^i_k + G^m_j G^i_km - G^m_k G^i_jm.
/// `dG(k, i, j)` holds d G^i_j / dx^k.
template <class T>
CubeArray<T> assemble_curvature(const SprayT<T>& s, const CubeArray<T>& dG) {
  const int n = s.Gj.dim();
  CubeArray<T> R(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        T v = dG(k, i, j) - dG(j, i, k);
        for (int m = 0; m < n; ++m) v += s.Gj(m, j) * s.Gjk(i, k, m) - s.Gj(m, k) * s.Gjk(i, j, m);
        R(i, j, k) = v;
        R(i, k, j) = -v;
      }
    }
  }
  return R;
}

template <class T>
CubeArray<T> curvature_at(const SprayModel& m, std::span<const T> x, std::span<const T> y) {
  const int n = static_cast<int>(y.size());
  if (m.route == SprayRoute::Projective) {
    if constexpr (can_nest<T>) {
      const ProjectiveJet<T> pj = projective_jet(m.P, x, y, true);
      const SprayT<T> s = spray_from_projective(pj, y);
      // d_k G^i_j = P_{x^k y^j} y^i + P_{x^k} d^i_j
      CubeArray<T> dG(n);
      for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < n; ++j) {
            T v = pj.Pxy(k, j) * y[static_cast<std::size_t>(i)];
            if (i == j) v += pj.Px[static_cast<std::size_t>(k)];
            dG(k, i, j) = v;
          }
        }
      }
      return assemble_curvature(s, dG);
    } else {
      throw_depth_exceeded("curvature");
    }
  }
  if constexpr (nesting_depth_v<T> + 2 <= kMaxNesting) {
    const auto G = lift_field<T>(geodesic_field(m), x, y, 1, 2, 2);
    SprayT<T> s;
    s.G.resize(static_cast<std::size_t>(n));
    s.Gj = SquareArray<T>(n);
    s.Gjk = CubeArray<T>(n);
    CubeArray<T> dG(n);
    for (int i = 0; i < n; ++i) {
      XYJetReader<T> r(G[static_cast<std::size_t>(i)], n);
      s.G[static_cast<std::size_t>(i)] = r.value();
      for (int j = 0; j < n; ++j) {
        s.Gj(i, j) = r.dy(j);
        for (int k = 0; k < n; ++k) {
          s.Gjk(i, j, k) = r.dyy(j, k);
          dG(k, i, j) = r.dxdy(k, j);
        }
      }
    }
    return assemble_curvature(s, dG);
  } else {
    throw_depth_exceeded("generic curvature");
  }
}

/// Horizontal Berwald derivative of a vertical field along the constant
/// vector W: (d_j xi^i - G^k_j d xi^i/dy^k + G^i_jk xi^k) W^j.
template <class T>
std::vector<T> berwald_derivative_at(const SprayModel& m, const FieldProgram& xi, const std::vector<double>& W,
                                     std::span<const T> x, std::span<const T> y) {
  if constexpr (can_nest<T>) {
    const int n = static_cast<int>(y.size());
    const auto v = lift_field<T>(xi, x, y, 1, 1, 1);
    const SprayT<T> s = spray_at<T>(m, x, y);
    std::vector<T> out(static_cast<std::size_t>(n), T(0.0));
    for (int i = 0; i < n; ++i) {
      XYJetReader<T> r(v[static_cast<std::size_t>(i)], n);
      T acc(0.0);
      for (int j = 0; j < n; ++j) {
        const double wj = W[static_cast<std::size_t>(j)];
        if (wj == 0.0) continue;
        T term = r.dx(j);
        for (int k = 0; k < n; ++k) {
          term -= s.Gj(k, j) * r.dy(k);
          term += s.Gjk(i, j, k) * XYJetReader<T>(v[static_cast<std::size_t>(k)], n).value();
        }
        acc += term * wj;
      }
      out[static_cast<std::size_t>(i)] = acc;
    }
    return out;
  } else {
    throw_depth_exceeded("Berwald covariant derivative");
  }
}

}  // namespace finsler
