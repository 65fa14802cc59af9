#pragma once

// Machine-precision partial derivatives of scalar programs F(x, y).

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "finsler/program.hpp"
#include "finsler/tensor.hpp"

namespace finsler {

inline constexpr double kDegenerateY = 1e-12;

/// Which derivative slots lift_eval fills. Contract: x_order <= 1, y_order <= 3.
struct OrderProfile {
  int x_order = 0;
  int y_order = 2;
};

/// Truncated Taylor data of a scalar program at (x, y). Slots outside the
/// requested profile are left empty (size zero).
struct Jet {
  int n = 0;
  OrderProfile profile;
  double value = 0.0;
  Eigen::VectorXd dy;
  Eigen::MatrixXd dyy;
  Tensor3 dyyy;
  Eigen::VectorXd dx;
  Eigen::MatrixXd dxdy;  // (i, j) -> d^2 / dx^i dy^j
  Tensor3 dxdydy;        // (i, j, k) -> d^3 / dx^i dy^j dy^k
};

Jet lift_eval(const ScalarProgram& program, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
              OrderProfile profile = {});

/// One differentiation variable of a multi-index.
struct Partial {
  enum class Kind { X, Y };
  Kind kind;
  int index;
};

struct FdOptions {
  /// Base step, scaled by max(1, |y|). Orders two and three use 10x and
  /// 100x the base step so that rounding stays below truncation error.
  double base_step = 1e-4;
  bool richardson = true;
};

/// Central finite-difference estimate of the mixed partial named by
/// `multi_index`, with one Richardson extrapolation level.
double fd_oracle(const ScalarProgram& program, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                 std::span<const Partial> multi_index, FdOptions options = {});

void require_nondegenerate(const Eigen::VectorXd& y);

// ---------------------------------------------------------------------------
// Generic helpers used by the geometry kernels at every nesting level.

/// Jet space with the x variables first (n of them, capped at x_order)
/// followed by the y variables (capped at y_order).
inline const JetSpace& xy_space(int n, int x_order, int y_order, int total_order) {
  return JetSpace::get({{n, x_order}, {n, y_order}}, total_order);
}

/// Reads partial derivatives out of a Taylor number living in an xy_space.
template <class T>
class XYJetReader {
 public:
  XYJetReader(const Taylor<T>& t, int n) : t_(t), n_(n), e_(static_cast<std::size_t>(2 * n), 0) {}

  T value() const { return t_.value(); }
  T dy(int i) const { return get({}, {i}); }
  T dyy(int i, int j) const { return get({}, {i, j}); }
  T dyyy(int i, int j, int k) const { return get({}, {i, j, k}); }
  T dx(int i) const { return get({i}, {}); }
  T dxdy(int i, int j) const { return get({i}, {j}); }
  T dxdydy(int i, int j, int k) const { return get({i}, {j, k}); }

 private:
  T get(std::initializer_list<int> xs, std::initializer_list<int> ys) const {
    std::fill(e_.begin(), e_.end(), 0);
    for (int i : xs) ++e_[static_cast<std::size_t>(i)];
    for (int i : ys) ++e_[static_cast<std::size_t>(n_ + i)];
    return t_.derivative(e_);
  }
  const Taylor<T>& t_;
  int n_;
  mutable std::vector<int> e_;
};

/// Evaluates `program` on jets over (x, y) at scalar level T.
template <class T>
Taylor<T> lift_generic(const ScalarProgram& program, std::span<const T> x, std::span<const T> y,
                       int x_order, int y_order, int total_order) {
  const int n = static_cast<int>(y.size());
  const JetSpace& space = xy_space(n, x_order, y_order, total_order);
  auto xs = seed_variables<T>(&space, x, x_order > 0 ? 0 : -1);
  auto ys = seed_variables<T>(&space, y, y_order > 0 ? n : -1);
  return program.call<Taylor<T>>(as_span(xs), as_span(ys));
}

}  // namespace finsler
