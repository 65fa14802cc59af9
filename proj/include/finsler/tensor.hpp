#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

namespace finsler {

/// Dense n x n array, row-major.
template <class T>
class SquareArray {
 public:
  SquareArray() = default;
  explicit SquareArray(int n) : n_(n), d_(static_cast<std::size_t>(n * n), T(0.0)) {}
  int dim() const { return n_; }
  T& operator()(int i, int j) { return d_[static_cast<std::size_t>(i * n_ + j)]; }
  const T& operator()(int i, int j) const { return d_[static_cast<std::size_t>(i * n_ + j)]; }

 private:
  int n_ = 0;
  std::vector<T> d_;
};

/// Dense n x n x n array; (i, j, k) maps to index i*n*n + j*n + k.
template <class T>
class CubeArray {
 public:
  CubeArray() = default;
  explicit CubeArray(int n) : n_(n), d_(static_cast<std::size_t>(n * n * n), T(0.0)) {}
  int dim() const { return n_; }
  T& operator()(int i, int j, int k) { return d_[idx(i, j, k)]; }
  const T& operator()(int i, int j, int k) const { return d_[idx(i, j, k)]; }
  const std::vector<T>& data() const { return d_; }

 private:
  std::size_t idx(int i, int j, int k) const { return static_cast<std::size_t>((i * n_ + j) * n_ + k); }
  int n_ = 0;
  std::vector<T> d_;
};

using Tensor3 = CubeArray<double>;

inline double max_abs(const Tensor3& t) {
  double m = 0.0;
  for (double v : t.data()) m = std::max(m, std::abs(v));
  return m;
}

inline Eigen::VectorXd to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

inline std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

inline Eigen::MatrixXd to_eigen(const SquareArray<double>& a) {
  Eigen::MatrixXd m(a.dim(), a.dim());
  for (int i = 0; i < a.dim(); ++i) {
    for (int j = 0; j < a.dim(); ++j) m(i, j) = a(i, j);
  }
  return m;
}

}  // namespace finsler
