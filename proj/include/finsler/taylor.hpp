#pragma once

// Truncated multivariate Taylor arithmetic ("jets").
//
// A Taylor<T> stores the normalized coefficients c_a = (d^a f)/a! of a
// function over the monomials of a JetSpace. Coefficients may themselves be
// Taylor numbers, which is how derived quantities (projective factor from F,
// spray from the metric tensor, covariant derivatives of curvature fields)
// are differentiated again without any symbolic step.

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

namespace finsler {

inline double sqrt(double v) { return std::sqrt(v); }
inline double exp(double v) { return std::exp(v); }
inline double log(double v) { return std::log(v); }
inline double sin(double v) { return std::sin(v); }
inline double cos(double v) { return std::cos(v); }
inline double pow(double v, double p) { return std::pow(v, p); }
inline double atan2(double b, double a) { return std::atan2(b, a); }

/// Monomial bookkeeping for a truncated polynomial ring.
///
/// Variables are split into consecutive groups. An exponent vector is
/// admissible when every group's degree is at most the group cap and the
/// total degree is at most `total_order`. The admissible set is closed under
/// lowering exponents, so truncated products are consistent.
class JetSpace {
 public:
  struct Group {
    int count;
    int max_order;
  };
  struct Product {
    std::uint32_t lhs;
    std::uint32_t rhs;
    std::uint32_t out;
  };

  /// Interned space; the returned reference stays valid for the program
  /// lifetime. Thread-safe.
  static const JetSpace& get(const std::vector<Group>& groups, int total_order);

  int num_vars() const { return num_vars_; }
  int size() const { return static_cast<int>(exponents_.size() / stride()); }
  int total_order() const { return total_order_; }

  std::span<const int> exponents(int m) const {
    return {exponents_.data() + static_cast<std::size_t>(m) * stride(), stride()};
  }
  int degree(int m) const { return degrees_[m]; }
  /// Index of the monomial with the given exponents, or -1 when truncated.
  int find(std::span<const int> exps) const;
  /// Index of the monomial x_var (degree one), or -1 when truncated.
  int linear_index(int var) const { return linear_[var]; }
  /// a! for monomial m (product of factorials of its exponents).
  double factorial_weight(int m) const { return weights_[m]; }
  std::span<const Product> products() const { return products_; }

 private:
  JetSpace(std::vector<Group> groups, int total_order);
  std::size_t stride() const { return static_cast<std::size_t>(num_vars_ == 0 ? 1 : num_vars_); }
  std::uint64_t encode(std::span<const int> exps) const;

  std::vector<Group> groups_;
  int num_vars_ = 0;
  int total_order_ = 0;
  std::vector<int> exponents_;
  std::vector<int> degrees_;
  std::vector<double> weights_;
  std::vector<int> linear_;
  std::vector<Product> products_;
  std::vector<std::pair<std::uint64_t, int>> lookup_;  // sorted by code
};

template <class T>
class Taylor;

template <class T>
struct nesting_depth : std::integral_constant<int, 0> {};
template <class T>
struct nesting_depth<Taylor<T>> : std::integral_constant<int, 1 + nesting_depth<T>::value> {};

template <class T>
inline constexpr int nesting_depth_v = nesting_depth<std::remove_cvref_t<T>>::value;

inline double primal(double v) { return v; }

template <class T>
class Taylor {
 public:
  using value_type = T;

  Taylor() : c_{T(0.0)} {}
  Taylor(double v) : c_{T(v)} {}  // NOLINT: constants mix freely
  Taylor(const T& v)  // NOLINT
    requires(!std::is_same_v<T, double>)
      : c_{v} {}

  /// The variable `var` of `space`, expanded at `at`.
  static Taylor variable(const JetSpace& space, int var, const T& at) {
    Taylor t(space);
    t.c_[0] = at;
    const int m = space.linear_index(var);
    if (m >= 0) t.c_[m] = T(1.0);
    return t;
  }

  const JetSpace* space() const { return space_; }
  bool is_constant() const { return space_ == nullptr; }
  int size() const { return static_cast<int>(c_.size()); }

  const T& value() const { return c_[0]; }
  T coeff(int m) const { return m < size() ? c_[m] : T(0.0); }
  T& coeff_ref(int m) { return c_[m]; }

  /// Partial derivative with the given exponents (zero when truncated away
  /// or when this number is a constant).
  T derivative(std::span<const int> exps) const {
    if (space_ == nullptr) {
      for (int e : exps) {
        if (e != 0) return T(0.0);
      }
      return c_[0];
    }
    const int m = space_->find(exps);
    if (m < 0) return T(0.0);
    return c_[m] * space_->factorial_weight(m);
  }

  Taylor operator-() const {
    Taylor r(*this);
    for (auto& v : r.c_) v = -v;
    return r;
  }

  Taylor& operator+=(const Taylor& o) {
    promote(o);
    if (o.space_ == nullptr) {
      c_[0] += o.c_[0];
    } else {
      for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    }
    return *this;
  }
  Taylor& operator-=(const Taylor& o) {
    promote(o);
    if (o.space_ == nullptr) {
      c_[0] -= o.c_[0];
    } else {
      for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    }
    return *this;
  }
  Taylor& operator*=(const Taylor& o) { return *this = *this * o; }
  Taylor& operator/=(const Taylor& o) { return *this = *this / o; }

  friend Taylor operator+(Taylor a, const Taylor& b) { return a += b; }
  friend Taylor operator-(Taylor a, const Taylor& b) { return a -= b; }

  friend Taylor operator*(const Taylor& a, const Taylor& b) {
    if (a.space_ == nullptr) return b.scaled(a.c_[0]);
    if (b.space_ == nullptr) return a.scaled(b.c_[0]);
    check_same(a, b);
    Taylor r(*a.space_);
    for (const auto& p : a.space_->products()) {
      r.c_[p.out] += a.c_[p.lhs] * b.c_[p.rhs];
    }
    return r;
  }

  friend Taylor operator/(const Taylor& a, const Taylor& b) {
    if (b.space_ == nullptr) return a.scaled(T(1.0) / b.c_[0]);
    return a * reciprocal(b);
  }

  /// f(u) from the normalized Taylor coefficients of f at u's value:
  /// f(u0 + d) = sum_k coeffs[k] d^k, truncated by the space.
  static Taylor compose(const Taylor& u, const std::vector<T>& coeffs) {
    if (u.space_ == nullptr) return Taylor(coeffs[0]);
    Taylor d(u);
    d.c_[0] = T(0.0);
    Taylor r(coeffs.back());
    for (int k = static_cast<int>(coeffs.size()) - 2; k >= 0; --k) {
      r = r * d;
      r.c_[0] += coeffs[k];
    }
    return r;
  }

  int order() const { return space_ == nullptr ? 0 : space_->total_order(); }

 private:
  explicit Taylor(const JetSpace& space)
      : space_(&space), c_(static_cast<std::size_t>(space.size()), T(0.0)) {}

  static void check_same(const Taylor& a, const Taylor& b) {
    if (a.space_ != b.space_) {
      throw std::logic_error("Taylor: operands live in different jet spaces");
    }
  }

  void promote(const Taylor& o) {
    if (o.space_ == nullptr) return;
    if (space_ == nullptr) {
      T v = c_[0];
      space_ = o.space_;
      c_.assign(static_cast<std::size_t>(space_->size()), T(0.0));
      c_[0] = v;
      return;
    }
    check_same(*this, o);
  }

  Taylor scaled(const T& s) const {
    Taylor r(*this);
    for (auto& v : r.c_) v = v * s;
    return r;
  }

  friend Taylor reciprocal(const Taylor& u) {
    const T inv = T(1.0) / u.value();
    std::vector<T> k(static_cast<std::size_t>(u.order() + 1));
    T term = inv;
    for (std::size_t i = 0; i < k.size(); ++i) {
      k[i] = term;
      term = -(term * inv);
    }
    return compose(u, k);
  }

  const JetSpace* space_ = nullptr;
  std::vector<T> c_;
};

template <class T>
double primal(const Taylor<T>& v) {
  return primal(v.value());
}

namespace detail {

// binom(p, k) for real p.
inline double real_binomial(double p, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= (p - i) / (i + 1);
  return r;
}

}  // namespace detail

template <class T>
Taylor<T> sqrt(const Taylor<T>& u) {
  const T& u0 = u.value();
  const T s0 = sqrt(u0);
  if (u.is_constant()) return Taylor<T>(s0);
  const T inv = T(1.0) / u0;
  std::vector<T> k(static_cast<std::size_t>(u.order() + 1));
  T scale = s0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    k[i] = scale * detail::real_binomial(0.5, static_cast<int>(i));
    scale = scale * inv;
  }
  return Taylor<T>::compose(u, k);
}

template <class T>
Taylor<T> pow(const Taylor<T>& u, double p) {
  const T& u0 = u.value();
  const T base = pow(u0, p);
  if (u.is_constant()) return Taylor<T>(base);
  const T inv = T(1.0) / u0;
  std::vector<T> k(static_cast<std::size_t>(u.order() + 1));
  T scale = base;
  for (std::size_t i = 0; i < k.size(); ++i) {
    k[i] = scale * detail::real_binomial(p, static_cast<int>(i));
    scale = scale * inv;
  }
  return Taylor<T>::compose(u, k);
}

template <class T>
Taylor<T> exp(const Taylor<T>& u) {
  const T e0 = exp(u.value());
  if (u.is_constant()) return Taylor<T>(e0);
  std::vector<T> k(static_cast<std::size_t>(u.order() + 1));
  double fact = 1.0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (i > 0) fact *= static_cast<double>(i);
    k[i] = e0 * (1.0 / fact);
  }
  return Taylor<T>::compose(u, k);
}

template <class T>
Taylor<T> log(const Taylor<T>& u) {
  const T& u0 = u.value();
  if (u.is_constant()) return Taylor<T>(log(u0));
  const T inv = T(1.0) / u0;
  std::vector<T> k(static_cast<std::size_t>(u.order() + 1));
  k[0] = log(u0);
  T p = inv;
  for (std::size_t i = 1; i < k.size(); ++i) {
    const double sign = (i % 2 == 1) ? 1.0 : -1.0;
    k[i] = p * (sign / static_cast<double>(i));
    p = p * inv;
  }
  return Taylor<T>::compose(u, k);
}

namespace detail {

template <class T>
std::vector<T> trig_coefficients(const T& s, const T& c, int order, bool for_sin) {
  // d^k sin = sin(u + k pi/2), d^k cos = cos(u + k pi/2)
  std::vector<T> k(static_cast<std::size_t>(order + 1));
  double fact = 1.0;
  for (int i = 0; i <= order; ++i) {
    if (i > 0) fact *= i;
    const int phase = (for_sin ? i : i + 1) % 4;
    T v = phase == 0 ? s : phase == 1 ? c : phase == 2 ? -s : -c;
    k[static_cast<std::size_t>(i)] = v * (1.0 / fact);
  }
  return k;
}

}  // namespace detail

template <class T>
Taylor<T> sin(const Taylor<T>& u) {
  const T s = sin(u.value());
  if (u.is_constant()) return Taylor<T>(s);
  return Taylor<T>::compose(u, detail::trig_coefficients(s, cos(u.value()), u.order(), true));
}

template <class T>
Taylor<T> cos(const Taylor<T>& u) {
  const T c = cos(u.value());
  if (u.is_constant()) return Taylor<T>(c);
  return Taylor<T>::compose(u, detail::trig_coefficients(sin(u.value()), c, u.order(), false));
}

/// Polar angle of (a, b). Rotating by the base angle reduces the problem to
/// atan of a quantity that vanishes at the expansion point.
template <class T>
Taylor<T> atan2(const Taylor<T>& b, const Taylor<T>& a) {
  const T& a0 = a.value();
  const T& b0 = b.value();
  const T t0 = atan2(b0, a0);
  if (a.is_constant() && b.is_constant()) return Taylor<T>(t0);
  Taylor<T> w = (Taylor<T>(a0) * b - Taylor<T>(b0) * a) / (Taylor<T>(a0) * a + Taylor<T>(b0) * b);
  w.coeff_ref(0) = T(0.0);
  std::vector<T> k(static_cast<std::size_t>(w.order() + 1), T(0.0));
  for (std::size_t i = 1; i < k.size(); i += 2) {
    const double sign = ((i / 2) % 2 == 0) ? 1.0 : -1.0;
    k[i] = T(sign / static_cast<double>(i));
  }
  k[0] = t0;
  return Taylor<T>::compose(w, k);
}

/// Seeds `values.size()` consecutive variables of `space`, starting at
/// `first_var`. A negative `first_var` produces constants.
template <class T>
std::vector<Taylor<T>> seed_variables(const JetSpace* space, std::span<const T> values, int first_var) {
  std::vector<Taylor<T>> out;
  out.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (space == nullptr || first_var < 0) {
      out.emplace_back(Taylor<T>(values[i]));
    } else {
      out.push_back(Taylor<T>::variable(*space, first_var + static_cast<int>(i), values[i]));
    }
  }
  return out;
}

}  // namespace finsler
