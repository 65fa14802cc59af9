#pragma once

// Type-erased differentiable programs.
//
// Metric families, projective factors, polar profiles and vector fields are
// written once as generic lambdas and stored for every scalar type the engine
// differentiates with: plain doubles and up to three levels of nested jets.

#include <functional>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "finsler/errors.hpp"
#include "finsler/taylor.hpp"

namespace finsler {

using T0 = double;
using T1 = Taylor<T0>;
using T2 = Taylor<T1>;
using T3 = Taylor<T2>;

inline constexpr int kMaxNesting = 3;

/// True when a program evaluated at scalar type T may evaluate other
/// programs one jet level deeper.
template <class T>
inline constexpr bool can_nest = nesting_depth_v<T> < kMaxNesting;

template <class S>
using elem_t = std::remove_cv_t<typename S::element_type>;

[[noreturn]] inline void throw_depth_exceeded(const char* where) {
  throw UnsupportedError(std::string(where) + ": jet nesting depth exceeded");
}

template <template <class> class Sig>
class MultiFunction {
 public:
  MultiFunction() = default;

  template <class Fn>
    requires(!std::is_same_v<std::remove_cvref_t<Fn>, MultiFunction>)
  explicit MultiFunction(Fn fn)
      : fns_(std::function<Sig<T0>>(fn), std::function<Sig<T1>>(fn), std::function<Sig<T2>>(fn),
             std::function<Sig<T3>>(fn)) {}

  explicit operator bool() const { return static_cast<bool>(std::get<0>(fns_)); }

  template <class T, class... Args>
  decltype(auto) call(Args&&... args) const {
    const auto& f = std::get<std::function<Sig<T>>>(fns_);
    if (!f) throw UnsupportedError("program is empty");
    return f(std::forward<Args>(args)...);
  }

 private:
  std::tuple<std::function<Sig<T0>>, std::function<Sig<T1>>, std::function<Sig<T2>>,
             std::function<Sig<T3>>>
      fns_;
};

template <class T>
using ScalarSig = T(std::span<const T>, std::span<const T>);
template <class T>
using FieldSig = std::vector<T>(std::span<const T>, std::span<const T>);
template <class T>
using ProfileSig = T(const T&);

/// Scalar function F(x, y) of a base point and a tangent vector.
using ScalarProgram = MultiFunction<ScalarSig>;
/// Vertical vector field xi^i(x, y).
using FieldProgram = MultiFunction<FieldSig>;
/// Scalar function r(t) of one real variable.
using ProfileProgram = MultiFunction<ProfileSig>;

template <class T>
T dot(std::span<const T> a, std::span<const T> b) {
  T s(0.0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <class T>
T dot(const std::vector<double>& a, std::span<const T> b) {
  T s(0.0);
  for (std::size_t i = 0; i < a.size(); ++i) s += b[i] * a[i];
  return s;
}

template <class T>
T norm_sq(std::span<const T> a) {
  return dot(a, a);
}

template <class T>
std::span<const T> as_span(const std::vector<T>& v) {
  return {v.data(), v.size()};
}

}  // namespace finsler
