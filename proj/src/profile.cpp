#include "finsler/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "finsler/diffengine.hpp"

namespace finsler {

PolarProfile::PolarProfile(ProfileProgram r, std::string label, bool pi_periodic)
    : r_(std::move(r)), label_(std::move(label)), pi_periodic_(pi_periodic) {}

PolarProfile PolarProfile::constant(double c) {
  PolarProfile p = fourier(c, {}, {});
  p.label_ = "constant(" + std::to_string(c) + ")";
  return p;
}

PolarProfile PolarProfile::fourier(double c0, std::vector<double> cos_coeffs, std::vector<double> sin_coeffs) {
  bool even_only = true;
  for (std::size_t k = 0; k < std::max(cos_coeffs.size(), sin_coeffs.size()); ++k) {
    const bool odd_frequency = (k + 1) % 2 == 1;
    const double ck = k < cos_coeffs.size() ? cos_coeffs[k] : 0.0;
    const double sk = k < sin_coeffs.size() ? sin_coeffs[k] : 0.0;
    if (odd_frequency && (ck != 0.0 || sk != 0.0)) even_only = false;
  }
  auto program = ProfileProgram([c0, cos_coeffs, sin_coeffs](const auto& t) {
    using T = std::remove_cvref_t<decltype(t)>;
    T r(c0);
    for (std::size_t k = 0; k < cos_coeffs.size(); ++k) {
      if (cos_coeffs[k] != 0.0) r += cos(t * static_cast<double>(k + 1)) * cos_coeffs[k];
    }
    for (std::size_t k = 0; k < sin_coeffs.size(); ++k) {
      if (sin_coeffs[k] != 0.0) r += sin(t * static_cast<double>(k + 1)) * sin_coeffs[k];
    }
    return r;
  });
  PolarProfile p(std::move(program), "fourier", even_only);
  p.fourier_ = true;
  p.c0_ = c0;
  p.cos_ = std::move(cos_coeffs);
  p.sin_ = std::move(sin_coeffs);
  return p;
}

double PolarProfile::r(double t) const { return r_.call<double>(t); }

ProfileDerivatives PolarProfile::derivatives(double t) const {
  const JetSpace& space = JetSpace::get({{1, 2}}, 2);
  const T1 tt = T1::variable(space, 0, t);
  const T1 r = r_.call<T1>(tt);
  const int e1[] = {1};
  const int e2[] = {2};
  return {r.value(), r.derivative(e1), r.derivative(e2)};
}

double PolarProfile::periodicity_residual(int grid_size) const {
  double worst = 0.0;
  for (int k = 0; k < grid_size; ++k) {
    const double t = 2.0 * std::numbers::pi * k / grid_size;
    worst = std::max(worst, std::abs(r(t + 2.0 * std::numbers::pi) - r(t)));
  }
  return worst;
}

ScalarProgram PolarProfile::homogeneous_function() const {
  ProfileProgram r = r_;
  return ScalarProgram([r](auto /*x*/, auto y) {
    using T = elem_t<decltype(y)>;
    if (y.size() != 2) throw UnsupportedError("polar profiles describe planar functions only");
    const T t = atan2(y[1], y[0]);
    return exp(-r.call<T>(t)) * sqrt(norm_sq(y));
  });
}

}  // namespace finsler
