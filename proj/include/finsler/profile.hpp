#pragma once

#include <string>
#include <vector>

#include "finsler/program.hpp"

namespace finsler {

struct ProfileDerivatives {
  double r = 0.0;
  double rdot = 0.0;
  double rddot = 0.0;
};

/// Polar description t -> r(t) of the unit level set of a positively
/// 1-homogeneous function on the plane: phi(y) = exp(-r(t)) |y| where
/// t is the polar angle of y.
class PolarProfile {
 public:
  PolarProfile() = default;
  PolarProfile(ProfileProgram r, std::string label, bool pi_periodic);

  static PolarProfile constant(double c);
  /// r(t) = c0 + sum_k (cos_coeffs[k-1] cos(k t) + sin_coeffs[k-1] sin(k t)).
  static PolarProfile fourier(double c0, std::vector<double> cos_coeffs, std::vector<double> sin_coeffs);

  double r(double t) const;
  ProfileDerivatives derivatives(double t) const;
  const ProfileProgram& program() const { return r_; }
  const std::string& label() const { return label_; }
  bool is_pi_periodic() const { return pi_periodic_; }

  /// max |r(t + 2 pi) - r(t)| over a uniform grid of `grid_size` angles.
  double periodicity_residual(int grid_size) const;

  /// phi(y) = exp(-r(atan2(y2, y1))) |y| as a program of (x, y); x is ignored.
  ScalarProgram homogeneous_function() const;

  bool is_fourier() const { return fourier_; }
  double fourier_constant() const { return c0_; }
  const std::vector<double>& fourier_cos() const { return cos_; }
  const std::vector<double>& fourier_sin() const { return sin_; }

 private:
  ProfileProgram r_;
  std::string label_;
  bool pi_periodic_ = false;
  bool fourier_ = false;
  double c0_ = 0.0;
  std::vector<double> cos_;
  std::vector<double> sin_;
};

}  // namespace finsler
