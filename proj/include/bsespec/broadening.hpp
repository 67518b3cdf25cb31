#pragma once

#include <cmath>
#include <numbers>
#include <string_view>

namespace bsespec {

enum class KernelShape { Gaussian, Lorentzian };

// Smooth stand-in for the Dirac delta with width sigma.
//   Gaussian:   exp(-w^2 / (2 sigma^2)) / (sqrt(2 pi) sigma)
//   Lorentzian: sigma / (pi (w^2 + sigma^2))
class BroadeningKernel {
 public:
  // Throws Error(InvalidConfig) unless sigma is finite and positive.
  BroadeningKernel(KernelShape shape, double sigma);

  KernelShape shape() const noexcept { return shape_; }
  double sigma() const noexcept { return sigma_; }

  double operator()(double w) const noexcept {
    if (shape_ == KernelShape::Gaussian) {
      return gauss_scale_ * std::exp(-w * w * gauss_exponent_);
    }
    return lorentz_scale_ / (w * w + sigma_ * sigma_);
  }

 private:
  KernelShape shape_;
  double sigma_;
  double gauss_scale_;
  double gauss_exponent_;
  double lorentz_scale_;
};

std::string_view to_string(KernelShape shape) noexcept;

}  // namespace bsespec
