#include "bsespec/broadening.hpp"

#include "bsespec/error.hpp"

namespace bsespec {

BroadeningKernel::BroadeningKernel(KernelShape shape, double sigma)
    : shape_(shape), sigma_(sigma) {
  if (!std::isfinite(sigma) || sigma <= 0.0) {
    throw Error(ErrorCode::InvalidConfig, "sigma must be finite and positive");
  }
  gauss_scale_ = 1.0 / (std::sqrt(2.0 * std::numbers::pi) * sigma);
  gauss_exponent_ = 1.0 / (2.0 * sigma * sigma);
  lorentz_scale_ = sigma / std::numbers::pi;
}

std::string_view to_string(KernelShape shape) noexcept {
  return shape == KernelShape::Gaussian ? "gaussian" : "lorentzian";
}

}  // namespace bsespec
