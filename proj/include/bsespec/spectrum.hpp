#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bsespec/broadening.hpp"
#include "bsespec/types.hpp"

namespace bsespec {

// Uniform ascending grid with `points` samples on [lo, hi] (points >= 2).
std::vector<double> uniform_grid(double lo, double hi, int points);

// Symmetric grid on [-hi, hi].
std::vector<double> symmetric_grid(double hi, int points);

struct SpectrumInfo {
  std::string variant;
  int k = 0;
  KernelShape kernel = KernelShape::Gaussian;
  double sigma = 0.0;
  double norm_const = 0.0;
  double scale = 1.0;
  int dropped_count = 0;
  std::optional<int> breakdown_at;
  bool gagq = false;
};

// Sampled absorption curve. `imag` is only populated by the complex-valued
// diagnostic path (paired Omega-condition variant).
struct Spectrum {
  std::vector<double> omegas;
  std::vector<double> values;
  std::optional<std::vector<double>> imag;
  SpectrumInfo info;
  // Oscillator strengths / quadrature weights behind `values`, when known.
  std::vector<double> nodes;
  std::vector<double> strengths;

  bool is_complex() const noexcept { return imag.has_value(); }
};

}  // namespace bsespec
