#pragma once

#include <span>
#include <vector>

#include "bsespec/pipeline.hpp"
#include "bsespec/spectrum.hpp"

namespace bsespec {

// Two curves on one strictly ascending grid.
struct CurvePair {
  std::span<const double> omegas;
  std::span<const double> a;
  std::span<const double> b;
};

// Principal angle in [0, pi/2] between two curves under the L2 inner product,
// integrated with the left-point rectangular rule on the samples with w > 0.
// Evaluated as 2 asin(|a^ - b^| / 2) on the normalized curves, which equals
// arccos(|<a,b>| / (|a||b|)) but keeps full accuracy near zero.
// Throws ZeroNormCurve, DimensionMismatch.
double curve_angle(const CurvePair& pair);

// Convenience over two spectra sampled on the same grid (real parts).
double spectrum_angle(const Spectrum& a, const Spectrum& b);

struct HistoryRow {
  int k = 0;
  double angle = 0.0;
  int dropped_count = 0;
};

// Angle against `oracle` for k = 1..k_max (even k only for Gmg). The engine
// runs once to k_max and each row is assembled from the k-step prefix.
std::vector<HistoryRow> convergence_history(const BseHamiltonian& h, const Vector& d,
                                            const VariantConfig& cfg, int k_max,
                                            const BroadeningKernel& g, const Spectrum& oracle);

struct ErrorEstimates {
  double gauss_vs_gagq = 0.0;  // angle(Gauss_k, GAGQ_k)
  double consecutive = 0.0;    // angle(eps_k, eps_{k-1}) with the same rule
};

// Two a-posteriori error estimators for a run with k >= 2 (TDA, M-inner or
// Omega-inner). The consecutive estimate uses GAGQ when k - 1 >= 2.
ErrorEstimates two_rule_error_estimate(const LanczosRun& run, const BroadeningKernel& g,
                                       const std::vector<double>& omegas);

}  // namespace bsespec
