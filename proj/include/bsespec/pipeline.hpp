#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "bsespec/hamiltonian.hpp"
#include "bsespec/lanczos.hpp"
#include "bsespec/spectrum.hpp"

namespace bsespec {

enum class SolverVariant { Tda, RealM, Omega, Gmg, PairedOmega, PairedC };

std::string_view to_string(SolverVariant v) noexcept;
std::optional<SolverVariant> parse_solver_variant(std::string_view name) noexcept;

struct VariantConfig {
  SolverVariant variant = SolverVariant::Omega;
  bool gagq = false;
  Reorthogonalization reorth = Reorthogonalization::None;
};

// Runs one variant for k steps and assembles its spectrum on `omegas`.
// For Tda only the A block of `h` is used.
Spectrum approximate_spectrum(const BseHamiltonian& h, const Vector& d, const VariantConfig& cfg,
                              int k, const BroadeningKernel& g, const std::vector<double>& omegas,
                              double scale = 1.0);

}  // namespace bsespec
