#pragma once

#include <optional>
#include <string_view>

#include "bsespec/hamiltonian.hpp"
#include "bsespec/kernels.hpp"

namespace bsespec {

enum class LanczosVariant { TdaHermitian, RealMInner, ComplexOmegaInner, GmgOmegaInner, PairedCInner };

std::string_view to_string(LanczosVariant v) noexcept;

enum class Reorthogonalization { None, Full };

struct LanczosOptions {
  // Full re-orthogonalizes each new vector against every previous one in the
  // variant's own inner product, two classical Gram-Schmidt passes.
  Reorthogonalization reorth = Reorthogonalization::None;
  // Keep the Lanczos vectors in the returned run (tests only).
  bool retain_basis = false;
  kernels::Exec exec = kernels::default_exec();
};

// Retained Lanczos vectors, one per column, k + 1 columns when the run did not
// break down. `u` is the primary basis; `v` is the companion basis (Omega u for
// the M- and Omega-inner variants, empty for TDA).
struct LanczosBasis {
  Matrix u;
  Matrix v;
};

struct LanczosRun {
  LanczosVariant variant = LanczosVariant::TdaHermitian;
  int k = 0;               // steps actually performed
  RealVector alphas;       // length k
  RealVector betas;        // length k, betas[k-1] is the residual coefficient
  double norm_const = 0.0;
  std::optional<int> breakdown_at;  // 1-based step of a lucky breakdown
  double operator_norm = 0.0;       // |H|_est used for the breakdown test
  // Largest |Im| dropped by the Re(.) operations, relative to the kept part.
  double max_discarded_imag = 0.0;
  std::optional<LanczosBasis> basis;
};

// Hermitian Lanczos on A with u_1 = d / |d|_2 (TDA).
// Throws InvalidSteps, ZeroStartVector.
LanczosRun lanczos_tda(const Matrix& a, const Vector& d, int k, const LanczosOptions& opts = {});
LanczosRun lanczos_tda(const BseHamiltonian& h, const Vector& d, int k,
                       const LanczosOptions& opts = {});

// Lanczos on KM in the M-inner product for real H (M = A + B, K = A - B).
// Throws NotRealField, IndefiniteInnerProduct, ZeroStartVector, InvalidSteps.
LanczosRun lanczos_m_inner(const BseHamiltonian& h, const Vector& d, int k,
                           const LanczosOptions& opts = {});

// Structure preserving Lanczos on H^2 in the Omega-inner product, started from
// [d; conj(d)]. Throws IndefiniteInnerProduct, ZeroStartVector, InvalidSteps.
LanczosRun lanczos_omega_inner(const BseHamiltonian& h, const Vector& d, int k,
                               const LanczosOptions& opts = {});

// First `k` steps of `run`. Bit-identical to rerunning with k steps, since
// step j only reads steps < j.
LanczosRun truncate(const LanczosRun& run, int k);

// Max entrywise deviation of the variant's Gram matrix over the first k
// retained vectors from its ideal:
//   TDA        U^H U - I
//   RealMInner U^T M U - I
//   Omega      [V U; conj(V) -conj(U)]^H [U V; conj(U) -conj(V)] - 2 I_2k
// Throws BasisNotRetained.
double retained_basis_orthogonality(const LanczosRun& run, const BseHamiltonian& h);

// Largest |Im| entry of U^H U and V^H V over the retained Omega-inner basis.
double omega_basis_imag_gram(const LanczosRun& run);

}  // namespace bsespec
