#pragma once

#include <optional>
#include <vector>

#include "bsespec/lanczos.hpp"
#include "bsespec/quadrature.hpp"
#include "bsespec/spectrum.hpp"
#include "bsespec/tridiagonal.hpp"

namespace bsespec {

// Off-diagonal of the zero-diagonal tridiagonal T~ produced by Lanczos on H in
// the Omega-inner product from a structured start.
struct ZeroDiagTridiagonal {
  RealVector betas;                    // length k2 - 1
  std::optional<double> residual_beta;  // beta~_{k2}, absent after breakdown
};

struct GmgRun {
  LanczosRun run;  // variant GmgOmegaInner, alphas identically zero
  ZeroDiagTridiagonal tridiag;
};

// Lanczos on H itself in the Omega-inner product with q_1 = d_l / |d_l|_Omega,
// d_l = [d; conj(d)]. Odd steps stay in {[u; conj(u)]}, even steps in
// {[v; -conj(v)]}, so only n-vectors are carried. Retained bases hold the
// n-vector halves (u for odd steps, v for even steps, in step order).
// Throws OddStepCount, IndefiniteInnerProduct, ZeroStartVector.
GmgRun lanczos_gmg(const BseHamiltonian& h, const Vector& d, int k2,
                   const LanczosOptions& opts = {});

// eps(w) = scale * |d_l|_Omega^2 * e_1^T g(wI - T~) T~^{-1} e_1, evaluated from the
// positive eigenvalues of T~ (or of its (2 k2 - 1)-order averaged extension).
// Throws SingularProjection.
Spectrum assemble_gmg_spectrum(const GmgRun& gmg, const BroadeningKernel& g,
                               const std::vector<double>& omegas,
                               const AssembleOptions& opts = {});

// Positive Ritz values of T~ (ascending).
std::vector<double> gmg_positive_ritz(const GmgRun& gmg, bool use_gagq);

// Q~^H Omega Q~ - I, from the retained halves.
double gmg_basis_orthogonality(const GmgRun& gmg, const BseHamiltonian& h);

enum class PairedInner {
  OmegaCondition,  // W_i^H Omega W_j = delta_ij I_2
  CCondition,      // W_i^H C_n W_j = delta_ij diag(1, -1)
};

// Projection produced by the paired-start Lanczos procedure: with
// W = [U conj(V); V conj(U)], H W = W H_k + (rank-2 residual) and
//   H_k = [ A_k        B_k      ]
//         [ -conj(B_k) -conj(A_k) ].
struct PairedProjectedHamiltonian {
  PairedInner inner = PairedInner::CCondition;
  int k = 0;
  Matrix a_k;
  Matrix b_k;
  Matrix h_k;       // full 2k x 2k, ordered [w_1..w_k, Jw_1..Jw_k]
  Matrix basis;     // 2n x k, columns w_j = [u_j; v_j]
  Vector left;      // W^H Omega d_l (condition 43) or coordinates of d_l
  Vector right;     // W^H d_r
  double norm_const = 0.0;  // |d|_2^2
  std::optional<int> breakdown_at;
};

// Paired-start Lanczos with u_1 = d, v_1 = 0. Each two-dimensional block
// [w, Jw] (Jw = [conj(v); conj(u)]) is orthonormalized in the chosen inner
// product. Throws NeutralVectorBreakdown (C-inner) or GramFactorizationFailure
// (Omega-inner).
PairedProjectedHamiltonian lanczos_paired(const BseHamiltonian& h, const Vector& d, int k,
                                          PairedInner inner,
                                          Reorthogonalization reorth = Reorthogonalization::Full);

// OmegaCondition: the complex-valued d_r^H W g(wI - H_k) W^H Omega d_l.
// CCondition: |d|^2 sum_j |S1(1,j) - S2(1,j)|^2 [g(w - theta_j) - g(w + theta_j)].
Spectrum assemble_paired_spectrum(const PairedProjectedHamiltonian& proj,
                                  const BroadeningKernel& g, const std::vector<double>& omegas,
                                  double scale = 1.0);

// Max deviation of the block Gram matrix from its ideal in the run's inner product.
double paired_basis_orthogonality(const PairedProjectedHamiltonian& proj,
                                  const BseHamiltonian& h);

}  // namespace bsespec
