#pragma once

#include "bsespec/lanczos.hpp"
#include "bsespec/types.hpp"

namespace bsespec {

struct SymTridiagonal {
  RealVector diag;     // length m
  RealVector offdiag;  // length m - 1

  Eigen::Index size() const noexcept { return diag.size(); }
  RealMatrix dense() const;
};

// T_k: diag = alphas, offdiag = betas[0..k-2].
SymTridiagonal build_tk(const LanczosRun& run);

// Generalized averaged Gauss matrix of order 2k - 1:
//   diag    (a_1, ..., a_k, a_{k-1}, ..., a_1)
//   offdiag (b_1, ..., b_{k-1}, b_k, b_{k-2}, ..., b_1)
// Throws InsufficientSteps (k < 2) or BreakdownExact.
SymTridiagonal build_gagq(const LanczosRun& run);

// Same palindromic extension from raw coefficients (used by the GMG variant,
// whose diagonal is zero).
SymTridiagonal palindromic_extension(const RealVector& diag, const RealVector& betas);

struct TridiagEigen {
  RealVector values;     // ascending
  RealVector first_row;  // first component of each orthonormal eigenvector
};

// Implicit QL with Wilkinson shifts, accumulating only the first row of the
// eigenvector matrix. Throws ConvergenceFailure.
TridiagEigen tridiag_eig(const SymTridiagonal& t);

}  // namespace bsespec
