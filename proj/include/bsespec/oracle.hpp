#pragma once

#include <vector>

#include "bsespec/hamiltonian.hpp"
#include "bsespec/spectrum.hpp"

namespace bsespec {

// Structured eigendecomposition of a definite H: for j = 1..n,
//   H [x_j; y_j] = lambda_j [x_j; y_j],  x_j^H x_j - y_j^H y_j = 1,
// lambdas sorted descending, all positive. The negative half is
// H [conj(y_j); conj(x_j)] = -lambda_j [conj(y_j); conj(x_j)].
struct StructuredEigenDecomposition {
  RealVector lambdas;
  Matrix x;  // columns x_j
  Matrix y;  // columns y_j
};

// Full-diagonalization reference. Factors Omega = L L^H, diagonalizes the
// Hermitian L^H C_n L and maps back, so eigenvalues come out exactly paired.
// Throws NotDefinite if the factorization fails.
StructuredEigenDecomposition full_diagonalize(const BseHamiltonian& h);

// |d^H x_j - d^T y_j|^2 for each j, in the order of `eig.lambdas`.
RealVector oscillator_strengths(const StructuredEigenDecomposition& eig, const Vector& d);

// eps(w) = scale * sum_j f_j [g(w - lambda_j) - g(w + lambda_j)]
Spectrum exact_spectrum(const BseHamiltonian& h, const Vector& d, const BroadeningKernel& g,
                        const std::vector<double>& omegas, double scale = 1.0);

// Same, reusing an existing decomposition.
Spectrum exact_spectrum(const StructuredEigenDecomposition& eig, const Vector& d,
                        const BroadeningKernel& g, const std::vector<double>& omegas,
                        double scale = 1.0);

}  // namespace bsespec
