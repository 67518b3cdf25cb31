#include "bsespec/oracle.hpp"

#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "bsespec/error.hpp"
#include "bsespec/kernels.hpp"

namespace bsespec {

StructuredEigenDecomposition full_diagonalize(const BseHamiltonian& h) {
  const Eigen::Index n = h.n();
  Eigen::LLT<Matrix> llt(h.omega_dense());
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::NotDefinite, "Omega is not positive definite");
  }
  const Matrix l = llt.matrixL();

  // W = L^H C_n L is Hermitian with the eigenvalues of H.
  Matrix cl = l;
  cl.bottomRows(n) *= -1.0;
  Matrix w = l.adjoint() * cl;
  w = (0.5 * (w + w.adjoint())).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> es(w);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorCode::ConvergenceFailure, "Hermitian eigensolver did not converge");
  }

  // z = sqrt(lambda) L^{-H} q has z^H Omega z = lambda, hence z^H C_n z = 1.
  StructuredEigenDecomposition out;
  out.lambdas.resize(n);
  out.x.resize(n, n);
  out.y.resize(n, n);
  const auto upper = llt.matrixU();
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::Index src = 2 * n - 1 - j;  // ascending storage, take the top half
    const double lambda = es.eigenvalues()[src];
    if (!(lambda > 0.0)) {
      throw Error(ErrorCode::NotDefinite, "nonpositive eigenvalue in the positive half");
    }
    Vector z = upper.solve(es.eigenvectors().col(src));
    z *= std::sqrt(lambda);
    out.lambdas[j] = lambda;
    out.x.col(j) = z.head(n);
    out.y.col(j) = z.tail(n);
  }
  return out;
}

RealVector oscillator_strengths(const StructuredEigenDecomposition& eig, const Vector& d) {
  if (d.size() != eig.x.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "transition vector length does not match H");
  }
  const Eigen::Index n = eig.lambdas.size();
  RealVector f(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const cplx s = d.dot(eig.x.col(j)) - (d.transpose() * eig.y.col(j))(0);
    f[j] = std::norm(s);
  }
  return f;
}

Spectrum exact_spectrum(const StructuredEigenDecomposition& eig, const Vector& d,
                        const BroadeningKernel& g, const std::vector<double>& omegas,
                        double scale) {
  const RealVector f = oscillator_strengths(eig, d);
  Spectrum s;
  s.omegas = omegas;
  s.values.assign(omegas.size(), 0.0);
  s.nodes.assign(eig.lambdas.data(), eig.lambdas.data() + eig.lambdas.size());
  s.strengths.assign(f.data(), f.data() + f.size());
  std::vector<double> coeffs(s.strengths);
  for (double& c : coeffs) c *= scale;
  kernels::odd_spectrum(s.omegas, s.nodes, coeffs, g, s.values);
  s.info.variant = "exact";
  s.info.k = static_cast<int>(eig.lambdas.size());
  s.info.kernel = g.shape();
  s.info.sigma = g.sigma();
  s.info.norm_const = d.squaredNorm();
  s.info.scale = scale;
  return s;
}

Spectrum exact_spectrum(const BseHamiltonian& h, const Vector& d, const BroadeningKernel& g,
                        const std::vector<double>& omegas, double scale) {
  return exact_spectrum(full_diagonalize(h), d, g, omegas, scale);
}

}  // namespace bsespec
