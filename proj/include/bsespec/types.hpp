#pragma once

#include <complex>

#include <Eigen/Core>

namespace bsespec {

using cplx = std::complex<double>;

// Dense blocks are stored row-major so the matvec kernels walk contiguous rows.
using Matrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RealMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

}  // namespace bsespec
