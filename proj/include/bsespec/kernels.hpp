#pragma once

#include <span>

#include "bsespec/broadening.hpp"
#include "bsespec/types.hpp"

// Data-parallel inner loops shared by every engine. Each kernel has a serial
// reference path and an OpenMP path; both evaluate every output element with
// the same fixed-order reduction, so the two paths agree bit for bit.
namespace bsespec::kernels {

enum class Exec { Serial, Parallel };

// Parallel when the library was built with OpenMP, serial otherwise.
Exec default_exec() noexcept;
bool parallel_available() noexcept;

// y = M x
void gemv(const Matrix& m, const Vector& x, Vector& y, Exec exec = default_exec());
void gemv(const RealMatrix& m, const RealVector& x, RealVector& y,
          Exec exec = default_exec());

// y = A x + sign * B conj(x). sign = +1 is the map u -> Au + B conj(u) that
// sends [u; conj(u)] through Omega; sign = -1 is v -> Av - B conj(v).
void structured_apply(const Matrix& a, const Matrix& b, const Vector& x, double sign,
                      Vector& y, Exec exec = default_exec());

// out[i] = sum_j coeff[j] * (g(omega[i] - node[j]) - g(omega[i] + node[j])).
// Odd in omega by construction.
void odd_spectrum(std::span<const double> omegas, std::span<const double> nodes,
                  std::span<const double> coeffs, const BroadeningKernel& g,
                  std::span<double> out, Exec exec = default_exec());

// out[i] = sum_j coeff[j] * g(omega[i] - node[j]) with complex weights.
void shifted_spectrum(std::span<const double> omegas, std::span<const double> nodes,
                      std::span<const cplx> coeffs, const BroadeningKernel& g,
                      std::span<cplx> out, Exec exec = default_exec());

}  // namespace bsespec::kernels
