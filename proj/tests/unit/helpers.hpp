#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "bsespec/hamiltonian.hpp"
#include "bsespec/types.hpp"

namespace testutil {

using namespace bsespec;

inline Matrix scalar(double re, double im = 0.0) {
  Matrix m(1, 1);
  m(0, 0) = cplx(re, im);
  return m;
}

inline Vector vec(std::initializer_list<cplx> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (cplx x : xs) v[i++] = x;
  return v;
}

// Small random instance for property loops: n in [lo, hi], seed-driven.
struct Instance {
  BseHamiltonian h;
  Vector d;
};

inline Instance random_instance(std::uint64_t seed, Eigen::Index n, ScalarField field,
                                double shift = 0.5) {
  return Instance{generate_random_definite(n, seed, field, shift),
                  generate_transition_vector(n, seed + 1000, field)};
}

inline Eigen::Index pick_n(std::uint64_t seed, Eigen::Index lo, Eigen::Index hi) {
  std::mt19937_64 rng(seed * 7919 + 17);
  return lo + static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

// Eigenvalues of the dense 2n x 2n H from a generic nonsymmetric solver,
// sorted ascending by real part. Independent of the structured oracle.
inline std::vector<cplx> generic_eigenvalues(const BseHamiltonian& h) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(Eigen::MatrixXcd(h.h_dense()));
  std::vector<cplx> ev(es.eigenvalues().data(),
                       es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(ev.begin(), ev.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
  return ev;
}

// Eigenvalues of a real symmetric matrix, ascending (dense reference).
inline Eigen::VectorXd dense_symmetric_eigenvalues(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

inline double gauss_peak(double sigma) { return 1.0 / (sigma * std::sqrt(2.0 * M_PI)); }

inline std::filesystem::path temp_dir(const std::string& name) {
  const std::filesystem::path p = std::filesystem::temp_directory_path() / ("bsespec_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace testutil
