#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "bsespec/kernels.hpp"
#include "bsespec/types.hpp"

namespace bsespec {

enum class ScalarField { Real, Complex };

enum class Definiteness { Definite, Indefinite, Waived };

// The 2n x 2n Bethe-Salpeter Hamiltonian
//
//     H = [  A        B     ]        Omega = [ A        B      ]
//         [ -conj(B) -conj(A) ]               [ conj(B)  conj(A) ]
//
// held through its n x n blocks, with A Hermitian and B complex symmetric.
// H = C_n Omega where C_n = diag(I, -I). Instances are immutable; build them
// with build_hamiltonian / make_tda_hamiltonian or one of the generators.
class BseHamiltonian {
 public:
  Eigen::Index n() const noexcept { return a_.rows(); }
  const Matrix& a() const noexcept { return a_; }
  const Matrix& b() const noexcept { return b_; }
  ScalarField field() const noexcept { return field_; }
  bool tda() const noexcept { return tda_; }
  Definiteness definiteness() const noexcept { return definiteness_; }

  // Dense Omega (2n x 2n). Only used by oracles and tests.
  Matrix omega_dense() const;
  // Dense H (2n x 2n). Only used by oracles and tests.
  Matrix h_dense() const;

 private:
  friend BseHamiltonian build_hamiltonian(Matrix, Matrix, std::optional<double>);
  friend BseHamiltonian make_tda_hamiltonian(Matrix, std::optional<double>);
  friend BseHamiltonian make_waived_hamiltonian(Matrix, Matrix);

  BseHamiltonian(Matrix a, Matrix b, ScalarField field, bool tda, Definiteness def)
      : a_(std::move(a)), b_(std::move(b)), field_(field), tda_(tda), definiteness_(def) {}

  Matrix a_;
  Matrix b_;
  ScalarField field_;
  bool tda_;
  Definiteness definiteness_;
};

// Default entrywise structure tolerance: 1e-12 * max(|A|_max, |B|_max, 1).
double default_structure_tol(const Matrix& a, const Matrix& b);

// Validates A = A^H and B = B^T to `tol` (default above), symmetrizes, infers
// the scalar field and records whether Omega is positive definite.
// Throws DimensionMismatch or StructureViolation.
BseHamiltonian build_hamiltonian(Matrix a, Matrix b, std::optional<double> tol = {});

// B = 0 with the TDA flag set; definiteness means A > 0.
BseHamiltonian make_tda_hamiltonian(Matrix a, std::optional<double> tol = {});

// Symmetrizes but skips the definiteness check (tagged Waived).
BseHamiltonian make_waived_hamiltonian(Matrix a, Matrix b);

// Default definiteness threshold: 1e-10 * |Omega|_max.
double default_definiteness_tol(const BseHamiltonian& h);

// True iff lambda_min(Omega) > tol; for real H, iff both A + B and A - B have
// lambda_min > tol. Decided by attempting a Cholesky factorization of the
// shifted matrix.
bool check_definiteness(const BseHamiltonian& h, std::optional<double> tol = {});

// v = A u + B conj(u) (v = A u under TDA). H maps [u; conj(u)] to [v; -conj(v)].
Vector apply_h_structured(const BseHamiltonian& h, const Vector& u,
                          kernels::Exec exec = kernels::default_exec());

// Power-iteration estimate of |Omega|_2 = |H|_2 from a fixed-seed start.
double estimate_norm(const BseHamiltonian& h, int iterations = 5);

// Random definite instance, deterministic in (n, seed). A0 is Hermitian and B0
// complex symmetric with entries of variance 1/n; A = A0 + s I where s puts
// lambda_min(Omega) exactly at diag_shift. Real field draws real entries.
BseHamiltonian generate_random_definite(Eigen::Index n, std::uint64_t seed,
                                        ScalarField field, double diag_shift);

// Random transition vector, deterministic in (n, seed).
Vector generate_transition_vector(Eigen::Index n, std::uint64_t seed, ScalarField field);

enum class ShowcaseReading {
  // B(j, j) = i^(j-1) with i the imaginary unit. Omega is definite.
  ImaginaryUnit,
  // B(j, j) = j^(j-1). Omega is badly indefinite.
  IntegerPower,
};

// The n = 16 showcase instance: A = tridiag(1, 4, 1), B diagonal,
// d(j) = (-1)^(j-1). Returned with definiteness Waived.
std::pair<BseHamiltonian, Vector> generate_showcase_example(
    ShowcaseReading reading = ShowcaseReading::ImaginaryUnit);

}  // namespace bsespec
