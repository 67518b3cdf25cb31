#include "bsespec/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "bsespec/error.hpp"

namespace bsespec {

namespace {

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double max_imag(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.imag().cwiseAbs().maxCoeff();
}

void check_square_pair(const Matrix& a, const Matrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows() || a.rows() == 0) {
    throw Error(ErrorCode::DimensionMismatch,
                "A and B must be nonempty square matrices of equal size");
  }
}

// Symmetrizes in place and returns the inferred field.
ScalarField symmetrize(Matrix& a, Matrix& b, double tol) {
  a = (0.5 * (a + a.adjoint())).eval();
  b = (0.5 * (b + b.transpose())).eval();
  if (std::max(max_imag(a), max_imag(b)) <= tol) {
    a = a.real().cast<cplx>();
    b = b.real().cast<cplx>();
    return ScalarField::Real;
  }
  return ScalarField::Complex;
}

bool shifted_cholesky_ok(const Matrix& m, double tol) {
  Matrix s = m;
  s.diagonal().array() -= tol;
  Eigen::LLT<Matrix> llt(s);
  return llt.info() == Eigen::Success;
}

bool shifted_cholesky_ok(const RealMatrix& m, double tol) {
  RealMatrix s = m;
  s.diagonal().array() -= tol;
  Eigen::LLT<RealMatrix> llt(s);
  return llt.info() == Eigen::Success;
}

Matrix random_gaussian(Eigen::Index n, std::mt19937_64& rng, ScalarField field, double stddev) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(n, n);
  const double c = field == ScalarField::Complex ? stddev / std::sqrt(2.0) : stddev;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double re = normal(rng);
      const double im = field == ScalarField::Complex ? normal(rng) : 0.0;
      g(i, j) = c * cplx(re, im);
    }
  }
  return g;
}

}  // namespace

Matrix BseHamiltonian::omega_dense() const {
  const Eigen::Index m = n();
  Matrix o(2 * m, 2 * m);
  o.topLeftCorner(m, m) = a_;
  o.topRightCorner(m, m) = b_;
  o.bottomLeftCorner(m, m) = b_.conjugate();
  o.bottomRightCorner(m, m) = a_.conjugate();
  return o;
}

Matrix BseHamiltonian::h_dense() const {
  const Eigen::Index m = n();
  Matrix h = omega_dense();
  h.bottomRows(m) *= -1.0;
  return h;
}

double default_structure_tol(const Matrix& a, const Matrix& b) {
  return 1e-12 * std::max({max_abs(a), max_abs(b), 1.0});
}

BseHamiltonian build_hamiltonian(Matrix a, Matrix b, std::optional<double> tol) {
  check_square_pair(a, b);
  const double t = tol.value_or(default_structure_tol(a, b));
  const double da = (a - a.adjoint()).cwiseAbs().maxCoeff();
  const double db = (b - b.transpose()).cwiseAbs().maxCoeff();
  if (da > t) {
    throw Error(ErrorCode::StructureViolation,
                "A is not Hermitian (max deviation " + std::to_string(da) + ")");
  }
  if (db > t) {
    throw Error(ErrorCode::StructureViolation,
                "B is not complex symmetric (max deviation " + std::to_string(db) + ")");
  }
  const ScalarField field = symmetrize(a, b, t);
  BseHamiltonian h(std::move(a), std::move(b), field, false, Definiteness::Indefinite);
  if (check_definiteness(h)) h.definiteness_ = Definiteness::Definite;
  return h;
}

BseHamiltonian make_tda_hamiltonian(Matrix a, std::optional<double> tol) {
  Matrix b = Matrix::Zero(a.rows(), a.cols());
  check_square_pair(a, b);
  const double t = tol.value_or(default_structure_tol(a, b));
  const double da = (a - a.adjoint()).cwiseAbs().maxCoeff();
  if (da > t) {
    throw Error(ErrorCode::StructureViolation,
                "A is not Hermitian (max deviation " + std::to_string(da) + ")");
  }
  const ScalarField field = symmetrize(a, b, t);
  BseHamiltonian h(std::move(a), std::move(b), field, true, Definiteness::Indefinite);
  if (check_definiteness(h)) h.definiteness_ = Definiteness::Definite;
  return h;
}

BseHamiltonian make_waived_hamiltonian(Matrix a, Matrix b) {
  check_square_pair(a, b);
  const ScalarField field = symmetrize(a, b, default_structure_tol(a, b));
  return BseHamiltonian(std::move(a), std::move(b), field, false, Definiteness::Waived);
}

double default_definiteness_tol(const BseHamiltonian& h) {
  return 1e-10 * std::max(max_abs(h.a()), max_abs(h.b()));
}

bool check_definiteness(const BseHamiltonian& h, std::optional<double> tol) {
  const double t = tol.value_or(default_definiteness_tol(h));
  if (h.tda()) return shifted_cholesky_ok(h.a(), t);
  if (h.field() == ScalarField::Real) {
    const RealMatrix a = h.a().real();
    const RealMatrix b = h.b().real();
    return shifted_cholesky_ok(RealMatrix(a + b), t) && shifted_cholesky_ok(RealMatrix(a - b), t);
  }
  return shifted_cholesky_ok(h.omega_dense(), t);
}

Vector apply_h_structured(const BseHamiltonian& h, const Vector& u, kernels::Exec exec) {
  if (u.size() != h.n()) {
    throw Error(ErrorCode::DimensionMismatch, "vector length does not match the block size");
  }
  Vector v;
  if (h.tda()) {
    kernels::gemv(h.a(), u, v, exec);
  } else {
    kernels::structured_apply(h.a(), h.b(), u, 1.0, v, exec);
  }
  return v;
}

double estimate_norm(const BseHamiltonian& h, int iterations) {
  const Eigen::Index n = h.n();
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector p(n), q(n);
  for (Eigen::Index i = 0; i < n; ++i) p[i] = cplx(normal(rng), normal(rng));
  for (Eigen::Index i = 0; i < n; ++i) q[i] = cplx(normal(rng), normal(rng));
  if (h.tda()) q.setZero();

  // Omega [p; q] = [A p + B q; conj(B) p + conj(A) q]
  const Matrix b_conj = h.b().conjugate();
  const Matrix a_conj = h.a().conjugate();
  Vector t1, t2, t3, t4;
  double estimate = 0.0;
  for (int it = 0; it < std::max(iterations, 1); ++it) {
    const double nrm = std::sqrt(p.squaredNorm() + q.squaredNorm());
    if (nrm == 0.0) return 0.0;
    p /= nrm;
    q /= nrm;
    kernels::gemv(h.a(), p, t1);
    kernels::gemv(h.b(), q, t2);
    kernels::gemv(b_conj, p, t3);
    kernels::gemv(a_conj, q, t4);
    p = t1 + t2;
    q = t3 + t4;
    estimate = std::sqrt(p.squaredNorm() + q.squaredNorm());
  }
  return estimate;
}

BseHamiltonian generate_random_definite(Eigen::Index n, std::uint64_t seed, ScalarField field,
                                        double diag_shift) {
  if (n < 1) throw Error(ErrorCode::InvalidConfig, "generator needs n >= 1");
  std::mt19937_64 rng(seed);
  const double stddev = 1.0 / std::sqrt(static_cast<double>(n));
  const Matrix g1 = random_gaussian(n, rng, field, stddev);
  const Matrix g2 = random_gaussian(n, rng, field, stddev);
  Matrix a = (g1 + g1.adjoint()) / std::sqrt(2.0);
  Matrix b = (g2 + g2.transpose()) / std::sqrt(2.0);
  a = (0.5 * (a + a.adjoint())).eval();

  BseHamiltonian raw = make_waived_hamiltonian(a, b);
  Eigen::SelfAdjointEigenSolver<Matrix> es(raw.omega_dense(), Eigen::EigenvaluesOnly);
  const double shift = diag_shift - es.eigenvalues().minCoeff();
  a.diagonal().array() += shift;
  return build_hamiltonian(std::move(a), std::move(b));
}

Vector generate_transition_vector(Eigen::Index n, std::uint64_t seed, ScalarField field) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector d(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double re = normal(rng);
    const double im = field == ScalarField::Complex ? normal(rng) : 0.0;
    d[i] = cplx(re, im);
  }
  return d;
}

std::pair<BseHamiltonian, Vector> generate_showcase_example(ShowcaseReading reading) {
  constexpr Eigen::Index n = 16;
  Matrix a = Matrix::Zero(n, n);
  Matrix b = Matrix::Zero(n, n);
  Vector d(n);
  const cplx unit_powers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (Eigen::Index j = 0; j < n; ++j) {
    a(j, j) = 4.0;
    if (j + 1 < n) a(j, j + 1) = a(j + 1, j) = 1.0;
    if (reading == ShowcaseReading::ImaginaryUnit) {
      b(j, j) = unit_powers[j % 4];
    } else {
      b(j, j) = std::pow(static_cast<double>(j + 1), static_cast<double>(j));
    }
    d[j] = (j % 2 == 0) ? 1.0 : -1.0;
  }
  return {make_waived_hamiltonian(std::move(a), std::move(b)), std::move(d)};
}

}  // namespace bsespec
