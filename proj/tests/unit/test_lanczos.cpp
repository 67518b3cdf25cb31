#include <doctest.h>

#include "bsespec/error.hpp"
#include "bsespec/lanczos.hpp"
#include "bsespec/oracle.hpp"
#include "bsespec/tridiagonal.hpp"
#include "helpers.hpp"

using namespace bsespec;
using namespace testutil;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvalidConfig;
}

LanczosOptions full_retained() {
  LanczosOptions o;
  o.reorth = Reorthogonalization::Full;
  o.retain_basis = true;
  return o;
}

}  // namespace

TEST_CASE("lanczos_tda examples") {
  const LanczosRun r1 = lanczos_tda(scalar(3), vec({2.0}), 1);
  CHECK(r1.alphas[0] == doctest::Approx(3.0));
  CHECK(r1.betas[0] == 0.0);
  CHECK(r1.breakdown_at == 1);
  CHECK(r1.norm_const == doctest::Approx(4.0));

  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = 2.0;
  const LanczosRun r2 = lanczos_tda(a, vec({1.0, 0.0}), 1);
  CHECK(r2.alphas[0] == doctest::Approx(1.0));
  CHECK(r2.breakdown_at == 1);

  const LanczosRun r3 = lanczos_tda(a, vec({M_SQRT1_2, M_SQRT1_2}), 2);
  CHECK(r3.k == 2);
  const Eigen::VectorXd ev = dense_symmetric_eigenvalues(build_tk(r3).dense());
  CHECK(ev[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(ev[1] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(r3.breakdown_at == 2);

  CHECK(code_of([&] { lanczos_tda(a, vec({1.0, 0.0}), 0); }) == ErrorCode::InvalidSteps);
  CHECK(code_of([&] { lanczos_tda(a, vec({0.0, 0.0}), 1); }) == ErrorCode::ZeroStartVector);
}

TEST_CASE("lanczos_m_inner and lanczos_omega_inner on the 1x1 instance") {
  const BseHamiltonian h = build_hamiltonian(scalar(2), scalar(0.5));
  const LanczosRun m = lanczos_m_inner(h, vec({1.0}), 1);
  CHECK(m.alphas[0] == doctest::Approx(3.75).epsilon(1e-14));
  CHECK(m.norm_const == doctest::Approx(2.5));
  CHECK(m.breakdown_at == 1);

  const LanczosRun o = lanczos_omega_inner(h, vec({1.0}), 1);
  CHECK(o.alphas[0] == doctest::Approx(3.75).epsilon(1e-14));
  CHECK(o.norm_const == doctest::Approx(2.5));
  CHECK(std::sqrt(o.alphas[0]) == doctest::Approx(full_diagonalize(h).lambdas[0]));
}

TEST_CASE("lanczos_m_inner rejects complex input") {
  const Instance in = random_instance(1, 5, ScalarField::Complex);
  CHECK(code_of([&] { lanczos_m_inner(in.h, in.d, 2); }) == ErrorCode::NotRealField);
  const Instance re = random_instance(1, 5, ScalarField::Real);
  Vector dc = re.d;
  dc[0] += cplx(0.0, 1.0);
  CHECK(code_of([&] { lanczos_m_inner(re.h, dc, 2); }) == ErrorCode::NotRealField);
}

TEST_CASE("indefinite inner product is reported") {
  // M = A + B is indefinite and d^T M d < 0.
  Matrix a(2, 2), b(2, 2);
  a << 1, 0.2, 0.2, 1;
  b << -3, 0, 0, 0.5;
  const BseHamiltonian h = make_waived_hamiltonian(a, b);
  CHECK(code_of([&] { lanczos_omega_inner(h, vec({1.0, 0.0}), 2); }) ==
        ErrorCode::IndefiniteInnerProduct);
  CHECK(code_of([&] { lanczos_m_inner(h, vec({1.0, 0.0}), 2); }) ==
        ErrorCode::IndefiniteInnerProduct);
}

TEST_CASE("exactness at k = n: M-inner and Omega-inner") {
  const Instance re = random_instance(11, 4, ScalarField::Real);
  const LanczosRun m = lanczos_m_inner(re.h, re.d, 4, full_retained());
  const StructuredEigenDecomposition eig = full_diagonalize(re.h);
  Eigen::VectorXd ev = dense_symmetric_eigenvalues(build_tk(m).dense());
  for (int j = 0; j < 4; ++j) {
    const double lam = eig.lambdas[3 - j];
    CHECK(ev[j] == doctest::Approx(lam * lam).epsilon(1e-10));
  }

  const Instance cx = random_instance(12, 6, ScalarField::Complex);
  const LanczosRun o = lanczos_omega_inner(cx.h, cx.d, 6, full_retained());
  const StructuredEigenDecomposition ec = full_diagonalize(cx.h);
  ev = dense_symmetric_eigenvalues(build_tk(o).dense());
  for (int j = 0; j < 6; ++j) {
    CHECK(rel_diff(std::sqrt(ev[j]), ec.lambdas[5 - j]) <= 1e-8);
  }
}

TEST_CASE("breakdown when d spans an invariant subspace of KM") {
  const Instance re = random_instance(13, 6, ScalarField::Real);
  const StructuredEigenDecomposition eig = full_diagonalize(re.h);
  // KM (x + y) = lambda^2 (x + y) for real instances, since M (x + y) = lambda (x - y)
  // and K (x - y) = lambda (x + y).
  const Vector z = eig.x.col(2) + eig.y.col(2);
  Eigen::Index top = 0;
  z.cwiseAbs().maxCoeff(&top);
  const Vector d = (z / (z[top] / std::abs(z[top]))).real().cast<cplx>();
  const LanczosRun m = lanczos_m_inner(re.h, d, 4);
  CHECK(m.breakdown_at == 1);
  CHECK(m.alphas[0] == doctest::Approx(eig.lambdas[2] * eig.lambdas[2]).epsilon(1e-10));
  const LanczosRun o = lanczos_omega_inner(re.h, d, 4);
  CHECK(o.breakdown_at == 1);
}

TEST_CASE("real/complex engine equivalence on real input") {
  for (std::uint64_t seed = 30; seed < 36; ++seed) {
    const Eigen::Index n = pick_n(seed, 3, 30);
    const Instance re = random_instance(seed, n, ScalarField::Real);
    const int k = static_cast<int>(std::min<Eigen::Index>(n, 12));
    const LanczosRun m = lanczos_m_inner(re.h, re.d, k);
    const LanczosRun o = lanczos_omega_inner(re.h, re.d, k);
    REQUIRE(m.k == o.k);
    CHECK(o.max_discarded_imag == 0.0);
    CHECK(rel_diff(m.norm_const, o.norm_const) <= 1e-12);
    for (int j = 0; j < m.k; ++j) {
      CHECK(rel_diff(m.alphas[j], o.alphas[j]) <= 1e-12);
      CHECK(rel_diff(m.betas[j], o.betas[j]) <= 1e-12);
    }
  }
}

TEST_CASE("retained basis orthogonality") {
  const BseHamiltonian h1 = build_hamiltonian(scalar(2), scalar(0.5));
  for (auto run : {lanczos_tda(h1, vec({1.0}), 1, full_retained()),
                   lanczos_m_inner(h1, vec({1.0}), 1, full_retained()),
                   lanczos_omega_inner(h1, vec({1.0}), 1, full_retained())}) {
    CHECK(retained_basis_orthogonality(run, h1) <= 1e-14);
  }

  const Instance cx = random_instance(50, 50, ScalarField::Complex);
  const LanczosRun full = lanczos_omega_inner(cx.h, cx.d, 20, full_retained());
  CHECK(retained_basis_orthogonality(full, cx.h) <= 1e-10);
  CHECK(omega_basis_imag_gram(full) <= 1e-10);

  const LanczosRun tda = lanczos_tda(cx.h, cx.d, 20, full_retained());
  CHECK(retained_basis_orthogonality(tda, cx.h) <= 1e-10);

  const Instance re = random_instance(51, 50, ScalarField::Real);
  const LanczosRun mr = lanczos_m_inner(re.h, re.d, 20, full_retained());
  CHECK(retained_basis_orthogonality(mr, re.h) <= 1e-10);

  LanczosOptions none;
  none.retain_basis = true;
  const LanczosRun loose = lanczos_omega_inner(cx.h, cx.d, 20, none);
  CHECK(std::isfinite(retained_basis_orthogonality(loose, cx.h)));

  const LanczosRun bare = lanczos_omega_inner(cx.h, cx.d, 3);
  CHECK(code_of([&] { retained_basis_orthogonality(bare, cx.h); }) ==
        ErrorCode::BasisNotRetained);
}

TEST_CASE("coefficients are real with nonnegative off-diagonal") {
  for (std::uint64_t seed = 60; seed < 70; ++seed) {
    const Instance cx = random_instance(seed, pick_n(seed, 2, 40), ScalarField::Complex);
    const LanczosRun o = lanczos_omega_inner(cx.h, cx.d, static_cast<int>(cx.h.n()));
    CHECK(std::isfinite(o.max_discarded_imag));
    for (int j = 0; j < o.k; ++j) {
      CHECK(o.alphas[j] > 0.0);
      CHECK(o.betas[j] >= 0.0);
    }
  }
}

TEST_CASE("truncate reproduces a shorter run bit for bit") {
  const Instance cx = random_instance(70, 25, ScalarField::Complex);
  for (auto reorth : {Reorthogonalization::None, Reorthogonalization::Full}) {
    LanczosOptions o;
    o.reorth = reorth;
    const LanczosRun longer = lanczos_omega_inner(cx.h, cx.d, 18, o);
    for (int k : {1, 5, 17, 18}) {
      const LanczosRun a = truncate(longer, k);
      const LanczosRun b = lanczos_omega_inner(cx.h, cx.d, k, o);
      CHECK(a.k == b.k);
      CHECK((a.alphas.array() == b.alphas.array()).all());
      CHECK((a.betas.array() == b.betas.array()).all());
      CHECK(a.norm_const == b.norm_const);
      CHECK(a.breakdown_at == b.breakdown_at);
    }
  }
  const LanczosRun r = lanczos_tda(cx.h, cx.d, 5);
  CHECK(code_of([&] { truncate(r, 6); }) == ErrorCode::InvalidSteps);
}

TEST_CASE("serial and parallel engines produce identical coefficient streams") {
  const Instance cx = random_instance(80, 120, ScalarField::Complex);
  const Instance re = random_instance(81, 120, ScalarField::Real);
  LanczosOptions s, p;
  s.exec = kernels::Exec::Serial;
  p.exec = kernels::Exec::Parallel;
  s.reorth = p.reorth = Reorthogonalization::Full;
  auto same = [](const LanczosRun& a, const LanczosRun& b) {
    return a.k == b.k && (a.alphas.array() == b.alphas.array()).all() &&
           (a.betas.array() == b.betas.array()).all();
  };
  CHECK(same(lanczos_omega_inner(cx.h, cx.d, 40, s), lanczos_omega_inner(cx.h, cx.d, 40, p)));
  CHECK(same(lanczos_m_inner(re.h, re.d, 40, s), lanczos_m_inner(re.h, re.d, 40, p)));
  CHECK(same(lanczos_tda(cx.h, cx.d, 40, s), lanczos_tda(cx.h, cx.d, 40, p)));
}
