#include <doctest.h>

#include "bsespec/error.hpp"
#include "bsespec/oracle.hpp"
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

}  // namespace

TEST_CASE("build_hamiltonian: 1x1 blocks and field inference") {
  const BseHamiltonian h3 = build_hamiltonian(scalar(3), scalar(0));
  CHECK(h3.field() == ScalarField::Real);
  CHECK(h3.definiteness() == Definiteness::Definite);

  const BseHamiltonian h = build_hamiltonian(scalar(2), scalar(0.5));
  CHECK(h.field() == ScalarField::Real);
  CHECK(h.n() == 1);

  const BseHamiltonian hc = build_hamiltonian(scalar(2), scalar(0.1, 0.2));
  CHECK(hc.field() == ScalarField::Complex);
}

TEST_CASE("build_hamiltonian: structure and dimension errors") {
  Matrix a(2, 2);
  a << 0, 1, 0, 0;
  CHECK(code_of([&] { build_hamiltonian(a, Matrix::Zero(2, 2), 0.0); }) ==
        ErrorCode::StructureViolation);
  Matrix b(2, 2);
  b << 1, 2, 3, 1;
  CHECK(code_of([&] { build_hamiltonian(Matrix::Identity(2, 2), b); }) ==
        ErrorCode::StructureViolation);
  CHECK(code_of([&] { build_hamiltonian(Matrix::Identity(2, 2), Matrix::Zero(3, 3)); }) ==
        ErrorCode::DimensionMismatch);
  CHECK(code_of([&] { build_hamiltonian(Matrix::Zero(2, 3), Matrix::Zero(2, 3)); }) ==
        ErrorCode::DimensionMismatch);
}

TEST_CASE("build_hamiltonian symmetrizes within tolerance") {
  Matrix a(2, 2);
  a << 2, cplx(1, 1e-14), cplx(1, -1e-14 + 2e-15), 3;
  const BseHamiltonian h = build_hamiltonian(a, Matrix::Zero(2, 2));
  CHECK((h.a() - h.a().adjoint()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("check_definiteness examples") {
  CHECK(check_definiteness(build_hamiltonian(Matrix::Identity(2, 2), Matrix::Zero(2, 2))));
  Matrix b = Matrix::Zero(2, 2);
  b(0, 0) = 2.0;
  CHECK_FALSE(check_definiteness(make_waived_hamiltonian(Matrix::Identity(2, 2), b)));
  CHECK(check_definiteness(build_hamiltonian(scalar(2), scalar(0.5))));
  // Complex path: same answer as the real one on a real instance read as complex.
  const BseHamiltonian hc = build_hamiltonian(scalar(2), scalar(0.0, 0.5));
  CHECK(hc.field() == ScalarField::Complex);
  CHECK(check_definiteness(hc));
  CHECK_FALSE(check_definiteness(build_hamiltonian(scalar(1), scalar(0.0, 1.5))));
}

TEST_CASE("apply_h_structured examples") {
  const BseHamiltonian h = build_hamiltonian(scalar(2), scalar(0.5));
  CHECK(apply_h_structured(h, vec({1.0}))[0] == cplx(2.5, 0.0));
  const cplx v = apply_h_structured(h, vec({cplx(0, 1)}))[0];
  CHECK(v.real() == doctest::Approx(0.0));
  CHECK(v.imag() == doctest::Approx(1.5));

  const BseHamiltonian id = build_hamiltonian(Matrix::Identity(3, 3), Matrix::Zero(3, 3));
  const Vector u = vec({cplx(1, 2), cplx(-3, 0.5), cplx(0, 0)});
  CHECK((apply_h_structured(id, u) - u).norm() == 0.0);

  CHECK(code_of([&] { apply_h_structured(id, vec({1.0})); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("apply_h_structured maps [u; conj u] to [v; -conj v] under dense H") {
  const Instance in = random_instance(3, 7, ScalarField::Complex);
  const Vector u = generate_transition_vector(7, 99, ScalarField::Complex);
  Vector ul(14);
  ul << u, u.conjugate();
  const Vector hu = in.h.h_dense() * ul;
  const Vector v = apply_h_structured(in.h, u);
  CHECK((hu.head(7) - v).norm() < 1e-12 * v.norm());
  CHECK((hu.tail(7) + v.conjugate()).norm() < 1e-12 * v.norm());
}

TEST_CASE("full_diagonalize on the 1x1 instance") {
  const BseHamiltonian h = build_hamiltonian(scalar(2), scalar(0.5));
  const StructuredEigenDecomposition eig = full_diagonalize(h);
  // (a - l) x + b y = 0 with x^2 - y^2 = 1 and l = sqrt(a^2 - b^2).
  const double a = 2.0, b = 0.5, l = std::sqrt(a * a - b * b);
  const double ratio = (l - a) / b;  // y / x
  const double x = 1.0 / std::sqrt(1.0 - ratio * ratio);
  CHECK(eig.lambdas[0] == doctest::Approx(l).epsilon(1e-14));
  CHECK(l == doctest::Approx(1.936492).epsilon(1e-6));
  // Eigenvectors are unique up to a phase; fix it by x > 0.
  const cplx phase = eig.x(0, 0) / std::abs(eig.x(0, 0));
  CHECK(std::abs(eig.x(0, 0) / phase - x) < 1e-12);
  CHECK(std::abs(eig.y(0, 0) / phase - ratio * x) < 1e-12);
  CHECK(x == doctest::Approx(1.008166).epsilon(1e-6));
  CHECK(ratio * x == doctest::Approx(-0.128054).epsilon(1e-5));
}

TEST_CASE("full_diagonalize on a decoupled TDA case") {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = 1.5;
  a(1, 1) = 4.0;
  const StructuredEigenDecomposition eig =
      full_diagonalize(build_hamiltonian(a, Matrix::Zero(2, 2)));
  CHECK(eig.lambdas[0] == doctest::Approx(4.0));
  CHECK(eig.lambdas[1] == doctest::Approx(1.5));
  CHECK(eig.y.cwiseAbs().maxCoeff() < 1e-14);
  CHECK(std::abs(std::abs(eig.x(1, 0)) - 1.0) < 1e-14);
  CHECK(std::abs(std::abs(eig.x(0, 1)) - 1.0) < 1e-14);
}

TEST_CASE("full_diagonalize rejects an indefinite Omega") {
  Matrix b = Matrix::Zero(2, 2);
  b(0, 0) = 2.0;
  const BseHamiltonian h = make_waived_hamiltonian(Matrix::Identity(2, 2), b);
  CHECK(code_of([&] { full_diagonalize(h); }) == ErrorCode::NotDefinite);
}

TEST_CASE("full_diagonalize properties over random instances") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const ScalarField field = seed % 3 == 0 ? ScalarField::Real : ScalarField::Complex;
    const Eigen::Index n = pick_n(seed, 1, 16);
    const Instance in = random_instance(seed, n, field);
    const StructuredEigenDecomposition eig = full_diagonalize(in.h);
    const Matrix hd = in.h.h_dense();
    const double hnorm = hd.norm();
    CAPTURE(seed);
    CAPTURE(n);

    for (Eigen::Index j = 0; j < n; ++j) {
      if (j > 0) CHECK(eig.lambdas[j - 1] >= eig.lambdas[j]);
      CHECK(eig.lambdas[j] > 0.0);
      const double norm = eig.x.col(j).squaredNorm() - eig.y.col(j).squaredNorm();
      CHECK(std::abs(norm - 1.0) <= 1e-10);
      Vector z(2 * n), zneg(2 * n);
      z << eig.x.col(j), eig.y.col(j);
      zneg << eig.y.col(j).conjugate(), eig.x.col(j).conjugate();
      CHECK((hd * z - eig.lambdas[j] * z).norm() <= 1e-10 * hnorm * z.norm());
      CHECK((hd * zneg + eig.lambdas[j] * zneg).norm() <= 1e-10 * hnorm * z.norm());
    }

    // Pairing against a generic nonsymmetric eigensolver.
    const std::vector<cplx> ev = generic_eigenvalues(in.h);
    std::vector<double> expected;
    for (Eigen::Index j = 0; j < n; ++j) {
      expected.push_back(eig.lambdas[j]);
      expected.push_back(-eig.lambdas[j]);
    }
    std::sort(expected.begin(), expected.end());
    for (std::size_t i = 0; i < ev.size(); ++i) {
      CHECK(std::abs(ev[i] - expected[i]) <= 1e-10 * hnorm);
    }
  }
}

TEST_CASE("exact_spectrum: 1x1 peak value") {
  const BseHamiltonian h = build_hamiltonian(scalar(2), scalar(0.5));
  const BroadeningKernel g(KernelShape::Gaussian, 0.1);
  const double l = std::sqrt(3.75);
  const Spectrum s = exact_spectrum(h, vec({1.0}), g, {0.0, l});
  const double ratio = (l - 2.0) / 0.5;
  const double x = 1.0 / std::sqrt(1.0 - ratio * ratio);
  const double f = (x - ratio * x) * (x - ratio * x);
  CHECK(s.strengths[0] == doctest::Approx(f).epsilon(1e-13));
  CHECK(f == doctest::Approx(1.290994).epsilon(1e-6));
  const double expected = f * (gauss_peak(0.1) - g(2.0 * l));
  CHECK(s.values[1] == doctest::Approx(expected).epsilon(1e-13));
  CHECK(s.values[1] == doctest::Approx(5.150323).epsilon(1e-6));
  CHECK(s.values[0] == 0.0);
}

TEST_CASE("exact_spectrum: TDA single peak") {
  const BseHamiltonian h = make_tda_hamiltonian(scalar(3));
  const BroadeningKernel g(KernelShape::Gaussian, 0.1);
  const Spectrum s = exact_spectrum(h, vec({2.0}), g, {3.0});
  CHECK(s.values[0] == doctest::Approx(4.0 * gauss_peak(0.1)).epsilon(1e-12));
  CHECK(s.values[0] == doctest::Approx(15.9577).epsilon(1e-5));
}

TEST_CASE("exact_spectrum is odd, nonnegative for w > 0, and matches TDA formula") {
  const BroadeningKernel gauss(KernelShape::Gaussian, 0.2);
  const BroadeningKernel lor(KernelShape::Lorentzian, 0.2);
  for (std::uint64_t seed = 20; seed < 28; ++seed) {
    const Instance in = random_instance(seed, pick_n(seed, 2, 20), ScalarField::Complex);
    const std::vector<double> w = symmetric_grid(6.0, 301);
    for (const BroadeningKernel* g : {&gauss, &lor}) {
      const Spectrum s = exact_spectrum(in.h, in.d, *g, w);
      const double top = *std::max_element(s.values.begin(), s.values.end());
      for (std::size_t i = 0; i < w.size(); ++i) {
        CHECK(std::abs(s.values[i] + s.values[w.size() - 1 - i]) <= 1e-12 * top);
        if (w[i] > 0.0) CHECK(s.values[i] >= 0.0);
      }
    }
  }
  // With B = 0 the spectrum is the Hermitian one of A.
  const Instance in = random_instance(40, 9, ScalarField::Complex);
  const BseHamiltonian tda = make_tda_hamiltonian(in.h.a());
  const std::vector<double> w = uniform_grid(0.0, 5.0, 200);
  const Spectrum s = exact_spectrum(tda, in.d, gauss, w);
  Eigen::SelfAdjointEigenSolver<Matrix> es(in.h.a());
  for (std::size_t i = 0; i < w.size(); ++i) {
    double ref = 0.0;
    for (Eigen::Index j = 0; j < 9; ++j) {
      const double f = std::norm(es.eigenvectors().col(j).dot(in.d));
      const double lam = es.eigenvalues()[j];
      ref += f * (gauss(w[i] - lam) - gauss(w[i] + lam));
    }
    CHECK(std::abs(s.values[i] - ref) <= 1e-10 * std::max(1.0, std::abs(ref)));
  }
}

TEST_CASE("generate_random_definite") {
  const BseHamiltonian h1 = generate_random_definite(1, 5, ScalarField::Complex, 0.5);
  CHECK(h1.n() == 1);
  CHECK(h1.definiteness() == Definiteness::Definite);

  const BseHamiltonian a = generate_random_definite(12, 3, ScalarField::Complex, 0.5);
  const BseHamiltonian b = generate_random_definite(12, 3, ScalarField::Complex, 0.5);
  CHECK((a.a() - b.a()).norm() == 0.0);
  CHECK((a.b() - b.b()).norm() == 0.0);
  const BseHamiltonian c = generate_random_definite(12, 4, ScalarField::Complex, 0.5);
  CHECK((a.a() - c.a()).norm() > 0.0);

  const BseHamiltonian h50 = generate_random_definite(50, 7, ScalarField::Complex, 0.5);
  CHECK(check_definiteness(h50));
  Eigen::SelfAdjointEigenSolver<Matrix> es(h50.omega_dense(), Eigen::EigenvaluesOnly);
  CHECK(es.eigenvalues().minCoeff() == doctest::Approx(0.5).epsilon(1e-10));

  const BseHamiltonian hr = generate_random_definite(20, 8, ScalarField::Real, 0.25);
  CHECK(hr.field() == ScalarField::Real);
  CHECK(check_definiteness(hr));
  CHECK((hr.b() - hr.b().transpose()).norm() == 0.0);

  const Vector d1 = generate_transition_vector(10, 1, ScalarField::Real);
  CHECK(d1.imag().norm() == 0.0);
  CHECK((d1 - generate_transition_vector(10, 1, ScalarField::Real)).norm() == 0.0);
}

TEST_CASE("showcase instance") {
  const auto [h, d] = generate_showcase_example();
  CHECK(h.n() == 16);
  CHECK(h.a()(0, 0) == cplx(4.0));
  CHECK(h.a()(0, 1) == cplx(1.0));
  CHECK(h.a()(0, 2) == cplx(0.0));
  CHECK(h.definiteness() == Definiteness::Waived);
  for (Eigen::Index j = 0; j < 16; ++j) CHECK(d[j] == cplx(j % 2 == 0 ? 1.0 : -1.0));
  // B(j, j) = i^(j-1) with the imaginary unit.
  CHECK(h.b()(0, 0) == cplx(1.0));
  CHECK(h.b()(1, 1) == cplx(0.0, 1.0));
  CHECK(h.b()(2, 2) == cplx(-1.0));
  CHECK(h.b()(3, 3) == cplx(0.0, -1.0));
  CHECK(check_definiteness(h));

  const auto [hl, dl] = generate_showcase_example(ShowcaseReading::IntegerPower);
  CHECK(hl.b()(1, 1) == cplx(2.0));
  CHECK(hl.b()(2, 2) == cplx(9.0));
  CHECK_FALSE(check_definiteness(hl));
}

TEST_CASE("estimate_norm is deterministic and close to |Omega|_2") {
  const Instance in = random_instance(5, 30, ScalarField::Complex);
  const double e1 = estimate_norm(in.h);
  CHECK(e1 == estimate_norm(in.h));
  Eigen::SelfAdjointEigenSolver<Matrix> es(in.h.omega_dense(), Eigen::EigenvaluesOnly);
  const double top = es.eigenvalues().maxCoeff();
  CHECK(e1 <= top * (1.0 + 1e-12));
  CHECK(estimate_norm(in.h, 200) == doctest::Approx(top).epsilon(1e-4));
  CHECK(estimate_norm(in.h, 200) <= top * (1.0 + 1e-12));
}
