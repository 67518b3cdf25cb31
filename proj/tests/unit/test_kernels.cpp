#include <doctest.h>

#include "bsespec/kernels.hpp"
#include "bsespec/spectrum.hpp"
#include "helpers.hpp"

using namespace bsespec;
using namespace testutil;
using kernels::Exec;

namespace {

Matrix random_matrix(std::mt19937_64& rng, Eigen::Index r, Eigen::Index c) {
  std::normal_distribution<double> normal;
  Matrix m(r, c);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = cplx(normal(rng), normal(rng));
  return m;
}

Vector random_vector(std::mt19937_64& rng, Eigen::Index n) { return random_matrix(rng, n, 1); }

}  // namespace

TEST_CASE("complex gemv: serial and parallel agree bit for bit") {
  std::mt19937_64 rng(1);
  for (Eigen::Index n : {1, 7, 64, 301}) {
    const Matrix m = random_matrix(rng, n, n + 3);
    const Vector x = random_vector(rng, n + 3);
    Vector ys, yp;
    kernels::gemv(m, x, ys, Exec::Serial);
    kernels::gemv(m, x, yp, Exec::Parallel);
    CHECK(ys == yp);
    const Vector ref = m * x;
    CHECK((ys - ref).norm() <= 1e-12 * ref.norm());
  }
}

TEST_CASE("real gemv: serial and parallel agree bit for bit") {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> normal;
  for (Eigen::Index n : {1, 9, 250}) {
    RealMatrix m(n, n);
    RealVector x(n);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = normal(rng);
    for (Eigen::Index i = 0; i < n; ++i) x[i] = normal(rng);
    RealVector ys, yp;
    kernels::gemv(m, x, ys, Exec::Serial);
    kernels::gemv(m, x, yp, Exec::Parallel);
    CHECK(ys == yp);
    const RealVector ref = m * x;
    CHECK((ys - ref).norm() <= 1e-12 * ref.norm());
  }
}

TEST_CASE("structured_apply matches A x + sign B conj(x)") {
  std::mt19937_64 rng(3);
  for (Eigen::Index n : {1, 5, 128}) {
    const Matrix a = random_matrix(rng, n, n);
    const Matrix b = random_matrix(rng, n, n);
    const Vector x = random_vector(rng, n);
    for (double sign : {1.0, -1.0}) {
      Vector ys, yp;
      kernels::structured_apply(a, b, x, sign, ys, Exec::Serial);
      kernels::structured_apply(a, b, x, sign, yp, Exec::Parallel);
      CHECK(ys == yp);
      const Vector ref = a * x + sign * (b * x.conjugate());
      CHECK((ys - ref).norm() <= 1e-12 * ref.norm());
    }
  }
}

TEST_CASE("odd_spectrum: parallel equality, oddness and direct evaluation") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.1, 5.0);
  std::vector<double> nodes(37), coeffs(37);
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    nodes[j] = u(rng);
    coeffs[j] = u(rng);
  }
  const std::vector<double> w = symmetric_grid(6.0, 1001);
  for (KernelShape shape : {KernelShape::Gaussian, KernelShape::Lorentzian}) {
    const BroadeningKernel g(shape, 0.1);
    std::vector<double> s(w.size()), p(w.size());
    kernels::odd_spectrum(w, nodes, coeffs, g, s, Exec::Serial);
    kernels::odd_spectrum(w, nodes, coeffs, g, p, Exec::Parallel);
    CHECK(s == p);
    for (std::size_t i = 0; i < w.size(); ++i) CHECK(s[i] == -s[w.size() - 1 - i]);
    const std::size_t mid = 700;
    long double direct = 0.0L;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      direct += coeffs[j] * (g(w[mid] - nodes[j]) - g(w[mid] + nodes[j]));
    }
    CHECK(std::abs(s[mid] - static_cast<double>(direct)) <= 1e-12 * std::abs(s[mid]));
  }
}

TEST_CASE("shifted_spectrum: parallel equality") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::vector<double> nodes(20);
  std::vector<cplx> coeffs(20);
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    nodes[j] = u(rng);
    coeffs[j] = cplx(u(rng), u(rng));
  }
  const std::vector<double> w = uniform_grid(-4.0, 4.0, 777);
  const BroadeningKernel g(KernelShape::Gaussian, 0.2);
  std::vector<cplx> s(w.size()), p(w.size());
  kernels::shifted_spectrum(w, nodes, coeffs, g, s, Exec::Serial);
  kernels::shifted_spectrum(w, nodes, coeffs, g, p, Exec::Parallel);
  CHECK(s == p);
  cplx direct = 0.0;
  for (std::size_t j = 0; j < nodes.size(); ++j) direct += coeffs[j] * g(w[100] - nodes[j]);
  CHECK(std::abs(s[100] - direct) <= 1e-13 * std::abs(direct));
}
