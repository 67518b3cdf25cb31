#include "bsespec/kernels.hpp"

#include <cassert>

namespace bsespec::kernels {

namespace {

// Runs body(i) for i in [0, n). Each index is independent, so the only
// difference between the two paths is which thread evaluates which index.
template <class Body>
void for_each_index(Eigen::Index n, Exec exec, Body&& body) {
#ifdef BSESPEC_HAVE_OPENMP
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (Eigen::Index i = 0; i < n; ++i) body(i);
    return;
  }
#else
  (void)exec;
#endif
  for (Eigen::Index i = 0; i < n; ++i) body(i);
}

}  // namespace

Exec default_exec() noexcept { return parallel_available() ? Exec::Parallel : Exec::Serial; }

bool parallel_available() noexcept {
#ifdef BSESPEC_HAVE_OPENMP
  return true;
#else
  return false;
#endif
}

void gemv(const Matrix& m, const Vector& x, Vector& y, Exec exec) {
  assert(m.cols() == x.size());
  y.resize(m.rows());
  const Eigen::Index cols = m.cols();
  for_each_index(m.rows(), exec, [&](Eigen::Index i) {
    const cplx* row = m.data() + i * cols;
    cplx acc{0.0, 0.0};
    for (Eigen::Index j = 0; j < cols; ++j) acc += row[j] * x[j];
    y[i] = acc;
  });
}

void gemv(const RealMatrix& m, const RealVector& x, RealVector& y, Exec exec) {
  assert(m.cols() == x.size());
  y.resize(m.rows());
  const Eigen::Index cols = m.cols();
  for_each_index(m.rows(), exec, [&](Eigen::Index i) {
    const double* row = m.data() + i * cols;
    double acc = 0.0;
    for (Eigen::Index j = 0; j < cols; ++j) acc += row[j] * x[j];
    y[i] = acc;
  });
}

void structured_apply(const Matrix& a, const Matrix& b, const Vector& x, double sign, Vector& y,
                      Exec exec) {
  assert(a.cols() == x.size() && b.cols() == x.size() && a.rows() == b.rows());
  y.resize(a.rows());
  const Eigen::Index cols = a.cols();
  for_each_index(a.rows(), exec, [&](Eigen::Index i) {
    const cplx* ra = a.data() + i * cols;
    const cplx* rb = b.data() + i * cols;
    cplx sa{0.0, 0.0};
    cplx sb{0.0, 0.0};
    for (Eigen::Index j = 0; j < cols; ++j) {
      sa += ra[j] * x[j];
      sb += rb[j] * std::conj(x[j]);
    }
    y[i] = sa + sign * sb;
  });
}

void odd_spectrum(std::span<const double> omegas, std::span<const double> nodes,
                  std::span<const double> coeffs, const BroadeningKernel& g,
                  std::span<double> out, Exec exec) {
  assert(nodes.size() == coeffs.size() && out.size() == omegas.size());
  const std::size_t m = nodes.size();
  for_each_index(static_cast<Eigen::Index>(omegas.size()), exec, [&](Eigen::Index i) {
    const double w = omegas[i];
    double acc = 0.0;
    for (std::size_t j = 0; j < m; ++j) acc += coeffs[j] * (g(w - nodes[j]) - g(w + nodes[j]));
    out[i] = acc;
  });
}

void shifted_spectrum(std::span<const double> omegas, std::span<const double> nodes,
                      std::span<const cplx> coeffs, const BroadeningKernel& g,
                      std::span<cplx> out, Exec exec) {
  assert(nodes.size() == coeffs.size() && out.size() == omegas.size());
  const std::size_t m = nodes.size();
  for_each_index(static_cast<Eigen::Index>(omegas.size()), exec, [&](Eigen::Index i) {
    const double w = omegas[i];
    cplx acc{0.0, 0.0};
    for (std::size_t j = 0; j < m; ++j) acc += coeffs[j] * g(w - nodes[j]);
    out[i] = acc;
  });
}

}  // namespace bsespec::kernels
