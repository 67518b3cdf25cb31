#include "bsespec/lanczos.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "bsespec/error.hpp"

namespace bsespec {

namespace {

constexpr double kBreakdownRel = 1e-12;
constexpr double kRadicandRel = 1e-12;

void check_steps(int k) {
  if (k < 1) throw Error(ErrorCode::InvalidSteps, "number of Lanczos steps must be >= 1");
}

void check_start(const Vector& d, Eigen::Index n) {
  if (d.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "transition vector length does not match H");
  }
  if (d.squaredNorm() == 0.0 || !d.allFinite()) {
    throw Error(ErrorCode::ZeroStartVector, "starting vector is zero or not finite");
  }
}

double hermitian_norm_estimate(const Matrix& a, int iterations = 5) {
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector x(a.rows());
  for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = cplx(normal(rng), normal(rng));
  Vector y;
  double est = 0.0;
  for (int it = 0; it < iterations; ++it) {
    x /= x.norm();
    kernels::gemv(a, x, y);
    est = y.norm();
    if (est == 0.0) break;
    x = y;
  }
  return est;
}

// beta = sqrt(radicand) with the negative-noise clamp. Returns 0 for a clamp.
double checked_sqrt(double radicand, double xnorm, double ynorm, int step) {
  if (radicand < -kRadicandRel * xnorm * ynorm) {
    throw Error(ErrorCode::IndefiniteInnerProduct,
                "negative inner product at step " + std::to_string(step) +
                    "; the inner-product matrix is not positive definite");
  }
  return radicand > 0.0 ? std::sqrt(radicand) : 0.0;
}

void track_imag(double& worst, cplx value) {
  const double denom = std::max(std::abs(value.real()), 1e-300);
  worst = std::max(worst, std::abs(value.imag()) / denom);
}

LanczosRun start_run(LanczosVariant variant, int k) {
  LanczosRun run;
  run.variant = variant;
  run.alphas = RealVector::Zero(k);
  run.betas = RealVector::Zero(k);
  return run;
}

void finish_run(LanczosRun& run, int steps) {
  run.k = steps;
  run.alphas.conservativeResize(steps);
  run.betas.conservativeResize(steps);
}

Matrix stack_columns(const std::vector<Vector>& cols, Eigen::Index n) {
  Matrix m(n, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = cols[j];
  return m;
}

}  // namespace

std::string_view to_string(LanczosVariant v) noexcept {
  switch (v) {
    case LanczosVariant::TdaHermitian: return "tda";
    case LanczosVariant::RealMInner: return "real-m";
    case LanczosVariant::ComplexOmegaInner: return "omega";
    case LanczosVariant::GmgOmegaInner: return "gmg";
    case LanczosVariant::PairedCInner: return "paired-c";
  }
  return "unknown";
}

LanczosRun lanczos_tda(const Matrix& a, const Vector& d, int k, const LanczosOptions& opts) {
  check_steps(k);
  check_start(d, a.rows());
  const Eigen::Index n = a.rows();
  LanczosRun run = start_run(LanczosVariant::TdaHermitian, k);
  run.norm_const = d.squaredNorm();
  run.operator_norm = hermitian_norm_estimate(a);
  const double tol = kBreakdownRel * std::max(1.0, run.operator_norm);

  const bool keep = opts.reorth == Reorthogonalization::Full || opts.retain_basis;
  std::vector<Vector> us;
  Vector u = d / std::sqrt(run.norm_const);
  Vector u_prev = Vector::Zero(n);
  Vector w;
  if (keep) us.push_back(u);
  int steps = k;
  for (int j = 1; j <= k; ++j) {
    kernels::gemv(a, u, w, opts.exec);
    if (j > 1) w -= run.betas[j - 2] * u_prev;
    const cplx alpha = u.dot(w);
    track_imag(run.max_discarded_imag, alpha);
    run.alphas[j - 1] = alpha.real();
    w -= alpha.real() * u;
    if (opts.reorth == Reorthogonalization::Full) {
      for (int pass = 0; pass < 2; ++pass) {
        for (const Vector& q : us) w -= q.dot(w) * q;
      }
    }
    const double beta = w.norm();
    if (beta <= tol) {
      run.betas[j - 1] = 0.0;
      run.breakdown_at = j;
      steps = j;
      break;
    }
    run.betas[j - 1] = beta;
    u_prev = u;
    u = w / beta;
    if (keep) us.push_back(u);
  }
  finish_run(run, steps);
  if (opts.retain_basis) run.basis = LanczosBasis{stack_columns(us, n), Matrix()};
  return run;
}

LanczosRun lanczos_tda(const BseHamiltonian& h, const Vector& d, int k,
                       const LanczosOptions& opts) {
  return lanczos_tda(h.a(), d, k, opts);
}

LanczosRun lanczos_m_inner(const BseHamiltonian& h, const Vector& d, int k,
                           const LanczosOptions& opts) {
  check_steps(k);
  if (h.field() != ScalarField::Real) {
    throw Error(ErrorCode::NotRealField, "the M-inner-product engine needs real A and B");
  }
  check_start(d, h.n());
  if (d.imag().cwiseAbs().maxCoeff() > 1e-12 * d.cwiseAbs().maxCoeff()) {
    throw Error(ErrorCode::NotRealField, "the M-inner-product engine needs a real d");
  }
  const Eigen::Index n = h.n();
  const RealMatrix m = (h.a() + h.b()).real();
  const RealMatrix kmat = (h.a() - h.b()).real();

  LanczosRun run = start_run(LanczosVariant::RealMInner, k);
  run.operator_norm = estimate_norm(h);
  const double tol = kBreakdownRel * std::max(1.0, run.operator_norm * run.operator_norm);

  const RealVector dr = d.real();
  RealVector md;
  kernels::gemv(m, dr, md, opts.exec);
  const double dmd = dr.dot(md);
  if (!(dmd > 0.0)) {
    throw Error(ErrorCode::IndefiniteInnerProduct, "d^T M d is not positive");
  }
  run.norm_const = dmd;

  const bool keep = opts.reorth == Reorthogonalization::Full || opts.retain_basis;
  std::vector<RealVector> us, vs;
  RealVector u = dr / std::sqrt(dmd);
  RealVector v = md / std::sqrt(dmd);
  RealVector u_prev = RealVector::Zero(n);
  RealVector x, y;
  if (keep) {
    us.push_back(u);
    vs.push_back(v);
  }
  int steps = k;
  for (int j = 1; j <= k; ++j) {
    kernels::gemv(kmat, v, x, opts.exec);
    if (j > 1) x -= run.betas[j - 2] * u_prev;
    const double alpha = v.dot(x);
    run.alphas[j - 1] = alpha;
    x -= alpha * u;
    if (opts.reorth == Reorthogonalization::Full) {
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t i = 0; i < us.size(); ++i) x -= vs[i].dot(x) * us[i];
      }
    }
    kernels::gemv(m, x, y, opts.exec);
    const double beta = checked_sqrt(x.dot(y), x.norm(), y.norm(), j);
    if (beta <= tol) {
      run.betas[j - 1] = 0.0;
      run.breakdown_at = j;
      steps = j;
      break;
    }
    run.betas[j - 1] = beta;
    u_prev = u;
    u = x / beta;
    v = y / beta;
    if (keep) {
      us.push_back(u);
      vs.push_back(v);
    }
  }
  finish_run(run, steps);
  if (opts.retain_basis) {
    Matrix bu(n, static_cast<Eigen::Index>(us.size()));
    Matrix bv(n, static_cast<Eigen::Index>(vs.size()));
    for (std::size_t j = 0; j < us.size(); ++j) {
      bu.col(static_cast<Eigen::Index>(j)) = us[j].cast<cplx>();
      bv.col(static_cast<Eigen::Index>(j)) = vs[j].cast<cplx>();
    }
    run.basis = LanczosBasis{std::move(bu), std::move(bv)};
  }
  return run;
}

LanczosRun lanczos_omega_inner(const BseHamiltonian& h, const Vector& d, int k,
                               const LanczosOptions& opts) {
  check_steps(k);
  check_start(d, h.n());
  const Eigen::Index n = h.n();
  const Matrix& a = h.a();
  const Matrix& b = h.b();

  LanczosRun run = start_run(LanczosVariant::ComplexOmegaInner, k);
  run.operator_norm = estimate_norm(h);
  const double tol = kBreakdownRel * std::max(1.0, run.operator_norm * run.operator_norm);

  Vector od;
  kernels::structured_apply(a, b, d, 1.0, od, opts.exec);
  const double nc = d.dot(od).real();
  if (!(nc > 0.0)) {
    throw Error(ErrorCode::IndefiniteInnerProduct, "Re(d^H A d + d^H B conj(d)) is not positive");
  }
  run.norm_const = nc;

  const bool keep = opts.reorth == Reorthogonalization::Full || opts.retain_basis;
  std::vector<Vector> us, vs;
  Vector u = d / std::sqrt(nc);
  Vector v = od / std::sqrt(nc);
  Vector u_prev = Vector::Zero(n);
  Vector x, y;
  if (keep) {
    us.push_back(u);
    vs.push_back(v);
  }
  int steps = k;
  for (int j = 1; j <= k; ++j) {
    kernels::structured_apply(a, b, v, -1.0, x, opts.exec);
    if (j > 1) x -= run.betas[j - 2] * u_prev;
    const cplx alpha = v.dot(x);
    track_imag(run.max_discarded_imag, alpha);
    run.alphas[j - 1] = alpha.real();
    x -= alpha.real() * u;
    if (opts.reorth == Reorthogonalization::Full) {
      for (int pass = 0; pass < 2; ++pass) {
        // Oblique projector of the bi-orthogonality relation. The second term
        // restores Im(U^H x) = 0, which the Omega-weights alone do not see.
        for (std::size_t i = 0; i < us.size(); ++i) {
          const double re = vs[i].dot(x).real();
          const double im = us[i].dot(x).imag();
          x -= re * us[i] + cplx(0.0, im) * vs[i];
        }
      }
    }
    kernels::structured_apply(a, b, x, 1.0, y, opts.exec);
    const cplx r = x.dot(y);
    track_imag(run.max_discarded_imag, r);
    const double beta = checked_sqrt(r.real(), x.norm(), y.norm(), j);
    if (beta <= tol) {
      run.betas[j - 1] = 0.0;
      run.breakdown_at = j;
      steps = j;
      break;
    }
    run.betas[j - 1] = beta;
    u_prev = u;
    u = x / beta;
    v = y / beta;
    if (keep) {
      us.push_back(u);
      vs.push_back(v);
    }
  }
  finish_run(run, steps);
  if (opts.retain_basis) run.basis = LanczosBasis{stack_columns(us, n), stack_columns(vs, n)};
  return run;
}

LanczosRun truncate(const LanczosRun& run, int k) {
  if (k < 1 || k > run.k) {
    throw Error(ErrorCode::InvalidSteps, "truncation length outside [1, run.k]");
  }
  LanczosRun out = run;
  out.k = k;
  out.alphas = run.alphas.head(k);
  out.betas = run.betas.head(k);
  if (k < run.k) out.breakdown_at.reset();
  if (run.basis) {
    const Eigen::Index cols = std::min<Eigen::Index>(k + 1, run.basis->u.cols());
    out.basis->u = run.basis->u.leftCols(cols);
    if (run.basis->v.cols() > 0) out.basis->v = run.basis->v.leftCols(cols);
  }
  return out;
}

double retained_basis_orthogonality(const LanczosRun& run, const BseHamiltonian& h) {
  if (!run.basis) throw Error(ErrorCode::BasisNotRetained, "run did not retain its basis");
  // Only the k vectors behind T_k; the residual direction is not part of the basis.
  const Eigen::Index m = run.k;
  const Matrix u = run.basis->u.leftCols(m);
  switch (run.variant) {
    case LanczosVariant::TdaHermitian:
      return (u.adjoint() * u - Matrix::Identity(m, m)).cwiseAbs().maxCoeff();
    case LanczosVariant::RealMInner: {
      const Matrix mm = h.a() + h.b();
      return (u.transpose() * mm * u - Matrix::Identity(m, m)).cwiseAbs().maxCoeff();
    }
    case LanczosVariant::ComplexOmegaInner: {
      const Matrix v = run.basis->v.leftCols(m);
      const Eigen::Index n = u.rows();
      Matrix p(2 * n, 2 * m), q(2 * n, 2 * m);
      p << u, v, u.conjugate(), -v.conjugate();
      q << v, u, v.conjugate(), -u.conjugate();
      return (q.adjoint() * p - 2.0 * Matrix::Identity(2 * m, 2 * m)).cwiseAbs().maxCoeff();
    }
    default:
      throw Error(ErrorCode::InvalidConfig, "use the variant-specific orthogonality check");
  }
}

double omega_basis_imag_gram(const LanczosRun& run) {
  if (!run.basis) throw Error(ErrorCode::BasisNotRetained, "run did not retain its basis");
  const Matrix& u = run.basis->u;
  const Matrix& v = run.basis->v;
  double worst = (u.adjoint() * u).imag().cwiseAbs().maxCoeff();
  if (v.cols() > 0) worst = std::max(worst, (v.adjoint() * v).imag().cwiseAbs().maxCoeff());
  return worst;
}

}  // namespace bsespec
