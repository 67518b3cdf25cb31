#include "bsespec/variants.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "bsespec/error.hpp"
#include "bsespec/kernels.hpp"
#include "bsespec/oracle.hpp"

namespace bsespec {

// ---------------------------------------------------------------------------
// Lanczos on H in the Omega-inner product.
//
// Odd Lanczos vectors are [u; conj(u)], even ones [v; -conj(v)], and only the
// top halves are stored. For either kind the top half of Omega q equals the top
// half of H q, so one structured product per step gives both the next Krylov
// direction and the Omega-weights needed for normalization and reorth.
// ---------------------------------------------------------------------------

GmgRun lanczos_gmg(const BseHamiltonian& h, const Vector& d, int k2, const LanczosOptions& opts) {
  if (k2 < 1) throw Error(ErrorCode::InvalidSteps, "number of Lanczos steps must be >= 1");
  if (k2 % 2 != 0) {
    throw Error(ErrorCode::OddStepCount, "the Omega-inner Lanczos on H needs an even step count");
  }
  if (d.size() != h.n()) {
    throw Error(ErrorCode::DimensionMismatch, "transition vector length does not match H");
  }
  if (d.squaredNorm() == 0.0 || !d.allFinite()) {
    throw Error(ErrorCode::ZeroStartVector, "starting vector is zero or not finite");
  }
  const Matrix& a = h.a();
  const Matrix& b = h.b();
  const Eigen::Index n = h.n();

  GmgRun out;
  LanczosRun& run = out.run;
  run.variant = LanczosVariant::GmgOmegaInner;
  run.alphas = RealVector::Zero(k2);
  run.betas = RealVector::Zero(k2);
  run.operator_norm = estimate_norm(h);
  const double tol = 1e-12 * std::max(1.0, run.operator_norm);

  Vector od;
  kernels::structured_apply(a, b, d, 1.0, od, opts.exec);
  const double nc = d.dot(od).real();
  if (!(nc > 0.0)) {
    throw Error(ErrorCode::IndefiniteInnerProduct, "|d_l|_Omega^2 is not positive");
  }
  run.norm_const = nc;  // |d_l|_Omega^2 / 2

  // |q_1|_Omega^2 = 2 Re(u^H (A u + B conj(u))) = 1
  const double s0 = std::sqrt(2.0 * nc);
  std::vector<Vector> xs{d / s0};     // top halves of q_j
  std::vector<Vector> ws{od / s0};    // top halves of Omega q_j (= H q_j)
  Vector w, y;
  int steps = k2;
  for (int j = 1; j <= k2; ++j) {
    // q_{j+1} is of odd kind ([u; conj(u)]) when j is even.
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    w = ws[j - 1];
    if (j > 1) w -= run.betas[j - 2] * xs[j - 2];
    if (opts.reorth == Reorthogonalization::Full) {
      for (int pass = 0; pass < 2; ++pass) {
        // q_i^H Omega q is 2 Re(.) against vectors of the same kind as q_{j+1}
        // and 2i Im(.) against the other kind; the latter vanishes in exact
        // arithmetic but removes rounding drift.
        for (int i = 0; i < j; ++i) {
          const cplx c = ws[i].dot(w);
          w -= ((i % 2) == (j % 2) ? cplx(2.0 * c.real(), 0.0) : cplx(0.0, 2.0 * c.imag())) * xs[i];
        }
      }
    }
    kernels::structured_apply(a, b, w, sign, y, opts.exec);
    const double radicand = 2.0 * w.dot(y).real();
    if (radicand < -1e-12 * w.norm() * y.norm()) {
      throw Error(ErrorCode::IndefiniteInnerProduct,
                  "negative Omega-norm at step " + std::to_string(j));
    }
    const double beta = radicand > 0.0 ? std::sqrt(radicand) : 0.0;
    if (beta <= tol) {
      run.betas[j - 1] = 0.0;
      run.breakdown_at = j;
      steps = j;
      break;
    }
    run.betas[j - 1] = beta;
    xs.push_back(w / beta);
    ws.push_back(y / beta);
  }
  run.k = steps;
  run.alphas.conservativeResize(steps);
  run.betas.conservativeResize(steps);
  out.tridiag.betas = run.betas.head(steps - 1);
  if (!run.breakdown_at) out.tridiag.residual_beta = run.betas[steps - 1];

  if (opts.retain_basis) {
    Matrix bu(n, static_cast<Eigen::Index>(xs.size()));
    for (std::size_t j = 0; j < xs.size(); ++j) bu.col(static_cast<Eigen::Index>(j)) = xs[j];
    run.basis = LanczosBasis{std::move(bu), Matrix()};
  }
  return out;
}

namespace {

SymTridiagonal gmg_matrix(const GmgRun& gmg, bool use_gagq) {
  const LanczosRun& run = gmg.run;
  const RealVector zeros = RealVector::Zero(run.k);
  if (use_gagq && gmg.tridiag.residual_beta && run.k >= 2) {
    return palindromic_extension(zeros, run.betas.head(run.k));
  }
  SymTridiagonal t;
  t.diag = zeros;
  t.offdiag = gmg.tridiag.betas;
  return t;
}

// Positive half of the spectrum of a zero-diagonal tridiagonal matrix. Odd
// orders carry one structural zero eigenvalue, which is discarded.
void positive_half(const TridiagEigen& eig, std::vector<double>& thetas,
                   std::vector<double>& weights) {
  const Eigen::Index m = eig.values.size();
  const Eigen::Index count = m / 2;
  for (Eigen::Index j = m - count; j < m; ++j) {
    thetas.push_back(eig.values[j]);
    weights.push_back(eig.first_row[j] * eig.first_row[j]);
  }
}

}  // namespace

Spectrum assemble_gmg_spectrum(const GmgRun& gmg, const BroadeningKernel& g,
                               const std::vector<double>& omegas, const AssembleOptions& opts) {
  const LanczosRun& run = gmg.run;
  const bool gagq = opts.use_gagq && gmg.tridiag.residual_beta.has_value() && run.k >= 2;
  const SymTridiagonal t = gmg_matrix(gmg, gagq);
  const TridiagEigen eig = tridiag_eig(t);

  const double top = eig.values.cwiseAbs().maxCoeff();
  if (!gagq) {
    const double smallest = eig.values.cwiseAbs().minCoeff();
    if (!(smallest > 1e-12 * top)) {
      throw Error(ErrorCode::SingularProjection, "projected tridiagonal matrix is singular");
    }
  }
  std::vector<double> thetas, weights;
  positive_half(eig, thetas, weights);
  if (thetas.empty() || !(thetas.front() > 0.0)) {
    throw Error(ErrorCode::SingularProjection, "no positive Ritz values in the projection");
  }

  // e_1^T g(wI - T) T^{-1} e_1 pairs each +theta with -theta, and the two share
  // the weight |s_1|^2, hence the odd combination with factor |d_l|_Omega^2.
  const double c = 2.0 * run.norm_const;
  Spectrum s;
  s.omegas = omegas;
  s.values.assign(omegas.size(), 0.0);
  s.nodes = thetas;
  s.strengths.resize(thetas.size());
  for (std::size_t j = 0; j < thetas.size(); ++j) s.strengths[j] = c * weights[j] / thetas[j];
  std::vector<double> coeffs(s.strengths);
  for (double& v : coeffs) v *= opts.scale;
  kernels::odd_spectrum(s.omegas, s.nodes, coeffs, g, s.values, opts.exec);

  s.info.variant = "gmg";
  s.info.k = run.k;
  s.info.kernel = g.shape();
  s.info.sigma = g.sigma();
  s.info.norm_const = run.norm_const;
  s.info.scale = opts.scale;
  s.info.breakdown_at = run.breakdown_at;
  s.info.gagq = gagq;
  return s;
}

std::vector<double> gmg_positive_ritz(const GmgRun& gmg, bool use_gagq) {
  const bool gagq = use_gagq && gmg.tridiag.residual_beta.has_value() && gmg.run.k >= 2;
  const TridiagEigen eig = tridiag_eig(gmg_matrix(gmg, gagq));
  std::vector<double> thetas, weights;
  positive_half(eig, thetas, weights);
  return thetas;
}

double gmg_basis_orthogonality(const GmgRun& gmg, const BseHamiltonian& h) {
  if (!gmg.run.basis) throw Error(ErrorCode::BasisNotRetained, "run did not retain its basis");
  const Matrix& x = gmg.run.basis->u;
  const Eigen::Index n = x.rows();
  const Eigen::Index m = x.cols();
  Matrix q(2 * n, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    q.col(j).head(n) = x.col(j);
    q.col(j).tail(n) = sign * x.col(j).conjugate();
  }
  return (q.adjoint() * h.omega_dense() * q - Matrix::Identity(m, m)).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// Paired-start Lanczos. Blocks are P_j = [w_j, J w_j] with J [a; b] =
// [conj(b); conj(a)]. J is antilinear, H J = -J H, Omega J = J Omega and
// C_n J = -J C_n, which is what lets every block keep the paired form.
// ---------------------------------------------------------------------------

namespace {

Vector flip(const Vector& x) {
  const Eigen::Index n = x.size() / 2;
  Vector y(x.size());
  y.head(n) = x.tail(n).conjugate();
  y.tail(n) = x.head(n).conjugate();
  return y;
}

struct PairedOps {
  const BseHamiltonian& h;
  Eigen::Index n;

  // [A a + B b; sign * conj(A conj(b) + B conj(a))]
  Vector apply(const Vector& x, double sign) const {
    const Vector top_in = x.head(n);
    const Vector bot_in = x.tail(n);
    Vector t1, t2, t3, t4;
    kernels::gemv(h.a(), top_in, t1);
    kernels::gemv(h.b(), bot_in, t2);
    kernels::gemv(h.a(), Vector(bot_in.conjugate()), t3);
    kernels::gemv(h.b(), Vector(top_in.conjugate()), t4);
    Vector y(2 * n);
    y.head(n) = t1 + t2;
    y.tail(n) = sign * (t3 + t4).conjugate();
    return y;
  }
  Vector h_apply(const Vector& x) const { return apply(x, -1.0); }
  Vector omega_apply(const Vector& x) const { return apply(x, 1.0); }
  Vector c_apply(const Vector& x) const {
    Vector y = x;
    y.tail(n) *= -1.0;
    return y;
  }
};

}  // namespace

PairedProjectedHamiltonian lanczos_paired(const BseHamiltonian& h, const Vector& d, int k,
                                          PairedInner inner, Reorthogonalization reorth) {
  if (k < 1) throw Error(ErrorCode::InvalidSteps, "number of Lanczos steps must be >= 1");
  if (d.size() != h.n()) {
    throw Error(ErrorCode::DimensionMismatch, "transition vector length does not match H");
  }
  if (d.squaredNorm() == 0.0 || !d.allFinite()) {
    throw Error(ErrorCode::ZeroStartVector, "starting vector is zero or not finite");
  }
  const Eigen::Index n = h.n();
  const PairedOps ops{h, n};
  const bool omega = inner == PairedInner::OmegaCondition;
  const double hnorm = estimate_norm(h);
  auto metric = [&](const Vector& x) { return omega ? ops.omega_apply(x) : ops.c_apply(x); };

  std::vector<Vector> ws;   // w_j
  std::vector<Vector> gws;  // G w_j with G = Omega or C_n

  // Orthonormalizes span{r, J r}. On success appends the block and returns M
  // with [r, J r] = [w, J w] M.
  auto normalize = [&](const Vector& r) -> Eigen::Matrix2cd {
    const Vector jr = flip(r);
    const Vector gr = metric(r);
    const Vector gjr = metric(jr);
    Eigen::Matrix2cd gram;
    gram << r.dot(gr), r.dot(gjr), jr.dot(gr), jr.dot(gjr);
    Vector w;
    Eigen::Matrix2cd m;
    if (omega) {
      gram = (0.5 * (gram + gram.adjoint())).eval();
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(gram);
      const Eigen::Vector2d mu = es.eigenvalues();
      if (!(mu[0] > 1e-12 * std::abs(mu[1]))) {
        throw Error(ErrorCode::GramFactorizationFailure,
                    "block Gram matrix in the Omega-inner product is not positive definite "
                    "(eigenvalues " + std::to_string(mu[0]) + ", " + std::to_string(mu[1]) + ")");
      }
      const Eigen::Matrix2cd& v = es.eigenvectors();
      const Eigen::Matrix2cd inv_sqrt =
          v * mu.cwiseSqrt().cwiseInverse().cast<cplx>().asDiagonal() * v.adjoint();
      m = v * mu.cwiseSqrt().cast<cplx>().asDiagonal() * v.adjoint();
      w = inv_sqrt(0, 0) * r + inv_sqrt(1, 0) * jr;
    } else {
      // The cross term r^H C_n J r vanishes identically; only the sign of the
      // diagonal decides which of r, J r leads the block.
      const double p = gram(0, 0).real();
      if (std::abs(p) <= 1e-12 * r.squaredNorm()) {
        throw Error(ErrorCode::NeutralVectorBreakdown,
                    "C-neutral residual at block " + std::to_string(ws.size() + 1));
      }
      const double s = std::sqrt(std::abs(p));
      if (p > 0.0) {
        w = r / s;
        m << s, 0.0, 0.0, s;
      } else {
        w = jr / s;
        m << 0.0, s, s, 0.0;
      }
    }
    ws.push_back(w);
    gws.push_back(metric(w));
    return m;
  };

  // Coordinates of s on block i in the chosen inner product.
  auto coeffs = [&](std::size_t i, const Vector& s) -> Eigen::Vector2cd {
    // flip(G w) = G J w for Omega and -C_n J w for C_n, which also absorbs the
    // (J w)^H C_n J w = -1 normalization.
    return Eigen::Vector2cd(gws[i].dot(s), flip(gws[i]).dot(s));
  };
  auto subtract = [&](std::size_t i, const Eigen::Vector2cd& c, Vector& s) {
    s -= c[0] * ws[i] + c[1] * flip(ws[i]);
  };

  PairedProjectedHamiltonian proj;
  proj.inner = inner;
  proj.norm_const = d.squaredNorm();

  Vector r0 = Vector::Zero(2 * n);
  r0.head(n) = d;
  normalize(r0);

  // Interleaved 2k x 2k coefficient matrix: index 2 i + c, c = 0 for w_i.
  Matrix x_int = Matrix::Zero(2 * k, 2 * k);
  int steps = k;
  for (int j = 0; j < k; ++j) {
    Vector r = ops.h_apply(ws[j]);
    Eigen::Vector2cd c_prev = Eigen::Vector2cd::Zero();
    Eigen::Vector2cd c_diag = Eigen::Vector2cd::Zero();
    const int passes = reorth == Reorthogonalization::Full ? 2 : 1;
    for (int pass = 0; pass < passes; ++pass) {
      if (reorth == Reorthogonalization::Full) {
        for (int i = 0; i < j - 1; ++i) subtract(i, coeffs(i, r), r);
      }
      if (j > 0) {
        const Eigen::Vector2cd c = coeffs(j - 1, r);
        subtract(j - 1, c, r);
        c_prev += c;
      }
      const Eigen::Vector2cd c = coeffs(j, r);
      subtract(j, c, r);
      c_diag += c;
    }
    // Column of H w_j and, through H J = -J H, of H J w_j.
    auto place = [&](int blk, const Eigen::Vector2cd& c) {
      x_int(2 * blk, 2 * j) = c[0];
      x_int(2 * blk + 1, 2 * j) = c[1];
      x_int(2 * blk, 2 * j + 1) = -std::conj(c[1]);
      x_int(2 * blk + 1, 2 * j + 1) = -std::conj(c[0]);
    };
    if (j > 0) place(j - 1, c_prev);
    place(j, c_diag);

    const double rnorm = r.norm();
    if (rnorm <= 1e-12 * std::max(1.0, hnorm) * std::max(1.0, ws[j].norm())) {
      proj.breakdown_at = j + 1;
      steps = j + 1;
      break;
    }
    if (j + 1 == k) break;
    const Eigen::Matrix2cd m = normalize(r);
    place(j + 1, m.col(0));
  }

  // Reorder to [w_1..w_k, J w_1..J w_k].
  const int kk = steps;
  Matrix hk(2 * kk, 2 * kk);
  auto perm = [kk](int idx) { return (idx % 2) * kk + idx / 2; };
  for (int r = 0; r < 2 * kk; ++r) {
    for (int c = 0; c < 2 * kk; ++c) hk(perm(r), perm(c)) = x_int(r, c);
  }
  proj.k = kk;
  proj.h_k = hk;
  proj.a_k = hk.topLeftCorner(kk, kk);
  proj.b_k = hk.topRightCorner(kk, kk);

  proj.basis.resize(2 * n, kk);
  for (int j = 0; j < kk; ++j) proj.basis.col(j) = ws[j];

  Vector dl(2 * n), dr(2 * n);
  dl << d, d.conjugate();
  dr << d, -d.conjugate();
  const Vector gdl = metric(dl);
  proj.left.resize(2 * kk);
  proj.right.resize(2 * kk);
  for (int j = 0; j < kk; ++j) {
    const Vector jw = flip(ws[j]);
    proj.left[j] = ws[j].dot(gdl);
    proj.left[kk + j] = jw.dot(gdl) * (omega ? 1.0 : -1.0);
    proj.right[j] = ws[j].dot(dr);
    proj.right[kk + j] = jw.dot(dr);
  }
  return proj;
}

Spectrum assemble_paired_spectrum(const PairedProjectedHamiltonian& proj,
                                  const BroadeningKernel& g, const std::vector<double>& omegas,
                                  double scale) {
  Spectrum s;
  s.omegas = omegas;
  s.info.k = proj.k;
  s.info.kernel = g.shape();
  s.info.sigma = g.sigma();
  s.info.norm_const = proj.norm_const;
  s.info.scale = scale;
  s.info.breakdown_at = proj.breakdown_at;

  if (proj.inner == PairedInner::CCondition) {
    const Matrix a = proj.a_k;
    const Matrix b = proj.b_k;
    const double tol = 1e-8 * std::max({a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff(), 1.0});
    const BseHamiltonian hk = build_hamiltonian(a, b, tol);
    Vector e1 = Vector::Zero(proj.k);
    e1[0] = std::sqrt(proj.norm_const);
    Spectrum out = exact_spectrum(full_diagonalize(hk), e1, g, omegas, scale);
    out.info = s.info;
    out.info.variant = "paired-c";
    return out;
  }

  // Literal d_r^H W g(wI - H_k) W^H Omega d_l. H_k = W^H Omega H W is Hermitian
  // when W is Omega-orthonormal.
  const Matrix hk = 0.5 * (proj.h_k + proj.h_k.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(hk);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorCode::ConvergenceFailure, "eigensolver failed on the projected matrix");
  }
  const Matrix& q = es.eigenvectors();
  const Vector qa = q.adjoint() * proj.left;
  const Vector qb = q.adjoint() * proj.right;
  std::vector<double> nodes(es.eigenvalues().data(),
                            es.eigenvalues().data() + es.eigenvalues().size());
  std::vector<cplx> weights(nodes.size());
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    weights[j] = scale * std::conj(qb[static_cast<Eigen::Index>(j)]) *
                 qa[static_cast<Eigen::Index>(j)];
  }
  std::vector<cplx> values(omegas.size());
  kernels::shifted_spectrum(omegas, nodes, weights, g, values);

  s.values.resize(omegas.size());
  s.imag.emplace(omegas.size());
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    s.values[i] = values[i].real();
    (*s.imag)[i] = values[i].imag();
  }
  s.nodes = nodes;
  s.info.variant = "paired-omega";
  return s;
}

double paired_basis_orthogonality(const PairedProjectedHamiltonian& proj,
                                  const BseHamiltonian& h) {
  const Eigen::Index n = h.n();
  const int k = proj.k;
  Matrix w(2 * n, 2 * k);
  for (int j = 0; j < k; ++j) {
    w.col(j) = proj.basis.col(j);
    w.col(k + j) = flip(proj.basis.col(j));
  }
  Matrix ideal = Matrix::Identity(2 * k, 2 * k);
  Matrix gram;
  if (proj.inner == PairedInner::OmegaCondition) {
    gram = w.adjoint() * h.omega_dense() * w;
  } else {
    Matrix cw = w;
    cw.bottomRows(n) *= -1.0;
    gram = w.adjoint() * cw;
    ideal.bottomRightCorner(k, k) *= -1.0;
  }
  return (gram - ideal).cwiseAbs().maxCoeff();
}

}  // namespace bsespec
