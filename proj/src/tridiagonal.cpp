#include "bsespec/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "bsespec/error.hpp"

namespace bsespec {

RealMatrix SymTridiagonal::dense() const {
  const Eigen::Index m = size();
  RealMatrix t = RealMatrix::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    t(i, i) = diag[i];
    if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = offdiag[i];
  }
  return t;
}

SymTridiagonal build_tk(const LanczosRun& run) {
  const int k = run.k;
  SymTridiagonal t;
  t.diag = run.alphas.head(k);
  t.offdiag = run.betas.head(std::max(k - 1, 0));
  return t;
}

SymTridiagonal palindromic_extension(const RealVector& diag, const RealVector& betas) {
  const Eigen::Index k = diag.size();
  SymTridiagonal t;
  t.diag.resize(2 * k - 1);
  t.offdiag.resize(2 * k - 2);
  for (Eigen::Index i = 0; i < k; ++i) t.diag[i] = diag[i];
  for (Eigen::Index i = 0; i + 1 < k; ++i) t.diag[k + i] = diag[k - 2 - i];
  for (Eigen::Index i = 0; i + 1 < k; ++i) t.offdiag[i] = betas[i];
  t.offdiag[k - 1] = betas[k - 1];
  for (Eigen::Index i = 0; i + 2 < k; ++i) t.offdiag[k + i] = betas[k - 3 - i];
  return t;
}

SymTridiagonal build_gagq(const LanczosRun& run) {
  if (run.k < 2) {
    throw Error(ErrorCode::InsufficientSteps, "averaged rule needs at least 2 steps");
  }
  if (run.breakdown_at) {
    throw Error(ErrorCode::BreakdownExact, "run broke down; the Gauss rule is already exact");
  }
  return palindromic_extension(run.alphas.head(run.k), run.betas.head(run.k));
}

TridiagEigen tridiag_eig(const SymTridiagonal& t) {
  const Eigen::Index m = t.size();
  RealVector d = t.diag;
  RealVector e = RealVector::Zero(m);
  for (Eigen::Index i = 0; i + 1 < m; ++i) e[i] = t.offdiag[i];
  RealVector z = RealVector::Zero(m);
  if (m > 0) z[0] = 1.0;

  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr int max_iter = 60;
  for (Eigen::Index l = 0; l < m; ++l) {
    int iter = 0;
    Eigen::Index mm;
    do {
      for (mm = l; mm + 1 < m; ++mm) {
        const double dd = std::abs(d[mm]) + std::abs(d[mm + 1]);
        if (std::abs(e[mm]) <= eps * dd) break;
      }
      if (mm == l) break;
      if (++iter > max_iter) {
        throw Error(ErrorCode::ConvergenceFailure, "tridiagonal QL iteration did not converge");
      }
      // Wilkinson shift from the leading 2x2 block.
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[mm] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      bool deflated = false;
      for (Eigen::Index i = mm - 1; i >= l; --i) {
        const double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[mm] = 0.0;
          deflated = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        const double zf = z[i + 1];
        z[i + 1] = s * z[i] + c * zf;
        z[i] = c * z[i] - s * zf;
      }
      if (deflated) continue;
      d[l] -= p;
      e[l] = g;
      e[mm] = 0.0;
    } while (mm != l);
  }

  std::vector<Eigen::Index> order(m);
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return d[a] < d[b]; });
  TridiagEigen out;
  out.values.resize(m);
  out.first_row.resize(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    out.values[j] = d[order[j]];
    out.first_row[j] = z[order[j]];
  }
  return out;
}

}  // namespace bsespec
