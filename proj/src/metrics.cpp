#include "bsespec/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bsespec/error.hpp"
#include "bsespec/quadrature.hpp"
#include "bsespec/variants.hpp"

namespace bsespec {

double curve_angle(const CurvePair& pair) {
  const std::size_t m = pair.omegas.size();
  if (pair.a.size() != m || pair.b.size() != m) {
    throw Error(ErrorCode::DimensionMismatch, "curves and grid differ in length");
  }
  for (std::size_t i = 1; i < m; ++i) {
    if (!(pair.omegas[i] > pair.omegas[i - 1])) {
      throw Error(ErrorCode::InvalidConfig, "grid is not strictly ascending");
    }
  }
  // Left-point rectangles on the w > 0 samples.
  std::vector<double> root_dw(m, 0.0);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    if (pair.omegas[i] > 0.0) root_dw[i] = std::sqrt(pair.omegas[i + 1] - pair.omegas[i]);
  }
  double na = 0.0, nb = 0.0, dot = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double x = pair.a[i] * root_dw[i];
    const double y = pair.b[i] * root_dw[i];
    na += x * x;
    nb += y * y;
    dot += x * y;
  }
  if (!(na > 0.0) || !(nb > 0.0)) {
    throw Error(ErrorCode::ZeroNormCurve, "curve has zero norm on w > 0");
  }
  na = std::sqrt(na);
  nb = std::sqrt(nb);
  const double sign = dot < 0.0 ? -1.0 : 1.0;
  double dist2 = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double diff = pair.a[i] * root_dw[i] / na - sign * pair.b[i] * root_dw[i] / nb;
    dist2 += diff * diff;
  }
  const double half = std::min(1.0, std::sqrt(dist2) / 2.0);
  return std::min(2.0 * std::asin(half), std::numbers::pi / 2.0);
}

double spectrum_angle(const Spectrum& a, const Spectrum& b) {
  if (a.omegas != b.omegas) {
    throw Error(ErrorCode::DimensionMismatch, "spectra are sampled on different grids");
  }
  return curve_angle(CurvePair{a.omegas, a.values, b.values});
}

namespace {

GmgRun truncate_gmg(const GmgRun& gmg, int k2) {
  GmgRun out;
  out.run = truncate(gmg.run, k2);
  out.tridiag.betas = out.run.betas.head(k2 - 1);
  if (!out.run.breakdown_at) out.tridiag.residual_beta = out.run.betas[k2 - 1];
  return out;
}

}  // namespace

std::vector<HistoryRow> convergence_history(const BseHamiltonian& h, const Vector& d,
                                            const VariantConfig& cfg, int k_max,
                                            const BroadeningKernel& g, const Spectrum& oracle) {
  if (k_max < 1) throw Error(ErrorCode::InvalidSteps, "k_max must be >= 1");
  std::vector<HistoryRow> rows;
  const std::vector<double>& omegas = oracle.omegas;
  auto record = [&](int k, const Spectrum& s) {
    rows.push_back(HistoryRow{k, spectrum_angle(s, oracle), s.info.dropped_count});
  };

  LanczosOptions lopts;
  lopts.reorth = cfg.reorth;
  AssembleOptions aopts;
  aopts.use_gagq = cfg.gagq;

  switch (cfg.variant) {
    case SolverVariant::Tda:
    case SolverVariant::RealM:
    case SolverVariant::Omega: {
      const LanczosRun full = cfg.variant == SolverVariant::Tda
                                  ? lanczos_tda(h.a(), d, k_max, lopts)
                                  : cfg.variant == SolverVariant::RealM
                                        ? lanczos_m_inner(h, d, k_max, lopts)
                                        : lanczos_omega_inner(h, d, k_max, lopts);
      // Past a breakdown a fresh run would stop at the same step.
      for (int k = 1; k <= k_max; ++k) {
        const LanczosRun run = k < full.k ? truncate(full, k) : full;
        record(k, assemble_spectrum(run, g, omegas, aopts));
      }
      break;
    }
    case SolverVariant::Gmg: {
      const int top = k_max - k_max % 2;
      if (top < 2) throw Error(ErrorCode::OddStepCount, "GMG history needs k_max >= 2");
      const GmgRun full = lanczos_gmg(h, d, top, lopts);
      for (int k = 2; k <= top; k += 2) {
        const GmgRun run = k < full.run.k ? truncate_gmg(full, k) : full;
        record(k, assemble_gmg_spectrum(run, g, omegas, aopts));
      }
      break;
    }
    case SolverVariant::PairedOmega:
    case SolverVariant::PairedC:
      for (int k = 1; k <= k_max; ++k) {
        record(k, approximate_spectrum(h, d, cfg, k, g, omegas));
      }
      break;
  }
  return rows;
}

ErrorEstimates two_rule_error_estimate(const LanczosRun& run, const BroadeningKernel& g,
                                       const std::vector<double>& omegas) {
  if (run.k < 2) throw Error(ErrorCode::InsufficientSteps, "error estimates need k >= 2");
  AssembleOptions gauss_opts;
  AssembleOptions gagq_opts;
  gagq_opts.use_gagq = true;

  ErrorEstimates est;
  const Spectrum gauss = assemble_spectrum(run, g, omegas, gauss_opts);
  const Spectrum gagq = assemble_spectrum(run, g, omegas, gagq_opts);
  est.gauss_vs_gagq = spectrum_angle(gauss, gagq);
  if (run.breakdown_at) {
    // Both rules are exact after a breakdown; there is nothing left to estimate.
    est.consecutive = 0.0;
    return est;
  }
  const bool averaged = run.k - 1 >= 2;
  const Spectrum prev =
      assemble_spectrum(truncate(run, run.k - 1), g, omegas, averaged ? gagq_opts : gauss_opts);
  est.consecutive = spectrum_angle(averaged ? gagq : gauss, prev);
  return est;
}

}  // namespace bsespec
