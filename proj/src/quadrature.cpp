#include "bsespec/quadrature.hpp"

#include <cmath>
#include <string>

#include "bsespec/error.hpp"
#include "bsespec/kernels.hpp"

namespace bsespec {

namespace {

Spectrum assemble(const LanczosRun& run, const QuadratureNodes& q, bool divide_by_theta,
                  const BroadeningKernel& g, const std::vector<double>& omegas,
                  const AssembleOptions& opts, bool gagq_used) {
  Spectrum s;
  s.omegas = omegas;
  s.values.assign(omegas.size(), 0.0);
  s.nodes = q.thetas;
  s.strengths.resize(q.thetas.size());
  for (std::size_t j = 0; j < q.thetas.size(); ++j) {
    const double th = q.thetas[j];
    if (th <= 0.0) {
      s.strengths[j] = 0.0;  // retained-and-zeroed node
      continue;
    }
    s.strengths[j] = run.norm_const * q.weights[j] / (divide_by_theta ? th : 1.0);
  }
  std::vector<double> coeffs(s.strengths);
  for (double& c : coeffs) c *= opts.scale;
  kernels::odd_spectrum(s.omegas, s.nodes, coeffs, g, s.values, opts.exec);

  s.info.variant = std::string(to_string(run.variant));
  s.info.k = run.k;
  s.info.kernel = g.shape();
  s.info.sigma = g.sigma();
  s.info.norm_const = run.norm_const;
  s.info.scale = opts.scale;
  s.info.dropped_count = q.dropped_count;
  s.info.breakdown_at = run.breakdown_at;
  s.info.gagq = gagq_used;
  return s;
}

bool gagq_applies(const LanczosRun& run, bool use_gagq) {
  return use_gagq && run.k >= 2 && !run.breakdown_at;
}

}  // namespace

QuadratureNodes quadrature_nodes(const LanczosRun& run, bool use_gagq, NodeMap map,
                                 NodePolicy policy) {
  if (run.k < 1) throw Error(ErrorCode::InvalidSteps, "run has no steps");
  const SymTridiagonal t = gagq_applies(run, use_gagq) ? build_gagq(run) : build_tk(run);
  const TridiagEigen eig = tridiag_eig(t);

  QuadratureNodes q;
  int nonpositive = 0;
  for (Eigen::Index j = 0; j < eig.values.size(); ++j) {
    const double lam = eig.values[j];
    const double w = eig.first_row[j] * eig.first_row[j];
    if (lam <= 0.0) {
      ++nonpositive;
      if (policy == NodePolicy::RetainZero) {
        q.thetas.push_back(0.0);
        q.weights.push_back(w);
      }
      continue;
    }
    q.thetas.push_back(map == NodeMap::SquareRoot ? std::sqrt(lam) : lam);
    q.weights.push_back(w);
  }
  if (nonpositive > 1) {
    throw Error(ErrorCode::MultipleNonpositiveNodes,
                std::to_string(nonpositive) + " nonpositive quadrature nodes at k = " +
                    std::to_string(run.k));
  }
  q.dropped_count = nonpositive;
  return q;
}

Spectrum assemble_tda_spectrum(const LanczosRun& run, const BroadeningKernel& g,
                               const std::vector<double>& omegas, const AssembleOptions& opts) {
  const QuadratureNodes q =
      quadrature_nodes(run, opts.use_gagq, NodeMap::Identity, opts.node_policy);
  return assemble(run, q, false, g, omegas, opts, gagq_applies(run, opts.use_gagq));
}

Spectrum assemble_bse_spectrum(const LanczosRun& run, const BroadeningKernel& g,
                               const std::vector<double>& omegas, const AssembleOptions& opts) {
  const QuadratureNodes q =
      quadrature_nodes(run, opts.use_gagq, NodeMap::SquareRoot, opts.node_policy);
  return assemble(run, q, true, g, omegas, opts, gagq_applies(run, opts.use_gagq));
}

Spectrum assemble_spectrum(const LanczosRun& run, const BroadeningKernel& g,
                           const std::vector<double>& omegas, const AssembleOptions& opts) {
  switch (run.variant) {
    case LanczosVariant::TdaHermitian: return assemble_tda_spectrum(run, g, omegas, opts);
    case LanczosVariant::RealMInner:
    case LanczosVariant::ComplexOmegaInner: return assemble_bse_spectrum(run, g, omegas, opts);
    default:
      throw Error(ErrorCode::InvalidConfig,
                  "variant " + std::string(to_string(run.variant)) + " has its own assembler");
  }
}

}  // namespace bsespec
