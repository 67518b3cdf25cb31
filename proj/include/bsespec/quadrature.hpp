#pragma once

#include <vector>

#include "bsespec/lanczos.hpp"
#include "bsespec/spectrum.hpp"
#include "bsespec/tridiagonal.hpp"

namespace bsespec {

// What happens to a quadrature node at t <= 0.
enum class NodePolicy {
  Drop,        // remove it (dropped_count records how many)
  RetainZero,  // keep it with a zero integrand contribution
};

struct QuadratureNodes {
  std::vector<double> thetas;   // ascending
  std::vector<double> weights;  // |S(1, j)|^2
  int dropped_count = 0;
};

enum class NodeMap {
  Identity,    // theta = eigenvalue (TDA)
  SquareRoot,  // theta = sqrt(eigenvalue) (Lanczos on H^2)
};

// Nodes and weights of the Gauss (T_k) or generalized averaged (T^_k) rule.
// With use_gagq after a lucky breakdown, or at k = 1, the Gauss rule is
// returned since both rules coincide there. Throws MultipleNonpositiveNodes.
QuadratureNodes quadrature_nodes(const LanczosRun& run, bool use_gagq, NodeMap map,
                                 NodePolicy policy = NodePolicy::Drop);

struct AssembleOptions {
  bool use_gagq = false;
  double scale = 1.0;
  NodePolicy node_policy = NodePolicy::Drop;
  kernels::Exec exec = kernels::default_exec();
};

// eps(w) = scale * |d|^2 * sum_{theta_j > 0} w_j [g(w - theta_j) - g(w + theta_j)]
Spectrum assemble_tda_spectrum(const LanczosRun& run, const BroadeningKernel& g,
                               const std::vector<double>& omegas,
                               const AssembleOptions& opts = {});

// eps(w) = scale * N * sum_{theta_j > 0} w_j [g(w - theta_j) - g(w + theta_j)] / theta_j
// with theta_j = sqrt(eig_j) of T_k or T^_k, N = run.norm_const.
Spectrum assemble_bse_spectrum(const LanczosRun& run, const BroadeningKernel& g,
                               const std::vector<double>& omegas,
                               const AssembleOptions& opts = {});

// Dispatches on run.variant (TDA, M-inner or Omega-inner).
Spectrum assemble_spectrum(const LanczosRun& run, const BroadeningKernel& g,
                           const std::vector<double>& omegas, const AssembleOptions& opts = {});

}  // namespace bsespec
