#include "bsespec/pipeline.hpp"

#include "bsespec/error.hpp"
#include "bsespec/quadrature.hpp"
#include "bsespec/variants.hpp"

namespace bsespec {

std::string_view to_string(SolverVariant v) noexcept {
  switch (v) {
    case SolverVariant::Tda: return "tda";
    case SolverVariant::RealM: return "real-m";
    case SolverVariant::Omega: return "omega";
    case SolverVariant::Gmg: return "gmg";
    case SolverVariant::PairedOmega: return "paired-omega";
    case SolverVariant::PairedC: return "paired-c";
  }
  return "unknown";
}

std::optional<SolverVariant> parse_solver_variant(std::string_view name) noexcept {
  for (SolverVariant v : {SolverVariant::Tda, SolverVariant::RealM, SolverVariant::Omega,
                          SolverVariant::Gmg, SolverVariant::PairedOmega, SolverVariant::PairedC}) {
    if (to_string(v) == name) return v;
  }
  return std::nullopt;
}

Spectrum approximate_spectrum(const BseHamiltonian& h, const Vector& d, const VariantConfig& cfg,
                              int k, const BroadeningKernel& g, const std::vector<double>& omegas,
                              double scale) {
  LanczosOptions lopts;
  lopts.reorth = cfg.reorth;
  AssembleOptions aopts;
  aopts.use_gagq = cfg.gagq;
  aopts.scale = scale;

  switch (cfg.variant) {
    case SolverVariant::Tda:
      return assemble_tda_spectrum(lanczos_tda(h.a(), d, k, lopts), g, omegas, aopts);
    case SolverVariant::RealM:
      return assemble_bse_spectrum(lanczos_m_inner(h, d, k, lopts), g, omegas, aopts);
    case SolverVariant::Omega:
      return assemble_bse_spectrum(lanczos_omega_inner(h, d, k, lopts), g, omegas, aopts);
    case SolverVariant::Gmg:
      return assemble_gmg_spectrum(lanczos_gmg(h, d, k, lopts), g, omegas, aopts);
    case SolverVariant::PairedOmega:
    case SolverVariant::PairedC: {
      if (cfg.gagq) {
        throw Error(ErrorCode::InvalidConfig, "the paired variants have no averaged rule");
      }
      // Paired runs always re-orthogonalize against the whole block basis.
      const PairedInner inner = cfg.variant == SolverVariant::PairedOmega
                                    ? PairedInner::OmegaCondition
                                    : PairedInner::CCondition;
      return assemble_paired_spectrum(
          lanczos_paired(h, d, k, inner, Reorthogonalization::Full), g, omegas, scale);
    }
  }
  throw Error(ErrorCode::InvalidConfig, "unknown variant");
}

}  // namespace bsespec
