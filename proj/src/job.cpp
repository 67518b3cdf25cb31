#include "bsespec/job.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include "bsespec/error.hpp"
#include "bsespec/metrics.hpp"
#include "bsespec/oracle.hpp"

namespace bsespec {

namespace {

constexpr int kGridNormIterations = 30;

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Under TDA only A takes part, both for the engine and for the oracle.
BseHamiltonian effective_hamiltonian(const Problem& p, const JobConfig& cfg) {
  if (cfg.variant.variant == SolverVariant::Tda && !p.h.tda()) {
    return make_tda_hamiltonian(p.h.a());
  }
  return p.h;
}

template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    err << "error: " << error_name(e.code()) << ": " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: Internal: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace

Problem load_problem(const ProblemSource& src) {
  if (src.generator) {
    const GeneratorSpec& gen = *src.generator;
    switch (gen.kind) {
      case GeneratorKind::Random: {
        if (gen.n < 1) throw Error(ErrorCode::InvalidConfig, "generator needs n >= 1");
        if (!(gen.diag_shift > 0.0)) {
          throw Error(ErrorCode::InvalidConfig, "diag_shift must be positive");
        }
        return Problem{generate_random_definite(gen.n, gen.seed, gen.field, gen.diag_shift),
                       generate_transition_vector(gen.n, gen.seed, gen.field)};
      }
      case GeneratorKind::Showcase:
      case GeneratorKind::ShowcaseIntegerPower: {
        auto [h, d] = generate_showcase_example(gen.kind == GeneratorKind::Showcase
                                                    ? ShowcaseReading::ImaginaryUnit
                                                    : ShowcaseReading::IntegerPower);
        return Problem{std::move(h), std::move(d)};
      }
    }
  }
  if (!src.a_path || !src.d_path) {
    throw Error(ErrorCode::InvalidConfig, "give --a and --d, or a generator");
  }
  Matrix a = io::read_matrix(*src.a_path);
  Matrix b = src.b_path ? io::read_matrix(*src.b_path) : Matrix::Zero(a.rows(), a.cols());
  Vector d = io::read_vector(*src.d_path);
  BseHamiltonian h = build_hamiltonian(std::move(a), std::move(b));
  if (d.size() != h.n()) {
    throw Error(ErrorCode::DimensionMismatch, "d has length " + std::to_string(d.size()) +
                                                  " but H has block size " +
                                                  std::to_string(h.n()));
  }
  return Problem{std::move(h), std::move(d)};
}

void validate(const JobConfig& cfg, const Problem& problem) {
  const SolverVariant v = cfg.variant.variant;
  if (cfg.k < 1) throw Error(ErrorCode::InvalidSteps, "k must be >= 1");
  if (!(cfg.sigma > 0.0)) throw Error(ErrorCode::InvalidConfig, "sigma must be positive");
  if (cfg.grid_points < 2) throw Error(ErrorCode::InvalidConfig, "grid_points must be >= 2");
  if (cfg.omega_max && !(*cfg.omega_max > 0.0)) {
    throw Error(ErrorCode::InvalidConfig, "omega_max must be positive");
  }
  if (problem.d.size() != problem.h.n()) {
    throw Error(ErrorCode::DimensionMismatch, "d does not match the block size of H");
  }
  if (v == SolverVariant::RealM) {
    if (problem.h.field() != ScalarField::Real) {
      throw Error(ErrorCode::NotRealField, "variant real-m needs real A and B");
    }
    if (problem.d.imag().cwiseAbs().maxCoeff() != 0.0) {
      throw Error(ErrorCode::NotRealField, "variant real-m needs a real d");
    }
  }
  if (v == SolverVariant::Gmg && cfg.k % 2 != 0) {
    throw Error(ErrorCode::OddStepCount, "variant gmg needs an even k");
  }
  if (cfg.variant.gagq && (v == SolverVariant::PairedOmega || v == SolverVariant::PairedC)) {
    throw Error(ErrorCode::InvalidConfig, "the paired variants have no averaged rule");
  }
  if (v == SolverVariant::Tda) {
    if (!check_definiteness(make_tda_hamiltonian(problem.h.a()))) {
      throw Error(ErrorCode::NotDefinite, "A is not positive definite");
    }
  } else if (problem.h.definiteness() == Definiteness::Indefinite &&
             v != SolverVariant::PairedOmega) {
    throw Error(ErrorCode::NotDefinite, "Omega is not positive definite");
  }
}

std::vector<double> default_grid(const Problem& problem, const JobConfig& cfg) {
  double hi = 0.0;
  if (cfg.omega_max) {
    hi = *cfg.omega_max;
  } else {
    hi = 1.5 * estimate_norm(effective_hamiltonian(problem, cfg), kGridNormIterations);
  }
  return uniform_grid(0.0, hi, cfg.grid_points);
}

int run_job(const JobConfig& cfg, std::ostream& log, std::ostream& err) {
  return guarded(err, [&] {
    const Problem problem = load_problem(cfg.problem);
    validate(cfg, problem);
    const BseHamiltonian h = effective_hamiltonian(problem, cfg);
    const BroadeningKernel g(cfg.kernel, cfg.sigma);
    const std::vector<double> grid = default_grid(problem, cfg);

    const Spectrum s =
        approximate_spectrum(h, problem.d, cfg.variant, cfg.k, g, grid, cfg.scale);
    io::write_spectrum(cfg.output, s, cfg.format);
    log << "variant=" << to_string(cfg.variant.variant) << '\n';
    log << "k=" << s.info.k << '\n';
    log << "gagq=" << (s.info.gagq ? 1 : 0) << '\n';
    log << "dropped_count=" << s.info.dropped_count << '\n';
    if (s.info.breakdown_at) log << "breakdown_at=" << *s.info.breakdown_at << '\n';

    if (cfg.oracle) {
      const Spectrum exact = exact_spectrum(h, problem.d, g, grid, cfg.scale);
      const std::filesystem::path path =
          cfg.oracle_output.value_or(std::filesystem::path(cfg.output.string() + ".oracle"));
      io::write_spectrum(path, exact, cfg.format);
      log << "angle=" << num(spectrum_angle(s, exact)) << '\n';
    }
    return 0;
  });
}

int run_convergence(const JobConfig& cfg, int k_max, std::ostream& log, std::ostream& err) {
  return guarded(err, [&] {
    const Problem problem = load_problem(cfg.problem);
    JobConfig checked = cfg;
    checked.k = cfg.variant.variant == SolverVariant::Gmg ? k_max - k_max % 2 : k_max;
    validate(checked, problem);
    const BseHamiltonian h = effective_hamiltonian(problem, cfg);
    const BroadeningKernel g(cfg.kernel, cfg.sigma);
    const std::vector<double> grid = default_grid(problem, cfg);
    const Spectrum exact = exact_spectrum(h, problem.d, g, grid, cfg.scale);
    const std::vector<HistoryRow> rows =
        convergence_history(h, problem.d, cfg.variant, k_max, g, exact);
    if (cfg.output.empty()) {
      io::write_history(log, rows, cfg.format);
    } else {
      std::ofstream out(cfg.output, std::ios::binary);
      if (!out) throw Error(ErrorCode::IoError, "cannot open " + cfg.output.string());
      io::write_history(out, rows, cfg.format);
      out.flush();
      if (!out) throw Error(ErrorCode::IoError, "write to " + cfg.output.string() + " failed");
    }
    return 0;
  });
}

int run_generate(const GeneratorSpec& spec, const std::filesystem::path& prefix,
                 std::ostream& log, std::ostream& err) {
  return guarded(err, [&] {
    ProblemSource src;
    src.generator = spec;
    const Problem p = load_problem(src);
    const std::string base = prefix.string();
    if (!base.empty() && (base.back() == '/' || base.back() == '\\')) {
      std::error_code ec;
      std::filesystem::create_directories(prefix, ec);
      if (ec) throw Error(ErrorCode::IoError, "cannot create " + base + ": " + ec.message());
    }
    io::write_matrix(base + "A.mtx", p.h.a());
    io::write_matrix(base + "B.mtx", p.h.b());
    io::write_vector(base + "d.vec", p.d);
    log << "wrote " << base << "A.mtx " << base << "B.mtx " << base << "d.vec\n";
    return 0;
  });
}

}  // namespace bsespec
