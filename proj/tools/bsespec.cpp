// bsespec: absorption spectra of definite Bethe-Salpeter Hamiltonians.
//
//   bsespec run --variant omega --k 64 --gagq --a A.mtx --b B.mtx --d d.vec --out spec.csv
//   bsespec gen --n 500 --seed 7 --field complex --out-prefix prob/
//   bsespec converge --kmax 100 --variant omega --gagq --a A.mtx --b B.mtx --d d.vec

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "bsespec/job.hpp"

namespace {

using namespace bsespec;

struct Flags {
  std::string a, b, d, out, oracle_out;
  std::string variant = "omega";
  std::string kernel = "gaussian";
  std::string reorth = "none";
  std::string format = "csv";
  std::string generator;
  std::string field = "complex";
  int k = 32;
  bool gagq = false;
  bool oracle = false;
  double sigma = 0.1;
  double scale = 1.0;
  double omega_max = 0.0;
  int grid_points = 2000;
  long gen_n = 0;
  std::uint64_t seed = 0;
  double diag_shift = 0.5;
};

const std::map<std::string, SolverVariant> kVariants{
    {"tda", SolverVariant::Tda},       {"real-m", SolverVariant::RealM},
    {"omega", SolverVariant::Omega},   {"gmg", SolverVariant::Gmg},
    {"paired-omega", SolverVariant::PairedOmega}, {"paired-c", SolverVariant::PairedC}};
const std::map<std::string, KernelShape> kKernels{{"gaussian", KernelShape::Gaussian},
                                                   {"lorentzian", KernelShape::Lorentzian}};
const std::map<std::string, Reorthogonalization> kReorth{{"none", Reorthogonalization::None},
                                                          {"full", Reorthogonalization::Full}};
const std::map<std::string, io::TableFormat> kFormats{{"csv", io::TableFormat::Csv},
                                                       {"tsv", io::TableFormat::Tsv}};
const std::map<std::string, ScalarField> kFields{{"real", ScalarField::Real},
                                                  {"complex", ScalarField::Complex}};
const std::map<std::string, GeneratorKind> kGenerators{
    {"random", GeneratorKind::Random},
    {"paper-eq46", GeneratorKind::Showcase},
    {"paper-eq46-literal", GeneratorKind::ShowcaseIntegerPower}};

void add_problem_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--a", f.a, "A block (MatrixMarket coordinate or dense text)");
  cmd->add_option("--b", f.b, "B block; omitted means B = 0");
  cmd->add_option("--d", f.d, "transition vector");
  cmd->add_option("--generator", f.generator, "random | paper-eq46 | paper-eq46-literal")
      ->check(CLI::IsMember(kGenerators));
  cmd->add_option("--gen-n", f.gen_n, "block size for --generator random");
  cmd->add_option("--seed", f.seed, "generator seed");
  cmd->add_option("--field", f.field, "real | complex")->check(CLI::IsMember(kFields));
  cmd->add_option("--diag-shift", f.diag_shift, "smallest eigenvalue of Omega for random");
}

void add_spectrum_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--variant", f.variant, "tda | real-m | omega | gmg | paired-omega | paired-c")
      ->check(CLI::IsMember(kVariants));
  cmd->add_flag("--gagq", f.gagq, "use the generalized averaged Gauss rule");
  cmd->add_option("--kernel", f.kernel, "gaussian | lorentzian")->check(CLI::IsMember(kKernels));
  cmd->add_option("--sigma", f.sigma, "broadening width");
  cmd->add_option("--scale", f.scale, "constant prefactor applied to the spectrum");
  cmd->add_option("--reorth", f.reorth, "none | full")->check(CLI::IsMember(kReorth));
  cmd->add_option("--grid-points", f.grid_points, "samples on [0, omega_max]");
  cmd->add_option("--omega-max", f.omega_max, "grid end; default 1.5 x |H| estimate");
  cmd->add_option("--format", f.format, "csv | tsv")->check(CLI::IsMember(kFormats));
}

JobConfig to_config(const Flags& f) {
  JobConfig cfg;
  if (!f.generator.empty()) {
    GeneratorSpec gen;
    gen.kind = kGenerators.at(f.generator);
    gen.n = f.gen_n;
    gen.seed = f.seed;
    gen.field = kFields.at(f.field);
    gen.diag_shift = f.diag_shift;
    cfg.problem.generator = gen;
  } else {
    if (!f.a.empty()) cfg.problem.a_path = f.a;
    if (!f.b.empty()) cfg.problem.b_path = f.b;
    if (!f.d.empty()) cfg.problem.d_path = f.d;
  }
  cfg.variant.variant = kVariants.at(f.variant);
  cfg.variant.gagq = f.gagq;
  cfg.variant.reorth = kReorth.at(f.reorth);
  cfg.k = f.k;
  cfg.kernel = kKernels.at(f.kernel);
  cfg.sigma = f.sigma;
  if (f.omega_max > 0.0) cfg.omega_max = f.omega_max;
  cfg.grid_points = f.grid_points;
  cfg.scale = f.scale;
  cfg.oracle = f.oracle;
  cfg.output = f.out;
  if (!f.oracle_out.empty()) cfg.oracle_output = f.oracle_out;
  cfg.format = kFormats.at(f.format);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Absorption spectra of definite Bethe-Salpeter Hamiltonians"};
  app.require_subcommand(1);
  Flags f;

  CLI::App* run = app.add_subcommand("run", "approximate the spectrum with one Lanczos variant");
  add_problem_flags(run, f);
  add_spectrum_flags(run, f);
  run->add_option("--k", f.k, "Lanczos steps")->check(CLI::PositiveNumber);
  run->add_option("--out", f.out, "spectrum output file")->required();
  run->add_flag("--oracle", f.oracle, "also diagonalize H fully and report the angle");
  run->add_option("--oracle-out", f.oracle_out, "oracle spectrum file; default <out>.oracle");

  CLI::App* gen = app.add_subcommand("gen", "write a random definite problem to disk");
  long n = 0;
  std::string prefix;
  gen->add_option("--n", n, "block size")->required()->check(CLI::PositiveNumber);
  gen->add_option("--seed", f.seed, "generator seed");
  gen->add_option("--field", f.field, "real | complex")->check(CLI::IsMember(kFields));
  gen->add_option("--diag-shift", f.diag_shift, "smallest eigenvalue of Omega");
  gen->add_option("--out-prefix", prefix, "prefix for A.mtx, B.mtx, d.vec")->required();

  CLI::App* conv = app.add_subcommand("converge", "angle to the exact spectrum for k = 1..kmax");
  int kmax = 0;
  add_problem_flags(conv, f);
  add_spectrum_flags(conv, f);
  conv->add_option("--kmax", kmax, "largest step count")->required()->check(CLI::PositiveNumber);
  conv->add_option("--out", f.out, "table output file; default stdout");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return run_job(to_config(f), std::cout, std::cerr);
  if (conv->parsed()) return run_convergence(to_config(f), kmax, std::cout, std::cerr);
  GeneratorSpec spec;
  spec.n = n;
  spec.seed = f.seed;
  spec.field = kFields.at(f.field);
  spec.diag_shift = f.diag_shift;
  return run_generate(spec, prefix, std::cout, std::cerr);
}
