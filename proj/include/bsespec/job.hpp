#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "bsespec/broadening.hpp"
#include "bsespec/hamiltonian.hpp"
#include "bsespec/io.hpp"
#include "bsespec/pipeline.hpp"

namespace bsespec {

enum class GeneratorKind { Random, Showcase, ShowcaseIntegerPower };

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::Random;
  Eigen::Index n = 0;
  std::uint64_t seed = 0;
  ScalarField field = ScalarField::Complex;
  double diag_shift = 0.5;
};

// Either three input files or a generator.
struct ProblemSource {
  std::optional<std::filesystem::path> a_path;
  std::optional<std::filesystem::path> b_path;  // absent means B = 0
  std::optional<std::filesystem::path> d_path;
  std::optional<GeneratorSpec> generator;
};

struct JobConfig {
  ProblemSource problem;
  VariantConfig variant;
  int k = 32;
  KernelShape kernel = KernelShape::Gaussian;
  double sigma = 0.1;
  std::optional<double> omega_max;  // default 1.5 * |H|_est
  int grid_points = 2000;
  double scale = 1.0;
  bool oracle = false;
  std::filesystem::path output;
  std::optional<std::filesystem::path> oracle_output;  // default <output>.oracle
  io::TableFormat format = io::TableFormat::Csv;
};

struct Problem {
  BseHamiltonian h;
  Vector d;
};

// Loads or generates the problem. Files are validated with build_hamiltonian;
// the showcase generators bypass the definiteness check.
Problem load_problem(const ProblemSource& src);

// Throws InvalidConfig describing the first violated constraint.
void validate(const JobConfig& cfg, const Problem& problem);

// Grid used when omega_max is not given: [0, 1.5 * |H|_est] (TDA: |A|_est).
std::vector<double> default_grid(const Problem& problem, const JobConfig& cfg);

// Runs the job end to end and writes the spectrum (and oracle) files. Progress
// and diagnostics go to `log`; failures produce one "error: <code>: <message>"
// line on `err`. Returns the process exit status.
int run_job(const JobConfig& cfg, std::ostream& log, std::ostream& err);

// Convergence table against full diagonalization for k = 1..k_max.
int run_convergence(const JobConfig& cfg, int k_max, std::ostream& log, std::ostream& err);

// Writes <prefix>A.mtx, <prefix>B.mtx and <prefix>d.vec.
int run_generate(const GeneratorSpec& spec, const std::filesystem::path& prefix,
                 std::ostream& log, std::ostream& err);

}  // namespace bsespec
