#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dlab::cli {

enum class Experiment { spectrum, thm1, large_sphere, small_sphere, shitam_flow, hyperbolic };

std::string to_string(Experiment e);

struct ExperimentConfig {
  Experiment kind = Experiment::spectrum;

  // inputs
  std::vector<std::string> surfaces;  // shape descriptors
  std::string metric;                 // spectrum: round:r=, bump:seed=,amp=, samples:file=
  std::string chart = "euclidean";
  std::string point = "0,0,0";
  std::string radii;                  // "a:b:n" or "r1,r2,..."; empty: per-experiment default
  std::string u0 = "hmean";           // hmean (H0 / 2 lambda1) or const:c
  double kappa_limit = 0;             // hyperbolic: also run the small-kappa comparison

  // spectral
  int L = 24;
  int max_L = 96;
  double spectral_tol = 1e-7;

  // spheres
  int n_theta = 24;
  int n_phi = 48;
  int steps = 64;

  // flow
  int nodes = 32;
  double rho_max = 0;
  double step_rel = 0.0025;

  // harness
  double tol = 1e-6;
  int sweep = 0;  // spectrum: number of random bump metrics
  std::uint64_t seed = 0;
  bool convergence = false;

  // output
  std::string out = "out";
  std::string format = "csv";
  bool svg = false;
  int threads = 1;

  /// Sorted key=value lines of every field; the config hash is taken over this.
  std::string canonical() const;
  std::string hash() const;
};

/// Default radii per experiment when none are given.
std::vector<double> parse_radii(const std::string& text, Experiment kind);

/// nullopt for hmean, the constant for const:c or const:c=<c>.
std::optional<double> parse_u0(const std::string& text);

/// "x,y,z".
Eigen::Vector3d parse_point(const std::string& text);

/// Throws ParseError for any invalid field, before anything is computed.
void validate(const ExperimentConfig& c);

struct ParseOutcome {
  ExperimentConfig config;
  bool exit_now = false;  // --help, --version or a usage error
  int exit_code = 0;
};

/// Command line with an optional --config FILE of key=value lines (long
/// flag names without dashes, '#' comments); flags override the file.
/// Usage errors print to stderr and return exit_code 64.
ParseOutcome parse_command_line(int argc, const char* const* argv);

}  // namespace dlab::cli
