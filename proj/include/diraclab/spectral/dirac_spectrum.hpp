#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "diraclab/spectral/conformal_metric.hpp"
#include "diraclab/spectral/round_basis.hpp"

namespace dlab::spectral {

struct SpectrumOptions {
  int L = 24;               // first truncation tried
  int refine_step = 8;      // L -> L + refine_step per refinement
  double tolerance = 1e-7;  // relative change of lambda1 accepted as converged
  int max_L = 96;
  bool require_convergence = true;
  bool use_blocks = true;   // azimuthal blocks for axisymmetric metrics
  int extra_theta = -1;     // theta nodes beyond L + 2; -1: L + 24
  int extra_phi = -1;       // azimuth nodes beyond 2L + 3; -1: 2L + 40
};

struct DiracSpectrumResult {
  std::vector<double> eigenvalues;  // ascending
  double lambda1 = 0.0;
  int L = 0;
  double convergence_estimate = 0.0;  // |lambda1(L) - lambda1(L - step)| / lambda1(L)
  std::vector<double> lambda1_history;
};

RoundEigenBasis build_round_basis(int L, QuadratureOptions quad = {});

/// The matrix M(b, a) = <f phi_a, phi_b> over the basis quadrature grid.
/// Throws DefinitenessError if f <= 0 at a node and ResolutionError if the
/// azimuthal grid cannot separate the basis frequencies.
Eigen::MatrixXcd assemble_multiplication_matrix(const std::function<double(double, double)>& f,
                                                const RoundEigenBasis& basis);

/// Real symmetric block of the same matrix for an axisymmetric f, restricted
/// to the modes of azimuthal index two_m / 2.
Eigen::MatrixXd assemble_multiplication_block(const std::function<double(double)>& f,
                                              const RoundEigenBasis& basis, int two_m);

/// Eigenvalues of the pencil (diag(round eigenvalues), M), ascending.
std::vector<double> pencil_eigenvalues(const Eigen::VectorXd& round, const Eigen::MatrixXcd& M);
std::vector<double> pencil_eigenvalues(const Eigen::VectorXd& round, const Eigen::MatrixXd& M);

/// min |lambda|; throws NumericalError if it is below 1e-9.
double first_eigenvalue(const std::vector<double>& eigenvalues);

/// Spectrum at one fixed truncation, no refinement.
DiracSpectrumResult dirac_spectrum_at(const ConformalSphereMetric& metric, int L,
                                      const SpectrumOptions& options = {});

/// Spectrum with the L -> L + refine_step convergence gate.
DiracSpectrumResult conformal_dirac_spectrum(const ConformalSphereMetric& metric,
                                             const SpectrumOptions& options = {});

/// Eigenvalues of the single azimuthal block two_m / 2 at truncation L.
std::vector<double> axisymmetric_mode_spectrum(const ConformalSphereMetric& metric, int two_m,
                                               int L, const SpectrumOptions& options = {});

}  // namespace dlab::spectral
