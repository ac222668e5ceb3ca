#include "diraclab/spectral/dirac_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "diraclab/errors.hpp"
#include "diraclab/simd/kernels.hpp"

namespace dlab::spectral {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

QuadratureOptions oversampled(int L, const SpectrumOptions& o, bool axisymmetric) {
  QuadratureOptions q;
  q.n_theta = L + 2 + (o.extra_theta >= 0 ? o.extra_theta : L + 24);
  q.n_phi = axisymmetric ? 1 : 2 * L + 3 + (o.extra_phi >= 0 ? o.extra_phi : 2 * L + 40);
  return q;
}

Eigen::VectorXd round_eigenvalues(const RoundEigenBasis& basis, const std::vector<int>& idx) {
  Eigen::VectorXd v(idx.size());
  for (std::size_t a = 0; a < idx.size(); ++a) v[a] = basis.modes()[idx[a]].eigenvalue();
  return v;
}

std::vector<double> theta_profile(const std::function<double(double)>& f,
                                  const num::SphereGrid& grid) {
  std::vector<double> v(grid.n_theta());
  for (int i = 0; i < grid.n_theta(); ++i) {
    v[i] = f(grid.theta[i]);
    if (!(v[i] > 0.0) || !std::isfinite(v[i]))
      throw DefinitenessError("multiplication function is not positive at a quadrature node");
  }
  return v;
}

template <class Matrix>
std::vector<double> solve_pencil(const Eigen::VectorXd& round, const Matrix& M) {
  using Scalar = typename Matrix::Scalar;
  Eigen::LLT<Matrix> llt(M);
  if (llt.info() != Eigen::Success)
    throw DefinitenessError("mass matrix is not positive definite");
  // C = L^{-1} diag(round) L^{-H}
  Matrix Linv = llt.matrixL().solve(Matrix::Identity(M.rows(), M.cols()));
  Matrix C = Linv * round.cast<Scalar>().asDiagonal() * Linv.adjoint();
  C = (0.5 * (C + C.adjoint())).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> es(C, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("dense eigensolver failed");
  std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> spectrum_blocks(const ConformalSphereMetric& metric,
                                    const RoundEigenBasis& basis) {
  const auto f = [&metric](double theta) { return std::exp(metric.u(theta)); };
  std::vector<double> all;
  for (int two_m : basis.block_keys()) {
    const Eigen::MatrixXd M = assemble_multiplication_block(f, basis, two_m);
    const auto ev = solve_pencil(round_eigenvalues(basis, basis.block(two_m)), M);
    all.insert(all.end(), ev.begin(), ev.end());
  }
  std::sort(all.begin(), all.end());
  return all;
}

std::vector<double> spectrum_full(const ConformalSphereMetric& metric,
                                  const RoundEigenBasis& basis) {
  const auto f = [&metric](double theta, double phi) { return std::exp(metric.u(theta, phi)); };
  std::vector<int> all(basis.size());
  for (int a = 0; a < basis.size(); ++a) all[a] = a;
  return solve_pencil(round_eigenvalues(basis, all), assemble_multiplication_matrix(f, basis));
}

}  // namespace

RoundEigenBasis build_round_basis(int L, QuadratureOptions quad) {
  return RoundEigenBasis(L, quad);
}

Eigen::MatrixXd assemble_multiplication_block(const std::function<double(double)>& f,
                                              const RoundEigenBasis& basis, int two_m) {
  const num::SphereGrid& grid = basis.grid();
  const std::vector<double> fv = theta_profile(f, grid);
  std::vector<double> w(grid.n_theta());
  for (int i = 0; i < grid.n_theta(); ++i) w[i] = kTwoPi * grid.weight[i] * fv[i];

  const std::vector<int>& idx = basis.block(two_m);
  const int n = static_cast<int>(idx.size());
  std::vector<std::span<const double>> F(n);
  std::vector<std::vector<double>> G(n);
  for (int a = 0; a < n; ++a) {
    F[a] = basis.upper(basis.modes()[idx[a]]);
    G[a] = basis.lower(basis.modes()[idx[a]]);
  }
  Eigen::MatrixXd M(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b <= a; ++b) {
      const double v = simd::weighted_dot(w, F[a], F[b]) + simd::weighted_dot(w, G[a], G[b]);
      M(a, b) = v;
      M(b, a) = v;
    }
  return M;
}

Eigen::MatrixXcd assemble_multiplication_matrix(const std::function<double(double, double)>& f,
                                                const RoundEigenBasis& basis) {
  const num::SphereGrid& grid = basis.grid();
  const int L = basis.truncation();
  const int nt = grid.n_theta(), np = grid.n_phi;
  if (np < 2 * L + 3)
    throw ResolutionError("assemble_multiplication_matrix: need at least 2L + 3 azimuth nodes");

  std::vector<double> samples(static_cast<std::size_t>(nt) * np);
  for (int i = 0; i < nt; ++i)
    for (int p = 0; p < np; ++p) {
      const double v = f(grid.theta[i], grid.phi(p));
      if (!(v > 0.0) || !std::isfinite(v))
        throw DefinitenessError("multiplication function is not positive at a quadrature node");
      samples[i * np + p] = v;
    }

  // Weighted azimuthal Fourier coefficients 2 pi w_i fhat_q(theta_i) for
  // q = 0..2L+1; negative q follow by conjugation.
  const int qmax = 2 * L + 1;
  std::vector<std::vector<double>> re(qmax + 1, std::vector<double>(nt)),
      im(qmax + 1, std::vector<double>(nt));
  for (int q = 0; q <= qmax; ++q)
    for (int i = 0; i < nt; ++i) {
      double sr = 0.0, si = 0.0;
      for (int p = 0; p < np; ++p) {
        const double ang = q * grid.phi(p);
        sr += samples[i * np + p] * std::cos(ang);
        si -= samples[i * np + p] * std::sin(ang);
      }
      re[q][i] = kTwoPi * grid.weight[i] * sr / np;
      im[q][i] = kTwoPi * grid.weight[i] * si / np;
    }

  const int n = basis.size();
  std::vector<std::span<const double>> F(n);
  std::vector<std::vector<double>> G(n);
  for (int a = 0; a < n; ++a) {
    F[a] = basis.upper(basis.modes()[a]);
    G[a] = basis.lower(basis.modes()[a]);
  }
  Eigen::MatrixXcd M(n, n);
  for (int b = 0; b < n; ++b)
    for (int a = 0; a <= b; ++a) {
      const int two_q = basis.modes()[b].two_m - basis.modes()[a].two_m;
      const int q = std::abs(two_q) / 2;
      const double r = simd::weighted_dot(re[q], F[a], F[b]) + simd::weighted_dot(re[q], G[a], G[b]);
      double s = simd::weighted_dot(im[q], F[a], F[b]) + simd::weighted_dot(im[q], G[a], G[b]);
      if (two_q < 0) s = -s;
      M(b, a) = {r, s};
      M(a, b) = {r, -s};
    }
  return M;
}

std::vector<double> pencil_eigenvalues(const Eigen::VectorXd& round, const Eigen::MatrixXcd& M) {
  return solve_pencil(round, M);
}

std::vector<double> pencil_eigenvalues(const Eigen::VectorXd& round, const Eigen::MatrixXd& M) {
  return solve_pencil(round, M);
}

double first_eigenvalue(const std::vector<double>& eigenvalues) {
  if (eigenvalues.empty()) throw NumericalError("empty spectrum");
  double best = std::abs(eigenvalues.front());
  for (double v : eigenvalues) best = std::min(best, std::abs(v));
  if (best < 1e-9) throw NumericalError("spectrum contains a (numerically) zero eigenvalue");
  return best;
}

DiracSpectrumResult dirac_spectrum_at(const ConformalSphereMetric& metric, int L,
                                      const SpectrumOptions& options) {
  const bool blocks = metric.is_axisymmetric() && options.use_blocks;
  const RoundEigenBasis basis(L, oversampled(L, options, blocks));
  DiracSpectrumResult r;
  r.L = L;
  r.eigenvalues = blocks ? spectrum_blocks(metric, basis) : spectrum_full(metric, basis);
  r.lambda1 = first_eigenvalue(r.eigenvalues);
  r.lambda1_history = {r.lambda1};
  return r;
}

DiracSpectrumResult conformal_dirac_spectrum(const ConformalSphereMetric& metric,
                                             const SpectrumOptions& options) {
  if (options.refine_step < 1) throw PreconditionError("refine_step must be positive");
  DiracSpectrumResult prev = dirac_spectrum_at(metric, options.L, options);
  std::vector<double> history = {prev.lambda1};
  for (int L = options.L + options.refine_step; L <= options.max_L; L += options.refine_step) {
    DiracSpectrumResult next = dirac_spectrum_at(metric, L, options);
    history.push_back(next.lambda1);
    next.convergence_estimate = std::abs(next.lambda1 - prev.lambda1) / next.lambda1;
    next.lambda1_history = history;
    if (next.convergence_estimate < options.tolerance) return next;
    prev = std::move(next);
  }
  if (!options.require_convergence) return prev;
  std::ostringstream msg;
  msg.precision(12);
  msg << "lambda1 did not converge by L = " << prev.L << ": last values ";
  if (history.size() > 1) msg << history[history.size() - 2] << ", ";
  msg << history.back();
  throw ConvergenceError(msg.str());
}

std::vector<double> axisymmetric_mode_spectrum(const ConformalSphereMetric& metric, int two_m,
                                               int L, const SpectrumOptions& options) {
  if (!metric.is_axisymmetric())
    throw PreconditionError("axisymmetric_mode_spectrum: metric is not axisymmetric");
  const RoundEigenBasis basis(L, oversampled(L, options, true));
  const auto f = [&metric](double theta) { return std::exp(metric.u(theta)); };
  return solve_pencil(round_eigenvalues(basis, basis.block(two_m)),
                      assemble_multiplication_block(f, basis, two_m));
}

}  // namespace dlab::spectral
