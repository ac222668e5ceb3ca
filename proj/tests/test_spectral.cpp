#include <Eigen/Geometry>
#include <cmath>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "diraclab/errors.hpp"
#include "diraclab/spectral/conformal_metric.hpp"
#include "diraclab/spectral/dirac_spectrum.hpp"
#include "diraclab/spectral/round_basis.hpp"
#include "diraclab/spectral/sample_io.hpp"
#include "diraclab/spectral/wigner.hpp"
#include "doctest.h"
#include "oracles/dirac_shooting.hpp"
#include "oracles/wigner_explicit.hpp"

using namespace dlab;
using namespace dlab::spectral;
using std::numbers::pi;

namespace {

double bump(double t) { return 0.25 * std::exp(-4 * (std::cos(t) - 0.3) * (std::cos(t) - 0.3)); }

double oblate_u(double t, double c) {
  return 0.25 * std::log(1 + (c * c - 1) * std::sin(t) * std::sin(t));
}

}  // namespace

TEST_CASE("wigner ladder matches the explicit sum") {
  const std::vector<double> beta{0.1, 0.7, 1.3, 2.0, 2.9};
  for (int two_m : {1, 3, 5, 7})
    for (int two_mp : {1, -1}) {
      const int two_j_max = 41;
      const auto d = wigner_d_ladder(two_m, two_mp, two_j_max, beta);
      for (int r = 0; r < d.rows(); ++r)
        for (int i = 0; i < d.cols(); ++i) {
          const int two_j = two_m + 2 * r;
          CHECK(d(r, i) == doctest::Approx(oracle::wigner_d(two_j, two_m, two_mp, beta[i])).scale(1).epsilon(1e-12));
        }
    }
  CHECK_THROWS_AS(wigner_d_ladder(1, 3, 9, beta), PreconditionError);
  CHECK_THROWS_AS(wigner_d_ladder(2, 1, 9, beta), PreconditionError);
}

TEST_CASE("round basis is orthonormal and counts modes") {
  for (int L : {1, 4, 9}) {
    const RoundEigenBasis basis(L);
    CHECK(basis.size() == round_mode_count(L));
    int expect = 0;
    for (int k = 0; k <= L; ++k) expect += 4 * (k + 1);
    CHECK(round_mode_count(L) == expect);
    const Eigen::MatrixXcd G = assemble_multiplication_matrix([](double, double) { return 1.0; }, basis);
    CHECK((G - Eigen::MatrixXcd::Identity(G.rows(), G.cols())).cwiseAbs().maxCoeff() < 1e-13);
  }
  const RoundEigenBasis basis(3);
  int total = 0;
  for (int key : basis.block_keys()) total += static_cast<int>(basis.block(key).size());
  CHECK(total == basis.size());
  CHECK_THROWS_AS(basis.block(11), PreconditionError);
  CHECK_THROWS_AS(RoundEigenBasis(0), PreconditionError);
  CHECK_THROWS_AS(RoundEigenBasis(6, {3, 0}), ResolutionError);
}

TEST_CASE("round sphere spectrum") {
  for (double r : {0.5, 1.0, 3.0}) {
    const auto res = conformal_dirac_spectrum(ConformalSphereMetric::round(r));
    CHECK(res.lambda1 == doctest::Approx(1 / r).epsilon(1e-10));
  }
  // band k has eigenvalues +-(k+1), each with multiplicity 2(k+1)
  const auto res = dirac_spectrum_at(ConformalSphereMetric::round(1), 5);
  for (int k = 0; k <= 5; ++k) {
    const auto n = std::count_if(res.eigenvalues.begin(), res.eigenvalues.end(),
                                 [&](double v) { return std::abs(v - (k + 1)) < 1e-10; });
    CHECK(n == 2 * (k + 1));
  }
  const auto l0 = dirac_spectrum_at(ConformalSphereMetric::round(2), 1);
  CHECK(l0.eigenvalues.size() == static_cast<std::size_t>(round_mode_count(1)));
}

TEST_CASE("constant multiplier gives a scaled identity") {
  const RoundEigenBasis basis(6);
  const Eigen::MatrixXcd M = assemble_multiplication_matrix([](double, double) { return 2.5; }, basis);
  CHECK((M - 2.5 * Eigen::MatrixXcd::Identity(M.rows(), M.cols())).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("axisymmetric multiplier does not couple azimuthal blocks") {
  const RoundEigenBasis basis(8, {30, 40});
  const auto f = [](double t, double) { return std::exp(bump(t)); };
  const Eigen::MatrixXcd M = assemble_multiplication_matrix(f, basis);
  double off = 0;
  for (int a = 0; a < basis.size(); ++a)
    for (int b = 0; b < basis.size(); ++b)
      if (basis.modes()[a].two_m != basis.modes()[b].two_m) off = std::max(off, std::abs(M(b, a)));
  CHECK(off < 1e-12);
  for (int key : basis.block_keys()) {
    const auto& idx = basis.block(key);
    const Eigen::MatrixXd B = assemble_multiplication_block([](double t) { return std::exp(bump(t)); }, basis, key);
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < idx.size(); ++j)
        CHECK(std::abs(B(i, j) - M(idx[i], idx[j])) < 1e-12);
  }
}

TEST_CASE("block path agrees with the full path") {
  const auto metric = ConformalSphereMetric::axisymmetric(bump, "bump");
  SpectrumOptions full;
  full.use_blocks = false;
  const auto a = dirac_spectrum_at(metric, 24);
  const auto b = dirac_spectrum_at(metric, 24, full);
  CHECK(a.lambda1 == doctest::Approx(b.lambda1).epsilon(1e-8));
  REQUIRE(a.eigenvalues.size() == b.eigenvalues.size());
  for (std::size_t i = 0; i < a.eigenvalues.size(); i += 97)
    CHECK(std::abs(a.eigenvalues[i] - b.eigenvalues[i]) < 1e-8 * (1 + std::abs(a.eigenvalues[i])));
}

TEST_CASE("solver agrees with the shooting oracle") {
  for (double c : {1.1, 1.5}) {
    const auto u = [c](double t) { return oblate_u(t, c); };
    const auto res = conformal_dirac_spectrum(ConformalSphereMetric::axisymmetric(u));
    const double ref = oracle::first_eigenvalue(oracle::conformal(u));
    CHECK(res.lambda1 == doctest::Approx(ref).epsilon(1e-8));
  }
  const auto res = conformal_dirac_spectrum(ConformalSphereMetric::axisymmetric(bump));
  CHECK(res.lambda1 == doctest::Approx(oracle::first_eigenvalue(oracle::conformal(bump))).epsilon(1e-8));
  CHECK(res.convergence_estimate < 1e-7);
  CHECK(res.lambda1_history.size() >= 2);
}

TEST_CASE("single block spectrum contains lambda1") {
  const auto metric = ConformalSphereMetric::axisymmetric(bump);
  const double l1 = dirac_spectrum_at(metric, 24).lambda1;
  double best = INFINITY;
  for (int two_m : {1, 3, 5}) {
    const auto ev = axisymmetric_mode_spectrum(metric, two_m, 24);
    best = std::min(best, first_eigenvalue(ev));
  }
  CHECK(best == doctest::Approx(l1).epsilon(1e-12));
  const auto general = ConformalSphereMetric::general([](double t, double p) { return 0.1 * std::sin(t) * std::cos(p); });
  CHECK_THROWS_AS(axisymmetric_mode_spectrum(general, 1, 8), PreconditionError);
}

TEST_CASE("lambda1 is invariant under rotations and conformal boosts") {
  const auto metric = ConformalSphereMetric::axisymmetric(bump);
  const double l1 = conformal_dirac_spectrum(metric).lambda1;
  const Eigen::Matrix3d R = Eigen::AngleAxisd(0.7, Eigen::Vector3d(1, 2, -0.5).normalized()).toRotationMatrix();
  SpectrumOptions fixed;
  fixed.use_blocks = false;
  const double lr = dirac_spectrum_at(metric.rotated(R), 24, fixed).lambda1;
  CHECK(lr == doctest::Approx(l1).epsilon(1e-7));
  const double lb = conformal_dirac_spectrum(metric.mobius_boost(0.3)).lambda1;
  CHECK(lb == doctest::Approx(l1).epsilon(1e-6));
  CHECK_FALSE(metric.rotated(R).is_axisymmetric());
  CHECK(metric.mobius_boost(0.3).area() == doctest::Approx(metric.area()).epsilon(1e-10));
}

TEST_CASE("spectrum is symmetric about zero") {
  const auto metric = ConformalSphereMetric::general(
      [](double t, double p) { return 0.15 * std::sin(t) * std::sin(t) * std::cos(2 * p) + 0.1 * std::cos(t); });
  const auto res = dirac_spectrum_at(metric, 10);
  auto ev = res.eigenvalues;
  const std::size_t n = ev.size();
  for (std::size_t i = 0; i < n / 2; ++i) CHECK(ev[i] == doctest::Approx(-ev[n - 1 - i]).epsilon(1e-10));
}

TEST_CASE("spectral error paths") {
  const RoundEigenBasis basis(4);
  CHECK_THROWS_AS(assemble_multiplication_matrix([](double t, double) { return std::cos(t); }, basis),
                  DefinitenessError);
  CHECK_THROWS_AS(assemble_multiplication_matrix([](double, double) { return 1.0; }, RoundEigenBasis(4, {0, 5})),
                  ResolutionError);
  CHECK_THROWS_AS(first_eigenvalue({-2.0, 0.0, 1.0}), NumericalError);
  CHECK_THROWS_AS(first_eigenvalue({}), NumericalError);
  CHECK(first_eigenvalue({-0.5, 2.0}) == 0.5);
  SpectrumOptions tight;
  tight.L = 8;
  tight.max_L = 16;
  tight.tolerance = 1e-15;
  const auto rough = ConformalSphereMetric::axisymmetric([](double t) { return 0.8 * std::exp(-30 * (t - 1) * (t - 1)); });
  CHECK_THROWS_AS(conformal_dirac_spectrum(rough, tight), ConvergenceError);
  tight.require_convergence = false;
  CHECK(conformal_dirac_spectrum(rough, tight).L == 16);
  tight.refine_step = 0;
  CHECK_THROWS_AS(conformal_dirac_spectrum(rough, tight), PreconditionError);
  CHECK_THROWS_AS(ConformalSphereMetric::round(-1), PreconditionError);
}

TEST_CASE("gauss curvature of conformal metrics") {
  const auto g = num::make_sphere_grid(40, 81);
  for (double K : ConformalSphereMetric::round(2).gauss_curvature(g)) CHECK(K == doctest::Approx(0.25).epsilon(1e-11));
  const auto metric = ConformalSphereMetric::general(
      [](double t, double p) { return 0.2 * std::sin(t) * std::cos(p) + 0.1 * std::cos(t) * std::cos(t); });
  const auto K = metric.gauss_curvature(g);
  const auto u = metric.sample(g);
  double total = 0;
  for (int i = 0; i < g.n_theta(); ++i)
    for (int p = 0; p < g.n_phi; ++p) {
      const std::size_t idx = static_cast<std::size_t>(i) * g.n_phi + p;
      total += g.area_weight(i) * K[idx] * std::exp(2 * u[idx]);
    }
  CHECK(total == doctest::Approx(4 * pi).epsilon(1e-10));
}

TEST_CASE("nodal samples round trip") {
  NodalSamples s;
  s.L = 8;
  s.n_theta = 12;
  s.n_phi = 25;
  const auto grid = s.grid();
  for (int i = 0; i < s.n_theta; ++i)
    for (int p = 0; p < s.n_phi; ++p)
      s.values.push_back(0.1 * std::sin(grid.theta[i]) * std::cos(grid.phi(p)) + 0.05 * grid.cos_theta[i]);
  const auto dir = std::filesystem::temp_directory_path() / "diraclab_sample_io";
  std::filesystem::create_directories(dir);
  for (bool binary : {false, true}) {
    const auto path = dir / (binary ? "u.bin" : "u.txt");
    write_nodal_samples(path, s, binary);
    const auto back = read_nodal_samples(path);
    CHECK(back.L == s.L);
    CHECK(back.n_theta == s.n_theta);
    CHECK(back.n_phi == s.n_phi);
    REQUIRE(back.values.size() == s.values.size());
    for (std::size_t i = 0; i < s.values.size(); ++i) CHECK(back.values[i] == s.values[i]);
    const auto m = ConformalSphereMetric::from_samples(back);
    CHECK(m.u(1.1, 0.4) == doctest::Approx(0.1 * std::sin(1.1) * std::cos(0.4) + 0.05 * std::cos(1.1)).epsilon(1e-9));
  }
  {
    std::ofstream out(dir / "bad.txt");
    out << "L 4\nn_theta 2\nn_phi 1\n0.1\n";
  }
  CHECK_THROWS_AS(read_nodal_samples(dir / "bad.txt"), ParseError);
  CHECK_THROWS_AS(read_nodal_samples(dir / "missing.txt"), IoError);
}

TEST_CASE("truncation differences decrease with L") {
  for (double c : {2.0, 4.0}) {
    const auto metric = ConformalSphereMetric::axisymmetric([c](double t) { return oblate_u(t, c); });
    std::vector<double> lam;
    for (int L = 4; L <= 36; L += 4) lam.push_back(dirac_spectrum_at(metric, L).lambda1);
    double prev = std::abs(lam[1] - lam[0]);
    for (std::size_t i = 2; i < lam.size() && prev > 1e-12; ++i) {
      const double d = std::abs(lam[i] - lam[i - 1]);
      CHECK_MESSAGE(d < prev, "c=" << c << " L=" << 4 + 4 * i);
      prev = d;
    }
  }
}
