#include <cmath>
#include <random>
#include <vector>

#include "diraclab/simd/kernels.hpp"
#include "diraclab/spectral/dirac_spectrum.hpp"
#include "diraclab/spectral/wigner.hpp"
#include "doctest.h"

using namespace dlab;

namespace {

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> d(-1, 1);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

struct IsaGuard {
  simd::Isa saved = simd::active_isa();
  ~IsaGuard() { simd::force_isa(saved); }
};

}  // namespace

TEST_CASE("scalar and avx2 kernels agree on every length") {
  if (!simd::avx2_available()) {
    MESSAGE("AVX2 unavailable; equivalence not exercised");
    return;
  }
  std::mt19937_64 rng(11);
  for (std::size_t n = 0; n < 70; ++n) {
    const auto w = random_vector(rng, n), x = random_vector(rng, n), y = random_vector(rng, n);
    const auto p2 = random_vector(rng, n);
    double scale = 1;
    for (std::size_t i = 0; i < n; ++i) scale += std::abs(w[i] * x[i] * y[i]);

    CHECK(simd::avx2::weighted_dot(w.data(), x.data(), y.data(), n) ==
          doctest::Approx(simd::scalar::weighted_dot(w.data(), x.data(), y.data(), n))
              .epsilon(1e-14 * scale));
    CHECK(simd::avx2::dot(w.data(), x.data(), n) ==
          doctest::Approx(simd::scalar::dot(w.data(), x.data(), n)).epsilon(1e-14 * scale));

    std::vector<double> a(n), b(n);
    simd::scalar::three_term_step(a.data(), x.data(), p2.data(), y.data(), 1.5, -0.25, 0.75, n);
    simd::avx2::three_term_step(b.data(), x.data(), p2.data(), y.data(), 1.5, -0.25, 0.75, n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-14);

    simd::scalar::hadamard(a.data(), x.data(), y.data(), n);
    simd::avx2::hadamard(b.data(), x.data(), y.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(a[i] == b[i]);
  }
}

TEST_CASE("forcing the isa switches the dispatch") {
  IsaGuard guard;
  simd::force_isa(simd::Isa::scalar);
  CHECK(simd::active_isa() == simd::Isa::scalar);
  simd::force_isa(simd::Isa::avx2);
  CHECK(simd::active_isa() == (simd::avx2_available() ? simd::Isa::avx2 : simd::Isa::scalar));
  CHECK(simd::isa_name(simd::Isa::scalar) == "scalar");
}

TEST_CASE("wigner ladder and lambda1 are isa independent") {
  IsaGuard guard;
  const std::vector<double> beta{0.1, 0.9, 1.7, 2.5, 3.0};
  const auto u = spectral::ConformalSphereMetric::axisymmetric(
      [](double t) { return 0.2 * std::exp(-3 * (std::cos(t) - 0.3) * (std::cos(t) - 0.3)); });

  simd::force_isa(simd::Isa::scalar);
  const Eigen::MatrixXd ws = spectral::wigner_d_ladder(5, 1, 61, beta);
  const double ls = spectral::dirac_spectrum_at(u, 24).lambda1;
  simd::force_isa(simd::Isa::avx2);
  const Eigen::MatrixXd wv = spectral::wigner_d_ladder(5, 1, 61, beta);
  const double lv = spectral::dirac_spectrum_at(u, 24).lambda1;

  CHECK((ws - wv).cwiseAbs().maxCoeff() < 1e-13);
  CHECK(std::abs(ls - lv) < 1e-12);
}
