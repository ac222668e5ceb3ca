#include "diraclab/spectral/round_basis.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "diraclab/errors.hpp"
#include "diraclab/spectral/wigner.hpp"

namespace dlab::spectral {

int round_mode_count(int L) { return 2 * (L + 1) * (L + 2); }

RoundEigenBasis::RoundEigenBasis(int L, QuadratureOptions quad) : L_(L) {
  if (L < 1) throw PreconditionError("build_round_basis: L must be >= 1");
  const int n_theta = quad.n_theta > 0 ? quad.n_theta : L + 2;
  const int n_phi = quad.n_phi > 0 ? quad.n_phi : 2 * L + 3;
  if (n_theta < L + 1)
    throw ResolutionError("build_round_basis: need at least L + 1 theta nodes");
  grid_ = num::make_sphere_grid(n_theta, n_phi);

  const int two_j_max = 2 * L + 1;
  const int n_m = two_j_max + 1;  // two_m in {-two_j_max, ..., two_j_max} odd
  blocks_.resize(n_m);
  upper_.resize(static_cast<std::size_t>(n_m) * (L + 1));
  lower_.resize(upper_.size());

  for (int two_m = -two_j_max; two_m <= two_j_max; two_m += 2) {
    const Eigen::MatrixXd up = wigner_d_ladder(two_m, 1, two_j_max, grid_.theta);
    const Eigen::MatrixXd lo = wigner_d_ladder(two_m, -1, two_j_max, grid_.theta);
    const int k_min = (std::abs(two_m) - 1) / 2;
    for (int k = k_min; k <= L; ++k) {
      const double j = k + 0.5;
      const double norm = std::sqrt((2.0 * j + 1.0) / (4.0 * std::numbers::pi)) /
                          std::numbers::sqrt2;
      const int row = k - k_min;
      auto& u = upper_[table_index(k, two_m)];
      auto& l = lower_[table_index(k, two_m)];
      u.resize(n_theta);
      l.resize(n_theta);
      for (int i = 0; i < n_theta; ++i) {
        u[i] = norm * up(row, i);
        l[i] = norm * lo(row, i);
      }
    }
  }

  for (int k = 0; k <= L; ++k)
    for (int two_m = -(2 * k + 1); two_m <= 2 * k + 1; two_m += 2)
      for (int sign : {-1, 1}) {
        blocks_[(two_m + two_j_max) / 2].push_back(static_cast<int>(modes_.size()));
        modes_.push_back({k, two_m, sign});
      }
}

int RoundEigenBasis::table_index(int k, int two_m) const {
  return ((two_m + 2 * L_ + 1) / 2) * (L_ + 1) + k;
}

const std::vector<int>& RoundEigenBasis::block(int two_m) const {
  if (two_m % 2 == 0 || std::abs(two_m) > 2 * L_ + 1)
    throw PreconditionError("RoundEigenBasis::block: azimuthal index out of range");
  return blocks_[(two_m + 2 * L_ + 1) / 2];
}

std::vector<int> RoundEigenBasis::block_keys() const {
  std::vector<int> keys;
  for (int two_m = -(2 * L_ + 1); two_m <= 2 * L_ + 1; two_m += 2) keys.push_back(two_m);
  return keys;
}

std::span<const double> RoundEigenBasis::upper(const SpinorMode& mode) const {
  return upper_[table_index(mode.k, mode.two_m)];
}

std::span<const double> RoundEigenBasis::lower_unsigned(const SpinorMode& mode) const {
  return lower_[table_index(mode.k, mode.two_m)];
}

std::vector<double> RoundEigenBasis::lower(const SpinorMode& mode) const {
  std::vector<double> g(lower_unsigned(mode).begin(), lower_unsigned(mode).end());
  for (double& v : g) v *= -mode.sign;
  return g;
}

}  // namespace dlab::spectral
