#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "diraclab/numerics/quadrature.hpp"

namespace dlab::spectral {

/// One Dirac eigenspinor of the unit round sphere. Band k has total angular
/// momentum j = k + 1/2, azimuthal index m = two_m / 2 with |m| <= j, and
/// eigenvalue sign * (k + 1).
///
/// In the frame (d/dtheta, (1/sin theta) d/dphi) the spinor is
///   e^{i m phi} ( F(theta), i G(theta) ),
///   F = N_j d^j_{m,1/2} / sqrt(2),  G = -sign N_j d^j_{m,-1/2} / sqrt(2),
/// with N_j = sqrt((2j+1) / 4 pi).
struct SpinorMode {
  int k = 0;
  int two_m = 1;
  int sign = 1;
  double eigenvalue() const { return sign * (k + 1.0); }
};

struct QuadratureOptions {
  int n_theta = 0;  // 0: L + 2
  int n_phi = 0;    // 0: 2L + 3
};

class RoundEigenBasis {
 public:
  RoundEigenBasis(int L, QuadratureOptions quad = {});

  int truncation() const { return L_; }
  const std::vector<SpinorMode>& modes() const { return modes_; }
  int size() const { return static_cast<int>(modes_.size()); }
  const num::SphereGrid& grid() const { return grid_; }

  /// Indices (into modes()) of the azimuthal block two_m.
  const std::vector<int>& block(int two_m) const;
  std::vector<int> block_keys() const;

  /// F and G profiles of a mode at the theta nodes (G includes the sign).
  std::span<const double> upper(const SpinorMode& mode) const;
  std::vector<double> lower(const SpinorMode& mode) const;
  std::span<const double> lower_unsigned(const SpinorMode& mode) const;

 private:
  int table_index(int k, int two_m) const;

  int L_;
  num::SphereGrid grid_;
  std::vector<SpinorMode> modes_;
  std::vector<std::vector<int>> blocks_;  // indexed by (two_m + 2L + 1) / 2
  std::vector<std::vector<double>> upper_, lower_;
};

/// Number of modes with band <= L: 2 * sum_k 2(k+1).
int round_mode_count(int L);

}  // namespace dlab::spectral
