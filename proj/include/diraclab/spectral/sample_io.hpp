#pragma once

#include <filesystem>
#include <vector>

#include "diraclab/numerics/quadrature.hpp"

namespace dlab::spectral {

/// Conformal-exponent samples u on the Gauss-Legendre x uniform-azimuth grid
/// (theta north to south, phi_p = 2 pi p / n_phi), cos(theta)-major.
///
/// Text format:
///   # any comment lines
///   L <int>
///   n_theta <int>
///   n_phi <int>
///   <n_theta * n_phi values, whitespace separated>
/// Binary format: the 4 bytes "DLCF", three little-endian int32
/// (L, n_theta, n_phi), then n_theta * n_phi little-endian float64.
struct NodalSamples {
  int L = 0;
  int n_theta = 0;
  int n_phi = 1;
  std::vector<double> values;

  num::SphereGrid grid() const { return num::make_sphere_grid(n_theta, n_phi); }
};

NodalSamples read_nodal_samples(const std::filesystem::path& path);
void write_nodal_samples(const std::filesystem::path& path, const NodalSamples& samples,
                         bool binary = false);

}  // namespace dlab::spectral
