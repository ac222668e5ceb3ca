#include "diraclab/ambient/curvature.hpp"

#include <cmath>

#include "diraclab/errors.hpp"
#include "diraclab/numerics/finite_difference.hpp"

namespace dlab::ambient {

Connection connection_from_jet(const MetricJet& j, bool with_derivative) {
  Connection c;
  c.g_inv = j.g.inverse();
  // Lowered symbols Gamma_{l,ij} = (d_i g_lj + d_j g_li - d_l g_ij) / 2.
  std::array<Mat3, 3> low;
  for (int l = 0; l < 3; ++l)
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k)
        low[l](i, k) = 0.5 * (j.dg[i](l, k) + j.dg[k](l, i) - j.dg[l](i, k));
  for (int k = 0; k < 3; ++k) {
    c.Gamma[k].setZero();
    for (int l = 0; l < 3; ++l) c.Gamma[k] += c.g_inv(k, l) * low[l];
  }
  if (!with_derivative) return c;

  for (int m = 0; m < 3; ++m) {
    const Mat3 dginv = -c.g_inv * j.dg[m] * c.g_inv;
    std::array<Mat3, 3> dlow;
    for (int l = 0; l < 3; ++l)
      for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k)
          dlow[l](i, k) = 0.5 * (j.d2g[m][i](l, k) + j.d2g[m][k](l, i) - j.d2g[m][l](i, k));
    for (int k = 0; k < 3; ++k) {
      c.dGamma[m][k].setZero();
      for (int l = 0; l < 3; ++l)
        c.dGamma[m][k] += dginv(k, l) * low[l] + c.g_inv(k, l) * dlow[l];
    }
  }
  return c;
}

std::pair<Mat3, double> ricci_from_jet(const MetricJet& jet) {
  const Connection c = connection_from_jet(jet, true);
  Mat3 ric = Mat3::Zero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) {
        s += c.dGamma[k][k](i, j) - c.dGamma[j][k](i, k);
        for (int l = 0; l < 3; ++l)
          s += c.Gamma[k](k, l) * c.Gamma[l](i, j) - c.Gamma[k](j, l) * c.Gamma[l](i, k);
      }
      ric(i, j) = s;
    }
  ric = (0.5 * (ric + ric.transpose())).eval();
  return {ric, (c.g_inv.cwiseProduct(ric)).sum()};
}

double scalar_curvature(const AmbientChart& chart, const Vec3& x) {
  if (const auto r = chart.scalar_curvature(x)) return *r;
  return ricci_from_jet(chart.jet(x)).second;
}

namespace {

double laplacian_at(const AmbientChart& chart, const Vec3& p, const Connection& c, double h) {
  const auto R = [&chart](const Vec3& x) { return scalar_curvature(chart, x); };
  Vec3 grad;
  Mat3 hess;
  for (int k = 0; k < 3; ++k) {
    grad[k] = num::fd_first(R, p, k, h);
    for (int l = 0; l <= k; ++l) hess(k, l) = hess(l, k) = num::fd_second(R, p, k, l, h);
  }
  double s = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double v = hess(i, j);
      for (int k = 0; k < 3; ++k) v -= c.Gamma[k](i, j) * grad[k];
      s += c.g_inv(i, j) * v;
    }
  return s;
}

}  // namespace

CurvatureInvariants curvature_at(const AmbientChart& chart, const Vec3& p) {
  if (!chart.in_domain(p)) throw DomainError("curvature_at: point outside the chart domain");
  const MetricJet jet = chart.jet(p);
  const Connection c = connection_from_jet(jet, false);
  CurvatureInvariants out;
  std::tie(out.Ric, out.R) = ricci_from_jet(jet);
  if (const auto r = chart.scalar_curvature(p)) out.R = *r;
  const Mat3 up = c.g_inv * out.Ric * c.g_inv;
  out.ric_squared = up.cwiseProduct(out.Ric).sum();
  out.E_squared = std::max(0.0, out.ric_squared - out.R * out.R / 3.0);

  const double h = 0.05 * std::max(1.0, p.norm());
  const double coarse = laplacian_at(chart, p, c, h);
  const double fine = laplacian_at(chart, p, c, 0.5 * h);
  out.laplacian_R = (16.0 * fine - coarse) / 15.0;
  out.laplacian_R_error = std::abs(fine - coarse);
  if (!std::isfinite(out.laplacian_R) || !std::isfinite(out.R) || !out.Ric.allFinite())
    throw NumericalError("curvature_at: derivative evaluation produced non-finite values");
  const double scale = 1.0 + std::abs(out.laplacian_R) + out.R * out.R;
  if (out.laplacian_R_error > 1e-3 * scale)
    throw NumericalError("curvature_at: Laplacian of R fails the step-halving check");
  out.L = 2.25 * out.R * out.R + 2.0 * out.ric_squared + 9.0 * out.laplacian_R;
  return out;
}

}  // namespace dlab::ambient
