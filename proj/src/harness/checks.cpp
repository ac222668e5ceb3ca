#include "diraclab/harness/checks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "diraclab/errors.hpp"
#include "diraclab/surface/uniformize.hpp"

namespace dlab::harness {

namespace {

constexpr double pi = std::numbers::pi;

double rel_tol(double rel, double a, double b) { return relative_tolerance(rel, a, b); }

// |value - target| <= bound as a record; holds strictly inside the bound.
CheckRecord within(std::string theorem, std::string inputs, double value, double target,
                   double bound, std::string source, std::string target_source) {
  CheckRecord r = make_record(std::move(theorem), std::move(inputs), std::abs(value - target),
                              bound, 0.0, std::move(source), std::move(target_source));
  r.note = "value " + std::to_string(value) + ", target " + std::to_string(target);
  return r;
}

}  // namespace

SurfaceData surface_data(const surface::EmbeddedSurface& s,
                         const spectral::SpectrumOptions& options) {
  SurfaceData d;
  d.label = s.label();
  const surface::UniformizationResult u = surface::uniformize_axisymmetric(s);
  d.spectrum = spectral::conformal_dirac_spectrum(u.metric, options);
  d.lambda1 = d.spectrum.lambda1;
  d.area = s.area();
  d.total_mean_curvature = s.total_mean_curvature();
  d.mean_curvature_squared = s.mean_curvature_squared_integral();
  d.min_H = s.min_mean_curvature();
  d.max_H = s.max_mean_curvature();
  return d;
}

CheckRecord check_main_upper_bound(const SurfaceData& d, double rel) {
  const double rhs = d.total_mean_curvature / (2 * d.area);
  return make_record("thm1.upper_bound", d.label, d.lambda1, rhs, rel_tol(rel, d.lambda1, rhs),
                     "spectral", "surface");
}

CheckRecord check_bar(const SurfaceData& d, double rel) {
  const double rhs = std::sqrt(d.mean_curvature_squared / (4 * d.area));
  return make_record("bar.upper_bound", d.label, d.lambda1, rhs, rel_tol(rel, d.lambda1, rhs),
                     "spectral", "surface");
}

CheckRecord check_bar_hijazi(const std::string& inputs, double lambda1, double area, double rel) {
  const double lhs = 2 * std::sqrt(pi / area);
  return make_record("bar_hijazi.lower_bound", inputs, lhs, lambda1, rel_tol(rel, lhs, lambda1),
                     "area", "spectral");
}

std::vector<CheckRecord> check_bar_and_hijazi(const SurfaceData& d, double rel) {
  return {check_bar(d, rel), check_bar_hijazi(d.label, d.lambda1, d.area, rel)};
}

CheckRecord check_minkowski(const SurfaceData& d, double rel) {
  const double lhs = 4 * std::sqrt(pi * d.area);
  return make_record("minkowski", d.label, lhs, d.total_mean_curvature,
                     rel_tol(rel, lhs, d.total_mean_curvature), "surface", "surface");
}

std::vector<CheckRecord> check_upper_bound_chain(const SurfaceData& d, double rel) {
  const double mid = d.total_mean_curvature / (2 * d.area);
  const double top = std::sqrt(d.mean_curvature_squared / (4 * d.area));
  return {check_bar_hijazi(d.label, d.lambda1, d.area, rel), check_main_upper_bound(d, rel),
          make_record("cauchy_schwarz", d.label, mid, top, rel_tol(rel, mid, top), "surface",
                      "surface")};
}

std::vector<CheckRecord> euclidean_surface_checks(const surface::EmbeddedSurface& s,
                                                  const spectral::SpectrumOptions& options,
                                                  double rel) {
  if (s.ambient() != surface::AmbientKind::euclidean)
    throw PreconditionError("euclidean_surface_checks: surface is not in R^3");
  SurfaceData d;
  try {
    d = surface_data(s, options);
  } catch (const ConvergenceError& e) {
    return {inconclusive_record("thm1.upper_bound", s.label(), e.what())};
  }
  std::vector<CheckRecord> out = check_upper_bound_chain(d, rel);
  out.push_back(check_bar(d, rel));
  out.push_back(check_minkowski(d, rel));
  return out;
}

LargeSphereResult large_sphere_mass_recovery(ambient::ChartPtr chart, std::vector<double> radii,
                                             const ambient::SphereSampleOptions& sphere,
                                             const spectral::SpectrumOptions& options) {
  if (radii.size() < 4) throw PreconditionError("large_sphere_mass_recovery: need >= 4 radii");
  std::sort(radii.begin(), radii.end());
  LargeSphereResult res;
  res.radii = radii;
  const std::string in = chart->label();
  try {
    for (double r : radii) {
      const ambient::GeodesicSphereSample s = ambient::coordinate_sphere(chart, r, sphere);
      const double l1 = ambient::sphere_lambda1(s, options);
      res.lambda1.push_back(l1);
      res.area.push_back(s.area);
      res.total_mean_curvature.push_back(s.total_mean_curvature);
      res.mass_estimate.push_back((l1 * s.area - 0.5 * s.total_mean_curvature) / (4 * pi));
    }
  } catch (const Error& e) {
    if (e.kind() != "convergence" && e.kind() != "resolution" && e.kind() != "numerical") throw;
    res.records.push_back(inconclusive_record("large_sphere.mass", in, e.what()));
    return res;
  }

  std::vector<double> x;
  for (double r : radii) x.push_back(1.0 / r);
  const std::optional<double> m = chart->mass();
  std::vector<TargetCoefficient> targets;
  if (m) targets.push_back({2, -*m, -*m, "mass"});
  res.lambda_fit = fit_expansion("lambda1(1/r)", x, res.lambda1, {1, 2, 3}, targets);

  if (!m) return res;
  const double m_last = res.mass_estimate.back();
  if (*m == 0.0) {
    res.records.push_back(
        within("large_sphere.mass", in, m_last, 0.0, 1e-8, "spectral+sphere", "chart"));
    return res;
  }
  res.records.push_back(within("large_sphere.mass", in, m_last, *m, 0.05 * std::abs(*m),
                               "spectral+sphere", "chart"));
  double worst = -INFINITY;
  for (std::size_t i = 1; i < radii.size(); ++i)
    worst = std::max(worst, std::abs(res.mass_estimate[i] - *m) -
                                std::abs(res.mass_estimate[i - 1] - *m));
  res.records.push_back(make_record("large_sphere.mass_error_decreasing", in, worst, 0.0, 0.0,
                                    "spectral+sphere", "zero"));
  res.records.push_back(within("large_sphere.inv_r2_coefficient", in,
                               res.lambda_fit.coefficient(2), -*m, 0.02 * std::abs(*m), "fit",
                               "mass"));
  // remainder lambda1 - 1/r + m/r^2 = O(1/r^3)
  std::vector<double> rem;
  for (std::size_t i = 0; i < radii.size(); ++i)
    rem.push_back(res.lambda1[i] - x[i] + *m * x[i] * x[i]);
  const double slope = num::loglog_slope(x, rem);
  res.records.push_back(make_record("large_sphere.remainder_order", in, 3.0 - 0.2, slope, 0.0,
                                    "stated order", "log-log fit"));
  return res;
}

SmallSphereResult small_sphere_expansion(ambient::ChartPtr chart, const ambient::Vec3& p,
                                         std::vector<double> radii,
                                         const ambient::SphereSampleOptions& sphere,
                                         const spectral::SpectrumOptions& options,
                                         const SmallSphereTolerances& tol) {
  if (radii.size() < 5) throw PreconditionError("small_sphere_expansion: need >= 5 radii");
  std::sort(radii.begin(), radii.end());
  SmallSphereResult res;
  res.radii = radii;
  const std::string in = chart->label();
  res.curvature = ambient::curvature_at(*chart, p);
  const double R = res.curvature.R;
  std::vector<double> cor;
  try {
    for (double r : radii) {
      const ambient::GeodesicSphereSample s = ambient::geodesic_sphere(chart, p, r, sphere);
      const double l1 = ambient::sphere_lambda1(s, options);
      res.lambda1.push_back(l1);
      res.area.push_back(s.area);
      res.total_mean_curvature.push_back(s.total_mean_curvature);
      cor.push_back(l1 * s.area - 0.5 * s.total_mean_curvature);
    }
  } catch (const Error& e) {
    if (e.kind() != "convergence" && e.kind() != "resolution" && e.kind() != "numerical") throw;
    res.records.push_back(inconclusive_record("small_sphere.linear", in, e.what()));
    return res;
  }

  const double lo = res.curvature.L / 5400;
  const double hi = (res.curvature.L + 80 * res.curvature.E_squared) / 5400;
  res.lambda_fit = fit_expansion("lambda1(r)", radii, res.lambda1, {-1, 1, 3},
                                 {{-1, 1.0, 1.0, "round"},
                                  {1, R / 36, R / 36, "scalar curvature"},
                                  {3, std::min(lo, hi), std::max(lo, hi), "curvature bracket"}});
  res.area_defect_fit = fit_expansion("lambda1|S| - int H / 2", radii, cor, {3, 5},
                                    {{3, pi * R / 3, pi * R / 3, "scalar curvature"}});

  res.records.push_back(within("small_sphere.leading", in, res.lambda_fit.coefficient(-1), 1.0,
                               tol.linear_abs, "fit", "round"));
  res.records.push_back(within("small_sphere.linear", in, res.lambda_fit.coefficient(1), R / 36,
                               tol.linear_abs, "fit", "curvature"));
  {
    const double a3 = res.lambda_fit.coefficient(3);
    const double low = std::min(lo, hi), high = std::max(lo, hi);
    const double outside = std::max({low - a3, a3 - high, 0.0});
    CheckRecord r = make_record("small_sphere.cubic_bracket", in, outside,
                                tol.cubic_rel * std::max(std::abs(low), std::abs(high)), 0.0,
                                "fit", "curvature");
    r.note = "a3 " + std::to_string(a3) + " in [" + std::to_string(low) + ", " +
             std::to_string(high) + "]";
    res.records.push_back(r);
  }
  const double target = pi * R / 3;
  res.records.push_back(within("small_sphere.area_defect_coefficient", in, res.area_defect_fit.coefficient(3), target,
                               std::max(tol.area_defect_rel * std::abs(target), 1e-8), "fit",
                               "curvature"));
  if (R >= 0) {
    const double lhs_min = *std::min_element(cor.begin(), cor.end());
    res.records.push_back(make_record("small_sphere.area_defect_nonnegative", in, 0.0, lhs_min,
                                      1e-10 * radii.back(), "zero", "spectral+sphere"));
  }

  std::vector<double> rem;
  double rem_max = 0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    rem.push_back(res.lambda1[i] - 1 / radii[i] - R * radii[i] / 36);
    rem_max = std::max(rem_max, std::abs(rem.back()));
  }
  if (rem_max > 1e-9) {
    res.remainder_order = num::loglog_slope(radii, rem);
    res.records.push_back(make_record("small_sphere.remainder_order", in,
                                      3.0 - tol.order_slack, res.remainder_order, 0.0,
                                      "stated order", "log-log fit"));
  }
  return res;
}

std::vector<CheckRecord> check_hmz_integral_improvement(ambient::ChartPtr chart, double r,
                                                        const ambient::SphereSampleOptions& sphere,
                                                        const spectral::SpectrumOptions& options) {
  const std::string in = chart->label() + " r=" + std::to_string(r);
  const ambient::GeodesicSphereSample s = ambient::coordinate_sphere(chart, r, sphere);
  double l1 = 0;
  try {
    l1 = ambient::sphere_lambda1(s, options);
  } catch (const ConvergenceError& e) {
    return {inconclusive_record("hmz.integral", in, e.what())};
  }
  const double mean = s.total_mean_curvature / (2 * s.area);
  const double half_min = 0.5 * *std::min_element(s.H.begin(), s.H.end());
  return {make_record("hmz.integral", in, mean, l1, rel_tol(kEqualityTol * 1e-2, mean, l1),
                      "sphere", "spectral"),
          make_record("hmz.pointwise", in, half_min, mean, rel_tol(1e-10, half_min, mean),
                      "sphere", "sphere")};
}

HyperbolicReport hyperbolic_checks(const surface::EmbeddedSurface& s,
                                   const spectral::SpectrumOptions& options, double rel) {
  if (s.ambient() != surface::AmbientKind::hyperbolic)
    throw PreconditionError("hyperbolic_checks: surface is not in hyperbolic space");
  HyperbolicReport h;
  h.kappa = s.kappa();
  const std::string in = s.label();
  const auto u = surface::uniformize_axisymmetric(s);
  h.lambda1 = spectral::conformal_dirac_spectrum(u.metric, options).lambda1;
  h.lambda_pm = std::hypot(h.lambda1, h.kappa);
  h.area = s.area();
  const surface::WeightedIntegrals w = surface::weighted_mean_curvature_integrals(s);
  h.cosh_area = w.cosh_area;
  h.cosh_H0 = w.cosh_H0;
  h.sup_H = s.max_mean_curvature();

  const double k2 = h.kappa * h.kappa;
  {
    // only the lower bound is asserted; lambda_pm is computed as equality
    CheckRecord r = make_record("hyperbolic.lambda_pm_lower_bound", in, h.lambda1 * h.lambda1 + k2,
                                h.lambda_pm * h.lambda_pm,
                                rel_tol(rel, h.lambda1 * h.lambda1 + k2, 0.0), "spectral",
                                "spectral");
    r.note = "lambda_pm = sqrt(lambda1^2 + kappa^2)";
    h.records.push_back(r);
  }
  const double rhs = h.cosh_H0 / (2 * h.cosh_area);
  h.records.push_back(make_record("hyperbolic.upper_bound", in, h.lambda_pm, rhs,
                                  rel_tol(rel, h.lambda_pm, rhs), "spectral", "surface"));
  const double mink = 4 * std::sqrt(pi / h.area + k2 / 4) * h.cosh_area;
  {
    CheckRecord r = make_record("hyperbolic.minkowski", in, mink, h.cosh_H0,
                                rel_tol(rel, mink, h.cosh_H0), "surface", "surface");
    r.note = "cosh(kappa r) weight on both sides";
    h.records.push_back(r);
  }
  const double gin = 0.25 * (h.sup_H * h.sup_H - 4 * k2);
  h.records.push_back(make_record("ginoux", in, h.lambda1 * h.lambda1, gin,
                                  rel_tol(rel, h.lambda1 * h.lambda1, gin), "spectral",
                                  "surface"));
  h.records.push_back(check_bar_hijazi(in, h.lambda1, h.area, rel));
  return h;
}

std::vector<CheckRecord> kappa_limit_checks(surface::ProfilePtr profile, double kappa,
                                            const spectral::SpectrumOptions& options, double c) {
  const auto euc = surface::EmbeddedSurface::euclidean(profile);
  const auto hyp = surface::EmbeddedSurface::hyperbolic(profile, kappa);
  const SurfaceData d = surface_data(euc, options);
  const HyperbolicReport h = hyperbolic_checks(hyp, options);
  const double bound = c * kappa * kappa;
  const std::string in = hyp.label();
  const double e_rhs = d.total_mean_curvature / (2 * d.area);
  const double h_rhs = h.cosh_H0 / (2 * h.cosh_area);
  const double e_mink = 4 * std::sqrt(pi * d.area) / d.total_mean_curvature;
  const double h_mink = 4 * std::sqrt(pi / h.area + kappa * kappa / 4) * h.cosh_area / h.cosh_H0;
  return {within("kappa_limit.thm1.lhs", in, h.lambda_pm, d.lambda1,
                 bound * std::max(1.0, d.lambda1), "hyperbolic", "euclidean"),
          within("kappa_limit.thm1.rhs", in, h_rhs, e_rhs, bound * std::max(1.0, e_rhs),
                 "hyperbolic", "euclidean"),
          within("kappa_limit.minkowski.ratio", in, h_mink, e_mink, bound, "hyperbolic",
                 "euclidean")};
}

spectral::ConformalSphereMetric random_bump_metric(std::uint64_t seed, double amplitude) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> amp(-amplitude, amplitude), width(1.0, 6.0),
      centre(-0.8, 0.8);
  std::array<double, 3> a, b, x0;
  for (int i = 0; i < 3; ++i) {
    a[i] = amp(rng);
    b[i] = width(rng);
    x0[i] = centre(rng);
  }
  return spectral::ConformalSphereMetric::axisymmetric(
      [a, b, x0](double theta) {
        const double x = std::cos(theta);
        double s = 0;
        for (int i = 0; i < 3; ++i) s += a[i] * std::exp(-b[i] * (x - x0[i]) * (x - x0[i]));
        return s;
      },
      "bump:seed=" + std::to_string(seed));
}

std::vector<CheckRecord> metric_property_checks(const spectral::ConformalSphereMetric& metric,
                                                int L, const PropertyTolerances& tol) {
  const std::string in = metric.label();
  std::vector<CheckRecord> out;
  spectral::SpectrumOptions so;
  const spectral::DiracSpectrumResult base = spectral::dirac_spectrum_at(metric, L, so);
  const double l1 = base.lambda1;

  {
    const auto& ev = base.eigenvalues;
    double asym = 0, scale = 0;
    for (std::size_t i = 0; i < ev.size(); ++i) {
      asym = std::max(asym, std::abs(ev[i] + ev[ev.size() - 1 - i]));
      scale = std::max(scale, std::abs(ev[i]));
    }
    out.push_back(make_record("spectrum.symmetry", in, asym, 0.0, tol.symmetry * scale,
                              "spectral", "zero"));
  }
  const double area = metric.area();
  out.push_back(check_bar_hijazi(in, l1, area));
  {
    const num::SphereGrid grid = num::make_sphere_grid(96, metric.is_axisymmetric() ? 1 : 96);
    const std::vector<double> K = metric.gauss_curvature(grid);
    const std::vector<double> u = metric.sample(grid);
    double total = 0;
    for (int i = 0; i < grid.n_theta(); ++i)
      for (int p = 0; p < grid.n_phi; ++p) {
        const std::size_t k = static_cast<std::size_t>(i) * grid.n_phi + p;
        total += grid.area_weight(i) * std::exp(2 * u[k]) * K[k];
      }
    out.push_back(within("gauss_bonnet", in, total, 4 * pi, tol.gauss_bonnet * 4 * pi,
                         "spectral quadrature", "topology"));
  }
  {
    const Eigen::Matrix3d rot =
        (Eigen::AngleAxisd(0.7, Eigen::Vector3d::UnitY()) * Eigen::AngleAxisd(0.4, Eigen::Vector3d::UnitZ()))
            .toRotationMatrix();
    const double lr = spectral::dirac_spectrum_at(metric.rotated(rot), L, so).lambda1;
    out.push_back(within("invariance.rotation", in, lr, l1, tol.invariance * l1, "spectral",
                         "spectral"));
  }
  {
    const double lm = spectral::dirac_spectrum_at(metric.mobius_boost(0.3), L, so).lambda1;
    out.push_back(within("invariance.mobius", in, lm, l1, tol.invariance * l1, "spectral",
                         "spectral"));
  }
  return out;
}

}  // namespace dlab::harness
