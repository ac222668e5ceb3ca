#include <cmath>
#include <numbers>

#include "diraclab/errors.hpp"
#include "diraclab/harness/checks.hpp"
#include "diraclab/qsflow/certificate.hpp"
#include "diraclab/qsflow/flow.hpp"
#include "diraclab/qsflow/foliation.hpp"
#include "diraclab/qsflow/residual.hpp"
#include "diraclab/surface/profile.hpp"
#include "diraclab/surface/shape_descriptor.hpp"
#include "diraclab/surface/uniformize.hpp"
#include "doctest.h"

using namespace dlab;
using namespace dlab::qsflow;
using std::numbers::pi;

namespace {

surface::EmbeddedSurface spheroid(double a, double c) {
  return surface::EmbeddedSurface::euclidean(surface::ellipsoid_profile(a, c));
}

// offset of the meridian (a sin t, c cos t) by rho along the outward normal
struct Offset {
  double a, c, rho;
  std::pair<double, double> operator()(double t) const {
    const double v = std::hypot(a * std::cos(t), c * std::sin(t));
    return {a * std::sin(t) + rho * c * std::sin(t) / v, c * std::cos(t) + rho * a * std::cos(t) / v};
  }
};

const harness::CheckRecord& record(const std::vector<harness::CheckRecord>& rs, const std::string& name) {
  for (const auto& r : rs)
    if (r.theorem == name) return r;
  FAIL("missing record " << name);
  return rs.front();
}

}  // namespace

TEST_CASE("parallel surfaces match the offset curve") {
  const double a = 1, c = 1.4;
  const ExteriorFoliation fol(spheroid(a, c), 32);
  for (double rho : {0.0, 0.3, 2.0}) {
    const Offset P{a, c, rho};
    for (double t : {0.4, 1.1, 2.3}) {
      const double h = 1e-4;
      const auto [x0, z0] = P(t);
      const auto [xp, zp] = P(t + h);
      const auto [xm, zm] = P(t - h);
      const double dx = (xp - xm) / (2 * h), dz = (zp - zm) / (2 * h);
      const double ddx = (xp - 2 * x0 + xm) / (h * h), ddz = (zp - 2 * z0 + zm) / (h * h);
      const double speed = std::hypot(dx, dz);
      const double k1 = std::abs(dx * ddz - dz * ddx) / (speed * speed * speed);
      const double v = std::hypot(a * std::cos(t), c * std::sin(t));
      const double k2 = (c * std::sin(t) / v) / x0;
      const auto p = fol.at(rho, t);
      CHECK(p.h == doctest::Approx(x0).epsilon(1e-12));
      CHECK(p.f == doctest::Approx(speed).epsilon(1e-7));
      CHECK(p.k1 == doctest::Approx(k1).epsilon(1e-6));
      CHECK(p.k2 == doctest::Approx(k2).epsilon(1e-12));
      CHECK(p.H == doctest::Approx(k1 + k2).epsilon(1e-6));
      CHECK(p.K == doctest::Approx(k1 * k2).epsilon(1e-6));
    }
  }
}

TEST_CASE("mean curvature of the foliation decays like 2/rho") {
  const ExteriorFoliation fol(spheroid(1, 0.7), 24);
  double prev = INFINITY;
  for (double rho : {0.0, 0.5, 1.0, 4.0, 20.0}) {
    const double H = fol.at(rho, 0.9).H;
    CHECK(H < prev);
    prev = H;
  }
  CHECK(1e4 * fol.at(1e4, 0.9).H == doctest::Approx(2).epsilon(1e-3));
  const auto lvl = fol.level(1.5);
  double area = 0;
  for (int j = 0; j < fol.size(); ++j) area += lvl.area_weight[j];
  // Steiner: |Sigma_rho| = |Sigma| + rho int H0 + 4 pi rho^2
  const auto base = spheroid(1, 0.7);
  CHECK(area == doctest::Approx(base.area() + 1.5 * base.total_mean_curvature() + 4 * pi * 2.25).epsilon(1e-10));
}

TEST_CASE("flow of the trivial data stays trivial") {
  const ExteriorFoliation fol(spheroid(1, 1.2), 24);
  const auto flow = run_flow(fol, [](double) { return 1.0; });
  CHECK(std::abs(flow.mass) < 1e-12);
  CHECK(flow.max_deviation < 1e-12);
  for (const auto& s : flow.trajectory) CHECK(std::abs(s.Q) < 1e-10);
}

TEST_CASE("round sphere with constant data reaches the closed-form mass") {
  const ExteriorFoliation fol(surface::EmbeddedSurface::euclidean(surface::sphere_profile(2)), 16);
  const auto flow = run_flow(fol, [](double) { return 1.25; });
  // Schwarzschild with (1 - 2m / r0)^{-1/2} = 1.25 at r0 = 2
  const double m = 0.5 * 2 * (1 - 1 / (1.25 * 1.25));
  CHECK(flow.mass == doctest::Approx(m).epsilon(1e-4));
  for (std::size_t i = 1; i < flow.trajectory.size(); ++i)
    CHECK(flow.trajectory[i].Q <= flow.trajectory[i - 1].Q + 1e-8);
  CHECK(flow.Q_inf == doctest::Approx(8 * pi * flow.mass).epsilon(1e-14));
  const auto& last = flow.trajectory.back();
  const double r = 2 + last.rho;
  CHECK(last.u[0] == doctest::Approx(1 / std::sqrt(1 - 2 * m / r)).epsilon(1e-5));
}

TEST_CASE("small mass forces u close to one") {
  const ExteriorFoliation fol(surface::EmbeddedSurface::euclidean(surface::sphere_profile(1)), 16);
  for (double delta : {1e-7, 3e-7}) {
    const auto flow = run_flow(fol, [delta](double) { return 1 + delta; });
    REQUIRE(flow.mass < 1e-6);
    CHECK(flow.max_deviation < 1e-4);
  }
}

TEST_CASE("scalar curvature oracle vanishes on exact solutions") {
  const ExteriorFoliation round(surface::EmbeddedSurface::euclidean(surface::sphere_profile(1.5)), 16);
  const std::vector<double> rhos{0.2, 1.0, 5.0};
  const auto ts = default_probe_angles();
  CHECK(max_residual(round, [](double, double) { return 1.0; }, rhos, ts) < 1e-6);
  const double m = 0.4;
  const UField schw = [m](double rho, double) { return 1 / std::sqrt(1 - 2 * m / (1.5 + rho)); };
  CHECK(max_residual(round, schw, rhos, ts) < 1e-5);
  const ExteriorFoliation ell(spheroid(1, 1.3), 24);
  CHECK(max_residual(ell, [](double, double) { return 1.0; }, rhos, ts) < 1e-6);
  // not a solution
  const UField wrong = [](double rho, double t) { return 1 + 0.1 * std::cos(t) / (1 + rho); };
  CHECK(max_residual(ell, wrong, rhos, ts) > 1e-3);
}

TEST_CASE("flow residual decreases at second order") {
  const auto base = spheroid(1, 1.2);
  const ExteriorFoliation fol(base, 24);
  const double l1 = harness::surface_data(base, {}).spectrum.lambda1;
  const auto u0 = certificate_initial_data(base, l1);
  std::vector<double> res;
  for (double step : {0.01, 0.005}) {
    FlowOptions o;
    o.step_rel = step;
    const auto flow = run_flow(fol, u0, o);
    res.push_back(flow_residual(fol, flow, 1.0, default_probe_angles()));
  }
  CHECK(res[1] < 1e-4);
  CHECK(res[0] / res[1] > 3);
}

TEST_CASE("certificate on round spheres is an equality") {
  for (double r : {0.5, 2.0}) {
    const auto base = surface::EmbeddedSurface::euclidean(surface::sphere_profile(r));
    const auto data = harness::surface_data(base, {});
    const ExteriorFoliation fol(base, 16);
    const auto flow = run_flow(fol, certificate_initial_data(base, data.spectrum.lambda1));
    const auto cert = theorem1_certificate(fol, data.spectrum, flow);
    CHECK(std::abs(cert.slack) < 1e-6);
    CHECK(std::abs(cert.Q0) < 1e-6);
    CHECK(std::abs(cert.mass) < 1e-6);
    CHECK(cert.herzlich_H_over_2 == doctest::Approx(1 / r).epsilon(1e-8));
    CHECK(harness::all_hold(cert.records));
    CHECK(record(cert.records, "thm1.upper_bound").verdict == harness::Verdict::equality);
  }
}

TEST_CASE("certificate on an ellipsoid") {
  const auto base = spheroid(1, 1.2);
  const auto data = harness::surface_data(base, {});
  const ExteriorFoliation fol(base, 32);
  const auto flow = run_flow(fol, certificate_initial_data(base, data.spectrum.lambda1));
  const auto cert = theorem1_certificate(fol, data.spectrum, flow);
  CHECK(cert.slack > 1e-3);
  CHECK(cert.Q0 == doctest::Approx(2 * cert.area * cert.slack).epsilon(1e-10));
  CHECK(cert.Q0 >= 8 * pi * cert.mass);
  CHECK(cert.mass > 0);
  CHECK(harness::all_hold(cert.records));
  for (const char* name : {"thm1.upper_bound", "thm1.Q0_identity", "qsflow.monotone_step", "thm1.Q0_ge_Q",
                           "thm1.Q_ge_8pi_mass", "thm1.mass_nonnegative", "herzlich.boundary_H_over_2"})
    CHECK(record(cert.records, name).verdict != harness::Verdict::violated);
  nlohmann::json j = cert;
  CHECK(j.size() == 9);
  CHECK(j.at("mass").get<double>() == cert.mass);

  const auto wrong = run_flow(fol, [](double) { return 1.0; });
  CHECK_THROWS_AS(theorem1_certificate(fol, data.spectrum, wrong), PreconditionError);
}

TEST_CASE("certificate slack along a prolate family") {
  for (double c : {1.1, 1.5}) {
    const auto base = spheroid(1, c);
    const auto data = harness::surface_data(base, {});
    const ExteriorFoliation fol(base, 32);
    const auto cert = theorem1_certificate(fol, data.spectrum,
                                           run_flow(fol, certificate_initial_data(base, data.spectrum.lambda1)));
    MESSAGE("c = " << c << ": slack " << cert.slack << ", Q0 " << cert.Q0 << ", mass " << cert.mass);
    CHECK(harness::all_hold(cert.records));
  }
}

TEST_CASE("foliation preconditions") {
  CHECK_THROWS_AS(ExteriorFoliation(surface::make_surface("sphere:r=1,kappa=1"), 16), PreconditionError);
  std::vector<double> rho, z;
  for (int i = 0; i <= 200; ++i) {
    const double t = pi * i / 200, R = 1 + 0.3 * std::cos(4 * t);
    rho.push_back(R * std::sin(t));
    z.push_back(R * std::cos(t));
  }
  const auto dented = surface::EmbeddedSurface::euclidean(surface::radial_profile_from_samples(rho, z));
  REQUIRE_FALSE(dented.is_convex());
  CHECK_THROWS_AS(ExteriorFoliation(dented, 16), PreconditionError);
}
