#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "diraclab/ambient/chart.hpp"
#include "diraclab/ambient/chart_descriptor.hpp"
#include "diraclab/ambient/curvature.hpp"
#include "diraclab/ambient/geodesic_sphere.hpp"
#include "diraclab/errors.hpp"
#include "diraclab/numerics/fit.hpp"
#include "doctest.h"

using namespace dlab;
using namespace dlab::ambient;
using std::numbers::pi;

namespace {

std::filesystem::path write_file(const std::string& name, const std::string& body) {
  const auto dir = std::filesystem::temp_directory_path() / "diraclab_charts";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / name) << body;
  return dir / name;
}

double sn(double k, double r) {
  return k > 0 ? std::sin(std::sqrt(k) * r) / std::sqrt(k)
               : k < 0 ? std::sinh(std::sqrt(-k) * r) / std::sqrt(-k) : r;
}

}  // namespace

TEST_CASE("space form curvature invariants") {
  for (double k : {1.0, -1.0, 0.25}) {
    const auto chart = space_form_chart(k);
    for (const Vec3& p : {Vec3(0, 0, 0), Vec3(0.3, -0.2, 0.5)}) {
      const auto c = curvature_at(*chart, p);
      CHECK(c.R == doctest::Approx(6 * k).epsilon(1e-9));
      CHECK(c.ric_squared == doctest::Approx(12 * k * k).epsilon(1e-8));
      CHECK(std::abs(c.E_squared) < 1e-8);
      CHECK(std::abs(c.laplacian_R) < 1e-5);
      CHECK(c.L == doctest::Approx(81 * k * k + 24 * k * k).epsilon(1e-6));
      CHECK(scalar_curvature(*chart, p) == doctest::Approx(6 * k).epsilon(1e-12));
    }
  }
  CHECK(curvature_at(*space_form_chart(1), Vec3::Zero()).L == doctest::Approx(105).epsilon(1e-6));
}

TEST_CASE("jets: closed form agrees with finite differences") {
  const auto chart = schwarzschild_chart(1.0);
  const Vec3 x(1.1, -0.4, 0.9);
  const MetricJet exact = chart->jet(x);
  const MetricJet fd = chart->AmbientChart::jet(x);
  for (int k = 0; k < 3; ++k) {
    CHECK((exact.dg[k] - fd.dg[k]).cwiseAbs().maxCoeff() < 1e-8);
    for (int l = 0; l < 3; ++l) CHECK((exact.d2g[k][l] - fd.d2g[k][l]).cwiseAbs().maxCoeff() < 1e-6);
  }
}

TEST_CASE("schwarzschild is scalar flat") {
  const auto chart = schwarzschild_chart(2.0);
  CHECK(chart->mass().value() == 2.0);
  for (const Vec3& p : {Vec3(2, 0, 0), Vec3(1.5, 1.5, -0.7), Vec3(10, 3, 2)}) {
    const auto c = curvature_at(*chart, p);
    CHECK(std::abs(c.R) < 1e-10);
    CHECK(std::abs(*chart->scalar_curvature(p)) < 1e-12);
  }
  CHECK_THROWS_AS(curvature_at(*chart, Vec3(0.3, 0, 0)), DomainError);
}

TEST_CASE("perturbed chart from expressions") {
  const auto path = write_file("schw.txt",
                               "# schwarzschild m = 1 as a perturbation\n"
                               "xx = (1 + 0.5/r)^4 - 1\n"
                               "yy = (1 + 0.5/r)^4 - 1\n"
                               "zz = (1 + 0.5/r)^4 - 1\n"
                               "tau = 1\nmass = 1\n");
  const auto chart = make_chart("perturbed:file=" + path.string());
  CHECK(chart->kind() == ChartKind::perturbed);
  CHECK(chart->mass().value() == 1.0);
  const auto ref = schwarzschild_chart(1.0);
  for (const Vec3& p : {Vec3(3, 0, 0), Vec3(1, 2, -2), Vec3(0.5, 4, 1)}) {
    CHECK((chart->metric(p) - ref->metric(p)).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(std::abs(scalar_curvature(*chart, p)) < 1e-6);
  }
  CHECK_THROWS_AS(load_perturbation(write_file("bad.txt", "xw = 1\n")), ParseError);
  CHECK_THROWS_AS(load_perturbation(write_file("bad2.txt", "xx 1\n")), ParseError);
  CHECK_THROWS_AS(load_perturbation(write_file("bad3.txt", "xx = 1 +\n")), ParseError);
  CHECK_THROWS_AS(make_chart("perturbed:file=/nonexistent/p.txt"), IoError);
}

TEST_CASE("chart descriptors") {
  CHECK(make_chart("euclidean")->kind() == ChartKind::euclidean);
  CHECK(make_chart("schwarzschild:m=0.5")->mass().value() == 0.5);
  CHECK(make_chart("spaceform:k=-1")->kind() == ChartKind::space_form);
  CHECK_FALSE(make_chart("spaceform:k=1")->asymptotically_flat());
  CHECK_THROWS_AS(make_chart("flat"), ParseError);
  CHECK_THROWS_AS(make_chart("euclidean:m=1"), ParseError);
  CHECK_THROWS_AS(make_chart("schwarzschild:m=one"), ParseError);
}

TEST_CASE("geodesic spheres in space forms") {
  for (double k : {1.0, -1.0, 0.0}) {
    const auto chart = k == 0 ? euclidean_chart() : space_form_chart(k);
    for (double r : {0.3, 1.0}) {
      const auto s = geodesic_sphere(chart, Vec3(0.1, 0.2, -0.1), r);
      const double a = sn(k, r);
      CHECK(s.area == doctest::Approx(4 * pi * a * a).epsilon(1e-7));
      for (double h : s.H) CHECK(h == doctest::Approx(2 * (k == 0 ? 1 / r : (k > 0 ? std::cos(r) : std::cosh(r)) / a)).epsilon(1e-6));
      CHECK(sphere_lambda1(s) == doctest::Approx(1 / a).epsilon(1e-7));
    }
  }
}

TEST_CASE("euclidean spheres") {
  const auto s = geodesic_sphere(euclidean_chart(), Vec3(1, -2, 0.5), 2);
  CHECK(s.area == doctest::Approx(16 * pi).epsilon(1e-12));
  for (double h : s.H) CHECK(h == doctest::Approx(1).epsilon(1e-8));
}

TEST_CASE("small-sphere area law") {
  const auto radii = num::linspace(0.05, 0.3, 6);
  const std::vector<int> powers{2, 4, 6};
  const auto fit_at = [&](ChartPtr chart, const Vec3& p) {
    std::vector<double> area;
    for (double r : radii) area.push_back(geodesic_sphere(chart, p, r).area);
    return num::fit_powers(radii, area, powers);
  };
  for (double k : {1.0, -1.0}) {
    const auto f = fit_at(space_form_chart(k), Vec3::Zero());
    CHECK(f.coefficient(2) == doctest::Approx(4 * pi).epsilon(1e-5));
    CHECK(f.coefficient(4) == doctest::Approx(-2 * pi / 9 * 6 * k).epsilon(0.02));
  }
  // scalar flat: the r^4 term vanishes
  const auto f = fit_at(schwarzschild_chart(1.0), Vec3(3, 0, 0));
  CHECK(std::abs(f.coefficient(4)) < 0.02 * 2 * pi / 9);
}

TEST_CASE("coordinate spheres in schwarzschild") {
  {
    const auto s = coordinate_sphere(schwarzschild_chart(1.0), 10);
    const double R = 10 * 1.05 * 1.05;
    CHECK(s.area == doctest::Approx(4 * pi * R * R).epsilon(1e-6));
    // H of the conformally round sphere |x| = r in psi^4 delta: (2/r + 4 psi'/psi) / psi^2
    const double psi = 1.05, dpsi = -1.0 / (2 * 100);
    const double H = (2.0 / 10 + 4 * dpsi / psi) / (psi * psi);
    CHECK(s.total_mean_curvature == doctest::Approx(H * s.area).epsilon(1e-6));
  }
  const double m = 1.0;
  const auto chart = schwarzschild_chart(m);
  for (double r : {2.0, 20.0}) {
    const auto s = coordinate_sphere(chart, r);
    const double psi2 = std::pow(1 + m / (2 * r), 2);
    CHECK(s.area == doctest::Approx(4 * pi * r * r * psi2 * psi2).epsilon(1e-10));
    CHECK(sphere_lambda1(s) == doctest::Approx(1 / (r * psi2)).epsilon(1e-9));
    REQUIRE(s.beta.has_value());
  }
  CHECK_THROWS_AS(coordinate_sphere(chart, 0.3), DomainError);
  CHECK_THROWS_AS(coordinate_sphere(space_form_chart(1), 1), PreconditionError);
  CHECK_THROWS_AS(coordinate_sphere(chart, -1), PreconditionError);
}

TEST_CASE("geodesic integration is fourth order") {
  const auto chart = space_form_chart(1.0);
  const double exact = 4 * pi * std::sin(1.2) * std::sin(1.2);
  std::vector<double> err;
  for (int steps : {4, 8, 16}) {
    SphereSampleOptions o;
    o.steps = steps;
    err.push_back(std::abs(geodesic_sphere(chart, Vec3(0.2, 0, 0), 1.2, o).area - exact));
  }
  const double order1 = std::log2(err[0] / err[1]), order2 = std::log2(err[1] / err[2]);
  CHECK(order1 > 3.5);
  CHECK(order2 > 3.5);
  // endpoint error of a single geodesic against a fine reference
  const Vec3 p(0.3, -0.1, 0.2);
  const Vec3 v = unit_direction(*chart, p, Vec3(1, 1, 0.5).normalized());
  const Vec3 ref = shoot_geodesic(*chart, p, v, 1.5, 4096).x;
  std::vector<double> e;
  for (int steps : {16, 32, 64}) e.push_back((shoot_geodesic(*chart, p, v, 1.5, steps).x - ref).norm());
  CHECK(std::log2(e[0] / e[1]) >= 3.8);
  CHECK(std::log2(e[1] / e[2]) >= 3.8);
  const auto end = shoot_geodesic(*chart, Vec3::Zero(), unit_direction(*chart, Vec3::Zero(), Vec3::UnitX()), 1.0, 64);
  CHECK(end.x.norm() == doctest::Approx(2 * std::tan(0.5)).epsilon(1e-9));
}

TEST_CASE("geodesic sphere failure modes") {
  CHECK_THROWS_AS(geodesic_sphere(space_form_chart(1.0), Vec3::Zero(), pi - 1e-3), ResolutionError);
  CHECK_THROWS_AS(geodesic_sphere(euclidean_chart(), Vec3::Zero(), -1), PreconditionError);
  CHECK_THROWS_AS(geodesic_sphere(schwarzschild_chart(1), Vec3(0.1, 0, 0), 0.1), DomainError);
  CHECK_THROWS_AS(shoot_geodesic(*euclidean_chart(), Vec3::Zero(), Vec3::UnitX(), 1, 0), PreconditionError);
}
