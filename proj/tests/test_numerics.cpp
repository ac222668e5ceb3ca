#include <cmath>
#include <numbers>

#include "diraclab/errors.hpp"
#include "diraclab/numerics/collocation.hpp"
#include "diraclab/numerics/descriptor.hpp"
#include "diraclab/numerics/expression.hpp"
#include "diraclab/numerics/finite_difference.hpp"
#include "diraclab/numerics/fit.hpp"
#include "diraclab/numerics/quadrature.hpp"
#include "doctest.h"

using namespace dlab;
using std::numbers::pi;

TEST_CASE("gauss-legendre is exact to degree 2n-1") {
  const auto rule = num::gauss_legendre(7);
  for (int d = 0; d <= 13; ++d) {
    double s = 0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * std::pow(rule.nodes[i], d);
    const double exact = d % 2 ? 0.0 : 2.0 / (d + 1);
    CHECK(s == doctest::Approx(exact).epsilon(1e-14));
  }
  const auto mapped = num::gauss_legendre(12, 0, pi);
  double s = 0;
  for (std::size_t i = 0; i < mapped.nodes.size(); ++i) s += mapped.weights[i] * std::sin(mapped.nodes[i]);
  CHECK(s == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("composite integration and the sphere grid") {
  CHECK(num::integrate([](double x) { return std::exp(x); }, 0, 3) ==
        doctest::Approx(std::exp(3.0) - 1).epsilon(1e-14));
  const auto g = num::make_sphere_grid(10, 7);
  double area = 0, z2 = 0;
  for (int i = 0; i < g.n_theta(); ++i)
    for (int p = 0; p < g.n_phi; ++p) {
      area += g.area_weight(i);
      z2 += g.area_weight(i) * g.cos_theta[i] * g.cos_theta[i];
    }
  CHECK(area == doctest::Approx(4 * pi).epsilon(1e-14));
  CHECK(z2 == doctest::Approx(4 * pi / 3).epsilon(1e-14));
  CHECK(g.cos_theta.front() > g.cos_theta.back());
}

TEST_CASE("barycentric interpolation reproduces polynomials") {
  std::vector<double> x{-1, -0.3, 0.2, 0.9, 1.4}, y;
  for (double v : x) y.push_back(2 - v + 0.5 * v * v * v);
  const num::BarycentricInterpolant p(x, y);
  CHECK(p(0.55) == doctest::Approx(2 - 0.55 + 0.5 * std::pow(0.55, 3)).epsilon(1e-14));
  CHECK(p(0.2) == doctest::Approx(y[2]));
}

TEST_CASE("cosine collocation differentiates even trigonometric functions") {
  const num::CosineCollocation c(24);
  Eigen::VectorXd v(c.size());
  for (int j = 0; j < c.size(); ++j) v[j] = std::cos(3 * c.nodes()[j]) + 0.5;
  const Eigen::VectorXd d1 = c.d1() * v, d2 = c.d2() * v;
  for (int j = 0; j < c.size(); ++j) {
    const double t = c.nodes()[j];
    CHECK(d1[j] == doctest::Approx(-3 * std::sin(3 * t)).epsilon(1e-11).scale(1));
    CHECK(d2[j] == doctest::Approx(-9 * std::cos(3 * t)).epsilon(1e-10).scale(1));
  }
  const Eigen::VectorXd a = c.coefficients(std::span<const double>(v.data(), v.size()));
  CHECK(c.evaluate(a, 0.123) == doctest::Approx(std::cos(0.369) + 0.5).epsilon(1e-13));
  CHECK(c.evaluate_derivative(a, 0.7) == doctest::Approx(-3 * std::sin(2.1)).epsilon(1e-12));
  CHECK(c.evaluate_second_derivative(a, 0.7) == doctest::Approx(-9 * std::cos(2.1)).epsilon(1e-11));
  double s = 0;
  for (int j = 0; j < c.size(); ++j) s += c.sine_weights()[j] * std::cos(c.nodes()[j]) * std::cos(c.nodes()[j]);
  CHECK(s == doctest::Approx(2.0 / 3).epsilon(1e-13));
}

TEST_CASE("power fits recover coefficients and slopes") {
  const auto x = num::linspace(0.1, 0.5, 9);
  CHECK(x.front() == 0.1);
  CHECK(x.back() == 0.5);
  std::vector<double> y;
  for (double r : x) y.push_back(1 / r + 0.25 * r - 0.125 * r * r * r);
  const std::vector<int> powers{-1, 1, 3};
  const auto fit = num::fit_powers(x, y, powers);
  CHECK(fit.coefficient(-1) == doctest::Approx(1).epsilon(1e-12));
  CHECK(fit.coefficient(1) == doctest::Approx(0.25).epsilon(1e-11));
  CHECK(fit.coefficient(3) == doctest::Approx(-0.125).epsilon(1e-9));
  CHECK(fit.residual_rms < 1e-13);
  CHECK_THROWS_AS(fit.coefficient(2), PreconditionError);

  std::vector<double> c;
  for (double r : x) c.push_back(7 * r * r * r);
  CHECK(num::loglog_slope(x, c) == doctest::Approx(3).epsilon(1e-12));
}

TEST_CASE("descriptors parse name and parameters") {
  const auto d = num::parse_descriptor("ellipsoid:a=1,c=1.2");
  CHECK(d.name == "ellipsoid");
  CHECK(d.number("c") == 1.2);
  CHECK(d.number_or("kappa", 0.5) == 0.5);
  CHECK_NOTHROW(d.allow_only({"a", "c"}));
  CHECK_THROWS_AS(d.allow_only({"a"}), ParseError);
  CHECK(num::parse_descriptor("euclidean").params.empty());
  CHECK_THROWS_AS(num::parse_descriptor("sphere:r=1,r=2"), ParseError);
  CHECK_THROWS_AS(num::parse_descriptor("sphere:r="), ParseError);
  CHECK_THROWS_AS(num::parse_descriptor("sphere:r=1,"), ParseError);
  CHECK_THROWS_AS(num::parse_descriptor("sphere:r=x").number("r"), ParseError);
}

TEST_CASE("expressions evaluate in x, y, z, r") {
  const auto e = num::Expression::parse("0.5*x*y/r^3 + exp(-z) - 2");
  const double r = std::sqrt(1 + 4 + 9.0);
  CHECK(e(1, 2, 3) == doctest::Approx(0.5 * 2 / (r * r * r) + std::exp(-3.0) - 2).epsilon(1e-15));
  CHECK_THROWS_AS(num::Expression::parse("x +"), ParseError);
  CHECK_THROWS_AS(num::Expression::parse("foo(x)"), ParseError);
}

TEST_CASE("fourth-order differences") {
  const auto f = [](const Eigen::Vector3d& p) { return std::sin(p[0]) * std::exp(p[1]) + p[2] * p[2] * p[2]; };
  const Eigen::Vector3d x(0.3, -0.2, 0.7);
  const double h = 1e-3;
  CHECK(num::fd_first(f, x, 0, h) == doctest::Approx(std::cos(0.3) * std::exp(-0.2)).epsilon(1e-11));
  CHECK(num::fd_second(f, x, 2, 2, h) == doctest::Approx(6 * 0.7).epsilon(1e-8));
  CHECK(num::fd_second(f, x, 0, 1, h) == doctest::Approx(std::cos(0.3) * std::exp(-0.2)).epsilon(1e-8));
}
