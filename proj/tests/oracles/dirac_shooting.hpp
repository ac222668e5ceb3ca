#pragma once

// First positive Dirac eigenvalue of an axisymmetric sphere metric
// f(t)^2 dt^2 + h(t)^2 dphi^2 by shooting the separated first-order system
//   a' =  k (f/h) a + lambda f b
//   b' = -k (f/h) b - lambda f a
// for the azimuthal mode k (half-integer) from the north pole, where the
// regular solution is a ~ t^k, and asking that the (pi - t)^{-k} branch of
// a vanish at the south pole.

#include <array>
#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace oracle {

struct AxisymmetricMetric {
  std::function<double(double)> f, h;
};

inline double shooting_miss(const AxisymmetricMetric& g, double k, double lambda,
                            double eps = 1e-6) {
  using State = std::array<double, 2>;
  namespace ode = boost::numeric::odeint;
  const double f0 = g.f(eps);
  State y{1.0, -lambda * f0 * eps / (2 * k + 1)};
  const auto rhs = [&](const State& s, State& d, double t) {
    const double f = g.f(t), q = f / g.h(t);
    d[0] = k * q * s[0] + lambda * f * s[1];
    d[1] = -k * q * s[1] - lambda * f * s[0];
  };
  auto stepper = ode::make_controlled(1e-13, 1e-13, ode::runge_kutta_dopri5<State>());
  ode::integrate_adaptive(stepper, rhs, y, eps, M_PI - eps, 1e-4);
  return y[0] * std::pow(eps, k) / std::hypot(y[0], y[1]);
}

inline double first_root(const AxisymmetricMetric& g, double k, double step, double lambda_max) {
  double lo = step * 0.5, flo = shooting_miss(g, k, lo);
  for (double hi = lo + step; hi <= lambda_max; lo = hi, hi += step) {
    const double fhi = shooting_miss(g, k, hi);
    if ((flo < 0) != (fhi < 0)) {
      boost::uintmax_t iters = 200;
      const auto r = boost::math::tools::toms748_solve(
          [&](double l) { return shooting_miss(g, k, l); }, lo, hi, flo, fhi,
          boost::math::tools::eps_tolerance<double>(50), iters);
      return 0.5 * (r.first + r.second);
    }
    flo = fhi;
  }
  throw std::runtime_error("shooting oracle: no root below lambda_max");
}

// min over k = 1/2, 3/2, 5/2 of the first positive root; `scale` is a
// rough size of lambda1 used for the bracket scan.
inline double first_eigenvalue(const AxisymmetricMetric& g, double scale = 1.0) {
  double best = INFINITY;
  for (double k : {0.5, 1.5, 2.5}) {
    try {
      best = std::min(best, first_root(g, k, 0.02 * scale, std::min(best, 6.0 * scale)));
    } catch (const std::runtime_error&) {
    }
  }
  if (!std::isfinite(best)) throw std::runtime_error("shooting oracle: no eigenvalue found");
  return best;
}

// e^{2u(theta)} round
inline AxisymmetricMetric conformal(std::function<double(double)> u) {
  return {[u](double t) { return std::exp(u(t)); },
          [u](double t) { return std::exp(u(t)) * std::sin(t); }};
}

}  // namespace oracle
