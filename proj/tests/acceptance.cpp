// One PASS/FAIL line per acceptance criterion; exit status is the number
// of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include "diraclab/ambient/chart.hpp"
#include "diraclab/ambient/curvature.hpp"
#include "diraclab/harness/checks.hpp"
#include "diraclab/numerics/fit.hpp"
#include "diraclab/qsflow/certificate.hpp"
#include "diraclab/qsflow/flow.hpp"
#include "diraclab/qsflow/residual.hpp"
#include "diraclab/surface/profile.hpp"
#include "diraclab/surface/uniformize.hpp"
#include "oracles/dirac_shooting.hpp"

using namespace dlab;
using harness::CheckRecord;
using harness::Verdict;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  o.detail.precision(6);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << " [exception: " << e.what() << "]";
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(s < budget_s, "runtime budget " + std::to_string(budget_s) + " s");
  if (!o.pass) ++failures;
  std::printf("criterion %d %s: %s (%.1f s)%s\n", id, o.pass ? "PASS" : "FAIL", title, s,
              o.detail.str().c_str());
  std::fflush(stdout);
}

const CheckRecord* find(const std::vector<CheckRecord>& rs, const std::string& name) {
  for (const auto& r : rs)
    if (r.theorem == name) return &r;
  return nullptr;
}

bool holds_or_equal(const CheckRecord& r) {
  return r.verdict == Verdict::holds || r.verdict == Verdict::equality;
}

void require_all(Outcome& o, const std::vector<CheckRecord>& rs, const std::string& ctx) {
  for (const auto& r : rs) o.require(holds_or_equal(r), ctx + " " + r.theorem + " " + harness::to_string(r.verdict));
}

}  // namespace

int main() {
  criterion(1, "round-sphere equality suite", 10, [](Outcome& o) {
    for (double r : {0.5, 1.0, 3.0}) {
      const auto s = surface::EmbeddedSurface::euclidean(surface::sphere_profile(r));
      const auto d = harness::surface_data(s);
      const double err = std::abs(d.lambda1 - 1 / r);
      o.detail << " r=" << r << " |lambda1-1/r|=" << err;
      o.require(err <= 1e-8, "lambda1 at r=" + std::to_string(r));
      std::vector<CheckRecord> rs = harness::check_bar_and_hijazi(d);
      rs.push_back(harness::check_main_upper_bound(d));
      rs.push_back(harness::check_minkowski(d));
      for (const auto& rec : rs) o.require(rec.verdict == Verdict::equality, rec.theorem + " not equality");
    }
  });

  criterion(2, "ellipsoid inequality chain at L = 40", 120, [](Outcome& o) {
    for (double c : {1.05, 1.2, 1.5}) {
      const auto s = surface::EmbeddedSurface::euclidean(surface::ellipsoid_profile(1, c));
      const auto u = surface::uniformize_axisymmetric(s);
      const auto spec = spectral::dirac_spectrum_at(u.metric, 40);
      harness::SurfaceData d;
      d.lambda1 = spec.lambda1;
      d.area = s.area();
      d.total_mean_curvature = s.total_mean_curvature();
      d.mean_curvature_squared = s.mean_curvature_squared_integral();
      d.spectrum = spec;
      d.label = s.label();
      const auto hijazi = harness::check_bar_hijazi(d.label, d.lambda1, d.area);
      const auto upper = harness::check_main_upper_bound(d);
      o.require(hijazi.verdict == Verdict::holds && hijazi.slack > 0, "lower bound strict");
      o.require(upper.verdict == Verdict::holds && upper.slack > 0, "upper bound strict");
      const double shoot = oracle::first_eigenvalue(
          {[&s](double t) { return s.at(t).f; }, [&s](double t) { return s.at(t).h; }});
      const double rel = std::abs(spec.lambda1 - shoot) / shoot;
      o.detail << " c=" << c << " slacks " << hijazi.slack << "," << upper.slack << " dual " << rel;
      o.require(rel <= 1e-6, "dual-solver agreement");
    }
  });

  criterion(3, "small-sphere expansion on space forms", 300, [](Outcome& o) {
    for (double k : {1.0, -1.0}) {
      const auto res = harness::small_sphere_expansion(ambient::space_form_chart(k), ambient::Vec3::Zero(),
                                                       num::linspace(0.05, 0.3, 12));
      const double a1 = res.lambda_fit.coefficient(1), a3 = res.lambda_fit.coefficient(3);
      o.detail << " k=" << k << " a1=" << a1 << " a3=" << a3 << " L=" << res.curvature.L
               << " E2=" << res.curvature.E_squared;
      o.require(std::abs(a1 - k / 6) <= 1e-3, "linear coefficient");
      o.require(std::abs(a3 - 7.0 / 360) <= 0.02 * 7.0 / 360, "cubic coefficient");
      o.require(std::abs(res.curvature.L - 105) <= 1e-6 * 105, "L(p) = 105");
      o.require(std::abs(res.curvature.E_squared) <= 1e-8, "|E|^2 = 0");
      if (k > 0) {
        const double c3 = res.area_defect_fit.coefficient(3);
        o.detail << " area-defect r^3 coefficient " << c3;
        o.require(std::abs(c3 - 2 * pi) <= 0.01 * 2 * pi, "area defect coefficient 2 pi");
      }
      require_all(o, res.records, "k=" + std::to_string(k));
    }
  });

  criterion(4, "large-sphere mass recovery on schwarzschild", 120, [](Outcome& o) {
    const auto res = harness::large_sphere_mass_recovery(ambient::schwarzschild_chart(1.0), {50, 100, 200, 400});
    const auto& r = res.radii;
    for (std::size_t i = 0; i < r.size(); ++i) {
      o.detail << " m(" << r[i] << ")=" << res.mass_estimate[i];
      if (r[i] == 200) o.require(std::abs(res.mass_estimate[i] - 1) <= 0.05, "5% at r = 200");
      if (i > 0)
        o.require(std::abs(res.mass_estimate[i] - 1) < std::abs(res.mass_estimate[i - 1] - 1), "error decreasing");
    }
    const double c2 = res.lambda_fit.coefficient(2);
    o.detail << " inv_r2=" << c2;
    o.require(std::abs(c2 + 1) <= 0.02, "1/r^2 coefficient");
  });

  criterion(5, "quasi-spherical flow calibration", 300, [](Outcome& o) {
    const auto base = surface::EmbeddedSurface::euclidean(surface::sphere_profile(2));
    const qsflow::ExteriorFoliation fol(base, 16);
    const auto u0 = [](double) { return 1.25; };
    qsflow::FlowOptions fine;
    auto flow = qsflow::run_flow(fol, u0, fine);
    o.detail << " mass=" << flow.mass;
    o.require(std::abs(flow.mass - 0.36) <= 1e-4, "mass 0.36");
    bool monotone = true;
    for (std::size_t i = 1; i < flow.trajectory.size(); ++i)
      monotone = monotone && flow.trajectory[i].Q <= flow.trajectory[i - 1].Q;
    o.require(monotone, "Q nonincreasing");
    qsflow::attach_residuals(fol, flow);
    double worst = 0;
    for (const auto& s : flow.trajectory) worst = std::max(worst, s.residual);
    o.detail << " max residual " << worst;
    o.require(worst < 1e-4, "residual < 1e-4");
    qsflow::FlowOptions coarse = fine;
    coarse.step_rel = 2 * fine.step_rel;
    const auto ts = qsflow::default_probe_angles();
    const double r_coarse = qsflow::flow_residual(fol, qsflow::run_flow(fol, u0, coarse), 1.0, ts);
    const double r_fine = qsflow::flow_residual(fol, flow, 1.0, ts);
    const double order = std::log2(r_coarse / r_fine);
    o.detail << " residual order " << order;
    o.require(order > 1.8, "second-order decrease");
  });

  criterion(6, "upper-bound certificate on ellipsoid(1, 1.2)", 600, [](Outcome& o) {
    const auto base = surface::EmbeddedSurface::euclidean(surface::ellipsoid_profile(1, 1.2));
    const auto d = harness::surface_data(base);
    const qsflow::ExteriorFoliation fol(base, 32);
    const auto flow = qsflow::run_flow(fol, qsflow::certificate_initial_data(base, d.lambda1));
    const auto cert = qsflow::theorem1_certificate(fol, d.spectrum, flow, 1e-6);
    double q_min = INFINITY;
    for (const auto& s : flow.trajectory) q_min = std::min(q_min, s.Q);
    o.detail << " Q0=" << cert.Q0 << " minQ=" << q_min << " 8pi m=" << 8 * pi * cert.mass;
    o.require(std::abs(cert.Q0 - (cert.total_mean_curvature - 2 * cert.lambda1 * cert.area)) <= 1e-6 * cert.total_mean_curvature,
              "Q0 identity");
    bool chain = true;
    for (const auto& s : flow.trajectory) chain = chain && s.Q <= cert.Q0 + 1e-6;
    o.require(chain, "Q0 >= Q(rho)");
    o.require(q_min >= 8 * pi * cert.mass - 1e-6, "Q >= 8 pi m");
    o.require(8 * pi * cert.mass >= -1e-6, "8 pi m >= -1e-6");
    require_all(o, cert.records, "certificate");
  });

  criterion(7, "hyperbolic suite", 60, [](Outcome& o) {
    for (double r : {0.5, 1.0, 2.0}) {
      const auto rep = harness::hyperbolic_checks(surface::EmbeddedSurface::hyperbolic_geodesic_sphere(r, 1.0));
      for (const char* name : {"hyperbolic.upper_bound", "hyperbolic.minkowski"}) {
        const auto* rec = find(rep.records, name);
        o.require(rec != nullptr, std::string("missing ") + name);
        if (!rec) continue;
        const double rel = std::abs(rec->slack) / std::max(1.0, std::abs(rec->rhs));
        o.detail << " r=" << r << " " << name << " " << rel;
        o.require(rel <= 1e-8, std::string(name) + " equality");
      }
      o.require(std::abs(rep.lambda_pm - 1 / std::tanh(r)) <= 1e-8 * rep.lambda_pm, "lambda_pm = coth r");
    }
    const auto lim = harness::kappa_limit_checks(surface::ellipsoid_profile(1, 1.2), 1e-3);
    o.require(lim.size() == 3, "three kappa-limit records");
    require_all(o, lim, "kappa=1e-3");
  });

  criterion(8, "property sweep over 50 bump metrics", 600, [](Outcome& o) {
    int bad = 0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      const auto rs = harness::metric_property_checks(harness::random_bump_metric(seed), 24);
      for (const auto& r : rs)
        if (!holds_or_equal(r)) {
          ++bad;
          o.detail << " seed " << seed << " " << r.theorem;
        }
    }
    o.require(bad == 0, "property records");
  });

  std::printf("%d of 8 criteria failed\n", failures);
  return failures;
}
