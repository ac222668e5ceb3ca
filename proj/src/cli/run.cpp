#include "diraclab/cli/run.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <functional>
#include <ostream>
#include <thread>

#include "diraclab/ambient/chart_descriptor.hpp"
#include "diraclab/cli/convergence.hpp"
#include "diraclab/cli/emit.hpp"
#include "diraclab/errors.hpp"
#include "diraclab/harness/checks.hpp"
#include "diraclab/numerics/descriptor.hpp"
#include "diraclab/qsflow/certificate.hpp"
#include "diraclab/qsflow/residual.hpp"
#include "diraclab/spectral/sample_io.hpp"
#include "diraclab/surface/shape_descriptor.hpp"
#include "diraclab/surface/uniformize.hpp"

namespace dlab::cli {

namespace {

namespace fs = std::filesystem;
using harness::CheckRecord;
using nlohmann::json;

// Runs f(0..n-1) on up to `threads` workers; the first exception is rethrown.
void parallel_for(int n, int threads, const std::function<void(int)>& f) {
  threads = std::max(1, std::min(threads, n));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  {
    std::vector<std::jthread> pool;
    for (int w = 0; w < threads; ++w)
      pool.emplace_back([&] {
        for (int i; !failed && (i = next++) < n;) {
          try {
            f(i);
          } catch (...) {
            if (!failed.exchange(true)) error = std::current_exception();
          }
        }
      });
  }
  if (error) std::rethrow_exception(error);
}

struct Context {
  const ExperimentConfig& cfg;
  std::ostream& log;
  Stamp stamp;
  json body = json::object();
  std::vector<CheckRecord> records;

  fs::path path(const std::string& name) const { return fs::path(cfg.out) / name; }
  bool csv() const { return cfg.format == "csv"; }

  void emit_table(const std::string& name, const Table& t) {
    if (csv()) {
      write_atomic(path(name + ".csv"), to_csv(t, stamp));
      return;
    }
    json rows = json::array();
    for (const auto& r : t.rows) {
      json o;
      for (std::size_t i = 0; i < t.columns.size(); ++i) o[t.columns[i]] = r[i];
      rows.push_back(o);
    }
    body[name] = rows;
  }

  void emit_convergence(const ConvergenceTable& t, const std::string& name) {
    write_atomic(path(name + ".csv"), convergence_csv(t, stamp));
    if (cfg.svg) write_atomic(path(name + ".svg"), convergence_svg(t, stamp));
  }
};

spectral::SpectrumOptions spectrum_options(const ExperimentConfig& c) {
  spectral::SpectrumOptions o;
  o.L = c.L;
  o.max_L = c.max_L;
  o.tolerance = c.spectral_tol;
  return o;
}

ambient::SphereSampleOptions sphere_options(const ExperimentConfig& c) {
  return {c.n_theta, c.n_phi, c.steps};
}

spectral::ConformalSphereMetric metric_from_descriptor(const std::string& text) {
  const num::Descriptor d = num::parse_descriptor(text);
  if (d.name == "round") {
    d.allow_only({"r"});
    return spectral::ConformalSphereMetric::round(d.number_or("r", 1.0));
  }
  if (d.name == "bump") {
    d.allow_only({"seed", "amp"});
    return harness::random_bump_metric(static_cast<std::uint64_t>(d.number_or("seed", 0)),
                                       d.number_or("amp", 0.3));
  }
  d.allow_only({"file"});
  return spectral::ConformalSphereMetric::from_samples(
      spectral::read_nodal_samples(d.text("file")));
}

spectral::ConformalSphereMetric surface_metric(const surface::EmbeddedSurface& s) {
  return surface::uniformize_axisymmetric(s).metric;
}

// lambda1 at L, L + step, ... (at most five levels up to max_L).
ConvergenceTable lambda_series(const spectral::ConformalSphereMetric& m,
                               const spectral::SpectrumOptions& o) {
  std::vector<double> Ls, vals;
  for (int L = o.L; L <= o.max_L && Ls.size() < 5; L += o.refine_step) {
    Ls.push_back(L);
    vals.push_back(spectral::dirac_spectrum_at(m, L, o).lambda1);
  }
  return convergence_table("lambda1", "L", Ls, vals);
}

void run_spectrum(Context& ctx) {
  const auto& c = ctx.cfg;
  std::vector<std::pair<std::string, spectral::ConformalSphereMetric>> inputs;
  if (!c.metric.empty()) inputs.emplace_back(c.metric, metric_from_descriptor(c.metric));
  for (const auto& s : c.surfaces)
    inputs.emplace_back(s, surface_metric(surface::make_surface(s)));

  const auto opts = spectrum_options(c);
  std::vector<spectral::DiracSpectrumResult> res(inputs.size());
  parallel_for(static_cast<int>(inputs.size()), c.threads, [&](int i) {
    res[i] = spectral::conformal_dirac_spectrum(inputs[i].second, opts);
  });

  Table summary{{"input", "L", "lambda1", "convergence_estimate", "area"}, {}};
  Table eig{{"input", "index", "eigenvalue"}, {}};
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const double area = inputs[i].second.area();
    summary.add_text({inputs[i].first, std::to_string(res[i].L), format_number(res[i].lambda1),
                      format_number(res[i].convergence_estimate), format_number(area)});
    int k = 0;
    for (double v : res[i].eigenvalues)
      if (v > 0 && k < 16) eig.add_text({inputs[i].first, std::to_string(k++), format_number(v)});
    ctx.records.push_back(harness::check_bar_hijazi(inputs[i].first, res[i].lambda1, area, c.tol));
  }
  if (!inputs.empty()) {
    ctx.emit_table("spectrum", summary);
    ctx.emit_table("eigenvalues", eig);
  }
  if (c.convergence && !inputs.empty())
    ctx.emit_convergence(lambda_series(inputs.front().second, opts), "spectrum_convergence");

  if (c.sweep > 0) {
    std::vector<std::vector<CheckRecord>> per(c.sweep);
    parallel_for(c.sweep, c.threads, [&](int i) {
      per[i] = harness::metric_property_checks(harness::random_bump_metric(c.seed + i), c.L);
    });
    for (auto& v : per) ctx.records.insert(ctx.records.end(), v.begin(), v.end());
  }
}

void run_thm1(Context& ctx) {
  const auto& c = ctx.cfg;
  const auto opts = spectrum_options(c);
  const int n = static_cast<int>(c.surfaces.size());
  std::vector<harness::SurfaceData> data(n);
  std::vector<std::vector<CheckRecord>> per(n);
  parallel_for(n, c.threads, [&](int i) {
    const auto s = surface::make_surface(c.surfaces[i]);
    if (s.ambient() != surface::AmbientKind::euclidean) {
      per[i] = harness::hyperbolic_checks(s, opts, c.tol).records;
      return;
    }
    try {
      data[i] = harness::surface_data(s, opts);
    } catch (const ConvergenceError& e) {
      per[i] = {harness::inconclusive_record("thm1.upper_bound", s.label(), e.what())};
      return;
    }
    per[i] = harness::check_upper_bound_chain(data[i], c.tol);
    per[i].push_back(harness::check_bar(data[i], c.tol));
    per[i].push_back(harness::check_minkowski(data[i], c.tol));
  });
  Table t{{"surface", "lambda1", "total_mean_curvature", "area", "thm1_rhs", "slack"}, {}};
  for (int i = 0; i < n; ++i) {
    ctx.records.insert(ctx.records.end(), per[i].begin(), per[i].end());
    if (data[i].area == 0) continue;
    const double rhs = data[i].total_mean_curvature / (2 * data[i].area);
    t.add_text({c.surfaces[i], format_number(data[i].lambda1),
                format_number(data[i].total_mean_curvature), format_number(data[i].area),
                format_number(rhs), format_number(rhs - data[i].lambda1)});
  }
  ctx.emit_table("thm1", t);
  if (c.convergence && n > 0)
    ctx.emit_convergence(lambda_series(surface_metric(surface::make_surface(c.surfaces[0])), opts),
                         "thm1_convergence");
}

void emit_fit(Context& ctx, const std::string& name, const harness::ExpansionFit& f) {
  json j = f;
  if (ctx.csv()) {
    Table t{{"radius", f.observable, "fitted"}, {}};
    for (std::size_t i = 0; i < f.radii.size(); ++i)
      t.add({f.radii[i], f.samples[i], f.fit.evaluate(f.radii[i])});
    ctx.emit_table(name, t);
    write_atomic(ctx.path(name + ".json"), wrap(ctx.stamp, {{"fit", j}}).dump(2) + "\n");
  } else {
    ctx.body[name] = j;
  }
}

void run_large_sphere(Context& ctx) {
  const auto& c = ctx.cfg;
  const auto chart = ambient::make_chart(c.chart);
  const auto radii = parse_radii(c.radii, c.kind);
  const auto res = harness::large_sphere_mass_recovery(chart, radii, sphere_options(c),
                                                       spectrum_options(c));
  ctx.records = res.records;
  Table t{{"r", "lambda1", "area", "total_mean_curvature", "mass_estimate"}, {}};
  for (std::size_t i = 0; i < res.lambda1.size(); ++i)
    t.add({res.radii[i], res.lambda1[i], res.area[i], res.total_mean_curvature[i],
           res.mass_estimate[i]});
  ctx.emit_table("large_sphere", t);
  if (res.lambda1.size() == res.radii.size()) emit_fit(ctx, "large_sphere_fit", res.lambda_fit);
  const auto hmz = harness::check_hmz_integral_improvement(chart, radii.back(), sphere_options(c),
                                                           spectrum_options(c));
  ctx.records.insert(ctx.records.end(), hmz.begin(), hmz.end());
  if (c.svg && chart->mass() && res.mass_estimate.size() == radii.size()) {
    Series s{"|m_est - m|", res.radii, {}};
    for (double m : res.mass_estimate) s.y.push_back(m - *chart->mass());
    write_atomic(ctx.path("large_sphere.svg"),
                 loglog_svg("mass recovery", "r", "|m_est - m|", {s}, ctx.stamp));
  }
}

void run_small_sphere(Context& ctx) {
  const auto& c = ctx.cfg;
  const auto chart = ambient::make_chart(c.chart);
  const auto p = parse_point(c.point);
  const auto radii = parse_radii(c.radii, c.kind);
  const auto res = harness::small_sphere_expansion(chart, p, radii, sphere_options(c),
                                                   spectrum_options(c));
  ctx.records = res.records;
  Table t{{"r", "lambda1", "area", "total_mean_curvature", "lambda1_area_minus_half_H"}, {}};
  for (std::size_t i = 0; i < res.lambda1.size(); ++i)
    t.add({res.radii[i], res.lambda1[i], res.area[i], res.total_mean_curvature[i],
           res.lambda1[i] * res.area[i] - 0.5 * res.total_mean_curvature[i]});
  ctx.emit_table("small_sphere", t);
  if (res.lambda1.size() == res.radii.size()) {
    emit_fit(ctx, "small_sphere_fit", res.lambda_fit);
    emit_fit(ctx, "small_sphere_area_defect_fit", res.area_defect_fit);
    if (c.svg) {
      Series s{"lambda1 - 1/r - R r/36", res.radii, {}};
      for (std::size_t i = 0; i < res.radii.size(); ++i)
        s.y.push_back(res.lambda1[i] - 1 / res.radii[i] - res.curvature.R * res.radii[i] / 36);
      write_atomic(ctx.path("small_sphere.svg"),
                   loglog_svg("small-sphere remainder", "r", "remainder", {s}, ctx.stamp));
    }
  }
  if (c.convergence) {
    // RK4 step halving on the largest sphere
    std::vector<double> hs, areas;
    const double r = radii.back();
    for (int steps = 8; steps <= 8 * 16; steps *= 2) {
      auto so = sphere_options(c);
      so.steps = steps;
      hs.push_back(r / steps);
      areas.push_back(ambient::geodesic_sphere(chart, p, r, so).area);
    }
    ctx.emit_convergence(convergence_table("area", "h", hs, areas), "integrator_convergence");
  }
}

void run_shitam_flow(Context& ctx) {
  const auto& c = ctx.cfg;
  const auto base = surface::make_surface(c.surfaces.front());
  const qsflow::ExteriorFoliation fol(base, c.nodes);
  qsflow::FlowOptions fo;
  fo.rho_max = c.rho_max;
  fo.step_rel = c.step_rel;

  const std::optional<double> u0c = parse_u0(c.u0);
  std::optional<spectral::DiracSpectrumResult> spec;
  std::function<double(double)> u0;
  if (!u0c) {
    spec = spectral::conformal_dirac_spectrum(surface_metric(base), spectrum_options(c));
    u0 = qsflow::certificate_initial_data(base, spec->lambda1);
  } else {
    u0 = [k = *u0c](double) { return k; };
  }

  const auto run_one = [&](double step_rel) {
    auto o = fo;
    o.step_rel = step_rel;
    return qsflow::run_flow(fol, u0, o);
  };
  qsflow::FlowResult flow = run_one(fo.step_rel);
  qsflow::attach_residuals(fol, flow);

  Table traj{{"rho", "min_u", "max_u", "Q", "residual"}, {}};
  for (const auto& s : flow.trajectory) traj.add({s.rho, s.min_u, s.max_u, s.Q, s.residual});
  write_atomic(ctx.path("trajectory.csv"), to_csv(traj, ctx.stamp));

  double worst = -INFINITY, max_res = 0;
  for (std::size_t i = 1; i < flow.trajectory.size(); ++i) {
    worst = std::max(worst, flow.trajectory[i].Q - flow.trajectory[i - 1].Q);
    max_res = std::max(max_res, flow.trajectory[i].residual);
  }
  const json summary{{"rho_max", flow.rho_max},       {"Q_inf", flow.Q_inf},
                     {"mass", flow.mass},             {"tail_slope", flow.tail_slope},
                     {"tail_rms", flow.tail_rms},     {"max_deviation", flow.max_deviation},
                     {"rejected_steps", flow.rejected_steps},
                     {"steps", flow.trajectory.size() - 1},
                     {"max_residual", max_res}};
  ctx.body["flow"] = summary;
  ctx.log << "mass " << format_number(flow.mass) << "  Q0 " << format_number(flow.trajectory[0].Q)
          << "  max residual " << format_number(max_res) << "\n";

  if (spec) {
    const auto cert = qsflow::theorem1_certificate(fol, *spec, flow, c.tol);
    ctx.records = cert.records;
    write_atomic(ctx.path("certificate.json"),
                 wrap(ctx.stamp, {{"certificate", json(cert)}}).dump(2) + "\n");
  } else {
    ctx.records.push_back(harness::make_record("qsflow.monotone_step", base.label(), worst, 0.0,
                                              fo.monotone_tol, "qsflow", "zero"));
    if (flow.mass < 1e-6)
      ctx.records.push_back(harness::make_record("qsflow.flat_rigidity", base.label(),
                                                 flow.max_deviation, 1e-4, 0.0, "qsflow",
                                                 "threshold"));
  }
  if (ctx.csv()) {
    Table t{{"quantity", "value"}, {}};
    for (auto& [k, v] : summary.items()) t.add_text({k, format_number(v.get<double>())});
    ctx.emit_table("flow_summary", t);
  }
  if (c.convergence) {
    std::vector<double> hs{fo.step_rel}, mass{flow.mass};
    for (double h : {fo.step_rel / 2, fo.step_rel / 4}) {
      hs.push_back(h);
      mass.push_back(run_one(h).mass);
    }
    ctx.emit_convergence(convergence_table("mass", "step_rel", hs, mass), "flow_convergence");
  }
}

void run_hyperbolic(Context& ctx) {
  const auto& c = ctx.cfg;
  const auto opts = spectrum_options(c);
  std::vector<std::string> inputs = c.surfaces;
  if (inputs.empty())
    for (double r : parse_radii(c.radii, c.kind))
      inputs.push_back("hyp-geodesic-sphere:r=" + format_number(r) + ",kappa=1");
  const int n = static_cast<int>(inputs.size());
  std::vector<harness::HyperbolicReport> rep(n);
  std::vector<std::vector<CheckRecord>> limit(n);
  parallel_for(n, c.threads, [&](int i) {
    const auto s = surface::make_surface(inputs[i]);
    if (s.ambient() != surface::AmbientKind::hyperbolic)
      throw PreconditionError("hyperbolic: '" + inputs[i] + "' is not in hyperbolic space");
    rep[i] = harness::hyperbolic_checks(s, opts, c.tol);
    if (c.kappa_limit > 0) limit[i] = harness::kappa_limit_checks(s.profile_ptr(), c.kappa_limit, opts);
  });
  Table t{{"surface", "kappa", "lambda1", "lambda_pm", "area", "cosh_area", "cosh_H0", "sup_H"}, {}};
  for (int i = 0; i < n; ++i) {
    const auto& h = rep[i];
    t.add_text({inputs[i], format_number(h.kappa), format_number(h.lambda1),
                format_number(h.lambda_pm), format_number(h.area), format_number(h.cosh_area),
                format_number(h.cosh_H0), format_number(h.sup_H)});
    ctx.records.insert(ctx.records.end(), h.records.begin(), h.records.end());
    ctx.records.insert(ctx.records.end(), limit[i].begin(), limit[i].end());
  }
  ctx.emit_table("hyperbolic", t);
}

int verdict_status(const std::vector<CheckRecord>& records) {
  if (!harness::all_hold(records)) return kExitViolation;
  if (harness::any_inconclusive(records)) return kExitNumerical;
  return kExitOk;
}

}  // namespace

int run(const ExperimentConfig& config, std::ostream& log) {
  Context ctx{config, log, {to_string(config.kind), config.hash()}, json::object(), {}};
  log << version_line() << "  " << ctx.stamp.experiment << "  config " << ctx.stamp.config_hash
      << "\n";
  int status = kExitOk;
  try {
    switch (config.kind) {
      case Experiment::spectrum: run_spectrum(ctx); break;
      case Experiment::thm1: run_thm1(ctx); break;
      case Experiment::large_sphere: run_large_sphere(ctx); break;
      case Experiment::small_sphere: run_small_sphere(ctx); break;
      case Experiment::shitam_flow: run_shitam_flow(ctx); break;
      case Experiment::hyperbolic: run_hyperbolic(ctx); break;
    }
    for (const auto& r : ctx.records) {
      char line[64];
      std::snprintf(line, sizeof line, "%-12s slack %+.3e", harness::to_string(r.verdict).c_str(),
                    r.slack);
      log << line << "  " << r.theorem << "  " << r.inputs << "\n";
    }
    if (ctx.csv()) {
      ctx.emit_table("records", records_table(ctx.records));
    } else {
      ctx.body["records"] = ctx.records;
      write_atomic(ctx.path(ctx.stamp.experiment + ".json"),
                   wrap(ctx.stamp, ctx.body).dump(2) + "\n");
    }
    status = verdict_status(ctx.records);
  } catch (const IoError& e) {
    log << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ParseError& e) {
    log << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    log << e.kind() << " error: " << e.what() << "\n";
    return kExitNumerical;
  }
  log << "status " << status << "\n";
  return status;
}

}  // namespace dlab::cli
