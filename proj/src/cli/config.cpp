#include "diraclab/cli/config.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <iostream>
#include <map>
#include <sstream>

#include "diraclab/ambient/chart_descriptor.hpp"
#include "diraclab/cli/emit.hpp"
#include "diraclab/errors.hpp"
#include "diraclab/numerics/descriptor.hpp"
#include "diraclab/numerics/fit.hpp"
#include "diraclab/surface/shape_descriptor.hpp"

namespace dlab::cli {

std::string to_string(Experiment e) {
  switch (e) {
    case Experiment::spectrum: return "spectrum";
    case Experiment::thm1: return "thm1";
    case Experiment::large_sphere: return "large-sphere";
    case Experiment::small_sphere: return "small-sphere";
    case Experiment::shitam_flow: return "shitam-flow";
    case Experiment::hyperbolic: return "hyperbolic";
  }
  return "spectrum";
}

std::string ExperimentConfig::canonical() const {
  std::map<std::string, std::string> kv;
  const auto num = [](double v) { return format_number(v); };
  std::string surf;
  for (std::size_t i = 0; i < surfaces.size(); ++i) surf += (i ? ";" : "") + surfaces[i];
  kv["experiment"] = to_string(kind);
  kv["surface"] = surf;
  kv["metric"] = metric;
  kv["chart"] = chart;
  kv["point"] = point;
  kv["radii"] = radii;
  kv["u0"] = u0;
  kv["kappa-limit"] = num(kappa_limit);
  kv["L"] = std::to_string(L);
  kv["max-L"] = std::to_string(max_L);
  kv["spectral-tol"] = num(spectral_tol);
  kv["n-theta"] = std::to_string(n_theta);
  kv["n-phi"] = std::to_string(n_phi);
  kv["steps"] = std::to_string(steps);
  kv["nodes"] = std::to_string(nodes);
  kv["rho-max"] = num(rho_max);
  kv["step-rel"] = num(step_rel);
  kv["tol"] = num(tol);
  kv["sweep"] = std::to_string(sweep);
  kv["seed"] = std::to_string(seed);
  kv["convergence"] = convergence ? "1" : "0";
  kv["format"] = format;
  kv["svg"] = svg ? "1" : "0";
  // out and threads do not change results
  std::string s;
  for (const auto& [k, v] : kv) s += k + "=" + v + "\n";
  return s;
}

std::string ExperimentConfig::hash() const { return hex64(fnv1a64(canonical())); }

std::vector<double> parse_radii(const std::string& text, Experiment kind) {
  if (text.empty()) {
    switch (kind) {
      case Experiment::large_sphere: return {50, 100, 200, 400};
      case Experiment::small_sphere: return num::linspace(0.05, 0.3, 12);
      case Experiment::hyperbolic: return {0.5, 1, 2};
      default: return {};
    }
  }
  const auto to_num = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size() || !std::isfinite(v))
      throw ParseError("radii: bad number '" + s + "' in '" + text + "'");
    return v;
  };
  std::vector<std::string> parts;
  if (text.find(':') != std::string::npos) {
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw ParseError("radii: expected a:b:n, got '" + text + "'");
    const double n = to_num(parts[2]);
    if (n < 2 || n != std::floor(n)) throw ParseError("radii: count must be an integer >= 2");
    return num::linspace(to_num(parts[0]), to_num(parts[1]), static_cast<int>(n));
  }
  std::vector<double> out;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ',');) out.push_back(to_num(p));
  return out;
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ParseError(what);
}

}  // namespace

std::optional<double> parse_u0(const std::string& text) {
  if (text == "hmean") return std::nullopt;
  std::string t = text;
  // const:1.25 is shorthand for const:c=1.25
  if (t.rfind("const:", 0) == 0 && t.find('=') == std::string::npos) t = "const:c=" + t.substr(6);
  const num::Descriptor d = num::parse_descriptor(t);
  if (d.name != "const") throw ParseError("u0 must be hmean or const:c, got '" + text + "'");
  d.allow_only({"c"});
  return d.number("c");
}

Eigen::Vector3d parse_point(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ',');) {
    std::size_t used = 0;
    try {
      v.push_back(std::stod(p, &used));
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != p.size()) throw ParseError("point: bad number in '" + text + "'");
  }
  if (v.size() != 3) throw ParseError("point: expected x,y,z, got '" + text + "'");
  return {v[0], v[1], v[2]};
}

void validate(const ExperimentConfig& c) {
  require(c.L >= 4 && c.L <= c.max_L, "L must satisfy 4 <= L <= max-L");
  require(c.max_L <= 256, "max-L above 256");
  require(c.spectral_tol > 0, "spectral-tol must be positive");
  require(c.n_theta >= 8 && c.n_phi >= 8 && c.steps >= 4, "sphere grid too coarse");
  require(c.nodes >= 8, "nodes must be >= 8");
  require(c.rho_max >= 0, "rho-max must be >= 0");
  require(c.step_rel > 0 && c.step_rel < 1, "step-rel must lie in (0, 1)");
  require(c.tol > 0, "tol must be positive");
  require(c.sweep >= 0, "sweep must be >= 0");
  require(c.threads >= 1, "threads must be >= 1");
  require(c.format == "csv" || c.format == "json", "format must be csv or json");
  require(c.kappa_limit >= 0, "kappa-limit must be >= 0");

  const std::vector<double> radii = parse_radii(c.radii, c.kind);
  for (double r : radii) require(r > 0, "radii must be positive");

  for (const auto& s : c.surfaces) surface::make_surface(s);
  switch (c.kind) {
    case Experiment::spectrum:
      require(!c.metric.empty() || !c.surfaces.empty() || c.sweep > 0,
              "spectrum needs --metric, --surface or --sweep");
      if (!c.metric.empty()) {
        const num::Descriptor d = num::parse_descriptor(c.metric);
        require(d.name == "round" || d.name == "bump" || d.name == "samples",
                "unknown metric '" + d.name + "'");
      }
      break;
    case Experiment::thm1:
    case Experiment::shitam_flow:
      require(!c.surfaces.empty(), to_string(c.kind) + " needs --surface");
      if (c.kind == Experiment::shitam_flow) {
        require(c.surfaces.size() == 1, "shitam-flow takes one surface");
        const std::optional<double> k = parse_u0(c.u0);
        require(!k || *k > 0, "u0 constant must be positive");
      }
      break;
    case Experiment::large_sphere:
      ambient::make_chart(c.chart);
      require(radii.size() >= 4, "large-sphere needs at least 4 radii");
      break;
    case Experiment::small_sphere:
      ambient::make_chart(c.chart);
      parse_point(c.point);
      require(radii.size() >= 5, "small-sphere needs at least 5 radii");
      break;
    case Experiment::hyperbolic:
      require(!c.surfaces.empty() || !radii.empty(), "hyperbolic needs --surface or --radii");
      break;
  }
}

ParseOutcome parse_command_line(int argc, const char* const* argv) {
  ParseOutcome po;
  ExperimentConfig& c = po.config;
  CLI::App app{"Dirac eigenvalue bounds on spheres: spectra, inequality checks, quasi-spherical flow",
               "diraclab"};
  app.set_version_flag("--version", version_line());
  app.set_config("--config", "", "key=value file; flags override it");
  // descriptors contain commas; lists in config files use ';'
  app.get_config_formatter_base()->arrayDelimiter(';');
  app.require_subcommand(1, 1);

  app.add_option("--out", c.out, "output directory")->capture_default_str();
  app.add_option("--format", c.format, "csv or json")->capture_default_str();
  app.add_option("--tol", c.tol, "relative equality tolerance")->capture_default_str();
  app.add_option("--threads", c.threads, "concurrent items")->capture_default_str();
  app.add_option("--seed", c.seed, "seed for random sweeps")->capture_default_str();
  app.add_flag("--svg", c.svg, "also write log-log SVG plots");
  app.add_flag("--convergence", c.convergence, "emit a convergence table");

  app.add_option("--surface", c.surfaces, "shape descriptor (repeatable)");
  app.add_option("--metric", c.metric, "round:r=R, bump:seed=S,amp=A or samples:file=PATH");
  app.add_option("--chart", c.chart, "euclidean, schwarzschild:m=, spaceform:k=, perturbed:file=")
      ->capture_default_str();
  app.add_option("--point", c.point, "sphere centre x,y,z")->capture_default_str();
  app.add_option("--radii", c.radii, "a:b:n or r1,r2,...");
  app.add_option("--u0", c.u0, "hmean or const:c")->capture_default_str();
  app.add_option("--kappa-limit", c.kappa_limit, "small kappa for the Euclidean limit check");
  app.add_option("--L", c.L, "first spectral truncation")->capture_default_str();
  app.add_option("--max-L", c.max_L, "largest spectral truncation")->capture_default_str();
  app.add_option("--spectral-tol", c.spectral_tol, "relative lambda1 convergence tolerance")
      ->capture_default_str();
  app.add_option("--n-theta", c.n_theta, "sphere sampling rows")->capture_default_str();
  app.add_option("--n-phi", c.n_phi, "sphere sampling columns")->capture_default_str();
  app.add_option("--steps", c.steps, "RK4 steps per geodesic")->capture_default_str();
  app.add_option("--nodes", c.nodes, "flow collocation nodes")->capture_default_str();
  app.add_option("--rho-max", c.rho_max, "flow end; 0 means 50 diameters")->capture_default_str();
  app.add_option("--step-rel", c.step_rel, "flow step relative to rho + diameter/2")
      ->capture_default_str();
  app.add_option("--sweep", c.sweep, "random bump metrics for property checks")
      ->capture_default_str();

  const std::pair<const char*, Experiment> subs[] = {
      {"spectrum", Experiment::spectrum},         {"thm1", Experiment::thm1},
      {"large-sphere", Experiment::large_sphere}, {"small-sphere", Experiment::small_sphere},
      {"shitam-flow", Experiment::shitam_flow},   {"hyperbolic", Experiment::hyperbolic}};
  const char* help[] = {"Dirac spectrum of a sphere metric, property sweeps",
                        "upper bound, Bar, Bar-Hijazi and Minkowski checks",
                        "mass from large coordinate spheres",
                        "curvature from small geodesic spheres",
                        "quasi-spherical flow and the upper bound certificate",
                        "cosh-weighted bounds in hyperbolic space"};
  for (std::size_t i = 0; i < std::size(subs); ++i) {
    auto* sc = app.add_subcommand(subs[i].first, help[i]);
    sc->fallthrough();
    const Experiment e = subs[i].second;
    sc->callback([&c, e] { c.kind = e; });
  }

  try {
    app.parse(argc, argv);
    validate(c);
  } catch (const CLI::Success& e) {
    po.exit_now = true;
    po.exit_code = app.exit(e);
  } catch (const CLI::FileError& e) {
    std::cerr << "diraclab: " << e.what() << "\n";
    po.exit_now = true;
    po.exit_code = 74;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    po.exit_now = true;
    po.exit_code = 64;
  } catch (const IoError& e) {
    std::cerr << "diraclab: " << e.what() << "\n";
    po.exit_now = true;
    po.exit_code = 74;
  } catch (const Error& e) {
    std::cerr << "diraclab: " << e.what() << "\n" << "run with --help for usage\n";
    po.exit_now = true;
    po.exit_code = 64;
  }
  return po;
}

}  // namespace dlab::cli
