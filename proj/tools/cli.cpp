#include "cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "droplet/error.hpp"
#include "droplet/fekete.hpp"
#include "droplet/geometry.hpp"
#include "droplet/hermitian_1d.hpp"
#include "droplet/transforms.hpp"
#include "droplet/variational.hpp"

namespace droplet::cli {

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Pass thresholds for `verify`.
constexpr double kEqualityTol = 1e-8;
constexpr double kMarginTol = -1e-9;
constexpr double kMassTol = 1e-8;
constexpr double kResidueTol = 1e-10;
constexpr double kRobinSpreadTol = 1e-7;
constexpr double kMomentTol = 1e-6;

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json cjson(Complex z) { return json::array({z.real(), z.imag()}); }

// NaN fields become null.
json maybe(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

ModelParams params_of(const RunConfig& cfg) {
  ModelParams P;
  P.tau = cfg.tau;
  P.c = cfg.c;
  P.p = parse_complex(cfg.p);
  P.symmetry =
      cfg.ensemble == "symplectic" ? Symmetry::SymplecticEnsemble : Symmetry::ComplexEnsemble;
  P.validate();
  return P;
}

json params_json(const ModelParams& P) {
  json j;
  j["tau"] = P.tau;
  j["c"] = P.c;
  j["p"] = cjson(P.p);
  j["ensemble"] = P.symmetry == Symmetry::SymplecticEnsemble ? "symplectic" : "complex";
  return j;
}

Phase phase_of(const ModelParams& P) {
  return P.centered() ? classify_phase(P) : Phase::PostCritical;
}

std::string resolve_path(const RunConfig& cfg, const std::string& ext) {
  if (!cfg.output.empty()) return cfg.output;
  if (const char* dir = std::getenv("DROPLET_OUTPUT_DIR"); dir != nullptr && *dir != '\0') {
    std::filesystem::create_directories(dir);
    return (std::filesystem::path(dir) / (cfg.subcommand + "." + ext)).string();
  }
  return {};
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << body;
  if (!f) throw std::runtime_error("write to " + path + " failed");
}

// Writes the main payload; CSV payloads get a JSON sidecar next to them
// (or on the error stream when writing to stdout).
void emit(const RunConfig& cfg, const std::string& body, const json* sidecar, std::ostream& out,
          std::ostream& err) {
  const std::string ext = cfg.format == Format::Json ? "json" : "csv";
  const std::string path = resolve_path(cfg, ext);
  if (path.empty()) {
    out << body;
    if (sidecar != nullptr) err << sidecar->dump(2) << '\n';
    return;
  }
  write_file(path, body);
  if (sidecar != nullptr) {
    write_file(std::filesystem::path(path).replace_extension(".meta.json").string(),
               sidecar->dump(2) + "\n");
  }
}

void add_timing(json& j, const RunConfig& cfg, Clock::time_point start) {
  if (cfg.deterministic) return;
  j["elapsed_seconds"] = std::chrono::duration<double>(Clock::now() - start).count();
}

json shape_json(const DropletRegion& region) {
  json j;
  if (region.postcritical()) {
    const auto& s = region.post();
    j["semi_x"] = s.semi_x;
    j["semi_y"] = s.semi_y;
    j["ellipse_center"] = s.ellipse_center;
    j["hole_center"] = cjson(s.hole_center);
    j["hole_radius"] = s.hole_radius;
  } else {
    const auto& m = region.pre().map;
    j["r1"] = m.r1;
    j["r2"] = m.r2;
    j["r3"] = m.r3;
    j["r4"] = m.r4;
    j["a"] = m.a;
    j["d"] = m.d;
  }
  return j;
}

const char* coords_name(Coords c) { return c == Coords::Symmetric ? "symmetric" : "squared"; }

int cmd_droplet(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  const ModelParams P = params_of(cfg);
  const int n = cfg.n > 0 ? cfg.n : 512;
  const Phase phase = phase_of(P);

  std::vector<DropletRegion> regions{make_droplet(P, Coords::Symmetric)};
  if (P.centered()) regions.push_back(make_droplet(P, Coords::Squared));

  json summary;
  summary["command"] = "droplet";
  summary["params"] = params_json(P);
  summary["phase"] = to_string(phase);
  summary["area_symmetric"] = area(regions[0]);
  summary["area_squared"] = regions.size() > 1 ? json(area(regions[1])) : json(nullptr);
  const Topology topo = topology(regions[0]);
  summary["topology"] = {{"components", topo.components},
                         {"holes", topo.holes},
                         {"double_points", topo.double_points}};
  summary[regions[0].postcritical() ? "shape" : "map"] = shape_json(regions[0]);

  std::ostringstream csv;
  json curves = json::array();
  csv << "coords,curve,re,im\n";
  for (const auto& region : regions) {
    const auto polylines = boundary_points(region, n);
    for (std::size_t k = 0; k < polylines.size(); ++k) {
      json pts = json::array();
      for (Complex z : polylines[k]) {
        csv << coords_name(region.coords) << ',' << k << ',' << num(z.real()) << ','
            << num(z.imag()) << '\n';
        pts.push_back(cjson(z));
      }
      curves.push_back(
          {{"coords", coords_name(region.coords)}, {"curve", k}, {"points", std::move(pts)}});
    }
  }
  add_timing(summary, cfg, start);

  if (cfg.format == Format::Json) {
    summary["curves"] = std::move(curves);
    emit(cfg, summary.dump(2) + "\n", nullptr, out, err);
  } else {
    emit(cfg, csv.str(), &summary, out, err);
  }
  return kOk;
}

PotentialChoice potential_of(const RunConfig& cfg, const ModelParams& P) {
  if (cfg.potential.empty()) return P.centered() ? PotentialChoice::Q : PotentialChoice::Qp;
  if (cfg.potential == "Q") return PotentialChoice::Q;
  if (cfg.potential == "Qhat") return PotentialChoice::Qhat;
  return PotentialChoice::Qp;
}

int cmd_fekete(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  const ModelParams P = params_of(cfg);
  const int n = cfg.n > 0 ? cfg.n : 256;
  if (n < 1) throw DomainError("--n must be >= 1");
  const PotentialChoice which = potential_of(cfg, P);

  ModelParams region_params = P;
  if (which != PotentialChoice::Qp) region_params.p = 0.0;
  const DropletRegion region = make_droplet(
      region_params, which == PotentialChoice::Qhat ? Coords::Squared : Coords::Symmetric);

  MinimizeOptions opts;
  opts.max_iter = cfg.max_iter;
  opts.tol = cfg.tol;
  opts.threads = cfg.threads;
  const FeketeConfiguration conf = minimize(n, P, which, cfg.seed, opts);
  const EmpiricalDiagnostics diag = empirical_diagnostics(conf, region, P, which);

  json summary;
  summary["command"] = "fekete";
  summary["params"] = params_json(P);
  summary["potential"] = to_string(which);
  summary["n"] = n;
  summary["seed"] = conf.seed;
  summary["converged"] = conf.converged;
  summary["iterations"] = conf.iterations;
  summary["energy"] = conf.energy;
  summary["grad_norm"] = conf.grad_norm;
  json dj;
  dj["phase"] = to_string(phase_of(region_params));
  dj["dilation"] = diag.dilation;
  dj["inside_fraction"] = diag.inside_fraction;
  dj["clusters"] = diag.clusters;
  dj["cluster_threshold"] = diag.cluster_threshold;
  dj["hole_expected"] = diag.hole_expected;
  dj["hole_detected"] = diag.hole_detected;
  dj["min_distance_to_charge"] = maybe(diag.min_distance_to_charge);
  json emp = json::array(), pred = json::array();
  for (Complex m : diag.empirical_moments) emp.push_back(cjson(m));
  for (Complex m : diag.predicted_moments) pred.push_back(cjson(m));
  dj["empirical_moments"] = std::move(emp);
  dj["predicted_moments"] = std::move(pred);
  dj["max_moment_error"] = maybe(diag.max_moment_error);
  summary["diagnostics"] = std::move(dj);
  add_timing(summary, cfg, start);

  if (cfg.format == Format::Json) {
    json pts = json::array();
    for (Complex z : conf.points) pts.push_back(cjson(z));
    summary["points"] = std::move(pts);
    emit(cfg, summary.dump(2) + "\n", nullptr, out, err);
  } else {
    std::ostringstream csv;
    csv << "re,im\n";
    for (Complex z : conf.points) csv << num(z.real()) << ',' << num(z.imag()) << '\n';
    emit(cfg, csv.str(), &summary, out, err);
  }
  if (!conf.converged) {
    err << "fekete: not converged after " << conf.iterations << " iterations (grad_norm "
        << num(conf.grad_norm) << ")\n";
    return kNotConverged;
  }
  return kOk;
}

json report_json(const VerificationReport& r) {
  json j;
  j["check"] = r.check;
  j["phase"] = to_string(r.phase);
  j["coords"] = coords_name(r.coords);
  j["grid_size"] = r.grid_size;
  j["interior_points"] = r.interior_points;
  j["rays"] = r.rays;
  j["ray_samples"] = r.ray_samples;
  j["interior_max_residual"] = maybe(r.interior_max_residual);
  j["robin_constant"] = maybe(r.robin_constant);
  j["robin_spread"] = maybe(r.robin_spread);
  j["exterior_min_margin"] = maybe(r.exterior_min_margin);
  j["min_exterior_gradient"] = maybe(r.min_exterior_gradient);
  j["far_field_margin"] = maybe(r.far_field_margin);
  j["monotone"] = r.monotone;
  j["violated"] = r.violated;
  j["offending_point"] = r.violated ? cjson(r.offending_point) : json(nullptr);
  return j;
}

// Flattens nested objects into section,key,value rows.
void flatten(const json& j, const std::string& prefix, std::ostream& os) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (it->is_object()) {
      flatten(*it, key, os);
    } else if (it->is_number_float()) {
      os << key << ',' << num(it->get<double>()) << '\n';
    } else if (it->is_string()) {
      os << key << ',' << it->get<std::string>() << '\n';
    } else {
      os << key << ',' << it->dump() << '\n';
    }
  }
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  ModelParams P = params_of(cfg);
  P.symmetry = Symmetry::ComplexEnsemble;
  const int grid = cfg.n > 0 ? cfg.n : 20;
  const int rays = cfg.k > 0 ? cfg.k : 64;
  const Phase phase = phase_of(P);
  SweepOptions sweep;
  sweep.threads = cfg.threads;

  json report;
  report["command"] = "verify";
  report["params"] = params_json(P);
  report["phase"] = to_string(phase);
  bool pass = true;

  const bool pre = P.centered() && phase == Phase::PreCritical;
  const DropletRegion region =
      pre ? precritical_droplet(P, Coords::Squared) : make_droplet(P, Coords::Symmetric);
  report["area"] = area(region);
  report["area_coords"] = coords_name(region.coords);
  if (!pre) {
    const double form = probe_containment(P).max_form;
    report["containment"] = {{"max_form", form}, {"contained", form <= 1.0 + 1e-12}};
    pass = pass && form <= 1.0 + 1e-12;
  }

  const VerificationReport eq = verify_equality(P, region, grid, sweep);
  const VerificationReport ineq = verify_inequality(P, region, rays, sweep);
  report["equality"] = report_json(eq);
  report["inequality"] = report_json(ineq);
  pass = pass && eq.interior_points > 0 && eq.interior_max_residual <= kEqualityTol;
  if (std::isfinite(eq.robin_spread)) pass = pass && eq.robin_spread <= kRobinSpreadTol;
  pass = pass && !ineq.violated && ineq.exterior_min_margin >= kMarginTol;
  if (std::isfinite(ineq.min_exterior_gradient)) pass = pass && ineq.min_exterior_gradient > 0.0;

  if (pre) {
    const MassOneReport m = mass_one_details(region.pre().map, P);
    report["mass_one"] = {{"contour", m.contour},
                          {"expected_total", m.expected_total},
                          {"contour_residual", m.contour_residual},
                          {"residue_zero", m.residue_zero},
                          {"residue_zero_residual", m.residue_zero_residual},
                          {"residue_a", m.residue_a},
                          {"residue_a_residual", m.residue_a_residual},
                          {"nodes", m.nodes}};
    pass = pass && m.contour_residual <= kMassTol && m.residue_zero_residual <= kResidueTol &&
           m.residue_a_residual <= kResidueTol;
  }
  report["pass"] = pass;
  add_timing(report, cfg, start);

  if (cfg.format == Format::Json) {
    emit(cfg, report.dump(2) + "\n", nullptr, out, err);
  } else {
    std::ostringstream csv;
    csv << "key,value\n";
    flatten(report, "", csv);
    emit(cfg, csv.str(), nullptr, out, err);
  }
  if (!pass) {
    err << "verify: FAIL\n";
    return kVerificationFailed;
  }
  return kOk;
}

int cmd_spectrum1d(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  const Complex p = parse_complex(cfg.p);
  if (p.imag() != 0.0) throw DomainError("spectrum1d needs a real charge location");
  if (!(cfg.c >= 0.0) || !std::isfinite(cfg.c) || !std::isfinite(p.real())) {
    throw DomainError("c must be finite and >= 0");
  }
  const int n = cfg.n > 0 ? cfg.n : 1001;
  if (n < 2) throw DomainError("--n must be >= 2");
  const auto s = hermitian1d::make_spectral_density(cfg.c, p.real());
  const double lo = s.lambda[0] - 0.5, hi = s.lambda[3] + 0.5;
  const double mass = hermitian1d::total_mass(s);

  json summary;
  summary["command"] = "spectrum1d";
  summary["c"] = cfg.c;
  summary["p"] = p.real();
  summary["edges"] = s.lambda;
  summary["single_band"] = s.single_band;
  summary["total_mass"] = mass;
  summary["mass_residual"] = std::abs(mass - 1.0);
  add_timing(summary, cfg, start);

  std::vector<double> xs(n), ds(n);
  for (int j = 0; j < n; ++j) {
    xs[j] = lo + (hi - lo) * j / (n - 1);
    ds[j] = hermitian1d::density(s, xs[j]);
  }
  if (cfg.format == Format::Json) {
    summary["x"] = xs;
    summary["density"] = ds;
    emit(cfg, summary.dump(2) + "\n", nullptr, out, err);
  } else {
    std::ostringstream csv;
    csv << "x,density\n";
    for (int j = 0; j < n; ++j) csv << num(xs[j]) << ',' << num(ds[j]) << '\n';
    emit(cfg, csv.str(), &summary, out, err);
  }
  return kOk;
}

int cmd_moments(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  const ModelParams P = params_of(cfg);
  const int k = cfg.k > 0 ? cfg.k : 4;
  if (k > 64) throw DomainError("--k must be <= 64");
  const Phase phase = phase_of(P);
  const bool pre = P.centered() && phase == Phase::PreCritical;

  std::vector<std::optional<Complex>> closed(k + 1);
  std::vector<Complex> series(k + 1);
  if (pre) {
    // Symmetric-coordinate moments from the squared measure: m_{2j} = mhat_j.
    const RationalMap map = build_rational_map(P);
    const auto squared = precritical_laurent_moments(map, P, k / 2 + 1);
    for (int j = 0; j <= k; ++j) series[j] = j % 2 == 0 ? squared[j / 2] : Complex{};
  } else {
    series = postcritical_laurent_moments(P, k + 1);
    for (int j = 0; j <= k; ++j) closed[j] = equilibrium_moment(P, j);
  }

  double discrepancy = kNaN;
  json rows = json::array();
  std::ostringstream csv;
  csv << "k,closed_re,closed_im,series_re,series_im\n";
  for (int j = 0; j <= k; ++j) {
    const Complex cl = closed[j].value_or(Complex{kNaN, kNaN});
    if (closed[j]) {
      const double e = std::abs(*closed[j] - series[j]);
      discrepancy = std::isnan(discrepancy) ? e : std::max(discrepancy, e);
    }
    csv << j << ',' << num(cl.real()) << ',' << num(cl.imag()) << ',' << num(series[j].real())
        << ',' << num(series[j].imag()) << '\n';
    rows.push_back({{"k", j},
                    {"closed", closed[j] ? cjson(*closed[j]) : json(nullptr)},
                    {"series", cjson(series[j])}});
  }

  json summary;
  summary["command"] = "moments";
  summary["params"] = params_json(P);
  summary["phase"] = to_string(phase);
  summary["max_discrepancy"] = maybe(discrepancy);
  add_timing(summary, cfg, start);
  if (cfg.format == Format::Json) {
    summary["moments"] = std::move(rows);
    emit(cfg, summary.dump(2) + "\n", nullptr, out, err);
  } else {
    emit(cfg, csv.str(), &summary, out, err);
  }
  if (std::isfinite(discrepancy) && discrepancy > kMomentTol) {
    err << "moments: discrepancy " << num(discrepancy) << " exceeds " << num(kMomentTol) << '\n';
    return kVerificationFailed;
  }
  return kOk;
}

void add_params(CLI::App* app, RunConfig& cfg) {
  app->add_option("--tau", cfg.tau, "Non-Hermiticity in [0, 1)");
  app->add_option("--c", cfg.c, "Charge strength, >= 0");
  app->add_option("--p", cfg.p, "Charge location as re,im");
}

void add_output(CLI::App* app, RunConfig& cfg) {
  const std::map<std::string, Format> formats{{"csv", Format::Csv}, {"json", Format::Json}};
  app->add_option("--output,-o", cfg.output,
                  "Output file (default: stdout or $DROPLET_OUTPUT_DIR)");
  app->add_option("--format", cfg.format, "csv or json")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  app->add_flag("--deterministic", cfg.deterministic, "Omit timing fields from the output");
  app->add_option("--threads", cfg.threads, "OpenMP threads (0: default)")
      ->check(CLI::NonNegativeNumber);
}

}  // namespace

Complex parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  try {
    std::size_t used = 0;
    if (comma == std::string::npos) {
      const double re = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return {re, 0.0};
    }
    const std::string a = text.substr(0, comma), b = text.substr(comma + 1);
    const double re = std::stod(a, &used);
    if (used != a.size()) throw std::invalid_argument(text);
    const double im = std::stod(b, &used);
    if (used != b.size()) throw std::invalid_argument(text);
    return {re, im};
  } catch (const std::logic_error&) {
    throw DomainError("cannot parse complex number '" + text + "' (expected re,im)");
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Equilibrium droplets of the elliptic Ginibre ensemble with a point charge",
               "eqdroplet"};
  app.require_subcommand(1);

  auto* droplet = app.add_subcommand("droplet", "Boundary curves, phase, area and map");
  add_params(droplet, cfg);
  droplet->add_option("--n", cfg.n, "Boundary samples per curve");
  add_output(droplet, cfg);

  auto* fekete = app.add_subcommand("fekete", "Minimize the discrete energy");
  add_params(fekete, cfg);
  fekete->add_option("--n", cfg.n, "Number of points");
  fekete->add_option("--seed", cfg.seed, "Random seed");
  fekete->add_option("--potential", cfg.potential, "Q, Qhat or Qp")
      ->check(CLI::IsMember({"Q", "Qhat", "Qp"}));
  fekete->add_option("--ensemble", cfg.ensemble, "complex or symplectic")
      ->check(CLI::IsMember({"complex", "symplectic"}));
  fekete->add_option("--max-iter", cfg.max_iter, "Iteration limit")->check(CLI::PositiveNumber);
  fekete->add_option("--tol", cfg.tol, "Stop when |grad| <= tol * n")->check(CLI::PositiveNumber);
  add_output(fekete, cfg);

  auto* verify = app.add_subcommand("verify", "Certify the variational conditions");
  add_params(verify, cfg);
  verify->add_option("--n", cfg.n, "Interior grid size");
  verify->add_option("--k", cfg.k, "Number of exterior rays");
  add_output(verify, cfg);

  auto* spectrum = app.add_subcommand("spectrum1d", "Equilibrium density on the real line");
  spectrum->add_option("--c", cfg.c, "Charge strength, >= 0");
  spectrum->add_option("--p", cfg.p, "Real charge location");
  spectrum->add_option("--n", cfg.n, "Number of samples");
  add_output(spectrum, cfg);

  auto* moments = app.add_subcommand("moments", "Closed-form and series moments");
  add_params(moments, cfg);
  moments->add_option("--k", cfg.k, "Highest moment order");
  add_output(moments, cfg);

  std::vector<std::string> argv_store{"eqdroplet"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInvalidParams;
  }

  cfg.subcommand = app.get_subcommands().front()->get_name();
  try {
    if (cfg.subcommand == "droplet") return cmd_droplet(cfg, out, err);
    if (cfg.subcommand == "fekete") return cmd_fekete(cfg, out, err);
    if (cfg.subcommand == "verify") return cmd_verify(cfg, out, err);
    if (cfg.subcommand == "spectrum1d") return cmd_spectrum1d(cfg, out, err);
    return cmd_moments(cfg, out, err);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidParams;
  } catch (const PhaseError& e) {
    err << "phase error: " << e.what() << '\n';
    return kPhaseFailure;
  } catch (const ContainmentViolated& e) {
    err << "phase error: " << e.what() << '\n';
    return kPhaseFailure;
  } catch (const PhaseMismatch& e) {
    err << "phase error: " << e.what() << '\n';
    return kPhaseFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kOtherFailure;
  }
}

}  // namespace droplet::cli
