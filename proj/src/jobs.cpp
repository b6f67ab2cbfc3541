#include "ymlab/jobs.hpp"

#include "ymlab/bubble.hpp"
#include "ymlab/checks.hpp"
#include "ymlab/energy.hpp"
#include "ymlab/field_io.hpp"
#include "ymlab/frames.hpp"
#include "ymlab/gauge.hpp"
#include "ymlab/instanton.hpp"
#include "ymlab/ym.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <set>

namespace ymlab {

namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

// Typed access to a job config. Every key must be consumed by the parser, so
// typos are reported instead of silently ignored.
class ConfigReader {
 public:
  ConfigReader(const Json& j, std::string job) : j_(j), job_(std::move(job)) {
    require(j_.is_object(), job_ + ": config must be a JSON object");
  }

  bool has(const std::string& key) const { return j_.contains(key) && !j_.at(key).is_null(); }

  int integer(const std::string& key, int fallback) {
    seen_.insert(key);
    if (!has(key)) return fallback;
    const Json& v = j_.at(key);
    require(v.is_number_integer(), job_ + ": '" + key + "' must be an integer");
    return v.get<int>();
  }

  double real(const std::string& key, double fallback) {
    seen_.insert(key);
    if (!has(key)) return fallback;
    const Json& v = j_.at(key);
    require(v.is_number(), job_ + ": '" + key + "' must be a number");
    const double x = v.get<double>();
    require(std::isfinite(x), job_ + ": '" + key + "' must be finite");
    return x;
  }

  std::string text(const std::string& key, const std::string& fallback) {
    seen_.insert(key);
    if (!has(key)) return fallback;
    const Json& v = j_.at(key);
    require(v.is_string(), job_ + ": '" + key + "' must be a string");
    return v.get<std::string>();
  }

  bool flag(const std::string& key, bool fallback) {
    seen_.insert(key);
    if (!has(key)) return fallback;
    const Json& v = j_.at(key);
    require(v.is_boolean(), job_ + ": '" + key + "' must be true or false");
    return v.get<bool>();
  }

  std::vector<double> reals(const std::string& key, const std::vector<double>& fallback) {
    seen_.insert(key);
    if (!has(key)) return fallback;
    const Json& v = j_.at(key);
    if (v.is_number()) return {real(key, 0.0)};
    require(v.is_array() && !v.empty(), job_ + ": '" + key + "' must be a number or a non-empty list");
    std::vector<double> out;
    for (const auto& x : v) {
      require(x.is_number() && std::isfinite(x.get<double>()), job_ + ": '" + key + "' entries must be finite numbers");
      out.push_back(x.get<double>());
    }
    return out;
  }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      require(seen_.count(key) > 0, job_ + ": unknown config key '" + key + "'");
    }
  }

 private:
  const Json& j_;
  std::string job_;
  std::set<std::string> seen_;
};

void require_grid_size(const std::string& job, int n) {
  require(n >= 9 && n % 2 == 1, job + ": grid must be odd and at least 9, got " + std::to_string(n));
}

void require_positive(const std::string& job, const std::string& key, double v) {
  require(v > 0.0, job + ": '" + key + "' must be positive");
}

Json lambda_list(const std::vector<double>& ls) {
  Json out = Json::array();
  for (double l : ls) out.push_back(number(l));
  return out;
}

void require_lambdas(const std::string& job, const std::vector<double>& ls) {
  for (double l : ls) require(l > 0.0, job + ": lambda values must be positive");
}

std::string out_dir(ConfigReader& r, const std::string& job) {
  const std::string out = r.text("out", "");
  require(!out.empty(), job + ": an output directory is required");
  return out;
}

void make_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorCode::io, "cannot create " + dir.string() + ": " + ec.message());
}

void write_json(const fs::path& path, const Json& doc) { write_atomic(path, dump(doc)); }

Json energy_json(const EnergyReport& e) {
  Json j;
  j["ym_energy"] = number(e.ym);
  j["e_energy"] = number(e.e_energy);
  j["w12_seminorm"] = number(e.w12_seminorm);
  j["l2_of_A"] = number(e.l2_of_A);
  j["weak_l2_of_F"] = number(e.weak_l2_of_F);
  return j;
}

Json trace_json_coulomb(const CoulombReport& rep) {
  Json j;
  j["iterations"] = rep.iterations;
  j["converged"] = rep.converged;
  j["initial_l2_of_A"] = number(rep.initial_l2_of_A);
  j["final_l2_of_A"] = number(rep.final_l2_of_A);
  j["coulomb_residual_l2"] = number(rep.coulomb_residual_l2);
  return j;
}

std::string lambda_tag(double l) { return "lambda_" + format_number(l); }

// ---------------------------------------------------------------- instanton

Json instanton_job(const Json& raw) {
  const std::string job = "instanton";
  ConfigReader r(raw, job);
  const int n = r.integer("grid", 33);
  const std::vector<double> lambdas = r.reals("lambda", {1.0});
  const std::string domain = r.text("domain", "ball");
  const bool skip_field = r.flag("skip_field", false);
  const int points = r.integer("profile_points", 16);
  const std::string out = out_dir(r, job);
  r.finish();
  require_grid_size(job, n);
  require_lambdas(job, lambdas);
  require(points >= 1, job + ": profile_points must be at least 1");
  const Domain dom = domain_from_string(domain);

  Json config;
  config["grid"] = n;
  config["lambda"] = lambda_list(lambdas);
  config["domain"] = domain;
  config["skip_field"] = skip_field;
  config["profile_points"] = points;
  config["out"] = out;

  const fs::path dir = out;
  make_dir(dir);
  const Grid grid(4, n, dom);
  const double r_max = 1.0;
  std::vector<double> radii;
  for (int k = 1; k <= points; ++k) radii.push_back(r_max * k / points);

  CsvTable blowup({"lambda", "w12_seminorm", "ym_energy", "radial_ym_energy", "radial_w12_seminorm",
                   "chern_half", "l2_of_A"});
  CsvTable profile({"lambda", "radius", "grid_energy", "radial_energy"});
  Json entries = Json::array();
  for (double lambda : lambdas) {
    const ConnectionField a = sample_bpst(grid, {lambda, {}});
    const EnergyReport e = energy_report(a);
    const double radial_r4 = bpst_radial_energy(lambda);
    const double radial_ball = bpst_radial_energy(lambda, r_max);
    const double radial_w12 = bpst_radial_w12(lambda, r_max);
    const double chern = chern_integral(a, 0.5);
    const DensityProfile prof = density_profile(a, {0.0, 0.0, 0.0, 0.0}, radii);
    for (std::size_t k = 0; k < prof.radii.size(); ++k) {
      profile.add_row({lambda, prof.radii[k], prof.values[k], bpst_radial_energy(lambda, prof.radii[k])});
    }
    blowup.add_row({lambda, e.w12_seminorm, e.ym, radial_ball, radial_w12, chern, e.l2_of_A});

    Json entry;
    entry["lambda"] = number(lambda);
    entry["grid"] = energy_json(e);
    entry["radial_ym_energy_r4"] = number(radial_r4);
    entry["radial_ym_energy_ball"] = number(radial_ball);
    entry["radial_w12_seminorm_ball"] = number(radial_w12);
    entry["chern_integral_half"] = number(chern);
    entry["relative_error_r4"] = number(std::abs(radial_r4 - 8.0 * kPi * kPi) / (8.0 * kPi * kPi));
    if (dom == Domain::ball) entry["relative_error_ball"] = number(std::abs(e.ym - radial_ball) / radial_ball);
    if (!skip_field) {
      const std::string file = "bpst_" + lambda_tag(lambda) + ".json";
      write_field(dir / file, a);
      entry["field"] = file;
    }
    entries.push_back(entry);
  }

  Json body;
  body["instantons"] = entries;
  const Json doc = report_document("instanton", config, body);
  write_json(dir / "instanton_report.json", doc);
  write_atomic(dir / "blowup.csv", blowup.str(config));
  write_atomic(dir / "profile.csv", profile.str(config));
  return doc;
}

// ---------------------------------------------------------------- coulomb

Json coulomb_job(const Json& raw) {
  const std::string job = "coulomb";
  ConfigReader r(raw, job);
  const std::string in = r.text("in", "");
  CoulombOptions opts;
  opts.tol = r.real("tol", opts.tol);
  opts.max_iter = r.integer("max_iter", opts.max_iter);
  const std::string out = out_dir(r, job);
  r.finish();
  require(!in.empty(), job + ": an input field (--in) is required");
  require_positive(job, "tol", opts.tol);
  require(opts.max_iter >= 0, job + ": max_iter must be non-negative");

  const ConnectionField a = read_one_form(in);
  require(a.grid().is_full(), job + ": the input must cover the whole grid, not a window");

  Json config;
  config["in"] = in;
  config["tol"] = number(opts.tol);
  config["max_iter"] = opts.max_iter;
  config["out"] = out;

  const fs::path dir = out;
  make_dir(dir);
  Json body;
  body["grid"] = {{"m", a.grid().dim()}, {"n_per_axis", a.grid().n_per_axis()},
                  {"domain", to_string(a.grid().domain())}};
  CoulombResult res;
  try {
    res = coulomb_fix(a, opts);
  } catch (const SolverFailure& e) {
    body["converged"] = false;
    body["error"] = e.what();
    body["linear_solver_residual"] = number(e.residual());
    const Json doc = report_document("coulomb", config, body);
    write_json(dir / "coulomb_report.json", doc);
    throw JobFailed(JobFailed::Reason::stagnation, e.what(), doc);
  }
  body.update(trace_json_coulomb(res.report));
  double worst_increase = 0.0;
  CsvTable trace({"iteration", "objective", "residual", "step"});
  for (std::size_t k = 0; k < res.report.trace.size(); ++k) {
    const auto& row = res.report.trace[k];
    trace.add_row({static_cast<double>(row.iteration), row.objective, row.residual, row.step});
    if (k > 0) worst_increase = std::max(worst_increase, row.objective - res.report.trace[k - 1].objective);
  }
  body["monotone"] = worst_increase <= 0.0;
  body["gauge"] = "gauge.json";
  body["field"] = "coulomb_field.json";
  body["trace"] = "coulomb_trace.csv";
  write_field(dir / "gauge.json", res.gauge);
  write_field(dir / "coulomb_field.json", res.field);
  write_atomic(dir / "coulomb_trace.csv", trace.str(config));
  const Json doc = report_document("coulomb", config, body);
  write_json(dir / "coulomb_report.json", doc);
  if (!res.report.converged) {
    throw JobFailed(JobFailed::Reason::stagnation,
                    "Coulomb fixing stopped at residual " + format_number(res.report.coulomb_residual_l2) +
                        " above tol " + format_number(opts.tol),
                    doc);
  }
  return doc;
}

// ---------------------------------------------------------------- plateau

ConnectionField builtin_boundary(const Grid& g, const std::string& kind) {
  ConnectionField a(g);
  if (kind == "zero") return a;
  for (std::size_t n = 0; n < a.node_count(); ++n) {
    const Point x = g.position(n);
    if (kind == "affine") {
      a.at(n, 0) = -x[1] * LieElement::basis(0);
      a.at(n, 1) = x[0] * LieElement::basis(0);
    } else {
      // twisted: non-abelian, supported on the first two components
      a.at(n, 0) = 0.5 * (x[1] * LieElement::basis(2) - x[0] * x[1] * LieElement::basis(0));
      a.at(n, 1) = 0.5 * (x[0] * LieElement::basis(1) + std::sin(x[0]) * LieElement::basis(2));
    }
  }
  return a;
}

Json plateau_job(const Json& raw) {
  const std::string job = "plateau";
  ConfigReader r(raw, job);
  const std::string in = r.text("in", "");
  const int n = r.integer("grid", 17);
  const int m = r.integer("dim", 3);
  const std::string boundary = r.text("boundary", "affine");
  PlateauOptions opts;
  opts.tol = r.real("tol", opts.tol);
  opts.max_iter = r.integer("max_iter", opts.max_iter);
  const std::string out = out_dir(r, job);
  r.finish();
  require_positive(job, "tol", opts.tol);
  require(opts.max_iter >= 0, job + ": max_iter must be non-negative");

  ConnectionField source;
  Json config;
  if (!in.empty()) {
    source = read_one_form(in);
    require(source.grid().domain() == Domain::cube && source.grid().is_full(),
            job + ": boundary fields must live on a full cube grid");
    config["in"] = in;
  } else {
    require_grid_size(job, n);
    require(m >= 2 && m <= 4, job + ": dim must be 2, 3 or 4");
    require(boundary == "zero" || boundary == "affine" || boundary == "twisted",
            job + ": boundary must be zero, affine or twisted");
    source = builtin_boundary(Grid(m, n), boundary);
    config["grid"] = n;
    config["dim"] = m;
    config["boundary"] = boundary;
  }
  config["tol"] = number(opts.tol);
  config["max_iter"] = opts.max_iter;
  config["out"] = out;

  const fs::path dir = out;
  make_dir(dir);
  const BoundaryData eta = boundary_from_field(source);
  const ConnectionField start = harmonic_extension(eta);
  const double start_energy = ym_energy(start);
  const PlateauResult res = plateau_minimize(eta, &start, opts);

  CsvTable trace({"iteration", "ym_energy", "gradient_norm", "step_size", "coulomb_residual"});
  for (const auto& row : res.trace) {
    trace.add_row({static_cast<double>(row.iteration), row.ym_energy, row.gradient_norm, row.step_size,
                   row.coulomb_residual});
  }
  Json body;
  body["converged"] = res.converged;
  body["iterations"] = res.trace.empty() ? 0 : res.trace.back().iteration;
  body["harmonic_extension_energy"] = number(start_energy);
  body["final_ym_energy"] = number(res.trace.back().ym_energy);
  body["final_gradient_norm"] = number(res.trace.back().gradient_norm);
  body["field"] = "plateau_field.json";
  body["trace"] = "plateau_trace.csv";
  write_field(dir / "plateau_field.json", res.field);
  write_atomic(dir / "plateau_trace.csv", trace.str(config));
  const Json doc = report_document("plateau", config, body);
  write_json(dir / "plateau_report.json", doc);
  if (!res.converged) {
    throw JobFailed(JobFailed::Reason::stagnation,
                    "Plateau descent stopped at gradient norm " + format_number(res.trace.back().gradient_norm),
                    doc);
  }
  return doc;
}

// ---------------------------------------------------------------- bubble

Json bubble_job(const Json& raw) {
  const std::string job = "bubble";
  ConfigReader r(raw, job);
  const int n = r.integer("grid", 33);
  const std::vector<double> lambdas = r.reals("lambda", {2.0, 4.0, 8.0, 16.0});
  const double epsilon = r.real("epsilon", 1.0);
  const std::string out = out_dir(r, job);
  r.finish();
  require_grid_size(job, n);
  require_lambdas(job, lambdas);
  require_positive(job, "epsilon", epsilon);

  Json config;
  config["grid"] = n;
  config["lambda"] = lambda_list(lambdas);
  config["epsilon"] = number(epsilon);
  config["out"] = out;

  const fs::path dir = out;
  make_dir(dir);
  const Grid grid(4, n, Domain::ball);
  CsvTable table({"lambda", "critical_radius", "scaled_radius", "energy_in_bubble", "neck_energy",
                  "exterior_energy", "total_energy", "quantization_defect"});
  Json rows = Json::array();
  for (double lambda : lambdas) {
    const BubbleReport b = bubble_detect(sample_bpst(grid, {lambda, {}}), epsilon);
    table.add_row({lambda, b.critical_radius, b.critical_radius * lambda, b.energy_in_bubble, b.neck_energy,
                   b.exterior_energy, b.total_energy, b.quantization_defect});
    Json row;
    row["lambda"] = number(lambda);
    row["critical_radius"] = number(b.critical_radius);
    row["bubble_center"] = {b.bubble_center[0], b.bubble_center[1], b.bubble_center[2], b.bubble_center[3]};
    row["energy_in_bubble"] = number(b.energy_in_bubble);
    row["neck_energy"] = number(b.neck_energy);
    row["exterior_energy"] = number(b.exterior_energy);
    row["total_energy"] = number(b.total_energy);
    row["quantization_defect"] = number(b.quantization_defect);
    rows.push_back(row);
  }
  Json body;
  body["bubbles"] = rows;
  const Json doc = report_document("bubble", config, body);
  write_atomic(dir / "bubble.csv", table.str(config));
  write_json(dir / "bubble_report.json", doc);
  return doc;
}

// ---------------------------------------------------------------- frames

Vec3 stereographic(double x, double y) {
  const double s = x * x + y * y;
  return {2.0 * x / (1.0 + s), 2.0 * y / (1.0 + s), (s - 1.0) / (1.0 + s)};
}

Vec3 bent_shear(double x, double y) { return {x + 0.5 * y + 0.25 * x * x, y, 0.3 * x * y}; }

struct FrameStats {
  double area = 0.0;
  double dirichlet = 0.0;
  double defect_sup = 0.0;
  double residual_sup = 0.0;
  std::size_t flagged = 0;
};

// Sup norms over the nodes with |x| <= 1/2.
FrameStats frame_stats(const DiscImmersion& u) {
  const Grid& g = u.grid();
  FrameStats s;
  s.area = area(u);
  s.dirichlet = dirichlet_energy(u);
  const ComplexField h = conformality_defect(u);
  const FrameResidual fr = frame_coulomb_residual(u);
  s.flagged = fr.flagged.size();
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    const Point x = g.position(n);
    if (x[0] * x[0] + x[1] * x[1] > 0.25 + 1e-12) continue;
    s.defect_sup = std::max(s.defect_sup, std::abs(h(n)));
    s.residual_sup = std::max(s.residual_sup, std::abs(fr.residual(n)));
  }
  return s;
}

Json stats_json(const FrameStats& s) {
  Json j;
  j["area"] = number(s.area);
  j["dirichlet_energy"] = number(s.dirichlet);
  j["conformality_defect_sup"] = number(s.defect_sup);
  j["frame_residual_sup"] = number(s.residual_sup);
  j["flagged_nodes"] = s.flagged;
  return j;
}

Json frames_job(const Json& raw) {
  const std::string job = "frames";
  ConfigReader r(raw, job);
  const int n = r.integer("grid", 65);
  const int samples = r.integer("samples", 50);
  const int seed = r.integer("seed", 42);
  const std::string out = out_dir(r, job);
  r.finish();
  require_grid_size(job, n);
  require(samples >= 0, job + ": samples must be non-negative");
  require(seed >= 0, job + ": seed must be non-negative");

  Json config;
  config["grid"] = n;
  config["samples"] = samples;
  config["seed"] = seed;
  config["out"] = out;

  const fs::path dir = out;
  make_dir(dir);
  const Grid g(2, n, Domain::ball);
  const std::map<std::string, std::function<Vec3(double, double)>> cases = {
      {"flat", [](double x, double y) { return Vec3{x, y, 0.0}; }},
      {"stereographic", stereographic},
      {"shear", [](double x, double y) { return Vec3{x + 0.5 * y, y, 0.0}; }},
      {"bent_shear", bent_shear},
  };
  Json named;
  for (const auto& [name, fn] : cases) named[name] = stats_json(frame_stats(sample_immersion(g, fn)));

  std::mt19937_64 gen(static_cast<std::uint64_t>(seed));
  auto uni = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen); };
  double worst_gap = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < samples; ++k) {
    const double a1 = uni(0.5, 1.5), a2 = uni(-0.5, 0.5), a3 = uni(0.5, 1.5);
    const double b1 = uni(-0.4, 0.4), b2 = uni(-0.4, 0.4), w = uni(0.5, 2.0);
    const DiscImmersion u = sample_immersion(g, [&](double x, double y) {
      return Vec3{a1 * x + a2 * y + b1 * std::sin(w * y), a3 * y + b2 * x * x, b1 * x * y + b2 * std::cos(w * x)};
    });
    worst_gap = std::max(worst_gap, area(u) - dirichlet_energy(u));
  }

  CsvTable conv({"n_per_axis", "h", "stereographic_residual_sup", "stereographic_defect_sup"});
  std::vector<int> levels;
  for (int k = n; k >= 9 && levels.size() < 4; k = (k - 1) / 2 + 1) {
    levels.insert(levels.begin(), k);
    if ((k - 1) % 4 != 0) break;
  }
  for (int k : levels) {
    const Grid gk(2, k, Domain::ball);
    const FrameStats s = frame_stats(sample_immersion(gk, stereographic));
    conv.add_row({static_cast<double>(k), gk.spacing(), s.residual_sup, s.defect_sup});
  }

  Json body;
  body["cases"] = named;
  body["random_samples"] = samples;
  body["max_area_minus_dirichlet"] = number(samples > 0 ? worst_gap : 0.0);
  const Json doc = report_document("frames", config, body);
  write_atomic(dir / "frames_convergence.csv", conv.str(config));
  write_json(dir / "frames_report.json", doc);
  return doc;
}

// ---------------------------------------------------------------- checks

Json checks_job(const Json& raw) {
  const std::string job = "checks";
  ConfigReader r(raw, job);
  const std::string suite = r.text("suite", "all");
  const int seed = r.integer("seed", 42);
  const std::string out = r.text("out", "");
  r.finish();
  require(seed >= 0, job + ": seed must be non-negative");
  const auto names = check_suites();
  require(suite == "all" || std::find(names.begin(), names.end(), suite) != names.end(),
          job + ": unknown suite '" + suite + "'");

  Json config;
  config["suite"] = suite;
  config["seed"] = seed;
  if (!out.empty()) config["out"] = out;

  const auto results = run_checks(suite, static_cast<std::uint64_t>(seed));
  Json list = Json::array();
  int failed = 0;
  for (const auto& c : results) {
    Json j;
    j["suite"] = c.suite;
    j["name"] = c.name;
    j["passed"] = c.passed;
    j["value"] = number(c.value);
    j["threshold"] = number(c.threshold);
    list.push_back(j);
    if (!c.passed) ++failed;
  }
  Json body;
  body["checks"] = list;
  body["passed"] = static_cast<int>(results.size()) - failed;
  body["failed"] = failed;
  const Json doc = report_document("checks", config, body);
  if (!out.empty()) {
    make_dir(out);
    write_json(fs::path(out) / "checks_report.json", doc);
  }
  if (failed > 0) throw JobFailed(JobFailed::Reason::checks_failed, std::to_string(failed) + " checks failed", doc);
  return doc;
}

using Job = std::function<Json(const Json&)>;

const std::vector<std::pair<std::string, Job>>& jobs() {
  static const std::vector<std::pair<std::string, Job>> j = {
      {"instanton", instanton_job}, {"coulomb", coulomb_job}, {"plateau", plateau_job},
      {"bubble", bubble_job},       {"frames", frames_job},   {"checks", checks_job},
  };
  return j;
}

}  // namespace

std::vector<std::string> job_names() {
  std::vector<std::string> out;
  for (const auto& [name, fn] : jobs()) out.push_back(name);
  return out;
}

Json run_job(const std::string& name, const Json& config) {
  for (const auto& [n, fn] : jobs())
    if (n == name) return fn(config);
  fail(ErrorCode::invalid_input, "unknown command '" + name + "'");
}

}  // namespace ymlab
