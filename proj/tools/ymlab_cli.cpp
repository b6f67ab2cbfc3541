#include "ymlab/ymlab.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using Json = nlohmann::ordered_json;

// Exit codes: 0 ok, 1 invalid config or input, 2 I/O, 3 solver stagnation,
// 4 failed checks, 5 internal error.
int exit_code(ymlab_status s) {
  switch (s) {
    case YMLAB_OK: return 0;
    case YMLAB_INVALID_INPUT:
    case YMLAB_UNSUPPORTED_DIMENSION: return 1;
    case YMLAB_IO: return 2;
    case YMLAB_SOLVER_FAILURE: return 3;
    case YMLAB_CHECKS_FAILED: return 4;
    case YMLAB_INTERNAL: return 5;
  }
  return 5;
}

struct Flags {
  std::optional<int> grid, max_iter, seed, dim, profile_points, samples;
  std::optional<double> tol, epsilon;
  std::vector<double> lambda;
  std::optional<std::string> out, in, domain, boundary, suite;
  bool skip_field = false;
};

template <class T>
void put(Json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

Json to_config(const Flags& f) {
  Json j = Json::object();
  put(j, "grid", f.grid);
  put(j, "dim", f.dim);
  if (!f.lambda.empty()) j["lambda"] = f.lambda;
  put(j, "tol", f.tol);
  put(j, "max_iter", f.max_iter);
  put(j, "seed", f.seed);
  put(j, "epsilon", f.epsilon);
  put(j, "profile_points", f.profile_points);
  put(j, "samples", f.samples);
  put(j, "domain", f.domain);
  put(j, "boundary", f.boundary);
  put(j, "suite", f.suite);
  put(j, "in", f.in);
  put(j, "out", f.out);
  if (f.skip_field) j["skip_field"] = true;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Yang-Mills numerical laboratory"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ymlab_version()));
  Flags f;

  auto grid = [&](CLI::App* c) { c->add_option("--grid", f.grid, "Nodes per axis (odd, >= 9)"); };
  auto out = [&](CLI::App* c, bool required) {
    auto* o = c->add_option("--out", f.out, "Output directory");
    if (required) o->required();
  };
  auto lambda = [&](CLI::App* c) {
    c->add_option("--lambda", f.lambda, "Concentration parameters, comma separated")->delimiter(',');
  };
  auto solver = [&](CLI::App* c) {
    c->add_option("--tol", f.tol, "Stopping tolerance");
    c->add_option("--max-iter", f.max_iter, "Iteration cap");
  };

  auto* inst = app.add_subcommand("instanton", "Sample BPST instantons and report their energies");
  grid(inst);
  lambda(inst);
  out(inst, true);
  inst->add_option("--domain", f.domain, "cube or ball");
  inst->add_option("--profile-points", f.profile_points, "Radii in the density profile");
  inst->add_flag("--skip-field", f.skip_field, "Do not write the sampled fields");

  auto* coul = app.add_subcommand("coulomb", "Put a connection in Coulomb gauge");
  coul->add_option("--in", f.in, "Input one-form manifest")->required();
  solver(coul);
  out(coul, true);

  auto* plat = app.add_subcommand("plateau", "Minimize the YM energy with fixed tangential boundary values");
  plat->add_option("--in", f.in, "Field whose boundary values are used");
  grid(plat);
  plat->add_option("--dim", f.dim, "Dimension of the built-in boundary data");
  plat->add_option("--boundary", f.boundary, "Built-in boundary data: zero, affine or twisted");
  solver(plat);
  out(plat, true);

  auto* bub = app.add_subcommand("bubble", "Detect energy concentration in BPST instantons");
  grid(bub);
  lambda(bub);
  bub->add_option("--epsilon", f.epsilon, "Concentration threshold");
  out(bub, true);

  auto* frm = app.add_subcommand("frames", "Area, Dirichlet energy and frame residuals of disc immersions");
  grid(frm);
  frm->add_option("--samples", f.samples, "Random immersions to test");
  frm->add_option("--seed", f.seed, "Random seed");
  out(frm, true);

  auto* chk = app.add_subcommand("checks", "Run the invariant suites");
  chk->add_option("--suite", f.suite, "Suite name or all");
  chk->add_option("--seed", f.seed, "Random seed");
  out(chk, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const std::string job = app.get_subcommands().front()->get_name();
  const std::string config = to_config(f).dump();
  char* summary = nullptr;
  const ymlab_status s = ymlab_run(job.c_str(), config.c_str(), &summary);
  if (summary) {
    std::cout << summary << '\n';
    ymlab_string_free(summary);
  }
  if (s != YMLAB_OK) std::fprintf(stderr, "ymlab %s: %s\n", job.c_str(), ymlab_last_error());
  return exit_code(s);
}
