#include "ymlab/checks.hpp"

#include "ymlab/energy.hpp"
#include "ymlab/forms.hpp"
#include "ymlab/frames.hpp"
#include "ymlab/gauge.hpp"
#include "ymlab/instanton.hpp"
#include "ymlab/ym.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

namespace ymlab {

namespace {

constexpr double kPi = std::numbers::pi;

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  double uniform(double lo = -1.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(gen); }
  LieElement lie(double scale = 1.0) { return {scale * uniform(), scale * uniform(), scale * uniform()}; }
  GroupElement group() {
    Quaternion q{uniform(), uniform(), uniform(), uniform()};
    return GroupElement::from_quaternion((1.0 / std::sqrt(q.norm2())) * q);
  }
};

double norm(const LieElement& a) { return std::sqrt(killing_norm2(a)); }

// A_i = sum_k c_ik sin(f_k . x + p_k), random smooth Lie-valued coefficients.
ConnectionField smooth_connection(const Grid& g, Rng& rng, double amplitude) {
  const int m = g.dim();
  struct Mode {
    std::array<double, 4> f;
    double phase;
    std::array<LieElement, 4> c;
  };
  std::vector<Mode> modes(3);
  for (auto& md : modes) {
    for (int a = 0; a < 4; ++a) md.f[a] = rng.uniform(-1.5, 1.5);
    md.phase = rng.uniform(0.0, 2.0 * kPi);
    for (int i = 0; i < 4; ++i) md.c[i] = rng.lie(amplitude);
  }
  ConnectionField a(g);
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    const Point x = g.position(n);
    for (const auto& md : modes) {
      double arg = md.phase;
      for (int ax = 0; ax < m; ++ax) arg += md.f[ax] * x[ax];
      const double s = std::sin(arg);
      for (int i = 0; i < m; ++i) a.at(n, i) += s * md.c[i];
    }
  }
  return a;
}

GaugeField random_gauge(const Grid& g, Rng& rng) {
  GaugeField out(g);
  for (std::size_t n = 0; n < g.node_count(); ++n) out(n) = rng.group();
  return out;
}

class Collector {
 public:
  Collector(std::vector<CheckResult>& out, const std::string& suite) : out_(out), suite_(suite) {}
  // Passes when value <= threshold.
  void at_most(const std::string& name, double value, double threshold) {
    out_.push_back({suite_, name, value <= threshold, value, threshold});
  }

 private:
  std::vector<CheckResult>& out_;
  std::string suite_;
};

void lie_suite(Collector& c, Rng& rng) {
  double anti = 0.0, jacobi = 0.0, adinv = 0.0, assoc = 0.0, expinv = 0.0, unit = 0.0;
  for (int k = 0; k < 100; ++k) {
    const LieElement b = rng.lie(), d = rng.lie(), e = rng.lie();
    anti = std::max(anti, norm(bracket(b, d) + bracket(d, b)));
    jacobi = std::max(jacobi, norm(bracket(bracket(b, d), e) + bracket(bracket(d, e), b) + bracket(bracket(e, b), d)));
    const GroupElement g = rng.group();
    adinv = std::max(adinv, std::abs(killing_inner(adjoint(g, b), adjoint(g, d)) - killing_inner(b, d)));
    assoc = std::max(assoc, std::abs(killing_inner(bracket(b, d), e) - killing_inner(b, bracket(d, e))));
    const GroupElement p = exp_map(b) * exp_map(-b);
    expinv = std::max(expinv, std::abs(p.quaternion().w - 1.0) + norm(p.quaternion().imag()));
    unit = std::max(unit, exp_map(3.0 * b).unitarity_defect() + exp_map(3.0 * b).det_defect());
  }
  c.at_most("bracket_antisymmetry", anti, 1e-12);
  c.at_most("jacobi_identity", jacobi, 1e-12);
  c.at_most("killing_ad_invariance", adinv, 1e-12);
  c.at_most("bracket_killing_associativity", assoc, 1e-12);
  c.at_most("exp_inverse", expinv, 1e-12);
  c.at_most("exp_unitarity", unit, 1e-12);
}

void forms_suite(Collector& c, Rng& rng) {
  const Grid g(3, 9);
  ConnectionField a(g);
  LieElement coef[3][4];
  for (auto& row : coef)
    for (auto& v : row) v = rng.lie();
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    const Point x = g.position(n);
    for (int i = 0; i < 3; ++i) a.at(n, i) = coef[i][0] + x[0] * coef[i][1] + x[1] * coef[i][2] + x[2] * coef[i][3];
  }
  const CurvatureField da = d_one_form(a);
  double err = 0.0;
  for (std::size_t n = 0; n < g.node_count(); ++n)
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        err = std::max(err, norm(da.at(n, pair_index(3, i, j)) - (coef[j][i + 1] - coef[i][j + 1])));
  c.at_most("d_exact_on_affine", err, 1e-12);

  ScalarField one(g, 1.0), f(g), h(g);
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    f(n) = rng.uniform(0.0, 1.0);
    h(n) = f(n) + rng.uniform(0.0, 1.0);
  }
  c.at_most("cube_volume", std::abs(integrate(one) - 8.0), 1e-12);
  c.at_most("integrate_monotone", integrate(f) - integrate(h), 0.0);
}

void gauge_suite(Collector& c, Rng& rng) {
  const Grid g(4, 9);
  const ConnectionField a = smooth_connection(g, rng, 0.7);
  const CurvatureField f = curvature(a);
  const GaugeField gg = random_gauge(g, rng);
  const CurvatureField fg = curvature_transform(f, gg);
  const double e0 = ym_energy(f), e1 = ym_energy(fg);
  c.at_most("ym_curvature_transform_invariance", std::abs(e1 - e0) / e0, 1e-12);
  const double c0 = chern_integral(f, 0.75), c1 = chern_integral(fg, 0.75);
  c.at_most("chern_curvature_transform_invariance", std::abs(c1 - c0) / std::max(std::abs(c0), 1e-300), 1e-12);

  const Grid g3(3, 9);
  const ConnectionField b = smooth_connection(g3, rng, 0.5);
  CoulombOptions opts;
  opts.tol = 1e-8;
  const CoulombResult res = coulomb_fix(b, opts);
  double rise = 0.0;
  for (std::size_t k = 1; k < res.report.trace.size(); ++k)
    rise = std::max(rise, res.report.trace[k].objective - res.report.trace[k - 1].objective);
  c.at_most("coulomb_objective_monotone", rise, 1e-12);
  c.at_most("coulomb_residual", res.report.coulomb_residual_l2, opts.tol);
}

void energy_suite(Collector& c, Rng& rng) {
  const Grid g(3, 11);
  double worst = -1e300;
  for (int k = 0; k < 5; ++k) {
    ConnectionField a = smooth_connection(g, rng, 1.0);
    const LieElement dir = LieElement::basis(0);
    for (auto& v : a.values()) v = v[0] * dir;
    worst = std::max(worst, ym_energy(a) - e_energy(a));
  }
  c.at_most("abelian_ym_below_e_energy", worst, 1e-9);

  const Grid g4(4, 9, Domain::ball);
  double gap = -1e300;
  for (int k = 0; k < 10; ++k) {
    ScalarField f(g4), f2(g4);
    for (std::size_t n = 0; n < g4.node_count(); ++n) {
      f(n) = rng.uniform(0.0, 2.0);
      f2(n) = f(n) * f(n);
    }
    const double q = weak_l2_quasinorm(f);
    gap = std::max(gap, q * q - integrate(f2));
  }
  c.at_most("weak_l2_below_l2", gap, 1e-12);

  const ConnectionField a4 = sample_bpst(Grid(4, 9, Domain::ball), {2.0, {}});
  const auto prof = density_profile(a4, {}, {0.25, 0.5, 0.75, 1.0});
  double drop = 0.0;
  for (std::size_t k = 1; k < prof.values.size(); ++k) drop = std::max(drop, prof.values[k - 1] - prof.values[k]);
  c.at_most("density_profile_monotone", drop, 0.0);
}

void instanton_suite(Collector& c, Rng&) {
  const double target = 8.0 * kPi * kPi;
  double err = 0.0;
  for (double lambda : {1.0, 4.0, 16.0}) err = std::max(err, std::abs(bpst_radial_energy(lambda) - target) / target);
  c.at_most("bpst_radial_energy", err, 1e-6);
  const auto f = bpst_curvature({1.0, {}}, {0.0, 0.0, 0.0, 0.0});
  double s = 0.0;
  for (const auto& v : f) s += killing_norm2(v);
  c.at_most("bpst_center_density", std::abs(s - 48.0), 1e-12);
  double dual = 0.0;
  const auto fx = bpst_curvature({1.5, {}}, {0.3, -0.2, 0.7, 0.1});
  const auto star = hodge_dual(fx);
  for (int k = 0; k < 6; ++k) dual = std::max(dual, norm(star[k] - fx[k]));
  c.at_most("bpst_self_dual", dual, 1e-14);
}

void ym_suite(Collector& c, Rng& rng) {
  const Grid g(3, 9);
  const ConnectionField a = smooth_connection(g, rng, 0.8);
  c.at_most("discrete_gradient_check", discrete_gradient_check(a, rng.gen()).max_relative_error, 1e-6);

  ConnectionField lin(g);
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    const Point x = g.position(n);
    lin.at(n, 0) = (0.5 * x[1] - x[2]) * LieElement::basis(2);
    lin.at(n, 1) = (x[0] + 0.25) * LieElement::basis(2);
    lin.at(n, 2) = (2.0 * x[1]) * LieElement::basis(2);
  }
  double bmax = 0.0;
  for (const auto& v : bianchi_residual(lin).values()) bmax = std::max(bmax, norm(v));
  c.at_most("bianchi_affine_abelian", bmax, 1e-12);

  const Grid g2(2, 9);
  const PlateauResult zero = plateau_minimize(BoundaryData{ConnectionField(g2)}, nullptr);
  c.at_most("plateau_zero_boundary", zero.trace.back().ym_energy, 1e-10);
}

void frames_suite(Collector& c, Rng& rng) {
  const Grid g(2, 33, Domain::ball);
  double worst = -1e300;
  for (int k = 0; k < 10; ++k) {
    const double a1 = rng.uniform(0.5, 1.5), a2 = rng.uniform(-0.5, 0.5), a3 = rng.uniform(0.5, 1.5);
    const double b1 = rng.uniform(-0.4, 0.4), b2 = rng.uniform(-0.4, 0.4), w = rng.uniform(0.5, 2.0);
    const DiscImmersion u = sample_immersion(g, [&](double x, double y) {
      return Vec3{a1 * x + a2 * y + b1 * std::sin(w * y), a3 * y + b2 * x * x, b1 * x * y + b2 * std::cos(w * x)};
    });
    worst = std::max(worst, area(u) - dirichlet_energy(u));
  }
  c.at_most("area_below_dirichlet", worst, 1e-9);
  const DiscImmersion flat = sample_immersion(g, [](double x, double y) { return Vec3{x, y, 0.0}; });
  double r = 0.0;
  for (double v : frame_coulomb_residual(flat).residual.values()) r = std::max(r, std::abs(v));
  c.at_most("flat_frame_residual", r, 1e-12);
}

using Suite = std::function<void(Collector&, Rng&)>;

const std::vector<std::pair<std::string, Suite>>& suites() {
  static const std::vector<std::pair<std::string, Suite>> s = {
      {"lie", lie_suite},       {"forms", forms_suite}, {"gauge", gauge_suite},   {"energy", energy_suite},
      {"instanton", instanton_suite}, {"ym", ym_suite}, {"frames", frames_suite},
  };
  return s;
}

}  // namespace

std::vector<std::string> check_suites() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : suites()) names.push_back(name);
  return names;
}

std::vector<CheckResult> run_checks(const std::string& suite, std::uint64_t seed) {
  bool known = suite == "all";
  for (const auto& [name, fn] : suites()) known = known || name == suite;
  require(known, "unknown check suite '" + suite + "'");
  std::vector<CheckResult> out;
  for (const auto& [name, fn] : suites()) {
    if (suite != "all" && suite != name) continue;
    Rng rng(seed);
    Collector c(out, name);
    fn(c, rng);
  }
  return out;
}

}  // namespace ymlab
