#include "doctest.h"
#include "support.hpp"

#include "ymlab/energy.hpp"
#include "ymlab/forms.hpp"
#include "ymlab/gauge.hpp"
#include "ymlab/instanton.hpp"

#include <algorithm>

using namespace test;

namespace {

// Discrete curl of a bump along s1: divergence free to roundoff since the
// difference stencils commute.
ConnectionField curl_of_bump(const Grid& g) {
  ScalarField psi(g);
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    const Point x = g.position(n);
    const double s = 0.5 - x[0] * x[0] - x[1] * x[1] - x[2] * x[2];
    psi(n) = s > 0.0 ? s * s * s : 0.0;
  }
  const ScalarField p0 = partial(psi, 0), p1 = partial(psi, 1);
  ConnectionField a(g);
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    a.at(n, 0) = p1(n) * LieElement::basis(0);
    a.at(n, 1) = -p0(n) * LieElement::basis(0);
  }
  return a;
}

}  // namespace

TEST_CASE("ym_energy") {
  CHECK(ym_energy(ConnectionField(Grid(4, 9))) == 0.0);
  for (double l : {0.5, 1.0, 3.0, 16.0}) CHECK(bpst_radial_energy(l) == doctest::Approx(kEightPi2).epsilon(1e-6));

  Rng r;
  const Grid g(4, 9);
  const CurvatureField f = curvature(gen_connection(g, r, 0.7));
  const double e = ym_energy(f);
  const double eg = ym_energy(curvature_transform(f, gen_pointwise_gauge(g, r)));
  CHECK(std::abs(eg - e) <= 1e-12 * e);
  CHECK(ym_energy(f, Region::ball(0.5)) < e);
}

TEST_CASE("e_energy against ym_energy for abelian fields") {
  const Grid g(3, 17);
  // Coulomb: the two energies agree.
  const ConnectionField c = curl_of_bump(g);
  const double yc = ym_energy(c);
  REQUIRE(yc > 0.0);
  CHECK(std::abs(e_energy(c) - yc) <= 1e-12 * yc);

  // Random abelian fields: YM <= E, strictly when d*A != 0.
  Rng r;
  for (int k = 0; k < 20; ++k) {
    const SmoothLie s0(r, 1.0), s1(r, 1.0), s2(r, 1.0);
    const ConnectionField a = abelian(g, [&](const Point& x, int i) { return (i == 0 ? s0 : i == 1 ? s1 : s2)(x)[0]; });
    const double ym = ym_energy(a), e = e_energy(a);
    CHECK(ym <= e + 1e-9);
    CHECK(e - ym > 1e-6);
  }

  // A = d phi: E = int |Laplacian phi|^2 up to the curl of the samples. phi = sin x cos y e^z,
  // Laplacian = -phi, int over the cube of phi^2 in closed form.
  double err[2], curl[2];
  int k = 0;
  for (int n : {17, 33}) {
    const Grid gg(3, n);
    const ConnectionField dphi = abelian(gg, [](const Point& x, int i) {
      const double ez = std::exp(x[2]);
      if (i == 0) return std::cos(x[0]) * std::cos(x[1]) * ez;
      if (i == 1) return -std::sin(x[0]) * std::sin(x[1]) * ez;
      return std::sin(x[0]) * std::cos(x[1]) * ez;
    });
    curl[k] = ym_energy(dphi);
    // |s1|^2 = 2 under the Killing product.
    const double sin2 = 1.0 - std::sin(2.0) / 2.0, cos2 = 1.0 + std::sin(2.0) / 2.0;
    const double exact = 2.0 * sin2 * cos2 * (std::exp(2.0) - std::exp(-2.0)) / 2.0;
    err[k++] = std::abs(e_energy(dphi) - exact) / exact;
  }
  INFO(err[0], " -> ", err[1]);
  CHECK(err[1] < 1e-2);
  // Sampled gradients are curl free at O(h^2), the energy at O(h^4).
  CHECK(order(curl[0], curl[1]) >= 3.4);
  CHECK(order(err[0], err[1]) >= 1.7);
}

TEST_CASE("w12_seminorm") {
  const Grid g(4, 9);
  Rng r;
  CHECK(w12_seminorm(ConnectionField(g, gen_lie(r))) <= 1e-24);
  double prev = 0.0;
  for (double l : {1.0, 2.0, 4.0, 8.0, 16.0}) {
    const double w = bpst_radial_w12(l);
    CHECK(w > prev);
    prev = w;
  }
  const Grid g17(4, 17);
  CHECK(w12_seminorm(sample_bpst(g17, {2.0, {}})) > w12_seminorm(sample_bpst(g17, {1.0, {}})));
}

TEST_CASE("l2_of_A") {
  const Grid g(3, 9);
  CHECK(l2_of_A(ConnectionField(g)) == 0.0);
  // Constant s1 in every component: 3 |s1|^2 vol = 3 * 2 * 8.
  CHECK(l2_of_A(ConnectionField(g, LieElement::basis(0))) == doctest::Approx(48.0).epsilon(1e-13));
}

TEST_CASE("weak_l2_quasinorm") {
  const Grid b(4, 33, Domain::ball);
  CHECK(weak_l2_quasinorm(ScalarField(b)) == 0.0);
  CHECK(weak_l2_quasinorm(ScalarField(b, 3.0)) == doctest::Approx(3.0 * std::sqrt(kPi * kPi / 2.0)).epsilon(1e-2));

  // Hand-sized sample on interior nodes of weight h^2: values 4 3 2 1 give
  // max(16, 18, 12, 4).
  const Grid sq(2, 9);
  ScalarField f(sq);
  const ScalarField w = quadrature_weights(sq, Region::domain());
  const std::size_t at[4] = {sq.node_at({2, 2, 0, 0}), sq.node_at({2, 3, 0, 0}), sq.node_at({2, 4, 0, 0}), sq.node_at({2, 5, 0, 0})};
  for (int k = 0; k < 4; ++k) f(at[k]) = 4.0 - k;
  const double h = sq.spacing() * sq.spacing();
  CHECK(w(at[0]) == doctest::Approx(h));
  CHECK(weak_l2_quasinorm(f) == doctest::Approx(std::sqrt(18.0 * h)).epsilon(1e-14));

  // Ties: the level set below a repeated value holds all copies.
  f(at[1]) = 4.0;
  CHECK(weak_l2_quasinorm(f) == doctest::Approx(std::sqrt(std::max(32.0, 12.0) * h)).epsilon(1e-14));

  // |{|f| > a}| uses |f|.
  ScalarField neg(sq);
  neg(at[2]) = -2.0;
  CHECK(weak_l2_quasinorm(neg) == doctest::Approx(std::sqrt(4.0 * h)).epsilon(1e-14));
}

TEST_CASE("weak L2 is dominated by L2") {
  Rng r;
  for (int k = 0; k < 50; ++k) {
    const Grid g(r.integer(2, 3), 2 * r.integer(4, 8) + 1, r.integer(0, 1) ? Domain::ball : Domain::cube);
    ScalarField f(g);
    const double spike = r.uniform(0.0, 50.0);
    for (std::size_t n = 0; n < g.node_count(); ++n) f(n) = r.uniform() * (r.uniform(0.0, 1.0) < 0.05 ? spike : 1.0);
    ScalarField f2(g);
    for (std::size_t n = 0; n < g.node_count(); ++n) f2(n) = f(n) * f(n);
    const double q = weak_l2_quasinorm(f);
    CHECK(q * q <= integrate(f2) * (1.0 + 1e-12));
  }
}

TEST_CASE("density_profile") {
  const Grid g(4, 33);
  const std::vector<double> radii{0.125, 0.25, 0.5, 0.75, 1.0};
  const DensityProfile zero = density_profile(ConnectionField(g), {}, radii);
  for (double v : zero.values) CHECK(v == 0.0);

  const DensityProfile p = density_profile(sample_bpst(g, {1.0, {}}), {}, radii);
  REQUIRE(p.values.size() == radii.size());
  for (std::size_t k = 1; k < p.values.size(); ++k) CHECK(p.values[k] >= p.values[k - 1]);
  // Half of the total energy lies inside B_{1/lambda}.
  CHECK(p.values.back() == doctest::Approx(4.0 * kPi * kPi).epsilon(2e-2));
  for (double l : {1.0, 2.0, 8.0}) CHECK(bpst_radial_energy(l, 1.0 / l) == doctest::Approx(4.0 * kPi * kPi).epsilon(1e-10));

  Rng r;
  const DensityProfile q = density_profile(gen_connection(Grid(4, 9), r, 1.0), {0.25, 0.0, 0.0, 0.0}, {0.25, 0.5, 0.75});
  for (std::size_t k = 1; k < q.values.size(); ++k) CHECK(q.values[k] >= q.values[k - 1]);

  CHECK_THROWS_AS(density_profile(ConnectionField(g), {0.5, 0.0, 0.0, 0.0}, {0.25, 0.75}), Error);
  CHECK_THROWS_AS(density_profile(ConnectionField(g), {}, {0.5, 0.25}), Error);
}

TEST_CASE("chern_integral") {
  const Grid g(4, 9);
  CHECK(chern_integral(ConnectionField(g), 0.5) == 0.0);
  Rng r;
  const CurvatureField f = curvature(gen_connection(g, r, 0.8));
  const double c = chern_integral(f, 1.0);
  const double cg = chern_integral(curvature_transform(f, gen_pointwise_gauge(g, r)), 1.0);
  CHECK(std::abs(cg - c) <= 1e-12 * std::max(1.0, std::abs(c)));
  CHECK_THROWS_AS(chern_integral(ConnectionField(Grid(3, 9)), 0.5), Error);
}

TEST_CASE("energy_report") {
  Rng r;
  const ConnectionField a = gen_connection(Grid(4, 9, Domain::ball), r, 0.8);
  const EnergyReport e = energy_report(a);
  CHECK(e.ym == doctest::Approx(ym_energy(a)).epsilon(1e-14));
  CHECK(e.e_energy == doctest::Approx(e_energy(a)).epsilon(1e-14));
  CHECK(e.w12_seminorm == doctest::Approx(w12_seminorm(a)).epsilon(1e-14));
  CHECK(e.l2_of_A == doctest::Approx(l2_of_A(a)).epsilon(1e-14));
  for (double v : {e.ym, e.e_energy, e.w12_seminorm, e.l2_of_A, e.weak_l2_of_F}) CHECK(v > 0.0);
}
