#include "doctest.h"
#include "support.hpp"

#include "ymlab/energy.hpp"
#include "ymlab/forms.hpp"
#include "ymlab/instanton.hpp"

using namespace test;

namespace {

Point random_point(Rng& r, double scale = 1.0) { return {scale * r.uniform(), scale * r.uniform(), scale * r.uniform(), scale * r.uniform()}; }

}  // namespace

TEST_CASE("bpst_connection") {
  Rng r;
  const BPSTParams off{2.5, {0.1, -0.2, 0.3, 0.05}};
  for (const LieElement& v : bpst_connection(off, off.center)) CHECK(norm(v) == 0.0);

  // A_lambda(x) = lambda A_1(lambda (x - c)).
  for (int k = 0; k < 100; ++k) {
    const BPSTParams p{r.uniform(0.1, 20.0), random_point(r, 0.5)};
    const Point x = random_point(r);
    Point y;
    for (int a = 0; a < 4; ++a) y[a] = p.lambda * (x[a] - p.center[a]);
    const OneFormValue lhs = bpst_connection(p, x), unit = bpst_connection({1.0, {}}, y);
    for (int i = 0; i < 4; ++i) CHECK(norm(lhs[i] - p.lambda * unit[i]) <= 1e-14 * std::max(1.0, norm(lhs[i])));
  }

  // Im(x dx-bar) by hand: the dx0 coefficient is x1 i + x2 j + x3 k over the radial factor.
  const Point x{0.3, -0.4, 0.5, 0.2};
  const double s = 1.0 / (1.0 + (0.09 + 0.16 + 0.25 + 0.04));
  const OneFormValue a = bpst_connection({1.0, {}}, x);
  CHECK(norm(a[0] - s * LieElement{x[1], x[2], x[3]}) <= 1e-15);
}

TEST_CASE("bpst_curvature") {
  // dx ^ dx-bar = -2 [i (dx01 + dx23) + j (dx02 - dx13) + k (dx03 + dx12)], self-dual
  // with dx0 ^ dx1 ^ dx2 ^ dx3 positive. The center value pins the sign.
  const TwoFormValue f0 = bpst_curvature({1.0, {}}, {});
  double n2 = 0.0;
  for (const LieElement& v : f0) n2 += killing_norm2(v);
  CHECK(n2 == 48.0);
  const TwoFormValue star0 = hodge_dual(f0);
  for (int p = 0; p < 6; ++p) CHECK(norm(star0[p] - f0[p]) == 0.0);
  CHECK(norm(f0[0] - f0[5]) == 0.0);
  CHECK(norm(f0[0] - (-2.0) * LieElement::basis(0)) == 0.0);

  Rng r;
  for (int k = 0; k < 100; ++k) {
    const BPSTParams p{r.uniform(0.1, 10.0), random_point(r, 0.5)};
    const Point x = random_point(r);
    const TwoFormValue f = bpst_curvature(p, x);
    double rr = 0.0, m2 = 0.0, scale = 0.0;
    for (int a = 0; a < 4; ++a) rr += (x[a] - p.center[a]) * (x[a] - p.center[a]);
    for (const LieElement& v : f) {
      m2 += killing_norm2(v);
      scale = std::max(scale, norm(v));
    }
    CHECK(m2 == doctest::Approx(bpst_density(p.lambda, std::sqrt(rr))).epsilon(1e-13));
    const TwoFormValue star = hodge_dual(f);
    for (int q = 0; q < 6; ++q) CHECK(norm(star[q] - f[q]) <= 1e-14 * std::max(1.0, scale));
  }
}

TEST_CASE("hodge_dual is an involution on 2-forms in R^4") {
  Rng r;
  TwoFormValue f;
  for (auto& v : f) v = gen_lie(r);
  const TwoFormValue back = hodge_dual(hodge_dual(f));
  for (int p = 0; p < 6; ++p) CHECK(norm(back[p] - f[p]) == 0.0);
  // *(dx0 ^ dx1) = dx2 ^ dx3.
  TwoFormValue e01{};
  e01[0] = LieElement::basis(0);
  CHECK(norm(hodge_dual(e01)[5] - LieElement::basis(0)) == 0.0);
}

TEST_CASE("sampled BPST against its closed forms") {
  const BPSTParams p{1.0, {}};
  double ferr[2], cerr[2];
  int k = 0;
  for (int n : {33, 65}) {
    const Grid w = Grid(4, n).window_around({}, 0.25, 2);
    const ConnectionField a = sample_bpst(w, p);
    const CurvatureField exact = sample_bpst_curvature(w, p);
    const CurvatureField fd = curvature(a);
    const LieScalarField div = codiff_one_form(a);
    double fe = 0.0, ce = 0.0;
    for (std::size_t node = 0; node < w.node_count(); ++node) {
      const Point x = w.position(node);
      if (std::max({std::abs(x[0]), std::abs(x[1]), std::abs(x[2]), std::abs(x[3])}) > 0.25) continue;
      for (int c = 0; c < 6; ++c) fe = std::max(fe, norm(fd.at(node, c) - exact.at(node, c)));
      ce = std::max(ce, norm(div(node)));
      const OneFormValue direct = bpst_connection(p, x);
      for (int i = 0; i < 4; ++i) CHECK(norm(a.at(node, i) - direct[i]) == 0.0);
    }
    ferr[k] = fe;
    cerr[k++] = ce;
  }
  INFO("curvature ", ferr[0], " -> ", ferr[1], ", d*A ", cerr[0], " -> ", cerr[1]);
  CHECK(order(ferr[0], ferr[1]) >= 1.7);
  CHECK(order(ferr[0], ferr[1]) <= 2.3);
  // d*A_lambda vanishes identically; central differences of the odd
  // coefficient pattern cancel it on the lattice too.
  CHECK(cerr[1] <= std::max(1e-12, cerr[0] / 3.0));
}

TEST_CASE("radial energies") {
  CHECK(radial_integral([](double) { return 1.0; }, 1.0) == doctest::Approx(kPi * kPi / 2.0).epsilon(1e-13));
  CHECK(radial_integral([](double r) { return r * r; }, 2.0) == doctest::Approx(2.0 * kPi * kPi * 64.0 / 6.0).epsilon(1e-13));
  for (double l : {1.0, 4.0, 16.0}) {
    CHECK(bpst_radial_energy(l) == doctest::Approx(kEightPi2).epsilon(1e-6));
    CHECK(bpst_radial_energy(l, 1.0 / l) == doctest::Approx(4.0 * kPi * kPi).epsilon(1e-10));
  }
  CHECK(bpst_radial_energy(1.0, 1e6) == doctest::Approx(kEightPi2).epsilon(1e-9));
  CHECK(bpst_radial_energy(2.0, 0.5) < bpst_radial_energy(2.0, 1.0));
}

TEST_CASE("dilate") {
  const Grid g(4, 9);
  Rng r;
  const ConnectionField a = gen_connection(g, r, 1.0);
  const ConnectionField same = dilate(a, 1.0);
  for (std::size_t j = 0; j < a.values().size(); ++j) CHECK(norm(same.values()[j] - a.values()[j]) == 0.0);
  CHECK_THROWS_AS(dilate(a, 0.0), Error);
  CHECK_THROWS_AS(dilate(a, 1.5), Error);
  CHECK_THROWS_AS(dilate(a, -0.5), Error);

  // Nodes whose dilated position is a lattice node need no interpolation.
  const ConnectionField half = dilate(a, 0.5);
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    const auto l = g.local_index(n);
    if (l[0] % 2 || l[1] % 2 || l[2] % 2 || l[3] % 2) continue;
    std::array<int, 4> m;
    for (int ax = 0; ax < 4; ++ax) m[ax] = 2 + l[ax] / 2;
    for (int i = 0; i < 4; ++i) CHECK(norm(half.at(n, i) - 0.5 * a.at(g.node_at(m), i)) <= 1e-15);
  }

  // Energy of A^t on B^4 is the energy of A on B_t.
  const Grid b(4, 33, Domain::ball);
  const ConnectionField bpst = sample_bpst(b, {1.0, {}});
  CHECK(ym_energy(dilate(bpst, 0.5)) == doctest::Approx(ym_energy(bpst, Region::ball(0.5))).epsilon(2e-2));

  // A^t -> 0 in W^{1,2} as t -> 0.
  const ConnectionField c = sample_bpst(Grid(4, 17), {1.0, {}});
  double prev = w12_seminorm(c);
  for (double t : {0.5, 0.25, 0.125}) {
    const double w = w12_seminorm(dilate(c, t));
    CHECK(w < prev);
    prev = w;
  }
}
