#include "doctest.h"
#include "support.hpp"

#include "ymlab/bubble.hpp"
#include "ymlab/energy.hpp"
#include "ymlab/instanton.hpp"

using namespace test;

namespace {

void check_accounting(const BubbleReport& b) {
  CHECK(b.energy_in_bubble >= 0.0);
  CHECK(b.neck_energy >= 0.0);
  CHECK(b.exterior_energy >= 0.0);
  CHECK(b.energy_in_bubble + b.neck_energy <= b.total_energy + 1e-9);
  CHECK(std::abs(b.energy_in_bubble + b.neck_energy + b.exterior_energy - b.total_energy) <= 1e-9);
}

}  // namespace

TEST_CASE("bubble_detect without concentration") {
  const BubbleReport zero = bubble_detect(ConnectionField(Grid(4, 9)));
  CHECK_FALSE(zero.concentrated());
  CHECK(zero.total_energy == 0.0);
  CHECK(zero.energy_in_bubble == 0.0);

  // epsilon / 2 above the total energy: no ball qualifies.
  const ConnectionField a = sample_bpst(Grid(4, 17), {2.0, {}});
  const BubbleReport none = bubble_detect(a, 4.0 * ym_energy(a));
  CHECK_FALSE(none.concentrated());
  CHECK(none.total_energy == doctest::Approx(ym_energy(a)).epsilon(1e-12));

  CHECK_THROWS_AS(bubble_detect(ConnectionField(Grid(3, 9))), Error);
  CHECK_THROWS_AS(bubble_detect(a, 0.0), Error);
}

TEST_CASE("bubble_detect on instantons") {
  const Grid g(4, 33);
  double rho_lambda[2];
  int k = 0;
  for (double l : {2.0, 4.0}) {
    const ConnectionField a = sample_bpst(g, {l, {}});
    const BubbleReport b = bubble_detect(a);
    REQUIRE(b.concentrated());
    check_accounting(b);
    CHECK(b.total_energy == doctest::Approx(ym_energy(a)).epsilon(1e-12));
    for (double c : b.bubble_center) CHECK(c == 0.0);
    // The radius is a dyadic multiple of h.
    const double levels = std::log2(b.critical_radius / g.spacing());
    CHECK(levels == doctest::Approx(std::round(levels)));
    CHECK(b.quantization_defect <= kEightPi2 / 2.0);
    rho_lambda[k++] = b.critical_radius * l;
  }
  // The density scales exactly with lambda; dyadic radii leave one level.
  CHECK(std::abs(std::log2(rho_lambda[1] / rho_lambda[0])) <= 1.0);

  // Off-center instanton: the bubble follows it.
  const Point c{0.25, -0.125, 0.0, 0.0625};
  const BubbleReport moved = bubble_detect(sample_bpst(g, {4.0, c}));
  for (int a = 0; a < 4; ++a) CHECK(moved.bubble_center[a] == doctest::Approx(c[a]).epsilon(1e-12));
  check_accounting(moved);
}

TEST_CASE("bubble_detect is deterministic") {
  Rng r;
  const ConnectionField a = gen_connection(Grid(4, 9), r, 2.0);
  const BubbleReport b1 = bubble_detect(a, 0.5), b2 = bubble_detect(a, 0.5);
  CHECK(b1.critical_radius == b2.critical_radius);
  CHECK(b1.bubble_center == b2.bubble_center);
  CHECK(b1.energy_in_bubble == b2.energy_in_bubble);
  check_accounting(b1);
}
