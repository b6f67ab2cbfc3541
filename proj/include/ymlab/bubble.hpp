#ifndef YMLAB_BUBBLE_HPP
#define YMLAB_BUBBLE_HPP

#include "ymlab/fields.hpp"

#include <limits>

namespace ymlab {

struct BubbleReport {
  // +inf when no ball reaches epsilon / 2.
  double critical_radius = std::numeric_limits<double>::infinity();
  Point bubble_center{0.0, 0.0, 0.0, 0.0};
  // Energy in B_{R rho}(center).
  double energy_in_bubble = 0.0;
  // Energy between radii R rho and 1/R (zero when that annulus is empty).
  double neck_energy = 0.0;
  double exterior_energy = 0.0;
  double total_energy = 0.0;
  // Distance of energy_in_bubble to the nearest positive multiple of 8 pi^2.
  double quantization_defect = 0.0;
  bool concentrated() const { return critical_radius != std::numeric_limits<double>::infinity(); }
};

// Smallest dyadic radius rho = h 2^k for which some ball B_rho(x), x a grid
// node, holds energy >= epsilon / 2. Among qualifying centers the one with the
// largest energy wins, ties going to the lowest node index. m = 4.
BubbleReport bubble_detect(const ConnectionField& a, double epsilon = 1.0, double r_factor = 8.0);

}  // namespace ymlab

#endif
