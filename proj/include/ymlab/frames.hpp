#ifndef YMLAB_FRAMES_HPP
#define YMLAB_FRAMES_HPP

#include "ymlab/fields.hpp"

#include <complex>
#include <cstddef>
#include <functional>

namespace ymlab {

// Map from the unit disc into R^3 sampled on a 2-D grid; integrals use the
// grid's domain (ball = disc).
using DiscImmersion = PointField;

DiscImmersion sample_immersion(const Grid& grid, const std::function<Vec3(double, double)>& u);

// int |d1 u x d2 u|.
double area(const DiscImmersion& u);
// 1/2 int |d1 u|^2 + |d2 u|^2.
double dirichlet_energy(const DiscImmersion& u);
// H(u) = |d1 u|^2 - |d2 u|^2 - 2i d1 u . d2 u.
ComplexField conformality_defect(const DiscImmersion& u);

struct FrameResidual {
  ScalarField residual;
  // Nodes where the differential degenerates; their residual is set to 0.
  std::vector<std::size_t> flagged;
};

// e1 = d1 u / |d1 u|, e2 = Gram-Schmidt of d2 u against e1, then
// d1 (e1 . d1 e2) + d2 (e1 . d2 e2).
FrameResidual frame_coulomb_residual(const DiscImmersion& u);

}  // namespace ymlab

#endif
