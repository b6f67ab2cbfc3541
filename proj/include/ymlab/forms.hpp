#ifndef YMLAB_FORMS_HPP
#define YMLAB_FORMS_HPP

#include "ymlab/fields.hpp"

#include <span>

namespace ymlab {

// Sign s in  c = s * Tr(F ^ F)_{1234}; fixed so the BPST family carries +8 pi^2.
inline constexpr double kChernSign = -1.0;

// (dA)_ij = d_i A_j - d_j A_i.
CurvatureField d_one_form(const ConnectionField& a);
// (A ^ A)_ij = [A_i, A_j].
CurvatureField wedge_bracket(const ConnectionField& a);
// F_ij = (dA)_ij + [A_i, A_j].
CurvatureField curvature(const ConnectionField& a);
// (d* F)_i = -sum_j d_j F_ij.
ConnectionField codiff_two_form(const CurvatureField& f);
// d* A = -sum_i d_i A_i.
LieScalarField codiff_one_form(const ConnectionField& a);

// Pointwise sum_{i<j} <F_ij, F_ij>.
ScalarField curvature_norm_density(const CurvatureField& f);
// s * 2 Tr(F12 F34 - F13 F24 + F14 F23); m = 4 only.
ScalarField chern_density(const CurvatureField& f);
// Tr(A ^ dA + 1/3 A ^ [A, A]) expanded as
//   CS_abc = Tr(A_a dA_bc - A_b dA_ac + A_c dA_ab) + 2 Tr(A_a [A_b, A_c]);
// m >= 3.
RealThreeForm chern_simons_density(const ConnectionField& a);
// Top-degree exterior derivative of a real 3-form on a 4-grid:
//   (dW)_1234 = d1 W234 - d2 W134 + d3 W124 - d4 W123.
ScalarField d_three_form(const RealThreeForm& w);

ScalarField partial(const ScalarField& f, int axis);

// Integration regions. `domain` means the grid's own domain (cube or unit
// ball); `ball` is the ball of the given radius around `center`.
struct Region {
  enum class Kind { domain, cube, ball };
  Kind kind = Kind::domain;
  double radius = 1.0;
  Point center{0.0, 0.0, 0.0, 0.0};

  static Region domain() { return {}; }
  static Region cube() { return {Kind::cube, 1.0, {}}; }
  static Region ball(double r, const Point& c = {0.0, 0.0, 0.0, 0.0}) { return {Kind::ball, r, c}; }
};

// Node quadrature weights. Cube: product of 1-D weights
// (h/4, 5h/4, h, ..., h, 5h/4, h/4), which integrate affine functions exactly
// and satisfy summation by parts with the derivative stencil. Ball of radius
// r: h^m for |x - c| <= r - h, 0 beyond r + h, linear in between.
ScalarField quadrature_weights(const Grid& grid, const Region& region);
double node_weight(const Grid& grid, const std::array<int, 4>& local, const Region& region);

// Throws invalid_input for r > 1 or a ball the grid (window) does not cover.
void validate_region(const Grid& grid, const Region& region);

double integrate(const ScalarField& f, const Region& region = Region::domain());
// sum_n w_n f_n with the given weights (same length), pairwise summed.
double weighted_sum(std::span<const double> f, std::span<const double> w);

}  // namespace ymlab

#endif
