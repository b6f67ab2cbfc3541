#ifndef YMLAB_INSTANTON_HPP
#define YMLAB_INSTANTON_HPP

#include "ymlab/fields.hpp"

#include <array>
#include <functional>
#include <limits>

namespace ymlab {

// A_lambda = lambda^2 Im(x dx-bar) / (1 + lambda^2 |x|^2), x = x0 + x1 i + x2 j + x3 k
// measured from `center`.
struct BPSTParams {
  double lambda = 1.0;
  Point center{0.0, 0.0, 0.0, 0.0};
};

using OneFormValue = std::array<LieElement, 4>;
using TwoFormValue = std::array<LieElement, 6>;

OneFormValue bpst_connection(const BPSTParams& p, const Point& x);
// F = lambda^2 dx ^ dx-bar / (1 + lambda^2 |x|^2)^2, pairs 01 02 03 12 13 23.
TwoFormValue bpst_curvature(const BPSTParams& p, const Point& x);
// 48 lambda^4 / (1 + lambda^2 r^2)^4.
double bpst_density(double lambda, double r);

// Samples on a 4-D grid (windows allowed).
ConnectionField sample_bpst(const Grid& grid, const BPSTParams& p);
CurvatureField sample_bpst_curvature(const Grid& grid, const BPSTParams& p);

// Hodge star on 2-forms in R^4 with dx0 ^ dx1 ^ dx2 ^ dx3 positive.
TwoFormValue hodge_dual(const TwoFormValue& f);

// A^t(x) = t A(t x), A sampled by multilinear interpolation (clamped to the
// grid or window). Throws invalid_input unless 0 < t <= 1.
ConnectionField dilate(const ConnectionField& a, double t);

// Integral over the ball of radius r_max in R^4 of a radial function:
// int_0^{r_max} 2 pi^2 r^3 f(r) dr. r_max may be +inf.
double radial_integral(const std::function<double(double)>& f, double r_max,
                       double tolerance = 1e-13);

// YM energy of A_lambda in the ball of radius r (default: all of R^4),
// from the closed-form curvature.
double bpst_radial_energy(double lambda, double r = std::numeric_limits<double>::infinity());
// sum_{i,j} <d_i A_j, d_i A_j> of A_lambda integrated over the ball of radius r.
double bpst_radial_w12(double lambda, double r = 1.0);

}  // namespace ymlab

#endif
