#ifndef YMLAB_ENERGY_HPP
#define YMLAB_ENERGY_HPP

#include "ymlab/fields.hpp"
#include "ymlab/forms.hpp"

#include <vector>

namespace ymlab {

struct EnergyReport {
  double ym = 0.0;
  double e_energy = 0.0;
  double w12_seminorm = 0.0;
  double l2_of_A = 0.0;
  double weak_l2_of_F = 0.0;
};

struct DensityProfile {
  Point center{0.0, 0.0, 0.0, 0.0};
  std::vector<double> radii;
  std::vector<double> values;
};

// Pointwise sum_{i<j} <F_ij, F_ij> of F = curvature(A), without storing F.
ScalarField ym_density(const ConnectionField& a);

// int sum_{i<j} <F_ij, F_ij>.
double ym_energy(const ConnectionField& a, const Region& region = Region::domain());
double ym_energy(const CurvatureField& f, const Region& region = Region::domain());
// int |dA|^2 + |d*A|^2.
double e_energy(const ConnectionField& a, const Region& region = Region::domain());
// sum_{i,j} int <d_i A_j, d_i A_j>.
double w12_seminorm(const ConnectionField& a, const Region& region = Region::domain());
// int sum_i <A_i, A_i>.
double l2_of_A(const ConnectionField& a, const Region& region = Region::domain());

// [sup_alpha alpha^2 |{|f| > alpha}|]^{1/2} with the region's node weights as
// the measure.
double weak_l2_quasinorm(const ScalarField& f, const Region& region = Region::domain());

// r^{4-m} int_{B_r(p)} |F|^2 for each radius. Throws invalid_input if a ball
// leaves the domain.
DensityProfile density_profile(const ConnectionField& a, const Point& p, const std::vector<double>& radii);

// int_{B_r} chern_density(F); m = 4 only.
double chern_integral(const ConnectionField& a, double r);
double chern_integral(const CurvatureField& f, double r);

EnergyReport energy_report(const ConnectionField& a);

}  // namespace ymlab

#endif
