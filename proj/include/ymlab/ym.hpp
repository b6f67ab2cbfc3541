#ifndef YMLAB_YM_HPP
#define YMLAB_YM_HPP

#include "ymlab/fields.hpp"
#include "ymlab/gauge.hpp"

#include <cstdint>
#include <vector>

namespace ymlab {

// Tangential boundary values of a connection on a cube grid. Component i at
// a boundary node is tangential (pinned) when the node lies on a face whose
// normal axis differs from i; only those entries of `eta` are meaningful.
struct BoundaryData {
  ConnectionField eta;
};

bool is_pinned(const Grid& grid, const std::array<int, 4>& local, int axis);
BoundaryData boundary_from_field(const ConnectionField& a);
// Copies a's values with the pinned entries replaced by eta.
ConnectionField impose_boundary(const ConnectionField& a, const BoundaryData& eta);

// (sum_j d_j F_ij + [A_j, F_ij])_i; zero on the outermost layer of nodes.
ConnectionField ym_residual(const ConnectionField& a);
// Exact gradient of ym_energy (domain weights w) with respect to the node
// values: G_j = 2 sum_{i != j} D_i^T(w F_ij) + w [F_ij, A_i]. In the interior
// G_j / w is exactly twice the residual above, since there D^T = -D.
ConnectionField ym_gradient(const ConnectionField& a);
// d_a F_bc - d_b F_ac + d_c F_ab + [A_a, F_bc] + [A_b, F_ca] + [A_c, F_ab].
ThreeFormField bianchi_residual(const ConnectionField& a);
// Delta A - d*(A ^ A) - [A, . dA] - [A, . (A ^ A)]; the YM operator of a
// Coulomb connection.
ConnectionField coulomb_ym_residual(const ConnectionField& a);

// Componentwise harmonic extension: minimizes the edge Dirichlet energy
// (edge weight = quadrature weight of the face it crosses, over h^2) with
// Dirichlet data on the pinned entries and natural Neumann conditions on the
// free normal entries; affine data is reproduced exactly. Sparse direct solve.
ConnectionField harmonic_extension(const BoundaryData& eta);

struct PlateauOptions {
  double tol = 1e-8;
  int max_iter = 20000;
  double armijo_c = 1e-4;
  double backtrack = 0.5;
  double tau_min = 1e-16;
};

struct TraceRow {
  int iteration = 0;
  double ym_energy = 0.0;
  double gradient_norm = 0.0;
  double step_size = 0.0;
  double coulomb_residual = 0.0;
};

struct PlateauResult {
  ConnectionField field;
  std::vector<TraceRow> trace;
  bool converged = false;
};

// Gradient descent on ym_energy over every entry except the pinned ones,
// direction -G/w, Armijo backtracking with warm-started steps. Without an
// initial field the harmonic extension of eta is used. Cube grids only.
PlateauResult plateau_minimize(const BoundaryData& eta, const ConnectionField* init,
                               const PlateauOptions& opts = {});

struct GradientCheck {
  double max_relative_error = 0.0;
  double max_abs_derivative = 0.0;
};

// Compares <G, xi> with a five-point central difference of ym_energy along
// random directions supported on interior nodes.
GradientCheck discrete_gradient_check(const ConnectionField& a, std::uint64_t seed = 42,
                                      int directions = 20, double eps = 1e-3);

struct EpsilonProbe {
  double sup_A = 0.0;
  double ym_energy = 0.0;
  double ratio = 0.0;
  bool exceeds = false;
  CoulombReport coulomb;
};

// Coulomb-fixes A, then reports sup_{B_1/2} |A^g| and sup^2 / ym_energy; the
// constant c0 only sets the `exceeds` flag. m = 4.
EpsilonProbe epsilon_regularity_probe(const ConnectionField& a, double c0 = 10.0,
                                      const CoulombOptions& opts = {});

}  // namespace ymlab

#endif
