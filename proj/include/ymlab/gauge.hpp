#ifndef YMLAB_GAUGE_HPP
#define YMLAB_GAUGE_HPP

#include "ymlab/fields.hpp"

#include <vector>

namespace ymlab {

struct CoulombOptions {
  double tol = 1e-6;
  int max_iter = 200;
  double cg_tolerance = 1e-10;
  int cg_max_iter = 20000;
  double armijo_c = 1e-4;
  double backtrack = 0.5;
  double tau0 = 1.0;
  double tau_min = 1e-10;
  // Smallness threshold of the continuum theory; only echoed in reports.
  double epsilon_g = 1.0;
};

struct CoulombTraceRow {
  int iteration = 0;
  double objective = 0.0;
  double residual = 0.0;
  double step = 0.0;
};

struct CoulombReport {
  int iterations = 0;
  double initial_l2_of_A = 0.0;
  double final_l2_of_A = 0.0;
  double coulomb_residual_l2 = 0.0;
  bool converged = false;
  std::vector<CoulombTraceRow> trace;
};

struct CoulombResult {
  GaugeField gauge;
  ConnectionField field;
  CoulombReport report;
};

GaugeField identity_gauge(const Grid& grid);
// exp(tau V) at every node.
GaugeField exp_gauge(const LieScalarField& v, double tau = 1.0);

// A^g_i = g^{-1} d_i g + g^{-1} A_i g; the finite-difference g^{-1} d_i g is
// projected to su(2) by dropping its real part.
ConnectionField gauge_transform(const ConnectionField& a, const GaugeField& g);
// g^{-1} F_ij g pointwise.
CurvatureField curvature_transform(const CurvatureField& f, const GaugeField& g);

// Weak codifferential W^{-1} sum_i D_i^T (W A_i) with the domain weights W
// (scaled by h^{-m} instead of W^{-1} on the ball). Equals d*A in the interior
// and carries the normal trace at the boundary.
LieScalarField coulomb_residual(const ConnectionField& a);
// sqrt(sum_n w_n <r_n, r_n>) of the field above.
double coulomb_residual_l2(const ConnectionField& a);

// Newton direction of sum_n w_n |A^g|^2 for an abelian linearization:
// solves (sum_i D_i^T W D_i) V = -sum_i D_i^T (W A_i), the discrete Neumann
// problem  Delta V = d*A,  d_n V = -<A, n>,  weighted mean of V zero, by
// Jacobi-preconditioned CG. Throws SolverFailure if CG stalls.
LieScalarField linearized_coulomb_step(const ConnectionField& a, const CoulombOptions& opts = {});

// Minimizes sum_n w_n |A^g|^2 over gauges by g <- g exp(tau V). Requires a
// full (non-window) grid.
CoulombResult coulomb_fix(const ConnectionField& a, const CoulombOptions& opts = {});

}  // namespace ymlab

#endif
