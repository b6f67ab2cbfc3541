#include "ymlab/ym.hpp"

#include "stencil.hpp"
#include "ymlab/energy.hpp"
#include "ymlab/forms.hpp"
#include "ymlab/parallel.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <random>

namespace ymlab {

namespace {

std::size_t offset(std::size_t n, std::ptrdiff_t d) {
  return static_cast<std::size_t>(static_cast<std::ptrdiff_t>(n) + d);
}

// d_axis of the (i, j) entry of an antisymmetric 2-form at node n.
LieElement apply_pair(const CurvatureField& f, std::size_t n, int i, int j, const detail::Taps& t) {
  LieElement acc;
  for (int k = 0; k < t.size; ++k) acc += t.weight[k] * f.pair(offset(n, t.offset[k]), i, j);
  return acc;
}

bool on_outer_layer(const Grid& g, const std::array<int, 4>& k) {
  for (int a = 0; a < g.dim(); ++a)
    if (k[a] == 0 || k[a] == g.count(a) - 1) return true;
  return false;
}

void require_cube(const Grid& g, const char* what) {
  if (g.domain() != Domain::cube || !g.is_full()) {
    fail(ErrorCode::invalid_input, std::string(what) + " needs a full cube-domain grid");
  }
}

std::vector<double> domain_weight_vector(const Grid& g) {
  const ScalarField w = quadrature_weights(g, Region::domain());
  return {w.values().begin(), w.values().end()};
}

// 1-D cube quadrature weight of global index k.
double sbp_weight(const Grid& g, int k) {
  const double h = g.spacing();
  const int last = g.n_per_axis() - 1;
  if (k == 0 || k == last) return 0.25 * h;
  if (k == 1 || k == last - 1) return 1.25 * h;
  return h;
}

double killing_dot(const ConnectionField& a, const ConnectionField& b) {
  std::vector<double> t(a.values().size());
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = killing_inner(a.values()[k], b.values()[k]);
  return pairwise_sum(t);
}

}  // namespace

bool is_pinned(const Grid& grid, const std::array<int, 4>& local, int axis) {
  for (int a = 0; a < grid.dim(); ++a) {
    if (a == axis) continue;
    const int k = grid.lo(a) + local[a];
    if (k == 0 || k == grid.n_per_axis() - 1) return true;
  }
  return false;
}

BoundaryData boundary_from_field(const ConnectionField& a) {
  const Grid& g = a.grid();
  BoundaryData out{ConnectionField(g)};
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    const auto k = g.local_index(n);
    for (int i = 0; i < g.dim(); ++i)
      if (is_pinned(g, k, i)) out.eta.at(n, i) = a.at(n, i);
  }
  return out;
}

ConnectionField impose_boundary(const ConnectionField& a, const BoundaryData& eta) {
  require_same_grid(a, eta.eta, "impose_boundary");
  const Grid& g = a.grid();
  ConnectionField out = a;
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    const auto k = g.local_index(n);
    for (int i = 0; i < g.dim(); ++i)
      if (is_pinned(g, k, i)) out.at(n, i) = eta.eta.at(n, i);
  }
  return out;
}

ConnectionField ym_residual(const ConnectionField& a) {
  const Grid& g = a.grid();
  const int m = g.dim();
  const CurvatureField f = curvature(a);
  ConnectionField out(g);
  parallel_for(g.node_count(), [&](std::size_t b, std::size_t e) {
    for (std::size_t n = b; n < e; ++n) {
      const auto st = detail::node_stencil(g, n);
      if (on_outer_layer(g, st.local)) continue;
      for (int i = 0; i < m; ++i) {
        LieElement acc;
        for (int j = 0; j < m; ++j) {
          if (j == i) continue;
          acc += apply_pair(f, n, i, j, st.d[j]) + bracket(a.at(n, j), f.pair(n, i, j));
        }
        out.at(n, i) = acc;
      }
    }
  });
  return out;
}

ConnectionField ym_gradient(const ConnectionField& a) {
  const Grid& g = a.grid();
  const int m = g.dim();
  const auto w = domain_weight_vector(g);
  CurvatureField wf = curvature(a);
  for (std::size_t n = 0; n < g.node_count(); ++n)
    for (int p = 0; p < wf.components(); ++p) wf.at(n, p) *= w[n];
  ConnectionField out(g);
  parallel_for(g.node_count(), [&](std::size_t b, std::size_t e) {
    for (std::size_t n = b; n < e; ++n) {
      const auto st = detail::node_transpose_stencil(g, n);
      for (int j = 0; j < m; ++j) {
        LieElement acc;
        for (int i = 0; i < m; ++i) {
          if (i == j) continue;
          acc += apply_pair(wf, n, i, j, st.d[i]) + bracket(wf.pair(n, i, j), a.at(n, i));
        }
        out.at(n, j) = 2.0 * acc;
      }
    }
  });
  return out;
}

ThreeFormField bianchi_residual(const ConnectionField& a) {
  const Grid& g = a.grid();
  const int m = g.dim();
  if (m < 3) fail(ErrorCode::unsupported_dimension, "bianchi_residual requires m >= 3");
  const CurvatureField f = curvature(a);
  const auto triples = multi_indices(m, 3);
  ThreeFormField out(g);
  parallel_for(g.node_count(), [&](std::size_t b, std::size_t e) {
    for (std::size_t n = b; n < e; ++n) {
      const auto st = detail::node_stencil(g, n);
      for (std::size_t t = 0; t < triples.size(); ++t) {
        const int i = triples[t][0], j = triples[t][1], k = triples[t][2];
        out.at(n, static_cast<int>(t)) =
            apply_pair(f, n, j, k, st.d[i]) - apply_pair(f, n, i, k, st.d[j]) + apply_pair(f, n, i, j, st.d[k]) +
            bracket(a.at(n, i), f.pair(n, j, k)) + bracket(a.at(n, j), f.pair(n, k, i)) +
            bracket(a.at(n, k), f.pair(n, i, j));
      }
    }
  });
  return out;
}

ConnectionField coulomb_ym_residual(const ConnectionField& a) {
  const Grid& g = a.grid();
  const int m = g.dim();
  const std::size_t nodes = g.node_count();
  // grad[n * m * m + j * m + i] = d_j A_i
  std::vector<LieElement> grad(nodes * m * m);
  parallel_for(nodes, [&](std::size_t b, std::size_t e) {
    for (std::size_t n = b; n < e; ++n) {
      const auto st = detail::node_stencil(g, n);
      for (int j = 0; j < m; ++j)
        for (int i = 0; i < m; ++i) grad[n * m * m + j * m + i] = detail::apply(a, n, i, st.d[j]);
    }
  });
  const CurvatureField wb = wedge_bracket(a);
  ConnectionField out(g);
  parallel_for(nodes, [&](std::size_t b, std::size_t e) {
    for (std::size_t n = b; n < e; ++n) {
      const auto st = detail::node_stencil(g, n);
      for (int i = 0; i < m; ++i) {
        LieElement acc;
        for (int j = 0; j < m; ++j) {
          const auto& t = st.d[j];
          for (int k = 0; k < t.size; ++k) {
            const std::size_t nb = offset(n, t.offset[k]);
            acc += t.weight[k] * grad[nb * m * m + j * m + i];
          }
          if (j == i) continue;
          acc -= apply_pair(wb, n, i, j, t);
          const LieElement da = grad[n * m * m + i * m + j] - grad[n * m * m + j * m + i];
          acc -= bracket(a.at(n, j), da);
          acc -= bracket(a.at(n, j), wb.pair(n, i, j));
        }
        out.at(n, i) = acc;
      }
    }
  });
  return out;
}

ConnectionField harmonic_extension(const BoundaryData& eta) {
  const Grid& g = eta.eta.grid();
  require_cube(g, "harmonic_extension");
  const int m = g.dim();
  const std::size_t nodes = g.node_count();
  const auto w = domain_weight_vector(g);
  ConnectionField out = eta.eta;
  for (int i = 0; i < m; ++i) {
    std::vector<long> unknown(nodes, -1);
    long count = 0;
    for (std::size_t n = 0; n < nodes; ++n)
      if (!is_pinned(g, g.local_index(n), i)) unknown[n] = count++;
    if (count == 0) continue;
    std::vector<Eigen::Triplet<double>> trip;
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(count, 3);
    for (std::size_t n = 0; n < nodes; ++n) {
      if (unknown[n] < 0) continue;
      const auto k = g.local_index(n);
      double diag = 0.0;
      for (int a = 0; a < m; ++a) {
        const std::size_t st = static_cast<std::size_t>(g.stride(a));
        for (int dir = -1; dir <= 1; dir += 2) {
          if ((dir < 0 && k[a] == 0) || (dir > 0 && k[a] == g.count(a) - 1)) continue;
          const std::size_t nb = dir < 0 ? n - st : n + st;
          // Tangential quadrature weight over the edge length: the same for
          // both edges through n along axis a, so affine data is reproduced.
          const double we = w[n] / (sbp_weight(g, k[a]) * g.spacing());
          diag += we;
          if (unknown[nb] >= 0) {
            trip.emplace_back(unknown[n], unknown[nb], -we);
          } else {
            for (int c = 0; c < 3; ++c) rhs(unknown[n], c) += we * eta.eta.at(nb, i)[c];
          }
        }
      }
      trip.emplace_back(unknown[n], unknown[n], diag);
    }
    Eigen::SparseMatrix<double> mat(count, count);
    mat.setFromTriplets(trip.begin(), trip.end());
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(mat);
    if (solver.info() != Eigen::Success) throw SolverFailure("harmonic extension: factorization failed", 0.0);
    const Eigen::MatrixXd sol = solver.solve(rhs);
    for (std::size_t n = 0; n < nodes; ++n)
      if (unknown[n] >= 0)
        for (int c = 0; c < 3; ++c) out.at(n, i)[c] = sol(unknown[n], c);
  }
  return out;
}

PlateauResult plateau_minimize(const BoundaryData& eta, const ConnectionField* init, const PlateauOptions& opts) {
  const Grid& g = eta.eta.grid();
  require_cube(g, "plateau_minimize");
  require(opts.tol > 0.0 && opts.max_iter >= 0, "plateau_minimize: invalid options");
  const int m = g.dim();
  const std::size_t nodes = g.node_count();
  PlateauResult res;
  if (init) {
    require_same_grid(*init, eta.eta, "plateau_minimize");
    for (std::size_t n = 0; n < nodes; ++n) {
      const auto k = g.local_index(n);
      for (int i = 0; i < m; ++i) {
        if (!is_pinned(g, k, i)) continue;
        const LieElement d = init->at(n, i) - eta.eta.at(n, i);
        require(killing_norm2(d) <= 1e-24, "plateau_minimize: initial field does not match the boundary data");
      }
    }
    res.field = impose_boundary(*init, eta);
  } else {
    res.field = harmonic_extension(eta);
  }
  const auto w = domain_weight_vector(g);
  std::vector<char> pinned(nodes * m, 0);
  for (std::size_t n = 0; n < nodes; ++n) {
    const auto k = g.local_index(n);
    for (int i = 0; i < m; ++i) pinned[n * m + i] = is_pinned(g, k, i) ? 1 : 0;
  }

  auto direction = [&](const ConnectionField& grad) {
    ConnectionField d(g);
    for (std::size_t n = 0; n < nodes; ++n)
      for (int i = 0; i < m; ++i)
        if (!pinned[n * m + i]) d.at(n, i) = (-1.0 / w[n]) * grad.at(n, i);
    return d;
  };

  const auto pairs = multi_indices(m, 2);
  // E(A + tau d) - E(A) = sum w <dF, 2F + dF> with dF = tau L + tau^2 [d ^ d],
  // L_ij = D_i d_j - D_j d_i + [A_i, d_j] + [d_i, A_j]. Built from the
  // expansion, the change stays accurate long after E' - E is lost in rounding.
  auto change_of = [&](const CurvatureField& f, const CurvatureField& lin, const CurvatureField& quad, double tau) {
    std::vector<double> t(nodes, 0.0);
    for (std::size_t n = 0; n < nodes; ++n) {
      if (w[n] == 0.0) continue;
      double s = 0.0;
      for (int p = 0; p < f.components(); ++p) {
        const LieElement df = tau * lin.at(n, p) + (tau * tau) * quad.at(n, p);
        s += killing_inner(df, 2.0 * f.at(n, p) + df);
      }
      t[n] = w[n] * s;
    }
    return pairwise_sum(t);
  };
  auto linearization = [&](const ConnectionField& a, const ConnectionField& d) {
    CurvatureField lin = d_one_form(d);
    for (std::size_t n = 0; n < nodes; ++n)
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        const int i = pairs[p][0], j = pairs[p][1];
        lin.at(n, static_cast<int>(p)) += bracket(a.at(n, i), d.at(n, j)) + bracket(d.at(n, i), a.at(n, j));
      }
    return lin;
  };

  double energy = ym_energy(res.field);
  CurvatureField curv = curvature(res.field);
  ConnectionField grad = ym_gradient(res.field);
  ConnectionField dir = direction(grad);
  double slope = killing_dot(grad, dir);
  double gnorm = std::sqrt(std::max(0.0, -slope));
  res.trace.push_back({0, energy, gnorm, 0.0, coulomb_residual_l2(res.field)});
  double tau_prev = 0.5;

  for (int it = 1;; ++it) {
    if (gnorm <= opts.tol) {
      res.converged = true;
      break;
    }
    if (it > opts.max_iter) break;
    const CurvatureField lin = linearization(res.field, dir);
    const CurvatureField quad = wedge_bracket(dir);
    double tau = 2.0 * tau_prev;
    bool accepted = false;
    double change = 0.0;
    while (tau >= opts.tau_min) {
      change = change_of(curv, lin, quad, tau);
      if (change <= opts.armijo_c * tau * slope) {
        accepted = true;
        break;
      }
      tau *= opts.backtrack;
    }
    if (!accepted) break;
    for (std::size_t k = 0; k < res.field.values().size(); ++k) res.field.values()[k] += tau * dir.values()[k];
    for (std::size_t k = 0; k < curv.values().size(); ++k)
      curv.values()[k] += tau * lin.values()[k] + (tau * tau) * quad.values()[k];
    energy += change;
    tau_prev = tau;
    grad = ym_gradient(res.field);
    dir = direction(grad);
    slope = killing_dot(grad, dir);
    gnorm = std::sqrt(std::max(0.0, -slope));
    res.trace.push_back({it, energy, gnorm, tau, coulomb_residual_l2(res.field)});
  }
  return res;
}

GradientCheck discrete_gradient_check(const ConnectionField& a, std::uint64_t seed, int directions, double eps) {
  const Grid& g = a.grid();
  const int m = g.dim();
  require(directions > 0 && eps > 0.0, "discrete_gradient_check: invalid parameters");
  const ConnectionField grad = ym_gradient(a);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  GradientCheck out;
  for (int d = 0; d < directions; ++d) {
    ConnectionField xi(g);
    for (std::size_t n = 0; n < g.node_count(); ++n) {
      if (on_outer_layer(g, g.local_index(n))) continue;
      for (int i = 0; i < m; ++i) xi.at(n, i) = {uni(rng), uni(rng), uni(rng)};
    }
    auto energy_at = [&](double t) {
      ConnectionField s = a;
      for (std::size_t k = 0; k < s.values().size(); ++k) s.values()[k] += t * xi.values()[k];
      return ym_energy(s);
    };
    const double fd =
        (-energy_at(2.0 * eps) + 8.0 * energy_at(eps) - 8.0 * energy_at(-eps) + energy_at(-2.0 * eps)) /
        (12.0 * eps);
    const double exact = killing_dot(grad, xi);
    const double rel = std::abs(fd - exact) / std::max(std::abs(exact), 1e-300);
    out.max_relative_error = std::max(out.max_relative_error, rel);
    out.max_abs_derivative = std::max(out.max_abs_derivative, std::abs(exact));
  }
  return out;
}

EpsilonProbe epsilon_regularity_probe(const ConnectionField& a, double c0, const CoulombOptions& opts) {
  const Grid& g = a.grid();
  if (g.dim() != 4) fail(ErrorCode::unsupported_dimension, "epsilon_regularity_probe requires m = 4");
  EpsilonProbe out;
  const CoulombResult fixed = coulomb_fix(a, opts);
  out.coulomb = fixed.report;
  double sup2 = 0.0;
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    const Point x = g.position(n);
    if (x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3] > 0.25 + 1e-12) continue;
    double s = 0.0;
    for (int i = 0; i < 4; ++i) s += killing_norm2(fixed.field.at(n, i));
    sup2 = std::max(sup2, s);
  }
  out.sup_A = std::sqrt(sup2);
  out.ym_energy = ym_energy(a);
  out.ratio = out.ym_energy > 0.0 ? sup2 / out.ym_energy : 0.0;
  out.exceeds = out.ratio > c0;
  return out;
}

}  // namespace ymlab
