#include "ymlab/gauge.hpp"

#include "stencil.hpp"
#include "ymlab/energy.hpp"
#include "ymlab/forms.hpp"
#include "ymlab/parallel.hpp"

#include <cmath>

namespace ymlab {

namespace {

double dot3(const LieElement& a, const LieElement& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

std::vector<double> domain_weights(const Grid& g) {
  const ScalarField w = quadrature_weights(g, Region::domain());
  return {w.values().begin(), w.values().end()};
}

// s_n = sum_i (D_i^T (W A_i))_n, unnormalized.
LieScalarField weak_divergence(const ConnectionField& a, const std::vector<double>& w) {
  const Grid& g = a.grid();
  const int m = g.dim();
  LieScalarField s(g);
  parallel_for(g.node_count(), [&](std::size_t b, std::size_t e) {
    for (std::size_t n = b; n < e; ++n) {
      const auto st = detail::node_transpose_stencil(g, n);
      LieElement acc;
      for (int i = 0; i < m; ++i) {
        const auto& t = st.d[i];
        for (int k = 0; k < t.size; ++k) {
          const auto nb = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(n) + t.offset[k]);
          if (w[nb] != 0.0) acc += (t.weight[k] * w[nb]) * a.at(nb, i);
        }
      }
      s(n) = acc;
    }
  });
  return s;
}

double residual_scale(const Grid& g, double wn) {
  return g.domain() == Domain::cube ? wn : std::pow(g.spacing(), g.dim());
}

// H V = sum_i D_i^T (W D_i V): the Hessian of sum_n w_n |A + dV|^2 in V,
// i.e. the Laplacian built from the same first-derivative stencils as the
// objective, with the natural (Neumann) boundary condition.
struct WeightedLaplacian {
  const Grid& g;
  std::vector<double> w;
  std::vector<double> diag;

  WeightedLaplacian(const Grid& grid, std::vector<double> weights) : g(grid), w(std::move(weights)) {
    diag.assign(g.node_count(), 0.0);
    parallel_for(g.node_count(), [&](std::size_t b, std::size_t e) {
      for (std::size_t n = b; n < e; ++n) {
        const auto st = detail::node_transpose_stencil(g, n);
        double d = 0.0;
        for (int a = 0; a < g.dim(); ++a)
          for (int k = 0; k < st.d[a].size; ++k)
            d += st.d[a].weight[k] * st.d[a].weight[k] * w[n + st.d[a].offset[k]];
        diag[n] = d;
      }
    });
  }

  void apply(const std::vector<double>& v, std::vector<double>& out) const {
    const int m = g.dim();
    std::vector<double> wd(g.node_count() * m);
    parallel_for(g.node_count(), [&](std::size_t b, std::size_t e) {
      for (std::size_t n = b; n < e; ++n) {
        if (w[n] == 0.0) {
          for (int a = 0; a < m; ++a) wd[n * m + a] = 0.0;
          continue;
        }
        const auto st = detail::node_stencil(g, n);
        for (int a = 0; a < m; ++a) {
          double acc = 0.0;
          for (int k = 0; k < st.d[a].size; ++k) acc += st.d[a].weight[k] * v[n + st.d[a].offset[k]];
          wd[n * m + a] = w[n] * acc;
        }
      }
    });
    parallel_for(g.node_count(), [&](std::size_t b, std::size_t e) {
      for (std::size_t n = b; n < e; ++n) {
        if (diag[n] == 0.0) {
          out[n] = 0.0;
          continue;
        }
        const auto st = detail::node_transpose_stencil(g, n);
        double acc = 0.0;
        for (int a = 0; a < m; ++a)
          for (int k = 0; k < st.d[a].size; ++k) acc += st.d[a].weight[k] * wd[(n + st.d[a].offset[k]) * m + a];
        out[n] = acc;
      }
    });
  }
};

LieElement cross(const LieElement& a, const LieElement& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double dotv(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> t(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) t[i] = a[i] * b[i];
  return pairwise_sum(t);
}

void project_constants(std::vector<double>& v, const std::vector<double>& diag, int comps) {
  const std::size_t nodes = diag.size();
  for (int c = 0; c < comps; ++c) {
    double sum = 0.0;
    std::size_t active = 0;
    for (std::size_t n = 0; n < nodes; ++n) {
      if (diag[n] > 0.0) {
        sum += v[n * comps + c];
        ++active;
      } else {
        v[n * comps + c] = 0.0;
      }
    }
    const double mean = active ? sum / static_cast<double>(active) : 0.0;
    for (std::size_t n = 0; n < nodes; ++n)
      if (diag[n] > 0.0) v[n * comps + c] -= mean;
  }
}

// Jacobi-preconditioned CG for `comps` interleaved components on the nodes
// with positive diagonal, kept orthogonal to the constants of each component.
// Returns false on non-positive curvature; throws SolverFailure on stalling.
template <class Apply>
bool projected_cg(const Apply& apply, const std::vector<double>& diag, int comps, std::vector<double> rhs,
                  const CoulombOptions& opts, std::vector<double>& x) {
  const std::size_t n = rhs.size();
  project_constants(rhs, diag, comps);
  x.assign(n, 0.0);
  std::vector<double> r = rhs, z(n), p(n), q(n);
  const double norm0 = std::sqrt(dotv(rhs, rhs));
  if (norm0 == 0.0) return true;
  auto precondition = [&] {
    for (std::size_t i = 0; i < n; ++i) {
      const double d = diag[i / comps];
      z[i] = d > 0.0 ? r[i] / d : 0.0;
    }
    project_constants(z, diag, comps);
  };
  precondition();
  p = z;
  double rz = dotv(r, z);
  double rel = 1.0;
  for (int it = 0; it < opts.cg_max_iter; ++it) {
    apply(p, q);
    const double pq = dotv(p, q);
    if (!(pq > 0.0)) return false;
    const double alpha = rz / pq;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * q[i];
    }
    project_constants(r, diag, comps);
    rel = std::sqrt(dotv(r, r)) / norm0;
    if (rel <= opts.cg_tolerance) return true;
    precondition();
    const double rz_new = dotv(r, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  throw SolverFailure("Coulomb CG did not reach the requested residual", rel);
}

// Abelian Newton direction: K V^c = -s^c for each coefficient, then the
// weighted mean of V is removed.
LieScalarField abelian_direction(const LieScalarField& s, const WeightedLaplacian& k, const CoulombOptions& opts) {
  const Grid& g = k.g;
  LieScalarField v(g);
  std::vector<double> rhs(g.node_count()), x;
  double wsum = 0.0;
  for (double x0 : k.w) wsum += x0;
  auto apply = [&](const std::vector<double>& in, std::vector<double>& out) { k.apply(in, out); };
  for (int c = 0; c < 3; ++c) {
    for (std::size_t n = 0; n < g.node_count(); ++n) rhs[n] = -s(n)[c];
    if (!projected_cg(apply, k.diag, 1, rhs, opts, x)) {
      throw SolverFailure("Coulomb CG met a non-positive direction", 1.0);
    }
    double mean = 0.0;
    for (std::size_t n = 0; n < g.node_count(); ++n) mean += k.w[n] * x[n];
    mean /= wsum;
    for (std::size_t n = 0; n < g.node_count(); ++n) v(n)[c] = k.diag[n] > 0.0 ? x[n] - mean : 0.0;
  }
  return v;
}

// Full Newton direction. With g = exp(V), A^g = A + L V + (L V) x V + O(V^3)
// where L_i V = D_i V + 2 A_i x V (cross product of su(2) coefficients), so
// the quadratic part of sum w |A^g|^2 / 2 is sum w (|D V|^2 + 2 D V . (A x V)).
// Its Hessian is applied matrix-free on the constants-free subspace; global
// rotations leave the objective unchanged.
bool newton_direction(const ConnectionField& a, const LieScalarField& s, const WeightedLaplacian& k,
                      const CoulombOptions& opts, LieScalarField& v) {
  const Grid& g = a.grid();
  const int m = g.dim();
  const std::size_t nodes = g.node_count();
  std::vector<LieElement> dv(nodes * m), y(nodes * m);
  auto apply = [&](const std::vector<double>& in, std::vector<double>& out) {
    auto at = [&](std::size_t n) { return LieElement{in[3 * n], in[3 * n + 1], in[3 * n + 2]}; };
    parallel_for(nodes, [&](std::size_t b, std::size_t e) {
      for (std::size_t n = b; n < e; ++n) {
        if (k.w[n] == 0.0) continue;
        const auto st = detail::node_stencil(g, n);
        const LieElement vn = at(n);
        for (int i = 0; i < m; ++i) {
          LieElement d;
          for (int t = 0; t < st.d[i].size; ++t) d += st.d[i].weight[t] * at(n + st.d[i].offset[t]);
          dv[n * m + i] = d;
          y[n * m + i] = k.w[n] * (d + cross(a.at(n, i), vn));
        }
      }
    });
    parallel_for(nodes, [&](std::size_t b, std::size_t e) {
      for (std::size_t n = b; n < e; ++n) {
        LieElement acc;
        if (k.diag[n] > 0.0) {
          const auto st = detail::node_transpose_stencil(g, n);
          for (int i = 0; i < m; ++i)
            for (int t = 0; t < st.d[i].size; ++t) acc += st.d[i].weight[t] * y[(n + st.d[i].offset[t]) * m + i];
          if (k.w[n] != 0.0)
            for (int i = 0; i < m; ++i) acc += k.w[n] * cross(dv[n * m + i], a.at(n, i));
        }
        for (int c = 0; c < 3; ++c) out[3 * n + c] = acc[c];
      }
    });
  };
  std::vector<double> rhs(3 * nodes), x;
  for (std::size_t n = 0; n < nodes; ++n)
    for (int c = 0; c < 3; ++c) rhs[3 * n + c] = -s(n)[c];
  if (!projected_cg(apply, k.diag, 3, rhs, opts, x)) return false;
  v = LieScalarField(g);
  for (std::size_t n = 0; n < nodes; ++n)
    if (k.diag[n] > 0.0) v(n) = {x[3 * n], x[3 * n + 1], x[3 * n + 2]};
  return true;
}

}  // namespace

GaugeField identity_gauge(const Grid& grid) { return GaugeField(grid, GroupElement{}); }

GaugeField exp_gauge(const LieScalarField& v, double tau) {
  GaugeField g(v.grid());
  parallel_for(v.node_count(), [&](std::size_t b, std::size_t e) {
    for (std::size_t n = b; n < e; ++n) g(n) = exp_map(tau * v(n));
  });
  return g;
}

ConnectionField gauge_transform(const ConnectionField& a, const GaugeField& g) {
  require_same_grid(a, g, "gauge_transform");
  const Grid& grid = a.grid();
  const int m = grid.dim();
  ConnectionField out(grid);
  parallel_for(grid.node_count(), [&](std::size_t b, std::size_t e) {
    for (std::size_t n = b; n < e; ++n) {
      const auto st = detail::node_stencil(grid, n);
      const GroupElement& gn = g(n);
      const Quaternion gi = gn.quaternion().conj();
      for (int i = 0; i < m; ++i) {
        Quaternion dg{0.0, 0.0, 0.0, 0.0};
        const auto& t = st.d[i];
        for (int k = 0; k < t.size; ++k) {
          const auto nb = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(n) + t.offset[k]);
          dg = dg + t.weight[k] * g(nb).quaternion();
        }
        out.at(n, i) = (gi * dg).imag() + adjoint(gn, a.at(n, i));
      }
    }
  });
  return out;
}

CurvatureField curvature_transform(const CurvatureField& f, const GaugeField& g) {
  require_same_grid(f, g, "curvature_transform");
  CurvatureField out(f.grid());
  parallel_for(f.node_count(), [&](std::size_t b, std::size_t e) {
    for (std::size_t n = b; n < e; ++n)
      for (int p = 0; p < f.components(); ++p) out.at(n, p) = adjoint(g(n), f.at(n, p));
  });
  return out;
}

LieScalarField coulomb_residual(const ConnectionField& a) {
  const Grid& g = a.grid();
  const auto w = domain_weights(g);
  LieScalarField s = weak_divergence(a, w);
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    const double sc = residual_scale(g, w[n]);
    s(n) = sc > 0.0 ? (1.0 / sc) * s(n) : LieElement{};
  }
  return s;
}

double coulomb_residual_l2(const ConnectionField& a) {
  const Grid& g = a.grid();
  const auto w = domain_weights(g);
  const LieScalarField r = coulomb_residual(a);
  std::vector<double> terms(g.node_count());
  for (std::size_t n = 0; n < g.node_count(); ++n) terms[n] = w[n] * killing_norm2(r(n));
  return std::sqrt(pairwise_sum(terms));
}

LieScalarField linearized_coulomb_step(const ConnectionField& a, const CoulombOptions& opts) {
  const Grid& g = a.grid();
  require(g.is_full(), "Coulomb gauge fixing needs a full grid, not a window");
  const auto w = domain_weights(g);
  const WeightedLaplacian k(g, w);
  return abelian_direction(weak_divergence(a, w), k, opts);
}

CoulombResult coulomb_fix(const ConnectionField& a, const CoulombOptions& opts) {
  require(opts.tol > 0.0, "coulomb_fix: tol must be positive");
  require(opts.max_iter >= 0, "coulomb_fix: max_iter must be non-negative");
  const Grid& g = a.grid();
  require(g.is_full(), "Coulomb gauge fixing needs a full grid, not a window");
  const auto w = domain_weights(g);
  const WeightedLaplacian k(g, w);

  CoulombResult res{identity_gauge(g), a, {}};
  auto& rep = res.report;
  double j = l2_of_A(res.field);
  double resid = coulomb_residual_l2(res.field);
  rep.initial_l2_of_A = j;
  rep.trace.push_back({0, j, resid, 0.0});
  double tau_prev = opts.tau0;

  for (int it = 1;; ++it) {
    if (resid <= opts.tol) {
      rep.converged = true;
      break;
    }
    if (it > opts.max_iter) break;
    const LieScalarField s = weak_divergence(res.field, w);
    LieScalarField v;
    if (!newton_direction(res.field, s, k, opts, v)) v = abelian_direction(s, k, opts);
    std::vector<double> terms(g.node_count());
    for (std::size_t n = 0; n < g.node_count(); ++n) terms[n] = 2.0 * dot3(v(n), s(n));
    const double slope = 2.0 * pairwise_sum(terms);
    if (!(slope < 0.0)) break;

    double tau = std::min(opts.tau0, 2.0 * tau_prev);
    bool accepted = false;
    ConnectionField trial;
    double j_trial = 0.0;
    while (tau >= opts.tau_min) {
      trial = gauge_transform(res.field, exp_gauge(v, tau));
      j_trial = l2_of_A(trial);
      if (j_trial <= j + opts.armijo_c * tau * slope) {
        accepted = true;
        break;
      }
      tau *= opts.backtrack;
    }
    if (!accepted) break;
    const GaugeField step = exp_gauge(v, tau);
    for (std::size_t n = 0; n < g.node_count(); ++n) res.gauge(n) = res.gauge(n) * step(n);
    res.field = std::move(trial);
    j = j_trial;
    tau_prev = tau;
    resid = coulomb_residual_l2(res.field);
    rep.iterations = it;
    rep.trace.push_back({it, j, resid, tau});
  }
  rep.final_l2_of_A = j;
  rep.coulomb_residual_l2 = resid;
  return res;
}

}  // namespace ymlab
