#include "ymlab/forms.hpp"

#include "stencil.hpp"
#include "ymlab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace ymlab {

using detail::apply;
using detail::node_stencil;

std::vector<std::array<int, 4>> multi_indices(int m, int k) {
  std::vector<std::array<int, 4>> out;
  std::array<int, 4> idx{0, 0, 0, 0};
  // Enumerate increasing k-tuples from {0..m-1} lexicographically.
  auto rec = [&](auto&& self, int pos, int start) -> void {
    if (pos == k) {
      out.push_back(idx);
      return;
    }
    for (int v = start; v < m; ++v) {
      idx[pos] = v;
      self(self, pos + 1, v + 1);
    }
  };
  rec(rec, 0, 0);
  return out;
}

CurvatureField d_one_form(const ConnectionField& a) {
  const Grid& g = a.grid();
  const int m = g.dim();
  CurvatureField out(g);
  parallel_for(g.node_count(), [&](std::size_t b, std::size_t e) {
    for (std::size_t n = b; n < e; ++n) {
      const auto st = node_stencil(g, n);
      for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
          out.at(n, pair_index(m, i, j)) = apply(a, n, j, st.d[i]) - apply(a, n, i, st.d[j]);
    }
  });
  return out;
}

CurvatureField wedge_bracket(const ConnectionField& a) {
  const Grid& g = a.grid();
  const int m = g.dim();
  CurvatureField out(g);
  parallel_for(g.node_count(), [&](std::size_t b, std::size_t e) {
    for (std::size_t n = b; n < e; ++n)
      for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) out.at(n, pair_index(m, i, j)) = bracket(a.at(n, i), a.at(n, j));
  });
  return out;
}

CurvatureField curvature(const ConnectionField& a) {
  const Grid& g = a.grid();
  const int m = g.dim();
  CurvatureField out(g);
  parallel_for(g.node_count(), [&](std::size_t b, std::size_t e) {
    for (std::size_t n = b; n < e; ++n) {
      const auto st = node_stencil(g, n);
      for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
          out.at(n, pair_index(m, i, j)) = apply(a, n, j, st.d[i]) - apply(a, n, i, st.d[j]) +
                                           bracket(a.at(n, i), a.at(n, j));
    }
  });
  return out;
}

ConnectionField codiff_two_form(const CurvatureField& f) {
  const Grid& g = f.grid();
  const int m = g.dim();
  ConnectionField out(g);
  parallel_for(g.node_count(), [&](std::size_t b, std::size_t e) {
    for (std::size_t n = b; n < e; ++n) {
      const auto st = node_stencil(g, n);
      for (int i = 0; i < m; ++i) {
        LieElement acc;
        for (int j = 0; j < m; ++j) {
          if (j == i) continue;
          const int p = i < j ? pair_index(m, i, j) : pair_index(m, j, i);
          const double sign = i < j ? 1.0 : -1.0;
          acc += sign * apply(f, n, p, st.d[j]);
        }
        out.at(n, i) = -acc;
      }
    }
  });
  return out;
}

LieScalarField codiff_one_form(const ConnectionField& a) {
  const Grid& g = a.grid();
  const int m = g.dim();
  LieScalarField out(g);
  parallel_for(g.node_count(), [&](std::size_t b, std::size_t e) {
    for (std::size_t n = b; n < e; ++n) {
      const auto st = node_stencil(g, n);
      LieElement acc;
      for (int i = 0; i < m; ++i) acc += apply(a, n, i, st.d[i]);
      out(n) = -acc;
    }
  });
  return out;
}

ScalarField curvature_norm_density(const CurvatureField& f) {
  ScalarField out(f.grid());
  const int comps = f.components();
  parallel_for(f.node_count(), [&](std::size_t b, std::size_t e) {
    for (std::size_t n = b; n < e; ++n) {
      double s = 0.0;
      for (int p = 0; p < comps; ++p) s += killing_norm2(f.at(n, p));
      out(n) = s;
    }
  });
  return out;
}

ScalarField chern_density(const CurvatureField& f) {
  if (f.grid().dim() != 4) {
    fail(ErrorCode::unsupported_dimension, "chern_density requires a 4-dimensional grid");
  }
  ScalarField out(f.grid());
  parallel_for(f.node_count(), [&](std::size_t b, std::size_t e) {
    for (std::size_t n = b; n < e; ++n) {
      // Tr(XY) = -<X, Y> on su(2); pairs in lexicographic order 01 02 03 12 13 23.
      const double tr = -killing_inner(f.at(n, 0), f.at(n, 5)) + killing_inner(f.at(n, 1), f.at(n, 4)) -
                        killing_inner(f.at(n, 2), f.at(n, 3));
      out(n) = kChernSign * 2.0 * tr;
    }
  });
  return out;
}

RealThreeForm chern_simons_density(const ConnectionField& a) {
  const Grid& g = a.grid();
  const int m = g.dim();
  if (m < 3) fail(ErrorCode::unsupported_dimension, "chern_simons_density requires m >= 3");
  const CurvatureField da = d_one_form(a);
  const auto triples = multi_indices(m, 3);
  RealThreeForm out(g);
  parallel_for(g.node_count(), [&](std::size_t b, std::size_t e) {
    for (std::size_t n = b; n < e; ++n) {
      for (std::size_t t = 0; t < triples.size(); ++t) {
        const int i = triples[t][0], j = triples[t][1], k = triples[t][2];
        const double tr_adA = -killing_inner(a.at(n, i), da.pair(n, j, k)) +
                              killing_inner(a.at(n, j), da.pair(n, i, k)) -
                              killing_inner(a.at(n, k), da.pair(n, i, j));
        const double tr_cubic = -2.0 * killing_inner(a.at(n, i), bracket(a.at(n, j), a.at(n, k)));
        out.at(n, static_cast<int>(t)) = tr_adA + tr_cubic;
      }
    }
  });
  return out;
}

ScalarField d_three_form(const RealThreeForm& w) {
  const Grid& g = w.grid();
  if (g.dim() != 4) fail(ErrorCode::unsupported_dimension, "d_three_form requires a 4-dimensional grid");
  ScalarField out(g);
  parallel_for(g.node_count(), [&](std::size_t b, std::size_t e) {
    for (std::size_t n = b; n < e; ++n) {
      const auto st = node_stencil(g, n);
      // triples: 012 -> 0, 013 -> 1, 023 -> 2, 123 -> 3
      out(n) = apply(w, n, 3, st.d[0]) - apply(w, n, 2, st.d[1]) + apply(w, n, 1, st.d[2]) -
               apply(w, n, 0, st.d[3]);
    }
  });
  return out;
}

ScalarField partial(const ScalarField& f, int axis) {
  const Grid& g = f.grid();
  require(axis >= 0 && axis < g.dim(), "partial: axis out of range");
  ScalarField out(g);
  parallel_for(g.node_count(), [&](std::size_t b, std::size_t e) {
    for (std::size_t n = b; n < e; ++n) {
      const auto k = g.local_index(n);
      const auto t = detail::derivative_taps(k[axis], g.count(axis), g.stride(axis), g.spacing());
      out(n) = apply(f, n, 0, t);
    }
  });
  return out;
}

namespace {

double cube_weight_1d(int k, int n, double h) {
  if (k == 0 || k == n - 1) return 0.25 * h;
  if (k == 1 || k == n - 2) return 1.25 * h;
  return h;
}

}  // namespace

double node_weight(const Grid& grid, const std::array<int, 4>& local, const Region& region) {
  const int m = grid.dim();
  const double h = grid.spacing();
  Region::Kind kind = region.kind;
  double radius = region.radius;
  Point center = region.center;
  if (kind == Region::Kind::domain) {
    if (grid.domain() == Domain::cube) {
      kind = Region::Kind::cube;
    } else {
      kind = Region::Kind::ball;
      radius = 1.0;
      center = {0.0, 0.0, 0.0, 0.0};
    }
  }
  if (kind == Region::Kind::cube) {
    double w = 1.0;
    for (int a = 0; a < m; ++a) w *= cube_weight_1d(grid.lo(a) + local[a], grid.n_per_axis(), h);
    return w;
  }
  double r2 = 0.0;
  for (int a = 0; a < m; ++a) {
    const double d = grid.coordinate(grid.lo(a) + local[a]) - center[a];
    r2 += d * d;
  }
  const double frac = std::clamp((radius + h - std::sqrt(r2)) / (2.0 * h), 0.0, 1.0);
  return frac == 0.0 ? 0.0 : frac * std::pow(h, m);
}

void validate_region(const Grid& grid, const Region& region) {
  if (region.kind != Region::Kind::ball) return;
  require(region.radius > 0.0, "region radius must be positive");
  require(region.radius <= 1.0 + 1e-12, "region radius must be <= 1");
  const double h = grid.spacing();
  for (int a = 0; a < grid.dim(); ++a) {
    const double lo = region.center[a] - region.radius - h;
    const double hi = region.center[a] + region.radius + h;
    const bool lo_cut = grid.lo(a) > 0;
    const bool hi_cut = grid.lo(a) + grid.count(a) < grid.n_per_axis();
    if ((lo_cut && lo < grid.coordinate(grid.lo(a)) - 1e-12) ||
        (hi_cut && hi > grid.coordinate(grid.lo(a) + grid.count(a) - 1) + 1e-12)) {
      fail(ErrorCode::invalid_input, "region is not covered by the grid window");
    }
  }
}

ScalarField quadrature_weights(const Grid& grid, const Region& region) {
  validate_region(grid, region);
  ScalarField w(grid);
  parallel_for(grid.node_count(), [&](std::size_t b, std::size_t e) {
    for (std::size_t n = b; n < e; ++n) w(n) = node_weight(grid, grid.local_index(n), region);
  });
  return w;
}

double weighted_sum(std::span<const double> f, std::span<const double> w) {
  require(f.size() == w.size(), "weighted_sum: length mismatch");
  std::vector<double> terms(f.size());
  parallel_for(f.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) terms[i] = f[i] * w[i];
  });
  return pairwise_sum(terms);
}

double integrate(const ScalarField& f, const Region& region) {
  const Grid& g = f.grid();
  validate_region(g, region);
  std::vector<double> terms(g.node_count());
  parallel_for(g.node_count(), [&](std::size_t b, std::size_t e) {
    for (std::size_t n = b; n < e; ++n) {
      const double w = node_weight(g, g.local_index(n), region);
      terms[n] = w == 0.0 ? 0.0 : w * f(n);
    }
  });
  return pairwise_sum(terms);
}

}  // namespace ymlab
