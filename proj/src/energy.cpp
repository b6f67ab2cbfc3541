#include "ymlab/energy.hpp"

#include "stencil.hpp"
#include "ymlab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace ymlab {

namespace {

// sum_n w_n k(n) over nodes with positive weight; k is evaluated only there.
template <class Kernel>
double weighted_node_sum(const Grid& g, const Region& region, Kernel&& kernel) {
  validate_region(g, region);
  std::vector<double> terms(g.node_count(), 0.0);
  parallel_for(g.node_count(), [&](std::size_t b, std::size_t e) {
    for (std::size_t n = b; n < e; ++n) {
      const double w = node_weight(g, g.local_index(n), region);
      if (w > 0.0) terms[n] = w * kernel(n);
    }
  });
  return pairwise_sum(terms);
}

}  // namespace

ScalarField ym_density(const ConnectionField& a) {
  const Grid& g = a.grid();
  ScalarField out(g);
  parallel_for(g.node_count(), [&](std::size_t b, std::size_t e) {
    LieElement f[6];
    for (std::size_t n = b; n < e; ++n) {
      detail::node_curvature(a, n, detail::node_stencil(g, n), f);
      double s = 0.0;
      for (int p = 0; p < binomial(g.dim(), 2); ++p) s += killing_norm2(f[p]);
      out(n) = s;
    }
  });
  return out;
}

double ym_energy(const ConnectionField& a, const Region& region) {
  const Grid& g = a.grid();
  const int comps = binomial(g.dim(), 2);
  return weighted_node_sum(g, region, [&](std::size_t n) {
    LieElement f[6];
    detail::node_curvature(a, n, detail::node_stencil(g, n), f);
    double s = 0.0;
    for (int p = 0; p < comps; ++p) s += killing_norm2(f[p]);
    return s;
  });
}

double ym_energy(const CurvatureField& f, const Region& region) {
  return weighted_node_sum(f.grid(), region, [&](std::size_t n) {
    double s = 0.0;
    for (int p = 0; p < f.components(); ++p) s += killing_norm2(f.at(n, p));
    return s;
  });
}

double e_energy(const ConnectionField& a, const Region& region) {
  const Grid& g = a.grid();
  const int m = g.dim();
  return weighted_node_sum(g, region, [&](std::size_t n) {
    const auto st = detail::node_stencil(g, n);
    double s = 0.0;
    LieElement div;
    for (int i = 0; i < m; ++i) {
      div += detail::apply(a, n, i, st.d[i]);
      for (int j = i + 1; j < m; ++j)
        s += killing_norm2(detail::apply(a, n, j, st.d[i]) - detail::apply(a, n, i, st.d[j]));
    }
    return s + killing_norm2(div);
  });
}

double w12_seminorm(const ConnectionField& a, const Region& region) {
  const Grid& g = a.grid();
  const int m = g.dim();
  return weighted_node_sum(g, region, [&](std::size_t n) {
    const auto st = detail::node_stencil(g, n);
    double s = 0.0;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) s += killing_norm2(detail::apply(a, n, j, st.d[i]));
    return s;
  });
}

double l2_of_A(const ConnectionField& a, const Region& region) {
  const int m = a.grid().dim();
  return weighted_node_sum(a.grid(), region, [&](std::size_t n) {
    double s = 0.0;
    for (int i = 0; i < m; ++i) s += killing_norm2(a.at(n, i));
    return s;
  });
}

double weak_l2_quasinorm(const ScalarField& f, const Region& region) {
  const Grid& g = f.grid();
  validate_region(g, region);
  std::vector<std::pair<double, double>> samples;
  samples.reserve(g.node_count());
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    const double w = node_weight(g, g.local_index(n), region);
    if (w > 0.0) samples.emplace_back(std::abs(f(n)), w);
  }
  std::sort(samples.begin(), samples.end(),
            [](const auto& x, const auto& y) { return x.first > y.first; });
  // alpha just below f_(k): the level set holds every sample >= f_(k), so the
  // candidate is taken at the end of each group of equal values.
  double best = 0.0, measure = 0.0;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    measure += samples[k].second;
    if (k + 1 < samples.size() && samples[k + 1].first == samples[k].first) continue;
    best = std::max(best, measure * samples[k].first * samples[k].first);
  }
  return std::sqrt(best);
}

DensityProfile density_profile(const ConnectionField& a, const Point& p, const std::vector<double>& radii) {
  const Grid& g = a.grid();
  const int m = g.dim();
  DensityProfile out;
  out.center = p;
  double norm_p = 0.0;
  for (int ax = 0; ax < m; ++ax) norm_p += p[ax] * p[ax];
  norm_p = std::sqrt(norm_p);
  double prev = 0.0;
  for (double r : radii) {
    require(r > prev, "density_profile: radii must be positive and strictly increasing");
    prev = r;
    bool inside = true;
    if (g.domain() == Domain::ball) {
      inside = norm_p + r <= 1.0 + 1e-12;
    } else {
      for (int ax = 0; ax < m; ++ax) inside = inside && std::abs(p[ax]) + r <= 1.0 + 1e-12;
    }
    require(inside, "density_profile: ball of radius " + std::to_string(r) + " leaves the domain");
  }
  const ScalarField dens = ym_density(a);
  for (double r : radii) {
    const double e = integrate(dens, Region::ball(r, p));
    out.radii.push_back(r);
    out.values.push_back(std::pow(r, 4 - m) * e);
  }
  return out;
}

double chern_integral(const ConnectionField& a, double r) {
  const Grid& g = a.grid();
  if (g.dim() != 4) fail(ErrorCode::unsupported_dimension, "chern_integral requires m = 4");
  return weighted_node_sum(g, Region::ball(r), [&](std::size_t n) {
    LieElement f[6];
    detail::node_curvature(a, n, detail::node_stencil(g, n), f);
    const double tr = -killing_inner(f[0], f[5]) + killing_inner(f[1], f[4]) - killing_inner(f[2], f[3]);
    return kChernSign * 2.0 * tr;
  });
}

double chern_integral(const CurvatureField& f, double r) {
  return integrate(chern_density(f), Region::ball(r));
}

EnergyReport energy_report(const ConnectionField& a) {
  EnergyReport rep;
  rep.ym = ym_energy(a);
  rep.e_energy = e_energy(a);
  rep.w12_seminorm = w12_seminorm(a);
  rep.l2_of_A = l2_of_A(a);
  ScalarField mag = ym_density(a);
  for (auto& v : mag.values()) v = std::sqrt(v);
  rep.weak_l2_of_F = weak_l2_quasinorm(mag);
  return rep;
}

}  // namespace ymlab
