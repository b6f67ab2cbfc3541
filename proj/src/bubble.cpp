#include "ymlab/bubble.hpp"

#include "ymlab/energy.hpp"
#include "ymlab/forms.hpp"
#include "ymlab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ymlab {

namespace {

// 4-D inclusive prefix sums with a zero guard layer: s[(i+1),(j+1),...].
struct SummedArea {
  std::array<int, 4> dim{};
  std::array<std::size_t, 4> stride{};
  std::vector<double> s;

  SummedArea(const Grid& g, const std::vector<double>& e) {
    for (int a = 0; a < 4; ++a) dim[a] = g.count(a) + 1;
    stride[3] = 1;
    for (int a = 2; a >= 0; --a) stride[a] = stride[a + 1] * dim[a + 1];
    s.assign(stride[0] * dim[0], 0.0);
    for (std::size_t n = 0; n < g.node_count(); ++n) {
      const auto k = g.local_index(n);
      s[(k[0] + 1) * stride[0] + (k[1] + 1) * stride[1] + (k[2] + 1) * stride[2] + (k[3] + 1)] = e[n];
    }
    for (int a = 0; a < 4; ++a) {
      for (std::size_t idx = 0; idx < s.size(); ++idx) {
        const std::size_t ka = (idx / stride[a]) % dim[a];
        if (ka > 0) s[idx] += s[idx - stride[a]];
      }
    }
  }

  // Sum over the local index box [lo, hi] (inclusive, already clipped).
  double box(const std::array<int, 4>& lo, const std::array<int, 4>& hi) const {
    double total = 0.0;
    for (int corner = 0; corner < 16; ++corner) {
      std::size_t idx = 0;
      int sign = 1;
      for (int a = 0; a < 4; ++a) {
        if ((corner >> a) & 1) {
          idx += static_cast<std::size_t>(lo[a]) * stride[a];
          sign = -sign;
        } else {
          idx += static_cast<std::size_t>(hi[a] + 1) * stride[a];
        }
      }
      total += sign * s[idx];
    }
    return total;
  }
};

double ball_energy(const Grid& g, const std::vector<double>& e, std::size_t center, double rho) {
  const double h = g.spacing();
  const auto c = g.local_index(center);
  const int reach = static_cast<int>(std::ceil(rho / h)) + 1;
  std::array<int, 4> lo{}, hi{};
  for (int a = 0; a < 4; ++a) {
    lo[a] = std::max(0, c[a] - reach);
    hi[a] = std::min(g.count(a) - 1, c[a] + reach);
  }
  double total = 0.0;
  for (int i0 = lo[0]; i0 <= hi[0]; ++i0) {
    const double d0 = (i0 - c[0]) * h;
    for (int i1 = lo[1]; i1 <= hi[1]; ++i1) {
      const double d1 = (i1 - c[1]) * h;
      for (int i2 = lo[2]; i2 <= hi[2]; ++i2) {
        const double d2 = (i2 - c[2]) * h;
        double row = 0.0;
        for (int i3 = lo[3]; i3 <= hi[3]; ++i3) {
          const double d3 = (i3 - c[3]) * h;
          const double r = std::sqrt(d0 * d0 + d1 * d1 + d2 * d2 + d3 * d3);
          const double frac = std::clamp((rho + h - r) / (2.0 * h), 0.0, 1.0);
          if (frac > 0.0) row += frac * e[g.node_at({i0, i1, i2, i3})];
        }
        total += row;
      }
    }
  }
  return total;
}

}  // namespace

BubbleReport bubble_detect(const ConnectionField& a, double epsilon, double r_factor) {
  const Grid& g = a.grid();
  if (g.dim() != 4) fail(ErrorCode::unsupported_dimension, "bubble_detect requires m = 4");
  require(epsilon > 0.0, "bubble_detect: epsilon must be positive");
  require(r_factor > 1.0, "bubble_detect: R must exceed 1");
  const double h = g.spacing();
  const std::size_t nodes = g.node_count();

  const ScalarField dens = ym_density(a);
  const ScalarField w = quadrature_weights(g, Region::domain());
  std::vector<double> e(nodes);
  for (std::size_t n = 0; n < nodes; ++n) e[n] = w(n) * dens(n);

  BubbleReport rep;
  rep.total_energy = pairwise_sum(e);
  const double target = 0.5 * epsilon;
  if (rep.total_energy < target) {
    rep.exterior_energy = rep.total_energy;
    return rep;
  }
  const SummedArea sat(g, e);

  std::size_t best = 0;
  for (double rho = h; rho <= 2.0 + 1e-12; rho *= 2.0) {
    const int reach = static_cast<int>(std::ceil(rho / h)) + 1;
    std::vector<double> energy(nodes, -1.0);
    parallel_for(nodes, [&](std::size_t b, std::size_t end) {
      for (std::size_t n = b; n < end; ++n) {
        const auto c = g.local_index(n);
        std::array<int, 4> lo{}, hi{};
        for (int ax = 0; ax < 4; ++ax) {
          lo[ax] = std::max(0, c[ax] - reach);
          hi[ax] = std::min(g.count(ax) - 1, c[ax] + reach);
        }
        // The box contains the ball's support, so it bounds the ball energy.
        if (sat.box(lo, hi) < target * (1.0 - 1e-9)) continue;
        energy[n] = ball_energy(g, e, n, rho);
      }
    });
    double best_e = -1.0;
    for (std::size_t n = 0; n < nodes; ++n) {
      if (energy[n] >= target && energy[n] > best_e) {
        best_e = energy[n];
        best = n;
      }
    }
    if (best_e >= 0.0) {
      rep.critical_radius = rho;
      break;
    }
  }
  if (!rep.concentrated()) {
    rep.exterior_energy = rep.total_energy;
    return rep;
  }
  rep.bubble_center = g.position(best);
  const double inner = r_factor * rep.critical_radius;
  const double outer = 1.0 / r_factor;
  rep.energy_in_bubble = ball_energy(g, e, best, inner);
  rep.neck_energy = outer > inner ? std::max(0.0, ball_energy(g, e, best, outer) - rep.energy_in_bubble) : 0.0;
  rep.exterior_energy = rep.total_energy - rep.energy_in_bubble - rep.neck_energy;
  const double quantum = 8.0 * std::numbers::pi * std::numbers::pi;
  const double k = std::max(1.0, std::round(rep.energy_in_bubble / quantum));
  rep.quantization_defect = std::abs(rep.energy_in_bubble - k * quantum);
  return rep;
}

}  // namespace ymlab
