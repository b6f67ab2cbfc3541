#include "ymlab/instanton.hpp"

#include "ymlab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ymlab {

namespace {

constexpr Quaternion kUnit[4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};

Quaternion as_quaternion(const Point& x, const Point& c) {
  return {x[0] - c[0], x[1] - c[1], x[2] - c[2], x[3] - c[3]};
}

// d_i A_j at x, row-major in (i, j).
std::array<LieElement, 16> bpst_derivative(const BPSTParams& p, const Point& x) {
  const Quaternion q = as_quaternion(x, p.center);
  const double l2 = p.lambda * p.lambda;
  const double den = 1.0 + l2 * q.norm2();
  const double xs[4] = {q.w, q.x, q.y, q.z};
  std::array<LieElement, 16> out;
  for (int j = 0; j < 4; ++j) {
    const LieElement lj = (q * kUnit[j].conj()).imag();
    for (int i = 0; i < 4; ++i) {
      const LieElement lij = (kUnit[i] * kUnit[j].conj()).imag();
      out[4 * i + j] = (l2 / den) * lij - (2.0 * l2 * l2 * xs[i] / (den * den)) * lj;
    }
  }
  return out;
}

double simpson(const std::function<double(double)>& g, double a, double b, double fa, double fm,
               double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = g(lm), frm = g(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double diff = left + right - whole;
  if (depth <= 0 || std::abs(diff) <= 15.0 * tol || std::abs(diff) <= 1e-15 * std::abs(left + right)) return left + right + diff / 15.0;
  return simpson(g, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson(g, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double adaptive(const std::function<double(double)>& g, double a, double b, double tolerance) {
  constexpr int pieces = 64;
  // Coarse pass sets the absolute scale of the tolerance.
  double scale = 0.0;
  const double step = (b - a) / pieces;
  for (int k = 0; k < pieces; ++k) {
    const double x0 = a + k * step;
    scale += step / 6.0 * (g(x0) + 4.0 * g(x0 + 0.5 * step) + g(x0 + step));
  }
  const double tol = std::max(std::abs(scale), 1e-300) * tolerance / pieces;
  double total = 0.0;
  for (int k = 0; k < pieces; ++k) {
    const double x0 = a + k * step, x1 = x0 + step;
    const double f0 = g(x0), fm = g(0.5 * (x0 + x1)), f1 = g(x1);
    const double whole = step / 6.0 * (f0 + 4.0 * fm + f1);
    total += simpson(g, x0, x1, f0, fm, f1, whole, tol, 40);
  }
  return total;
}

}  // namespace

OneFormValue bpst_connection(const BPSTParams& p, const Point& x) {
  const Quaternion q = as_quaternion(x, p.center);
  const double l2 = p.lambda * p.lambda;
  const double s = l2 / (1.0 + l2 * q.norm2());
  OneFormValue a;
  for (int j = 0; j < 4; ++j) a[j] = s * (q * kUnit[j].conj()).imag();
  return a;
}

TwoFormValue bpst_curvature(const BPSTParams& p, const Point& x) {
  const Quaternion q = as_quaternion(x, p.center);
  const double l2 = p.lambda * p.lambda;
  const double den = 1.0 + l2 * q.norm2();
  const double s = l2 / (den * den);
  TwoFormValue f;
  int idx = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      const Quaternion e = kUnit[i] * kUnit[j].conj() + (-1.0) * (kUnit[j] * kUnit[i].conj());
      f[idx++] = s * e.imag();
    }
  return f;
}

double bpst_density(double lambda, double r) {
  const double l2 = lambda * lambda;
  const double den = 1.0 + l2 * r * r;
  const double d2 = den * den;
  return 48.0 * l2 * l2 / (d2 * d2);
}

ConnectionField sample_bpst(const Grid& grid, const BPSTParams& p) {
  if (grid.dim() != 4) fail(ErrorCode::unsupported_dimension, "BPST fields live on 4-dimensional grids");
  require(p.lambda > 0.0 && std::isfinite(p.lambda), "lambda must be positive");
  ConnectionField a(grid);
  parallel_for(grid.node_count(), [&](std::size_t b, std::size_t e) {
    for (std::size_t n = b; n < e; ++n) {
      const auto v = bpst_connection(p, grid.position(n));
      for (int j = 0; j < 4; ++j) a.at(n, j) = v[j];
    }
  });
  return a;
}

CurvatureField sample_bpst_curvature(const Grid& grid, const BPSTParams& p) {
  if (grid.dim() != 4) fail(ErrorCode::unsupported_dimension, "BPST fields live on 4-dimensional grids");
  require(p.lambda > 0.0 && std::isfinite(p.lambda), "lambda must be positive");
  CurvatureField f(grid);
  parallel_for(grid.node_count(), [&](std::size_t b, std::size_t e) {
    for (std::size_t n = b; n < e; ++n) {
      const auto v = bpst_curvature(p, grid.position(n));
      for (int k = 0; k < 6; ++k) f.at(n, k) = v[k];
    }
  });
  return f;
}

TwoFormValue hodge_dual(const TwoFormValue& f) {
  // 01 <-> 23, 02 <-> -13, 03 <-> 12
  return {f[5], -f[4], f[3], f[2], -f[1], f[0]};
}

ConnectionField dilate(const ConnectionField& a, double t) {
  if (!(t > 0.0 && t <= 1.0)) fail(ErrorCode::invalid_input, "dilation rate must lie in (0, 1]");
  const Grid& g = a.grid();
  const int m = g.dim();
  const double h = g.spacing();
  if (t == 1.0) return a;
  ConnectionField out(g);
  parallel_for(g.node_count(), [&](std::size_t b, std::size_t e) {
    for (std::size_t n = b; n < e; ++n) {
      const Point x = g.position(n);
      std::array<int, 4> base{0, 0, 0, 0};
      std::array<double, 4> frac{0.0, 0.0, 0.0, 0.0};
      for (int ax = 0; ax < m; ++ax) {
        double s = (t * x[ax] + 1.0) / h - g.lo(ax);
        s = std::clamp(s, 0.0, static_cast<double>(g.count(ax) - 1));
        int i0 = std::min(static_cast<int>(std::floor(s)), g.count(ax) - 2);
        base[ax] = i0;
        frac[ax] = s - i0;
      }
      for (int comp = 0; comp < m; ++comp) {
        LieElement acc;
        for (int corner = 0; corner < (1 << m); ++corner) {
          double w = 1.0;
          std::array<int, 4> idx = base;
          for (int ax = 0; ax < m; ++ax) {
            const int bit = (corner >> ax) & 1;
            idx[ax] += bit;
            w *= bit ? frac[ax] : 1.0 - frac[ax];
          }
          if (w != 0.0) acc += w * a.at(g.node_at(idx), comp);
        }
        out.at(n, comp) = t * acc;
      }
    }
  });
  return out;
}

double radial_integral(const std::function<double(double)>& f, double r_max, double tolerance) {
  require(r_max >= 0.0, "radial_integral: negative radius");
  const double area = 2.0 * std::numbers::pi * std::numbers::pi;
  if (std::isinf(r_max)) {
    auto g = [&](double s) {
      if (s >= 1.0) return 0.0;
      const double r = s / (1.0 - s);
      const double v = area * r * r * r * f(r) / ((1.0 - s) * (1.0 - s));
      return std::isfinite(v) ? v : 0.0;
    };
    return adaptive(g, 0.0, 1.0, tolerance);
  }
  auto g = [&](double r) { return area * r * r * r * f(r); };
  return adaptive(g, 0.0, r_max, tolerance);
}

double bpst_radial_energy(double lambda, double r) {
  require(lambda > 0.0, "lambda must be positive");
  const BPSTParams p{lambda, {}};
  auto density = [&](double s) {
    const auto f = bpst_curvature(p, {s, 0.0, 0.0, 0.0});
    double sum = 0.0;
    for (const auto& c : f) sum += killing_norm2(c);
    return sum;
  };
  return radial_integral(density, r);
}

double bpst_radial_w12(double lambda, double r) {
  require(lambda > 0.0, "lambda must be positive");
  const BPSTParams p{lambda, {}};
  auto density = [&](double s) {
    const auto d = bpst_derivative(p, {s, 0.0, 0.0, 0.0});
    double sum = 0.0;
    for (const auto& c : d) sum += killing_norm2(c);
    return sum;
  };
  return radial_integral(density, r);
}

}  // namespace ymlab
