#ifndef YMLAB_TESTS_SUPPORT_HPP
#define YMLAB_TESTS_SUPPORT_HPP

#include "ymlab/fields.hpp"
#include "ymlab/lie.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <string>

namespace test {

using namespace ymlab;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kEightPi2 = 8.0 * kPi * kPi;

// YMLAB_TEST_SEED overrides the default seed of every generator.
inline std::uint64_t seed() {
  if (const char* s = std::getenv("YMLAB_TEST_SEED")) return std::strtoull(s, nullptr, 10);
  return 42;
}

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t s = seed()) : gen(s) {}
  double uniform(double lo = -1.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(gen); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen); }
};

inline LieElement gen_lie(Rng& r, double scale = 1.0) {
  return {scale * r.uniform(), scale * r.uniform(), scale * r.uniform()};
}

inline GroupElement gen_group(Rng& r) {
  for (;;) {
    Quaternion q{r.uniform(), r.uniform(), r.uniform(), r.uniform()};
    const double n2 = q.norm2();
    if (n2 > 1e-3 && n2 <= 1.0) return GroupElement::from_quaternion((1.0 / std::sqrt(n2)) * q);
  }
}

inline double norm(const LieElement& a) { return std::sqrt(killing_norm2(a)); }

// Random trigonometric polynomial: a few modes with coefficients in g.
struct SmoothLie {
  struct Mode {
    std::array<double, 4> k{};
    double phase = 0.0;
    LieElement c;
  };
  std::array<Mode, 3> modes;

  SmoothLie() = default;
  SmoothLie(Rng& r, double amplitude, double freq = 1.5) {
    for (auto& m : modes) {
      for (double& k : m.k) k = r.uniform(-freq, freq);
      m.phase = r.uniform(0.0, 2.0 * kPi);
      m.c = gen_lie(r, amplitude);
    }
  }
  LieElement operator()(const Point& x) const {
    LieElement v;
    for (const auto& m : modes) v += std::sin(m.k[0] * x[0] + m.k[1] * x[1] + m.k[2] * x[2] + m.k[3] * x[3] + m.phase) * m.c;
    return v;
  }
  // Derivative along axis a.
  LieElement d(const Point& x, int a) const {
    LieElement v;
    for (const auto& m : modes)
      v += (m.k[a] * std::cos(m.k[0] * x[0] + m.k[1] * x[1] + m.k[2] * x[2] + m.k[3] * x[3] + m.phase)) * m.c;
    return v;
  }
};

// A_i(x) = S_i(x): analytic components with known derivatives.
struct SmoothConnection {
  std::array<SmoothLie, 4> comp;
  SmoothConnection(Rng& r, double amplitude) {
    for (auto& c : comp) c = SmoothLie(r, amplitude);
  }
  ConnectionField sample(const Grid& g) const {
    ConnectionField a(g);
    for (std::size_t n = 0; n < g.node_count(); ++n) {
      const Point x = g.position(n);
      for (int i = 0; i < g.dim(); ++i) a.at(n, i) = comp[i](x);
    }
    return a;
  }
};

inline ConnectionField gen_connection(const Grid& g, Rng& r, double amplitude) {
  return SmoothConnection(r, amplitude).sample(g);
}

inline GaugeField gen_pointwise_gauge(const Grid& g, Rng& r) {
  GaugeField out(g);
  for (std::size_t n = 0; n < g.node_count(); ++n) out(n) = gen_group(r);
  return out;
}

// exp of an analytic su(2)-valued function.
inline GaugeField gen_smooth_gauge(const Grid& g, Rng& r, double amplitude) {
  const SmoothLie v(r, amplitude);
  GaugeField out(g);
  for (std::size_t n = 0; n < g.node_count(); ++n) out(n) = exp_map(v(g.position(n)));
  return out;
}

// Abelian field along sigma_1 from scalar components.
inline ConnectionField abelian(const Grid& g, const std::function<double(const Point&, int)>& a) {
  ConnectionField out(g);
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    const Point x = g.position(n);
    for (int i = 0; i < g.dim(); ++i) out.at(n, i) = a(x, i) * LieElement::basis(0);
  }
  return out;
}

template <class F>
double max_norm(const F& f) {
  double m = 0.0;
  for (const auto& v : f.values()) m = std::max(m, norm(v));
  return m;
}

inline double order(double coarse, double fine) { return std::log2(coarse / fine); }

// 2x2 complex matrices as an independent model of su(2) and SU(2).
using C = std::complex<double>;
using Mat2 = std::array<C, 4>;

inline Mat2 sigma(int a) {
  const C i{0.0, 1.0};
  switch (a) {
    case 0: return {i, 0.0, 0.0, -i};
    case 1: return {0.0, 1.0, -1.0, 0.0};
    default: return {0.0, i, i, 0.0};
  }
}
inline Mat2 mul(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}
inline Mat2 add(const Mat2& a, const Mat2& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]}; }
inline Mat2 scale(C s, const Mat2& a) { return {s * a[0], s * a[1], s * a[2], s * a[3]}; }
inline Mat2 dagger(const Mat2& a) { return {std::conj(a[0]), std::conj(a[2]), std::conj(a[1]), std::conj(a[3])}; }
inline Mat2 to_matrix(const LieElement& b) {
  return add(add(scale(b[0], sigma(0)), scale(b[1], sigma(1))), scale(b[2], sigma(2)));
}
inline Mat2 to_matrix(const GroupElement& g) {
  const auto m = g.matrix();
  return {C{m[0][0], m[0][1]}, C{m[1][0], m[1][1]}, C{m[2][0], m[2][1]}, C{m[3][0], m[3][1]}};
}
// Coefficients of a traceless anti-Hermitian matrix.
inline LieElement from_matrix(const Mat2& m) { return {m[0].imag(), m[1].real(), m[1].imag()}; }
inline double trace_re(const Mat2& m) { return (m[0] + m[3]).real(); }
inline double distance(const Mat2& a, const Mat2& b) {
  double s = 0.0;
  for (int k = 0; k < 4; ++k) s += std::norm(a[k] - b[k]);
  return std::sqrt(s);
}

}  // namespace test

#endif
