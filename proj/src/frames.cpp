#include "ymlab/frames.hpp"

#include "stencil.hpp"
#include "ymlab/forms.hpp"
#include "ymlab/parallel.hpp"

#include <cmath>

namespace ymlab {

namespace {

Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }
double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Vec3 derivative(const DiscImmersion& u, std::size_t n, const detail::Taps& t) {
  Vec3 acc{0.0, 0.0, 0.0};
  for (int k = 0; k < t.size; ++k) {
    const auto nb = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(n) + t.offset[k]);
    acc = acc + t.weight[k] * u(nb);
  }
  return acc;
}

void require_disc(const DiscImmersion& u) {
  if (u.grid().dim() != 2) fail(ErrorCode::unsupported_dimension, "immersions live on 2-dimensional grids");
}

template <class Kernel>
ScalarField node_map(const DiscImmersion& u, Kernel&& k) {
  ScalarField out(u.grid());
  parallel_for(u.node_count(), [&](std::size_t b, std::size_t e) {
    for (std::size_t n = b; n < e; ++n) {
      const auto st = detail::node_stencil(u.grid(), n);
      out(n) = k(derivative(u, n, st.d[0]), derivative(u, n, st.d[1]));
    }
  });
  return out;
}

}  // namespace

DiscImmersion sample_immersion(const Grid& grid, const std::function<Vec3(double, double)>& u) {
  if (grid.dim() != 2) fail(ErrorCode::unsupported_dimension, "immersions live on 2-dimensional grids");
  DiscImmersion out(grid);
  for (std::size_t n = 0; n < grid.node_count(); ++n) {
    const Point x = grid.position(n);
    out(n) = u(x[0], x[1]);
  }
  return out;
}

double area(const DiscImmersion& u) {
  require_disc(u);
  return integrate(node_map(u, [](const Vec3& a, const Vec3& b) { return std::sqrt(dot(cross(a, b), cross(a, b))); }));
}

double dirichlet_energy(const DiscImmersion& u) {
  require_disc(u);
  return integrate(node_map(u, [](const Vec3& a, const Vec3& b) { return 0.5 * (dot(a, a) + dot(b, b)); }));
}

ComplexField conformality_defect(const DiscImmersion& u) {
  require_disc(u);
  ComplexField out(u.grid());
  for (std::size_t n = 0; n < u.node_count(); ++n) {
    const auto st = detail::node_stencil(u.grid(), n);
    const Vec3 a = derivative(u, n, st.d[0]);
    const Vec3 b = derivative(u, n, st.d[1]);
    out(n) = {dot(a, a) - dot(b, b), -2.0 * dot(a, b)};
  }
  return out;
}

FrameResidual frame_coulomb_residual(const DiscImmersion& u) {
  require_disc(u);
  const Grid& g = u.grid();
  const std::size_t nodes = g.node_count();
  std::vector<Vec3> e1(nodes), e2(nodes);
  std::vector<char> bad(nodes, 0);
  FrameResidual out{ScalarField(g), {}};
  for (std::size_t n = 0; n < nodes; ++n) {
    const auto st = detail::node_stencil(g, n);
    const Vec3 a = derivative(u, n, st.d[0]);
    const Vec3 b = derivative(u, n, st.d[1]);
    const double na = std::sqrt(dot(a, a));
    const double nc = std::sqrt(dot(cross(a, b), cross(a, b)));
    if (!(na > 1e-12) || !(nc > 1e-12 * std::max(1.0, na * na))) {
      bad[n] = 1;
      continue;
    }
    e1[n] = (1.0 / na) * a;
    const Vec3 t = b - dot(b, e1[n]) * e1[n];
    e2[n] = (1.0 / std::sqrt(dot(t, t))) * t;
  }
  // omega_j = e1 . d_j e2
  std::vector<double> omega(2 * nodes, 0.0);
  for (std::size_t n = 0; n < nodes; ++n) {
    if (bad[n]) continue;
    const auto st = detail::node_stencil(g, n);
    for (int j = 0; j < 2; ++j) {
      Vec3 d{0.0, 0.0, 0.0};
      for (int k = 0; k < st.d[j].size; ++k) {
        const auto nb = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(n) + st.d[j].offset[k]);
        d = d + st.d[j].weight[k] * e2[nb];
      }
      omega[2 * n + j] = dot(e1[n], d);
    }
  }
  for (std::size_t n = 0; n < nodes; ++n) {
    const auto st = detail::node_stencil(g, n);
    bool touched = bad[n] != 0;
    double div = 0.0;
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < st.d[j].size; ++k) {
        const auto nb = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(n) + st.d[j].offset[k]);
        touched = touched || bad[nb];
        div += st.d[j].weight[k] * omega[2 * nb + j];
      }
    if (touched) {
      out.flagged.push_back(n);
    } else {
      out.residual(n) = div;
    }
  }
  return out;
}

}  // namespace ymlab
