#ifndef YMLAB_SRC_STENCIL_HPP
#define YMLAB_SRC_STENCIL_HPP

// First-derivative stencils: central in the interior, second-order one-sided
// at the first and last node of each line.

#include "ymlab/fields.hpp"

#include <array>
#include <cstddef>

namespace ymlab::detail {

struct Taps {
  std::array<std::ptrdiff_t, 5> offset{};
  std::array<double, 5> weight{};
  int size = 0;
};

inline Taps derivative_taps(int k, int count, std::ptrdiff_t stride, double h) {
  const double c = 0.5 / h;
  Taps t;
  if (k == 0) {
    t.offset = {0, stride, 2 * stride};
    t.weight = {-3.0 * c, 4.0 * c, -c};
    t.size = 3;
  } else if (k == count - 1) {
    t.offset = {0, -stride, -2 * stride};
    t.weight = {3.0 * c, -4.0 * c, c};
    t.size = 3;
  } else {
    t.offset = {-stride, stride};
    t.weight = {-c, c};
    t.size = 2;
  }
  return t;
}

// Entry D[row][col] of the 1-D derivative matrix on a line of `count` nodes.
inline double derivative_entry(int row, int col, int count, double h) {
  const double c = 0.5 / h;
  if (row == 0) {
    if (col == 0) return -3.0 * c;
    if (col == 1) return 4.0 * c;
    if (col == 2) return -c;
    return 0.0;
  }
  if (row == count - 1) {
    if (col == count - 1) return 3.0 * c;
    if (col == count - 2) return -4.0 * c;
    if (col == count - 3) return c;
    return 0.0;
  }
  if (col == row - 1) return -c;
  if (col == row + 1) return c;
  return 0.0;
}

// Taps of the transposed operator: (D^T f)[k] = sum_r D[r][k] f[r].
inline Taps transpose_taps(int k, int count, std::ptrdiff_t stride, double h) {
  Taps t;
  for (int r = k - 2; r <= k + 2; ++r) {
    if (r < 0 || r >= count) continue;
    const double w = derivative_entry(r, k, count, h);
    if (w == 0.0) continue;
    t.offset[t.size] = (r - k) * stride;
    t.weight[t.size] = w;
    ++t.size;
  }
  return t;
}

// Derivative taps sum to zero, so differences against the node itself are
// used: constants then differentiate to exactly zero.
template <class Field>
typename Field::value_type apply(const Field& f, std::size_t node, int comp, const Taps& t) {
  typename Field::value_type acc{};
  const auto& center = f.at(node, comp);
  for (int s = 0; s < t.size; ++s) {
    if (t.offset[s] == 0) continue;
    acc += t.weight[s] * (f.at(static_cast<std::size_t>(static_cast<std::ptrdiff_t>(node) + t.offset[s]), comp) - center);
  }
  return acc;
}

// Derivative taps for every axis at one node.
struct NodeStencil {
  std::array<Taps, 4> d;
  std::array<int, 4> local{};
};

inline NodeStencil node_stencil(const Grid& g, std::size_t node) {
  NodeStencil s;
  s.local = g.local_index(node);
  for (int a = 0; a < g.dim(); ++a) {
    s.d[a] = derivative_taps(s.local[a], g.count(a), g.stride(a), g.spacing());
  }
  return s;
}

inline NodeStencil node_transpose_stencil(const Grid& g, std::size_t node) {
  NodeStencil s;
  s.local = g.local_index(node);
  for (int a = 0; a < g.dim(); ++a) {
    s.d[a] = transpose_taps(s.local[a], g.count(a), g.stride(a), g.spacing());
  }
  return s;
}

// F_ij at one node, pairs in lexicographic order.
inline void node_curvature(const ConnectionField& a, std::size_t n, const NodeStencil& st, LieElement* f) {
  const int m = a.grid().dim();
  int p = 0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      f[p++] = apply(a, n, j, st.d[i]) - apply(a, n, i, st.d[j]) + bracket(a.at(n, i), a.at(n, j));
}

}  // namespace ymlab::detail

#endif
