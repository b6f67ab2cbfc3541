#ifndef YMLAB_FIELDS_HPP
#define YMLAB_FIELDS_HPP

#include "ymlab/error.hpp"
#include "ymlab/grid.hpp"
#include "ymlab/lie.hpp"

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace ymlab {

using Vec3 = std::array<double, 3>;

constexpr int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  int r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Position of the strictly increasing multi-index (i < j) in lexicographic order.
constexpr int pair_index(int m, int i, int j) {
  int idx = 0;
  for (int a = 0; a < i; ++a) idx += m - 1 - a;
  return idx + (j - i - 1);
}

constexpr int triple_index(int m, int i, int j, int k) {
  int idx = 0;
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      for (int c = b + 1; c < m; ++c) {
        if (a == i && b == j && c == k) return idx;
        ++idx;
      }
  return -1;
}

// Multi-indices of degree k in lexicographic order.
std::vector<std::array<int, 4>> multi_indices(int m, int k);

// Grid-sampled k-form with values of type V (LieElement for Lie-valued forms,
// double for real forms). Storage is node-major, then form component, so a
// node's components are contiguous.
template <int Degree, class V>
class FormField {
 public:
  using value_type = V;
  static constexpr int degree = Degree;

  FormField() = default;
  explicit FormField(const Grid& grid, const V& fill = V{})
      : grid_(grid),
        comps_(binomial(grid.dim(), Degree)),
        values_(grid.node_count() * static_cast<std::size_t>(comps_), fill) {
    if (Degree > grid.dim()) {
      fail(ErrorCode::unsupported_dimension, "form degree exceeds grid dimension");
    }
  }

  const Grid& grid() const { return grid_; }
  int components() const { return comps_; }
  std::size_t node_count() const { return grid_.node_count(); }

  V& at(std::size_t node, int comp) { return values_[node * comps_ + comp]; }
  const V& at(std::size_t node, int comp) const { return values_[node * comps_ + comp]; }

  V& operator()(std::size_t node) requires(Degree == 0) { return values_[node]; }
  const V& operator()(std::size_t node) const requires(Degree == 0) { return values_[node]; }

  // Antisymmetric read of a 2-form: F_ji = -F_ij, F_ii = 0.
  V pair(std::size_t node, int i, int j) const requires(Degree == 2) {
    if (i == j) return V{};
    if (i < j) return at(node, pair_index(grid_.dim(), i, j));
    return -at(node, pair_index(grid_.dim(), j, i));
  }

  std::span<V> values() { return values_; }
  std::span<const V> values() const { return values_; }

 private:
  Grid grid_;
  int comps_ = 0;
  std::vector<V> values_;
};

using ConnectionField = FormField<1, LieElement>;
using CurvatureField = FormField<2, LieElement>;
using ThreeFormField = FormField<3, LieElement>;
using LieScalarField = FormField<0, LieElement>;
using ScalarField = FormField<0, double>;
using RealThreeForm = FormField<3, double>;
using ComplexField = FormField<0, std::complex<double>>;
using GaugeField = FormField<0, GroupElement>;
using PointField = FormField<0, Vec3>;

template <class A, class B>
void require_same_grid(const A& a, const B& b, const char* what) {
  if (a.grid() != b.grid()) fail(ErrorCode::invalid_input, std::string(what) + ": grid mismatch");
}

}  // namespace ymlab

#endif
