#ifndef YMLAB_GRID_HPP
#define YMLAB_GRID_HPP

#include <array>
#include <cstddef>
#include <string>

namespace ymlab {

enum class Domain { cube, ball };

std::string to_string(Domain d);
Domain domain_from_string(const std::string& s);

using Point = std::array<double, 4>;

// Uniform node lattice on [-1, 1]^m with n_per_axis nodes per axis (n odd, so
// the origin is a node). A grid may be a window: a rectangular sub-block of
// the lattice that keeps the global node coordinates. Node linear index runs
// with the last axis fastest.
class Grid {
 public:
  Grid() = default;
  Grid(int dim, int n_per_axis, Domain domain = Domain::cube);

  // Sub-block starting at global index lo[a] with count[a] nodes per axis.
  Grid window(const std::array<int, 4>& lo, const std::array<int, 4>& count) const;
  // Smallest window holding every node within distance radius + margin*h
  // (sup norm) of center.
  Grid window_around(const Point& center, double radius, int margin) const;

  int dim() const { return dim_; }
  int n_per_axis() const { return n_; }
  double spacing() const { return h_; }
  Domain domain() const { return domain_; }
  int lo(int axis) const { return lo_[axis]; }
  int count(int axis) const { return count_[axis]; }
  bool is_full() const;
  std::size_t node_count() const { return nodes_; }
  std::ptrdiff_t stride(int axis) const { return stride_[axis]; }

  // Coordinate of global lattice index k; exact at the ends and the center
  // and antisymmetric under k -> n-1-k.
  double coordinate(int global_index) const {
    return static_cast<double>(2 * global_index - (n_ - 1)) / static_cast<double>(n_ - 1);
  }

  // Per-axis local indices of a node.
  std::array<int, 4> local_index(std::size_t node) const;
  std::size_t node_at(const std::array<int, 4>& local) const;
  Point position(std::size_t node) const;

  // Same lattice and same window.
  bool operator==(const Grid& o) const;
  bool operator!=(const Grid& o) const { return !(*this == o); }

 private:
  void finalize();

  int dim_ = 0;
  int n_ = 0;
  double h_ = 0.0;
  Domain domain_ = Domain::cube;
  std::array<int, 4> lo_{0, 0, 0, 0};
  std::array<int, 4> count_{1, 1, 1, 1};
  std::array<std::ptrdiff_t, 4> stride_{0, 0, 0, 0};
  std::size_t nodes_ = 0;
};

}  // namespace ymlab

#endif
