#include "ymlab/grid.hpp"

#include "ymlab/error.hpp"

#include <algorithm>
#include <cmath>

namespace ymlab {

std::string to_string(Domain d) { return d == Domain::cube ? "cube" : "ball"; }

Domain domain_from_string(const std::string& s) {
  if (s == "cube") return Domain::cube;
  if (s == "ball") return Domain::ball;
  fail(ErrorCode::invalid_input, "unknown domain '" + s + "'");
}

Grid::Grid(int dim, int n_per_axis, Domain domain)
    : dim_(dim), n_(n_per_axis), domain_(domain) {
  if (dim < 2 || dim > 4) {
    fail(ErrorCode::unsupported_dimension,
         "grid dimension must be 2, 3 or 4 (got " + std::to_string(dim) + ")");
  }
  require(n_per_axis >= 9 && n_per_axis % 2 == 1,
          "nodes per axis must be odd and >= 9 (got " + std::to_string(n_per_axis) + ")");
  h_ = 2.0 / static_cast<double>(n_ - 1);
  for (int a = 0; a < dim_; ++a) count_[a] = n_;
  finalize();
}

void Grid::finalize() {
  nodes_ = 1;
  for (int a = dim_ - 1; a >= 0; --a) {
    stride_[a] = static_cast<std::ptrdiff_t>(nodes_);
    nodes_ *= static_cast<std::size_t>(count_[a]);
  }
  for (int a = dim_; a < 4; ++a) {
    lo_[a] = 0;
    count_[a] = 1;
    stride_[a] = 0;
  }
}

Grid Grid::window(const std::array<int, 4>& lo, const std::array<int, 4>& count) const {
  Grid w = *this;
  for (int a = 0; a < dim_; ++a) {
    require(count[a] >= 3, "window needs at least 3 nodes per axis");
    require(lo[a] >= 0 && lo[a] + count[a] <= n_, "window exceeds the lattice");
    w.lo_[a] = lo[a];
    w.count_[a] = count[a];
  }
  w.finalize();
  return w;
}

Grid Grid::window_around(const Point& center, double radius, int margin) const {
  std::array<int, 4> lo{0, 0, 0, 0};
  std::array<int, 4> cnt{1, 1, 1, 1};
  for (int a = 0; a < dim_; ++a) {
    const double reach = radius + margin * h_;
    const int first = std::max(0, static_cast<int>(std::floor((center[a] - reach + 1.0) / h_ - 1e-9)));
    const int last = std::min(n_ - 1, static_cast<int>(std::ceil((center[a] + reach + 1.0) / h_ + 1e-9)));
    lo[a] = first;
    cnt[a] = std::max(3, last - first + 1);
    if (lo[a] + cnt[a] > n_) lo[a] = n_ - cnt[a];
  }
  return window(lo, cnt);
}

bool Grid::is_full() const {
  for (int a = 0; a < dim_; ++a) {
    if (lo_[a] != 0 || count_[a] != n_) return false;
  }
  return true;
}

std::array<int, 4> Grid::local_index(std::size_t node) const {
  std::array<int, 4> k{0, 0, 0, 0};
  for (int a = dim_ - 1; a >= 0; --a) {
    k[a] = static_cast<int>(node % static_cast<std::size_t>(count_[a]));
    node /= static_cast<std::size_t>(count_[a]);
  }
  return k;
}

std::size_t Grid::node_at(const std::array<int, 4>& local) const {
  std::size_t node = 0;
  for (int a = 0; a < dim_; ++a) node += static_cast<std::size_t>(local[a]) * stride_[a];
  return node;
}

Point Grid::position(std::size_t node) const {
  const auto k = local_index(node);
  Point x{0.0, 0.0, 0.0, 0.0};
  for (int a = 0; a < dim_; ++a) x[a] = coordinate(lo_[a] + k[a]);
  return x;
}

bool Grid::operator==(const Grid& o) const {
  return dim_ == o.dim_ && n_ == o.n_ && domain_ == o.domain_ && lo_ == o.lo_ &&
         count_ == o.count_;
}

}  // namespace ymlab
