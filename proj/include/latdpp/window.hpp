#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace latdpp {

// Finite index set W in Z^d with a fixed lexicographic enumeration, so that
// kernel matrices, eigenvectors and sampled configurations are reproducible.
class Window {
 public:
  static constexpr std::size_t kDefaultCap = 4096;

  // Axis-aligned box: origin + [0, side_j) per axis, enumerated
  // lexicographically (last axis fastest).
  static Window box(std::vector<std::int64_t> origin, std::vector<std::int64_t> sides,
                    std::size_t cap = kDefaultCap);
  static Window interval(std::int64_t origin, std::int64_t length,
                         std::size_t cap = kDefaultCap);
  // Arbitrary distinct points; sorted into lexicographic order.
  static Window explicit_points(std::vector<std::vector<std::int64_t>> points,
                                std::size_t cap = kDefaultCap);

  std::size_t size() const { return size_; }
  int dimension() const { return dim_; }
  std::span<const std::int64_t> point(std::size_t i) const {
    return {flat_.data() + i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
  }

  bool is_box() const { return is_box_; }
  const std::vector<std::int64_t>& box_origin() const { return origin_; }
  const std::vector<std::int64_t>& box_sides() const { return sides_; }

  // largest |w_i[axis] - w_j[axis]| over the window
  std::int64_t max_lag(int axis) const;

  // index of a point, or -1 if absent (binary search over the sorted order)
  std::int64_t find(std::span<const std::int64_t> p) const;

 private:
  Window() = default;
  int dim_ = 1;
  std::size_t size_ = 0;
  bool is_box_ = false;
  std::vector<std::int64_t> origin_, sides_;
  std::vector<std::int64_t> flat_;  // size_ * dim_, lexicographically sorted
};

}  // namespace latdpp
