#include "latdpp/window.hpp"

#include <algorithm>
#include <cstdlib>

#include "latdpp/errors.hpp"

namespace latdpp {

Window Window::box(std::vector<std::int64_t> origin, std::vector<std::int64_t> sides,
                   std::size_t cap) {
  if (origin.empty() || origin.size() != sides.size()) {
    throw InvalidWindow("box needs matching origin and side vectors");
  }
  std::size_t total = 1;
  for (std::int64_t s : sides) {
    if (s <= 0) throw InvalidWindow("box sides must be positive");
    if (total > cap / static_cast<std::size_t>(s) + 1) {
      throw WindowTooLarge("window exceeds the configured cap");
    }
    total *= static_cast<std::size_t>(s);
  }
  if (total == 0 || total > cap) throw WindowTooLarge("window exceeds the configured cap");

  Window w;
  w.dim_ = static_cast<int>(origin.size());
  w.size_ = total;
  w.is_box_ = true;
  w.origin_ = origin;
  w.sides_ = sides;
  w.flat_.resize(total * origin.size());
  std::vector<std::int64_t> idx(origin.size(), 0);
  for (std::size_t i = 0; i < total; ++i) {
    for (std::size_t j = 0; j < origin.size(); ++j) {
      w.flat_[i * origin.size() + j] = origin[j] + idx[j];
    }
    // lexicographic successor: last axis fastest
    for (std::size_t j = origin.size(); j-- > 0;) {
      if (++idx[j] < sides[j]) break;
      idx[j] = 0;
    }
  }
  return w;
}

Window Window::interval(std::int64_t origin, std::int64_t length, std::size_t cap) {
  return box({origin}, {length}, cap);
}

Window Window::explicit_points(std::vector<std::vector<std::int64_t>> points, std::size_t cap) {
  if (points.empty()) throw InvalidWindow("window must be nonempty");
  if (points.size() > cap) throw WindowTooLarge("window exceeds the configured cap");
  const std::size_t d = points[0].size();
  if (d == 0) throw InvalidWindow("points must have positive dimension");
  for (const auto& p : points) {
    if (p.size() != d) throw InvalidWindow("points must share one dimension");
  }
  std::sort(points.begin(), points.end());
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (points[i] == points[i + 1]) throw InvalidWindow("window points must be distinct");
  }
  Window w;
  w.dim_ = static_cast<int>(d);
  w.size_ = points.size();
  w.is_box_ = false;
  w.flat_.resize(points.size() * d);
  for (std::size_t i = 0; i < points.size(); ++i) {
    std::copy(points[i].begin(), points[i].end(), w.flat_.begin() + static_cast<std::ptrdiff_t>(i * d));
  }
  return w;
}

std::int64_t Window::max_lag(int axis) const {
  std::int64_t lo = flat_[static_cast<std::size_t>(axis)];
  std::int64_t hi = lo;
  for (std::size_t i = 0; i < size_; ++i) {
    std::int64_t v = flat_[i * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(axis)];
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return hi - lo;
}

std::int64_t Window::find(std::span<const std::int64_t> p) const {
  if (static_cast<int>(p.size()) != dim_) return -1;
  auto cmp_at = [&](std::size_t i) {
    auto q = point(i);
    for (int j = 0; j < dim_; ++j) {
      if (q[static_cast<std::size_t>(j)] != p[static_cast<std::size_t>(j)]) {
        return q[static_cast<std::size_t>(j)] < p[static_cast<std::size_t>(j)] ? -1 : 1;
      }
    }
    return 0;
  };
  std::size_t lo = 0, hi = size_;
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    int c = cmp_at(mid);
    if (c == 0) return static_cast<std::int64_t>(mid);
    if (c < 0) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return -1;
}

}  // namespace latdpp
