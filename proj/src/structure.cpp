#include "latdpp/structure.hpp"

#include <algorithm>
#include <cmath>

#include "latdpp/errors.hpp"

namespace latdpp {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

void RotationSystem::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error("rotation number must lie in (0,1)");
  if (!(x0 >= 0.0 && x0 < 1.0)) throw Error("initial point must lie in [0,1)");
  if (observable == Observable::kIntervalIndicator && !(beta > 0.0 && beta <= 1.0)) {
    throw Error("indicator width must lie in (0,1]");
  }
  // continued-fraction convergents p/q with q <= 1e4
  double x = alpha;
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int it = 0; it < 64; ++it) {
    double a = std::floor(x);
    std::int64_t ai = static_cast<std::int64_t>(a);
    std::int64_t p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    if (q2 > 10000 || q2 <= 0) break;
    if (q2 >= 1) {
      double approx = static_cast<double>(p2) / static_cast<double>(q2);
      if (std::abs(alpha - approx) < 1e-9 / (static_cast<double>(q2) * static_cast<double>(q2))) {
        throw Error("rotation number is too close to the rational " + std::to_string(p2) + "/" +
                    std::to_string(q2));
      }
    }
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    double frac = x - a;
    if (frac < 1e-15) break;
    x = 1.0 / frac;
  }
}

std::complex<double> RotationSystem::observe(double x) const {
  if (observable == Observable::kCharacter) {
    return {std::cos(kTwoPi * x), std::sin(kTwoPi * x)};
  }
  return {x < beta ? 1.0 : 0.0, 0.0};
}

double rotation_point(const RotationSystem& system, const IntPolynomial& poly, std::int64_t n) {
  double f = system.x0 + frac_times_int(system.alpha, poly.eval(n));
  f -= std::floor(f);
  if (f >= 1.0) f -= 1.0;
  return f;
}

double sumset_coverage(const Configuration& config, const Window& window, std::int64_t m_max) {
  const int d = window.dimension();
  if (!window.is_box()) throw InvalidWindow("sum-set coverage needs a box window");
  const auto& origin = window.box_origin();
  const auto& sides = window.box_sides();
  for (int j = 0; j < d; ++j) {
    std::int64_t w = -origin[static_cast<std::size_t>(j)];
    if (w <= 0 || sides[static_cast<std::size_t>(j)] != 2 * w + 1) {
      throw InvalidWindow("sum-set coverage needs a symmetric box [-W, W]^d");
    }
    if (m_max > w) throw MExceedsW("target range exceeds the sampled window");
  }
  if (m_max < 0) throw MExceedsW("target range must be nonnegative");

  // encoded present points, sorted for binary search
  std::vector<std::vector<std::int64_t>> present;
  for (std::size_t i = 0; i < window.size(); ++i) {
    if (!config.test(i)) continue;
    auto p = window.point(i);
    present.emplace_back(p.begin(), p.end());
  }
  std::sort(present.begin(), present.end());
  auto contains = [&](const std::vector<std::int64_t>& p) {
    return std::binary_search(present.begin(), present.end(), p);
  };

  const std::int64_t span = 2 * m_max + 1;
  std::size_t targets = 1, covered = 0;
  for (int j = 0; j < d; ++j) targets *= static_cast<std::size_t>(span);
  std::vector<std::int64_t> m(static_cast<std::size_t>(d), -m_max), diff(static_cast<std::size_t>(d));
  for (std::size_t t = 0; t < targets; ++t) {
    for (const auto& x : present) {
      bool in_window = true;
      for (int j = 0; j < d; ++j) {
        diff[static_cast<std::size_t>(j)] = m[static_cast<std::size_t>(j)] - x[static_cast<std::size_t>(j)];
        std::int64_t w = -origin[static_cast<std::size_t>(j)];
        if (diff[static_cast<std::size_t>(j)] < -w || diff[static_cast<std::size_t>(j)] > w) {
          in_window = false;
          break;
        }
      }
      if (in_window && contains(diff)) {
        ++covered;
        break;
      }
    }
    for (int j = d - 1; j >= 0; --j) {
      auto& v = m[static_cast<std::size_t>(j)];
      if (++v <= m_max) break;
      v = -m_max;
    }
  }
  return static_cast<double>(covered) / static_cast<double>(targets);
}

std::int64_t max_gap(const Configuration& config) {
  std::int64_t best = 0, run = 0;
  for (std::size_t i = 0; i < config.size(); ++i) {
    if (config.test(i)) {
      run = 0;
    } else {
      ++run;
      best = std::max(best, run);
    }
  }
  return best;
}

double run_presence_probability(double q0, std::int64_t ell, std::int64_t n) {
  if (ell <= 0) return 1.0;
  if (ell > n) return 0.0;
  // a[k] = P(no ell consecutive zeros among the first k sites)
  const double p1 = 1.0 - q0;
  std::vector<double> a(static_cast<std::size_t>(n) + 1);
  double q_pow = std::pow(q0, static_cast<double>(ell));
  for (std::int64_t k = 0; k <= n; ++k) {
    if (k < ell) {
      a[static_cast<std::size_t>(k)] = 1.0;
    } else if (k == ell) {
      a[static_cast<std::size_t>(k)] = 1.0 - q_pow;
    } else {
      a[static_cast<std::size_t>(k)] = a[static_cast<std::size_t>(k - 1)] -
                                       p1 * q_pow * a[static_cast<std::size_t>(k - ell - 1)];
    }
  }
  return 1.0 - a[static_cast<std::size_t>(n)];
}

std::vector<double> residue_histogram(const Configuration& config, std::int64_t q,
                                      const IntPolynomial* poly) {
  if (q < 2) throw Error("residue classes need q >= 2");
  std::vector<double> hist(static_cast<std::size_t>(q), 0.0);
  std::size_t total = 0;
  for (std::size_t i = 0; i < config.size(); ++i) {
    if (!config.test(i)) continue;
    std::int64_t n = static_cast<std::int64_t>(i);
    std::int64_t r = poly ? poly->eval_mod(n, q) : n % q;
    hist[static_cast<std::size_t>(r)] += 1.0;
    ++total;
  }
  if (total == 0) throw EmptyConfiguration("residue histogram of an empty configuration");
  for (auto& v : hist) v /= static_cast<double>(total);
  return hist;
}

ErgodicPair ergodic_average_pair(const Configuration& config, const RotationSystem& system,
                                 const IntPolynomial& poly, double sigma) {
  system.validate();
  const std::size_t n = config.size();
  ErgodicPair out;
  std::complex<double> weighted{0.0, 0.0}, plain{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    std::complex<double> g =
        system.observe(rotation_point(system, poly, static_cast<std::int64_t>(i)));
    plain += g;
    if (config.test(i)) weighted += g;
  }
  out.weighted = weighted / static_cast<double>(n);
  out.reference = sigma * plain / static_cast<double>(n);
  out.deviation = std::abs(out.weighted - out.reference);
  return out;
}

}  // namespace latdpp
