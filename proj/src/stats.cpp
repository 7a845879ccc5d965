#include "latdpp/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "latdpp/rng.hpp"

namespace latdpp {

double mean(std::span<const double> v) {
  if (v.empty()) throw std::invalid_argument("mean of empty range");
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sample_variance(std::span<const double> v) {
  if (v.size() < 2) throw std::invalid_argument("variance needs at least 2 values");
  double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

double median(std::span<const double> v) {
  if (v.empty()) throw std::invalid_argument("median of empty range");
  std::vector<double> tmp(v.begin(), v.end());
  std::size_t mid = tmp.size() / 2;
  std::nth_element(tmp.begin(), tmp.begin() + mid, tmp.end());
  double hi = tmp[mid];
  if (tmp.size() % 2 == 1) return hi;
  double lo = *std::max_element(tmp.begin(), tmp.begin() + mid);
  return 0.5 * (lo + hi);
}

double ols_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("ols_slope: need two same-length ranges");
  }
  double mx = mean(x), my = mean(y);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  return sxy / sxx;
}

namespace {

// series representation of P(a, x), valid for x < a + 1
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int n = 0; n < 1000; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// continued fraction for Q(a, x), valid for x >= a + 1 (modified Lentz)
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 1000; ++i) {
    double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double gamma_q(double a, double x) {
  if (!(a > 0.0) || x < 0.0) throw std::invalid_argument("gamma_q: need a > 0, x >= 0");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

double chi2_sf(double x, double dof) {
  if (x <= 0.0) return 1.0;
  return gamma_q(0.5 * dof, 0.5 * x);
}

Chi2Result chi2_goodness_of_fit(std::span<const std::uint64_t> counts,
                                std::span<const double> probs,
                                double min_expected) {
  if (counts.size() != probs.size() || counts.empty()) {
    throw std::invalid_argument("chi2_goodness_of_fit: size mismatch");
  }
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  const double n = static_cast<double>(total);

  std::vector<std::size_t> order(counts.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return probs[a] < probs[b]; });

  std::vector<std::pair<double, double>> pooled;  // (count, prob)
  double acc_c = 0.0, acc_p = 0.0;
  for (std::size_t idx : order) {
    acc_c += static_cast<double>(counts[idx]);
    acc_p += probs[idx];
    if (acc_p * n >= min_expected) {
      pooled.emplace_back(acc_c, acc_p);
      acc_c = acc_p = 0.0;
    }
  }
  if (acc_p > 0.0 || acc_c > 0.0) {
    if (!pooled.empty()) {
      pooled.back().first += acc_c;
      pooled.back().second += acc_p;
    } else {
      pooled.emplace_back(acc_c, acc_p);
    }
  }

  Chi2Result r;
  r.cells = pooled.size();
  if (pooled.size() < 2) {
    r.dof = 0;
    r.p_value = 1.0;
    return r;
  }
  for (auto [c, p] : pooled) {
    double e = n * p;
    r.statistic += (c - e) * (c - e) / e;
  }
  r.dof = pooled.size() - 1;
  r.p_value = chi2_sf(r.statistic, static_cast<double>(r.dof));
  return r;
}

double bootstrap_se(std::size_t n,
                    const std::function<double(std::span<const std::size_t>)>& statistic,
                    std::size_t resamples, std::uint64_t seed) {
  if (n == 0 || resamples < 2) {
    throw std::invalid_argument("bootstrap_se: empty sample or too few resamples");
  }
  std::vector<double> stats(resamples);
  std::vector<std::size_t> idx(n);
  for (std::size_t r = 0; r < resamples; ++r) {
    Rng rng(derive_seed(seed, StreamDomain::kBootstrap, r));
    for (std::size_t i = 0; i < n; ++i) {
      idx[i] = static_cast<std::size_t>(rng.next() % n);
    }
    stats[r] = statistic(idx);
  }
  return std::sqrt(sample_variance(stats));
}

}  // namespace latdpp
