#include "latdpp/inequalities.hpp"

#include <cmath>
#include <limits>

#include "latdpp/errors.hpp"
#include "latdpp/fft.hpp"
#include "latdpp/rng.hpp"
#include "latdpp/stats.hpp"

namespace latdpp {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kQuadraticFormTol = 1e-10;
constexpr double kOverflowLimit = 500.0;
}  // namespace

WeightVector::WeightVector(std::vector<std::complex<double>> w) : w_(std::move(w)) {
  if (w_.empty()) throw InvalidWeights("weight vector must be nonempty");
  for (const auto& c : w_) norm2_sq_ += std::norm(c);
  if (!(norm2_sq_ > 0.0)) throw InvalidWeights("weight vector must have positive norm");
}

WeightVector WeightVector::from_real(std::vector<double> w) {
  std::vector<std::complex<double>> c(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) c[i] = {w[i], 0.0};
  return WeightVector(std::move(c));
}

double WeightVector::l2_norm() const { return std::sqrt(norm2_sq_); }

double WeightVector::l1_norm() const {
  double s = 0.0;
  for (const auto& c : w_) s += std::abs(c);
  return s;
}

std::complex<double> WeightVector::sum() const {
  std::complex<double> s{0.0, 0.0};
  for (const auto& c : w_) s += c;
  return s;
}

bool WeightVector::is_real() const {
  for (const auto& c : w_) {
    if (c.imag() != 0.0) return false;
  }
  return true;
}

IntPolynomial::IntPolynomial(std::vector<std::int64_t> ascending_coeffs)
    : c_(std::move(ascending_coeffs)) {
  while (c_.size() > 1 && c_.back() == 0) c_.pop_back();
  if (c_.size() < 2) throw InvalidPolynomial("polynomial degree must be at least 1");
}

std::int64_t IntPolynomial::eval(std::int64_t n) const {
  __int128 acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) {
    acc = acc * n + c_[i];
    if (acc > std::numeric_limits<std::int64_t>::max() ||
        acc < std::numeric_limits<std::int64_t>::min()) {
      throw InvalidPolynomial("polynomial value overflows 64 bits");
    }
  }
  return static_cast<std::int64_t>(acc);
}

std::int64_t IntPolynomial::eval_mod(std::int64_t n, std::int64_t m) const {
  std::int64_t nm = n % m;
  if (nm < 0) nm += m;
  __int128 acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) {
    acc = (acc * nm + (c_[i] % m + m)) % m;
  }
  return static_cast<std::int64_t>(acc);
}

void IntPolynomial::require_nonnegative_up_to(std::int64_t n_max) const {
  // degree <= 2 in practice; values are monotone past the vertex, so checking
  // every integer is still cheap at the sizes we run
  for (std::int64_t n = 0; n <= n_max; ++n) {
    if (eval(n) < 0) {
      throw InvalidPolynomial("polynomial is negative at n=" + std::to_string(n));
    }
  }
}

std::complex<double> weighted_sum(const Configuration& config, const WeightVector& a,
                                  double sigma) {
  if (a.size() > config.size()) {
    throw InvalidWeights("weight support exceeds the configuration window");
  }
  std::complex<double> s{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += a.coeff(i) * ((config.test(i) ? 1.0 : 0.0) - sigma);
  }
  return s;
}

std::vector<std::complex<double>> weighted_sums(const SampleBatch& batch,
                                                const WeightVector& a, double sigma) {
  if (a.size() > batch.sites()) {
    throw InvalidWeights("weight support exceeds the batch window");
  }
  const std::complex<double> base = -sigma * a.sum();
  std::vector<std::complex<double>> out(batch.count());
  for (std::size_t s = 0; s < batch.count(); ++s) {
    std::complex<double> acc = base;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (batch.site(s, i)) acc += a.coeff(i);
    }
    out[s] = acc;
  }
  return out;
}

double l2_norm_analytic(const SpectralSymbol& symbol, const WeightVector& a) {
  if (symbol.dimension() != 1) {
    throw InvalidSymbol("analytic 2-norm is a one-dimensional operation");
  }
  const std::size_t n = a.size();
  std::vector<double> fhat_sq(n);  // |fhat(lag)|^2 for lag = 0..n-1
  for (std::size_t lag = 0; lag < n; ++lag) {
    fhat_sq[lag] = std::norm(symbol.fourier_coeff(static_cast<std::int64_t>(lag)));
  }
  double sigma = symbol.mean_density();
  std::complex<double> form{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t lag = i > j ? i - j : j - i;
      form += a.coeff(i) * std::conj(a.coeff(j)) * fhat_sq[lag];
    }
  }
  double q = sigma * a.l2_norm_sq() - form.real();
  if (q < -kQuadraticFormTol) {
    throw NegativeQuadraticForm("quadratic form is negative: " + std::to_string(q));
  }
  return std::sqrt(q < 0.0 ? 0.0 : q);
}

double empirical_pnorm(std::span<const std::complex<double>> sums, double p) {
  if (sums.empty()) throw InvalidWeights("empirical p-norm needs a nonempty batch");
  if (!(p >= 1.0)) throw InvalidWeights("p must lie in [1, inf)");
  double acc = 0.0;
  for (const auto& s : sums) acc += std::pow(std::abs(s), p);
  return std::pow(acc / static_cast<double>(sums.size()), 1.0 / p);
}

double bootstrap_pnorm_se(std::span<const std::complex<double>> sums, double p,
                          std::size_t resamples, std::uint64_t seed) {
  std::vector<double> pw(sums.size());
  for (std::size_t i = 0; i < sums.size(); ++i) pw[i] = std::pow(std::abs(sums[i]), p);
  return bootstrap_se(
      pw.size(),
      [&](std::span<const std::size_t> idx) {
        double acc = 0.0;
        for (std::size_t i : idx) acc += pw[i];
        return std::pow(acc / static_cast<double>(idx.size()), 1.0 / p);
      },
      resamples, seed);
}

MarginEstimate subgaussian_margin(const SampleBatch& batch, const WeightVector& a,
                                  double sigma, double lambda) {
  if (!a.is_real()) throw InvalidWeights("the moment bound applies to real weights");
  if (std::abs(lambda) * a.l1_norm() > kOverflowLimit) {
    throw OverflowGuard("lambda * ||a||_1 > 500 would overflow exp");
  }
  auto sums = weighted_sums(batch, a, sigma);
  std::vector<double> ex(sums.size());
  for (std::size_t i = 0; i < sums.size(); ++i) ex[i] = std::exp(lambda * sums[i].real());

  const double bound = lambda * lambda * a.l2_norm_sq();
  MarginEstimate est;
  est.margin = bound - std::log(mean(ex));
  est.std_error = bootstrap_se(
      ex.size(),
      [&](std::span<const std::size_t> idx) {
        double acc = 0.0;
        for (std::size_t i : idx) acc += ex[i];
        return bound - std::log(acc / static_cast<double>(idx.size()));
      },
      200, mix64(batch.master_seed() ^ 0x5bd1e995u));
  return est;
}

namespace {

double cf_or_throw(const SpectralSymbol& symbol) {
  double cf_sq = symbol.riesz_constant_sq();
  if (!(cf_sq > 0.0)) {
    throw IndicatorSymbol("the p-norm equivalence needs a non-indicator symbol");
  }
  return std::sqrt(cf_sq);
}

}  // namespace

double khintchine_constant(const SpectralSymbol& symbol, double p) {
  if (!(p >= 2.0)) throw InvalidWeights("equivalence constant needs p >= 2");
  double gamma_pow = std::exp(std::lgamma(p / 2.0 + 1.0) / p);
  return 2.0 * std::sqrt(2.0) * gamma_pow / cf_or_throw(symbol);
}

double khintchine_constant_alternate(const SpectralSymbol& symbol, double p) {
  if (!(p >= 2.0)) throw InvalidWeights("equivalence constant needs p >= 2");
  double gamma_pow = std::exp(std::lgamma(p + 1.0) / p);
  return std::sqrt(2.0) * std::exp(3.0 / p) * gamma_pow / cf_or_throw(symbol);
}

double absolute_pnorm_bound(const WeightVector& a, double p) {
  if (!(p >= 1.0)) throw InvalidWeights("p must lie in [1, inf)");
  return 2.0 * std::sqrt(2.0) * std::exp(std::lgamma(p / 2.0 + 1.0) / p) * a.l2_norm();
}

double frac_times_int(double t, std::int64_t k) {
  double kd = static_cast<double>(k);
  double prod = t * kd;
  double err = std::fma(t, kd, -prod);  // exact residual of the product
  double f = std::fmod(prod, 1.0) + err;
  f -= std::floor(f);
  if (f >= 1.0) f -= 1.0;
  return f;
}

std::complex<double> weyl_sum(const Configuration& config, const IntPolynomial& poly,
                              double sigma, double t) {
  std::complex<double> s{0.0, 0.0};
  for (std::size_t n = 0; n < config.size(); ++n) {
    double w = (config.test(n) ? 1.0 : 0.0) - sigma;
    double ang = kTwoPi * frac_times_int(t, poly.eval(static_cast<std::int64_t>(n)));
    s += w * std::complex<double>(std::cos(ang), std::sin(ang));
  }
  return s;
}

WeylMax weyl_max(const Configuration& config, const IntPolynomial& poly, double sigma) {
  const int d = poly.degree();
  if (d > 2) throw DegreeTooLarge("frequency grids for degree > 2 are infeasible");
  const auto n = static_cast<std::int64_t>(config.size());
  if ((d == 1 && n > kWeylMaxWindowDeg1) || (d == 2 && n > kWeylMaxWindowDeg2)) {
    throw WindowTooLarge("window too large for the grid maximum at this degree");
  }
  poly.require_nonnegative_up_to(n - 1);

  std::size_t grid = 8;
  for (int i = 0; i < d; ++i) grid *= static_cast<std::size_t>(n);
  const std::size_t m = next_pow2(grid);

  // the grid values of the sum depend on P(n) only through P(n) mod m
  std::vector<std::complex<double>> bins(m, {0.0, 0.0});
  for (std::int64_t i = 0; i < n; ++i) {
    double w = (config.test(static_cast<std::size_t>(i)) ? 1.0 : 0.0) - sigma;
    bins[static_cast<std::size_t>(poly.eval_mod(i, static_cast<std::int64_t>(m)))] += w;
  }
  fft_pow2(bins, +1);

  WeylMax out;
  double best_sq = -1.0;
  for (std::size_t j = 0; j < m; ++j) {
    double v = std::norm(bins[j]);
    if (v > best_sq) {
      best_sq = v;
      out.argmax_t = static_cast<double>(j) / static_cast<double>(m);
    }
  }
  out.max_modulus = std::sqrt(best_sq);
  return out;
}

}  // namespace latdpp
