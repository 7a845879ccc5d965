#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "latdpp/sampler.hpp"
#include "latdpp/symbol.hpp"

namespace latdpp {

// Finitely supported weight sequence over window positions 0..len-1.
class WeightVector {
 public:
  explicit WeightVector(std::vector<std::complex<double>> w);
  static WeightVector from_real(std::vector<double> w);

  std::size_t size() const { return w_.size(); }
  std::complex<double> coeff(std::size_t i) const { return w_[i]; }
  const std::vector<std::complex<double>>& coeffs() const { return w_; }
  double l2_norm_sq() const { return norm2_sq_; }
  double l2_norm() const;
  double l1_norm() const;
  std::complex<double> sum() const;
  bool is_real() const;

 private:
  std::vector<std::complex<double>> w_;
  double norm2_sq_ = 0.0;
};

// P in Z[x] with integer coefficients, degree >= 1.
class IntPolynomial {
 public:
  explicit IntPolynomial(std::vector<std::int64_t> ascending_coeffs);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<std::int64_t>& coeffs() const { return c_; }
  std::int64_t eval(std::int64_t n) const;          // overflow-checked Horner
  std::int64_t eval_mod(std::int64_t n, std::int64_t m) const;
  // P(n) >= 0 for 0 <= n <= n_max (throws InvalidPolynomial otherwise)
  void require_nonnegative_up_to(std::int64_t n_max) const;

 private:
  std::vector<std::int64_t> c_;
};

// sum_n a_n (xi_n - sigma); the weights cover positions 0..size-1 of the
// configuration (a may be shorter than the window).
std::complex<double> weighted_sum(const Configuration& config, const WeightVector& a,
                                  double sigma);
std::vector<std::complex<double>> weighted_sums(const SampleBatch& batch,
                                                const WeightVector& a, double sigma);

// || sum a_n (xi_n - sigma) ||_2 from the closed-form quadratic form
// sigma ||a||^2 - sum_{n,m} a_n conj(a_m) |fhat(n-m)|^2 (one-dimensional).
double l2_norm_analytic(const SpectralSymbol& symbol, const WeightVector& a);

// (mean |S|^p)^{1/p}
double empirical_pnorm(std::span<const std::complex<double>> sums, double p);
double bootstrap_pnorm_se(std::span<const std::complex<double>> sums, double p,
                          std::size_t resamples, std::uint64_t seed);

struct MarginEstimate {
  double margin = 0.0;
  double std_error = 0.0;
};

// lambda^2 ||a||_2^2 - log E exp(lambda * S); the moment bound predicts a
// nonnegative value up to sampling error.  Real weights only.
MarginEstimate subgaussian_margin(const SampleBatch& batch, const WeightVector& a,
                                  double sigma, double lambda);

// p-norm / 2-norm equivalence constant 2 sqrt(2) Gamma(p/2+1)^{1/p} / c_f for
// p in [2, inf); requires c_f > 0.
double khintchine_constant(const SpectralSymbol& symbol, double p);
// variant sqrt(2) e^{3/p} Gamma(p+1)^{1/p} / c_f, reported for comparison only
double khintchine_constant_alternate(const SpectralSymbol& symbol, double p);

// universal bound 2 sqrt(2) Gamma(p/2+1)^{1/p} ||a||_2 for p in [1, inf)
double absolute_pnorm_bound(const WeightVector& a, double p);

// sum_{n=0}^{N-1} (xi_n - sigma) e^{2 pi i P(n) t} over an interval window
std::complex<double> weyl_sum(const Configuration& config, const IntPolynomial& poly,
                              double sigma, double t);

struct WeylMax {
  double max_modulus = 0.0;
  double argmax_t = 0.0;
};

// Maximum of |weyl_sum| over a uniform grid of >= 8 N^{deg P} frequencies,
// evaluated by binning P(n) mod M and one FFT.  Bernstein's inequality for
// trigonometric polynomials keeps the grid maximum within a (1 - pi/8)
// factor of the true maximum (documented, not asserted).  deg P <= 2;
// N <= 4096 for degree 1 and N <= 256 for degree 2.
WeylMax weyl_max(const Configuration& config, const IntPolynomial& poly, double sigma);

inline constexpr std::int64_t kWeylMaxWindowDeg1 = 4096;
inline constexpr std::int64_t kWeylMaxWindowDeg2 = 256;

// frac(t * k) via an exact fma product split; |k| < 2^53
double frac_times_int(double t, std::int64_t k);

}  // namespace latdpp
