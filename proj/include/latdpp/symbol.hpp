#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "latdpp/rational.hpp"

namespace latdpp {

// One-dimensional building blocks of a spectral symbol f: T^d -> [0,1].
// A d-dimensional symbol is the tensor product of d factors, which keeps
// every Fourier coefficient in closed form.

struct ConstantFactor {
  double value = 0.5;  // in (0,1)
};

// Right-continuous step function on [0,1): heights h_i on [b_{i-1}, b_i),
// with exact rational breakpoints 0 = b_0 < ... < b_m = 1.
struct PiecewiseConstantFactor {
  std::vector<Rational> breakpoints;
  std::vector<double> heights;
};

// f(t) = sum_{|k| <= K} c_k e^{2 pi i k t}; coefficients stored for
// k = -K..K and required to satisfy c_{-k} = conj(c_k) exactly.
struct TrigPolynomialFactor {
  std::vector<std::complex<double>> coeffs;
  int max_degree() const { return static_cast<int>(coeffs.size() / 2); }
  std::complex<double> coeff(std::int64_t k) const {
    int K = max_degree();
    if (k < -K || k > K) return {0.0, 0.0};
    return coeffs[static_cast<std::size_t>(k + K)];
  }
};

using SymbolFactor = std::variant<ConstantFactor, PiecewiseConstantFactor, TrigPolynomialFactor>;

class SpectralSymbol {
 public:
  // Validates every factor and the global mean density (must lie in (0,1)).
  explicit SpectralSymbol(std::vector<SymbolFactor> factors);

  static SpectralSymbol constant(double p, int dimension = 1);
  // indicator of the symmetric band [-w, w] around 0 on the circle
  static SpectralSymbol symmetric_band(const Rational& half_width);
  // f(t) = mean + amplitude * cos(2 pi t)
  static SpectralSymbol raised_cosine(double mean_level, double amplitude);
  static SpectralSymbol tensor(std::vector<SpectralSymbol> parts);

  int dimension() const { return static_cast<int>(factors_.size()); }
  const std::vector<SymbolFactor>& factors() const { return factors_; }

  // \hat f(k) = prod_j \hat f_j(k_j); Hermitian symmetry holds exactly
  // (negative lags are computed by conjugating the positive-lag value).
  std::complex<double> fourier_coeff(std::span<const std::int64_t> k) const;
  std::complex<double> fourier_coeff(std::int64_t k) const;  // d = 1

  // sigma = \hat f(0), the mean density
  double mean_density() const { return sigma_; }

  // c_f^2 = int f dm - int f^2 dm, computed in closed form
  double riesz_constant_sq() const;

  // int f^2 dm (closed form; tail bounds for spectral-density sandwiches)
  double squared_integral() const;

  // Cov(xi_lag, xi_0): sigma - sigma^2 at lag 0 and -|\hat f(lag)|^2 otherwise
  double covariance(std::span<const std::int64_t> lag) const;
  double covariance(std::int64_t lag) const;

  // Partial sum of the spectral density of the centered field at t,
  // truncated at |n| <= K.  One-dimensional symbols only.
  double field_spectral_density(double t, int truncation) const;

  // pointwise evaluation (validation and quadrature oracles)
  double evaluate(std::span<const double> t) const;
  double evaluate(double t) const;

  bool is_constant() const;
  bool is_indicator() const;  // c_f = 0

  // stable content hash of the canonical factor description
  std::uint64_t hash() const;
  std::string hash_hex() const;

 private:
  std::vector<SymbolFactor> factors_;
  double sigma_ = 0.0;
};

// Fourier coefficient of a single factor; negative k conjugates the value at
// |k| so that Hermitian symmetry is exact in floating point.
std::complex<double> factor_fourier_coeff(const SymbolFactor& f, std::int64_t k);
double factor_mean(const SymbolFactor& f);
double factor_squared_integral(const SymbolFactor& f);
double factor_evaluate(const SymbolFactor& f, double t);

// Cached table of \hat f on the lag box |k_j| <= K_j.  Entries are the exact
// products of the per-factor cached values, bit-identical to fourier_coeff.
class FourierTable {
 public:
  FourierTable(const SpectralSymbol& symbol, std::vector<std::int64_t> max_lag);

  std::complex<double> value(std::span<const std::int64_t> k) const;
  std::complex<double> value(std::int64_t k) const;
  std::int64_t max_lag(int axis) const { return max_lag_[static_cast<std::size_t>(axis)]; }
  int dimension() const { return static_cast<int>(max_lag_.size()); }
  bool all_real() const { return all_real_; }

 private:
  std::vector<std::int64_t> max_lag_;
  std::vector<std::vector<std::complex<double>>> per_factor_;  // index k + K_j
  bool all_real_ = true;
};

}  // namespace latdpp
