#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "latdpp/inequalities.hpp"
#include "latdpp/sampler.hpp"
#include "latdpp/window.hpp"

namespace latdpp {

// Irrational circle rotation with a fixed observable; the instantiated
// measure-preserving system for weighted ergodic averages.
struct RotationSystem {
  enum class Observable { kCharacter, kIntervalIndicator };

  double alpha = 0.61803398874989484820;  // inverse golden ratio
  double x0 = 0.0;
  Observable observable = Observable::kCharacter;
  double beta = 0.5;  // width of the indicator observable

  // rejects rotation numbers within 1e-9/q^2 of a rational with q <= 10^4
  void validate() const;
  std::complex<double> observe(double x) const;
};

// frac(x0 + alpha * P(n)), with the product alpha * P(n) reduced through an
// exact fma split so the orbit does not drift over 10^6 steps
double rotation_point(const RotationSystem& system, const IntPolynomial& poly, std::int64_t n);

// Fraction of m in [-M, M]^d expressible as x + y with x, y sampled points.
// The window must be a symmetric box [-W, W]^d with M <= W.
double sumset_coverage(const Configuration& config, const Window& window, std::int64_t m_max);

// length of the longest run of absent sites (one-dimensional windows)
std::int64_t max_gap(const Configuration& config);

// Exact probability that an i.i.d. Bernoulli(1-q0) run of length n contains
// at least ell consecutive zeros, by the standard run-length recursion.
// Serves as the oracle for constant symbols.
double run_presence_probability(double q0, std::int64_t ell, std::int64_t n);

// Residue-class fractions of the present sites (or of P(site)) mod q over an
// interval window starting at 0.
std::vector<double> residue_histogram(const Configuration& config, std::int64_t q,
                                      const IntPolynomial* poly = nullptr);

struct ErgodicPair {
  std::complex<double> weighted{0.0, 0.0};
  std::complex<double> reference{0.0, 0.0};
  double deviation = 0.0;
};

// weighted = (1/N) sum xi_n g(x0 + P(n) alpha), reference = sigma times the
// unweighted average, deviation = |weighted - reference|
ErgodicPair ergodic_average_pair(const Configuration& config, const RotationSystem& system,
                                 const IntPolynomial& poly, double sigma);

}  // namespace latdpp
