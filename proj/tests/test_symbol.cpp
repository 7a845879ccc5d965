#include <doctest.h>

#include <cmath>
#include <complex>

#include "latdpp/errors.hpp"
#include "latdpp/rng.hpp"
#include "latdpp/symbol.hpp"

using namespace latdpp;

namespace {

const double kPi = 3.14159265358979323846;

SpectralSymbol sine_band() { return SpectralSymbol::symmetric_band(Rational(1, 4)); }
SpectralSymbol trig_half_quarter() { return SpectralSymbol::raised_cosine(0.5, 0.25); }

// midpoint-rule quadrature of g(f(t)) on a dense grid; the independent check
// for closed-form integrals
template <typename G>
double quadrature(const SpectralSymbol& s, G g, int n = 1000000) {
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    double t = (i + 0.5) / n;
    acc += g(s.evaluate(t));
  }
  return acc / n;
}

}  // namespace

TEST_CASE("fourier coefficients of the three factor kinds") {
  auto band = sine_band();
  CHECK(band.fourier_coeff(1).real() == doctest::Approx(1.0 / kPi).epsilon(1e-15));
  CHECK(band.fourier_coeff(1).imag() == 0.0);
  CHECK(band.fourier_coeff(2).real() == doctest::Approx(0.0));
  CHECK(std::abs(band.fourier_coeff(2)) < 1e-16);

  auto flat = SpectralSymbol::constant(0.37);
  CHECK(flat.fourier_coeff(3) == std::complex<double>(0.0, 0.0));
  CHECK(flat.fourier_coeff(0).real() == 0.37);

  auto trig = trig_half_quarter();
  CHECK(trig.fourier_coeff(1).real() == 0.125);
  CHECK(trig.fourier_coeff(-1).real() == 0.125);
  CHECK(trig.fourier_coeff(2) == std::complex<double>(0.0, 0.0));
}

TEST_CASE("mean density") {
  CHECK(sine_band().mean_density() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(SpectralSymbol::constant(0.3).mean_density() == 0.3);
  CHECK(trig_half_quarter().mean_density() == 0.5);
  // tensor product multiplies densities
  auto prod = SpectralSymbol::tensor({SpectralSymbol::constant(0.3), sine_band()});
  CHECK(prod.mean_density() == doctest::Approx(0.15).epsilon(1e-15));
}

TEST_CASE("riesz constant") {
  CHECK(SpectralSymbol::constant(0.3).riesz_constant_sq() == doctest::Approx(0.21).epsilon(1e-15));
  CHECK(sine_band().riesz_constant_sq() == doctest::Approx(0.0));
  CHECK(sine_band().is_indicator());
  CHECK(trig_half_quarter().riesz_constant_sq() == doctest::Approx(7.0 / 32.0).epsilon(1e-15));

  // oracle: quadrature of f(1-f) on a dense grid
  double oracle = quadrature(trig_half_quarter(), [](double f) { return f * (1.0 - f); });
  CHECK(trig_half_quarter().riesz_constant_sq() == doctest::Approx(oracle).epsilon(1e-9));
}

TEST_CASE("parseval consistency for trig factors") {
  // c0 - sum |c_k|^2 against quadrature, within 1e-9
  auto s = SpectralSymbol::raised_cosine(0.45, 0.2);
  double closed = s.riesz_constant_sq();
  double oracle = quadrature(s, [](double f) { return f * (1.0 - f); });
  CHECK(std::abs(closed - oracle) < 1e-9);
}

TEST_CASE("covariance") {
  auto band = sine_band();
  CHECK(band.covariance(1) == doctest::Approx(-1.0 / (kPi * kPi)).epsilon(1e-14));
  CHECK(SpectralSymbol::constant(0.4).covariance(5) == 0.0);
  for (const auto& s : {sine_band(), trig_half_quarter(), SpectralSymbol::constant(0.3)}) {
    double sig = s.mean_density();
    CHECK(s.covariance(std::int64_t{0}) == doctest::Approx(sig - sig * sig).epsilon(1e-15));
  }
}

TEST_CASE("hermitian symmetry is exact, including asymmetric factors") {
  PiecewiseConstantFactor pw;
  pw.breakpoints = {Rational(0, 1), Rational(1, 5), Rational(1, 2), Rational(1, 1)};
  pw.heights = {0.9, 0.2, 0.6};
  SpectralSymbol s({SymbolFactor(pw)});
  Rng rng(123);
  for (int i = 0; i < 200; ++i) {
    std::int64_t k = static_cast<std::int64_t>(rng.next() % 20000) - 10000;
    auto a = s.fourier_coeff(k);
    auto b = s.fourier_coeff(-k);
    CHECK(b.real() == a.real());
    CHECK(b.imag() == -a.imag());
    CHECK(std::abs(a) <= s.mean_density() + 1e-15);
  }
}

TEST_CASE("piecewise coefficient decay |fhat(k)| <= (sum h_i)/(pi |k|)") {
  PiecewiseConstantFactor pw;
  pw.breakpoints = {Rational(0, 1), Rational(1, 7), Rational(2, 5), Rational(1, 1)};
  pw.heights = {1.0, 0.3, 0.8};
  SpectralSymbol s({SymbolFactor(pw)});
  double c = (1.0 + 0.3 + 0.8) / kPi;
  for (std::int64_t k = 1; k <= 10000; ++k) {
    CHECK(std::abs(s.fourier_coeff(k)) <= c / static_cast<double>(k) + 1e-15);
  }
}

TEST_CASE("field spectral density") {
  auto flat = SpectralSymbol::constant(0.3);
  CHECK(flat.field_spectral_density(0.37, 64) == doctest::Approx(0.21).epsilon(1e-15));

  // at t = 0 with K >= 1 the trig symbol gives sigma - int f^2 exactly
  auto trig = trig_half_quarter();
  CHECK(trig.field_spectral_density(0.0, 1) == doctest::Approx(7.0 / 32.0).epsilon(1e-14));
  CHECK(trig.field_spectral_density(0.0, 50) == doctest::Approx(7.0 / 32.0).epsilon(1e-14));
  // oracle: sigma - int f^2 by quadrature
  double oracle = trig.mean_density() - quadrature(trig, [](double f) { return f * f; });
  CHECK(trig.field_spectral_density(0.0, 8) == doctest::Approx(oracle).epsilon(1e-9));

  // indicator: partial sums at t = 0 decrease toward sigma - int f^2 = 0
  auto band = sine_band();
  double prev = band.field_spectral_density(0.0, 4);
  for (int K : {16, 64, 256, 1024}) {
    double cur = band.field_spectral_density(0.0, K);
    CHECK(cur <= prev + 1e-12);
    CHECK(cur >= -1e-9);
    prev = cur;
  }
  CHECK(prev < 1e-3);

  CHECK_THROWS_AS(SpectralSymbol::tensor({flat, flat}).field_spectral_density(0.1, 4),
                  InvalidSymbol);
}

TEST_CASE("spectral density sandwich with computable tail bound") {
  // c_f^2 - eps(K) <= density_K(t) <= sigma + eps(K), where
  // eps(K) = int f^2 - sum_{|n|<=K} |fhat(n)|^2
  for (const auto& s : {sine_band(), trig_half_quarter()}) {
    const int K = 512;
    double partial_energy = std::norm(s.fourier_coeff(std::int64_t{0}));
    for (std::int64_t n = 1; n <= K; ++n) partial_energy += 2.0 * std::norm(s.fourier_coeff(n));
    double eps = s.squared_integral() - partial_energy;
    CHECK(eps >= -1e-12);
    for (double t : {0.0, 0.123, 0.5, 0.77}) {
      double v = s.field_spectral_density(t, K);
      CHECK(v >= s.riesz_constant_sq() - eps - 1e-9);
      CHECK(v <= s.mean_density() + eps + 1e-9);
    }
  }
}

TEST_CASE("fourier table matches coefficients bit for bit") {
  auto prod = SpectralSymbol::tensor({SpectralSymbol::constant(0.3), sine_band()});
  FourierTable table(prod, {3, 5});
  for (std::int64_t k1 = -3; k1 <= 3; ++k1) {
    for (std::int64_t k2 = -5; k2 <= 5; ++k2) {
      std::int64_t k[] = {k1, k2};
      auto a = table.value(k);
      auto b = prod.fourier_coeff(k);
      CHECK(a.real() == b.real());
      CHECK(a.imag() == b.imag());
    }
  }
  CHECK(table.all_real());
}

TEST_CASE("invalid symbols are rejected at construction") {
  CHECK_THROWS_AS(SpectralSymbol::constant(0.0), InvalidSymbol);
  CHECK_THROWS_AS(SpectralSymbol::constant(1.0), InvalidSymbol);
  CHECK_THROWS_AS(SpectralSymbol::constant(-0.2), InvalidSymbol);

  PiecewiseConstantFactor bad_range;
  bad_range.breakpoints = {Rational(0, 1), Rational(1, 2), Rational(1, 1)};
  bad_range.heights = {1.2, 0.1};
  CHECK_THROWS_AS(SpectralSymbol({SymbolFactor(bad_range)}), InvalidSymbol);

  PiecewiseConstantFactor bad_order;
  bad_order.breakpoints = {Rational(0, 1), Rational(3, 4), Rational(1, 2), Rational(1, 1)};
  bad_order.heights = {0.5, 0.5, 0.5};
  CHECK_THROWS_AS(SpectralSymbol({SymbolFactor(bad_order)}), InvalidSymbol);

  // zero and full densities are excluded
  PiecewiseConstantFactor zero;
  zero.breakpoints = {Rational(0, 1), Rational(1, 1)};
  zero.heights = {0.0};
  CHECK_THROWS_AS(SpectralSymbol({SymbolFactor(zero)}), InvalidSymbol);

  // trig factor must stay inside [0,1]
  CHECK_THROWS_AS(SpectralSymbol::raised_cosine(0.5, 0.6), InvalidSymbol);
  // and must be exactly conjugate-symmetric
  TrigPolynomialFactor asym;
  asym.coeffs = {{0.1, 0.05}, {0.5, 0.0}, {0.1, 0.04}};
  CHECK_THROWS_AS(SpectralSymbol({SymbolFactor(asym)}), InvalidSymbol);
}

TEST_CASE("symbol hash distinguishes symbols and is stable") {
  auto a = SpectralSymbol::constant(0.3);
  auto b = SpectralSymbol::constant(0.31);
  CHECK(a.hash() == SpectralSymbol::constant(0.3).hash());
  CHECK(a.hash() != b.hash());
  CHECK(a.hash_hex().size() == 16);
}
