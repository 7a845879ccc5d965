#include <doctest.h>

#include <cmath>

#include "latdpp/errors.hpp"
#include "latdpp/kernel.hpp"

using namespace latdpp;

namespace {

const double kPi = 3.14159265358979323846;

SpectralSymbol sine_band() { return SpectralSymbol::symmetric_band(Rational(1, 4)); }
SpectralSymbol trig_half_quarter() { return SpectralSymbol::raised_cosine(0.5, 0.25); }

}  // namespace

TEST_CASE("window enumeration is lexicographic") {
  Window w = Window::box({0, 0}, {2, 3});
  REQUIRE(w.size() == 6);
  std::int64_t expect[6][2] = {{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {1, 2}};
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(w.point(i)[0] == expect[i][0]);
    CHECK(w.point(i)[1] == expect[i][1]);
  }
  auto e = Window::explicit_points({{5}, {1}, {3}});
  CHECK(e.point(0)[0] == 1);
  CHECK(e.point(2)[0] == 5);
  CHECK(e.find(std::vector<std::int64_t>{3}) == 1);
  CHECK(e.find(std::vector<std::int64_t>{4}) == -1);
}

TEST_CASE("window validation") {
  CHECK_THROWS_AS(Window::box({0}, {0}), InvalidWindow);
  CHECK_THROWS_AS(Window::box({0}, {5000}), WindowTooLarge);
  CHECK_THROWS_AS(Window::explicit_points({{1}, {1}}), InvalidWindow);
  CHECK_NOTHROW(Window::box({0}, {5000}, 8192));
}

TEST_CASE("kernel matrices of the reference symbols") {
  // constant symbol: p times the identity
  KernelWindow flat(SpectralSymbol::constant(0.3), Window::interval(0, 8));
  CHECK(flat.real());
  CHECK(flat.matrix_real().isApprox(0.3 * Eigen::MatrixXd::Identity(8, 8), 1e-15));
  for (int i = 0; i < 8; ++i) {
    CHECK(flat.eigenvalues()(i) == doctest::Approx(0.3).epsilon(1e-13));
  }

  // band symbol on {0,1}: [[1/2, 1/pi], [1/pi, 1/2]]
  KernelWindow pair(sine_band(), Window::interval(0, 2));
  CHECK(pair.matrix_real()(0, 0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(pair.matrix_real()(0, 1) == doctest::Approx(1.0 / kPi).epsilon(1e-15));
  CHECK(pair.matrix_real()(1, 0) == pair.matrix_real()(0, 1));

  // band symbol on {0,2}: fhat(2) = 0
  KernelWindow gap2(sine_band(), Window::explicit_points({{0}, {2}}));
  CHECK(gap2.matrix_real()(0, 1) == doctest::Approx(0.0));
  CHECK(std::abs(gap2.matrix_real()(0, 1)) < 1e-16);
}

TEST_CASE("toeplitz structure: equal lags give identical entries") {
  KernelWindow k(trig_half_quarter(), Window::interval(3, 16));
  const auto& m = k.matrix_real();
  for (int i = 0; i < 16; ++i) {
    for (int j = 0; j < 16; ++j) {
      int i2 = (i + 5) % 16, j2 = (j + 5) % 16;
      if (i - j == i2 - j2) CHECK(m(i, j) == m(i2, j2));
    }
  }
}

TEST_CASE("correlation determinants") {
  auto band = sine_band();
  CHECK(correlation(band, {{7}}) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(correlation(band, {{0}, {1}}) ==
        doctest::Approx(0.25 - 1.0 / (kPi * kPi)).epsilon(1e-14));
  CHECK(correlation(SpectralSymbol::constant(0.3), {{0}, {1}, {2}}) ==
        doctest::Approx(0.027).epsilon(1e-14));
  CHECK_THROWS_AS(correlation(band, {{1}, {1}}), DuplicatePoints);
  CHECK(correlation(band, {}) == 1.0);
}

TEST_CASE("gap probabilities") {
  CHECK(gap_probability(SpectralSymbol::constant(0.3), Window::interval(0, 8)) ==
        doctest::Approx(0.05764801).epsilon(1e-12));
  CHECK(gap_probability(sine_band(), Window::interval(0, 2)) ==
        doctest::Approx(0.25 - 1.0 / (kPi * kPi)).epsilon(1e-12));
  CHECK(gap_probability(sine_band(), Window::interval(5, 1)) ==
        doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("strict contraction for non-indicator symbols up to 256") {
  // the margin shrinks with the window but stays far above 1e-9 as long as
  // the symbol is bounded away from 1
  for (const auto& s : {SpectralSymbol::constant(0.3), trig_half_quarter()}) {
    for (std::int64_t n : {1, 2, 4, 8, 16, 32, 64, 128, 256}) {
      KernelWindow k(s, Window::interval(0, n));
      CHECK(k.max_raw_eigenvalue() < 1.0 - 1e-9);
      CHECK(k.gap_probability() > 0.0);
    }
  }
  // indicator symbols close the margin superexponentially; it is still
  // comfortably positive on small windows
  for (std::int64_t n : {1, 2, 4, 8}) {
    KernelWindow k(sine_band(), Window::interval(0, n));
    CHECK(k.max_raw_eigenvalue() < 1.0 - 1e-5);
    CHECK(k.gap_probability() > 0.0);
  }
}

TEST_CASE("cylinder probabilities") {
  auto flat = SpectralSymbol::constant(0.3);
  Window w2 = Window::interval(0, 2);
  CHECK(cylinder_probability(flat, w2, 0b01u) == doctest::Approx(0.3 * 0.7).epsilon(1e-14));

  // S = W reduces to the correlation determinant
  auto band = sine_band();
  Window w3 = Window::interval(0, 3);
  double full = cylinder_probability(band, w3, 0b111u);
  CHECK(full == doctest::Approx(correlation(band, {{0}, {1}, {2}})).epsilon(1e-13));

  // S empty reproduces the gap probability (inclusion-exclusion by hand:
  // 1 - 2*(1/2) + (1/4 - 1/pi^2))
  Window wpair = Window::interval(0, 2);
  double empty = cylinder_probability(band, wpair, 0u);
  CHECK(empty == doctest::Approx(0.25 - 1.0 / (kPi * kPi)).epsilon(1e-12));
  CHECK(empty == doctest::Approx(gap_probability(band, wpair)).epsilon(1e-10));

  CHECK_THROWS_AS(cylinder_probability(band, wpair, {{5}}), SNotSubsetOfW);
  CHECK_THROWS_AS(cylinder_probability(band, Window::interval(0, 15), 0u),
                  WindowTooLargeForExactDistribution);
}

TEST_CASE("oracle coherence: empty cylinder equals gap probability up to size 12") {
  for (const auto& s : {sine_band(), trig_half_quarter()}) {
    for (std::int64_t n : {1, 2, 4, 8, 12}) {
      Window w = Window::interval(0, n);
      CHECK(cylinder_probability(s, w, 0u) ==
            doctest::Approx(gap_probability(s, w)).epsilon(1e-10));
    }
  }
}

TEST_CASE("exact distribution: normalization, marginals, independence case") {
  auto flat = SpectralSymbol::constant(0.3);
  Window w3 = Window::interval(0, 3);
  auto dist = exact_distribution(flat, w3);
  REQUIRE(dist.size() == 8);
  for (std::size_t mask = 0; mask < 8; ++mask) {
    double expect = 1.0;
    for (int i = 0; i < 3; ++i) expect *= (mask >> i & 1u) ? 0.3 : 0.7;
    CHECK(dist[mask] == doctest::Approx(expect).epsilon(1e-13));
  }

  for (const auto& s : {sine_band(), trig_half_quarter()}) {
    Window w = Window::interval(0, 8);
    auto d = exact_distribution(s, w);
    double sum = 0.0;
    for (double p : d) {
      CHECK(p >= -1e-10);
      sum += p;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    for (int site = 0; site < 8; ++site) {
      double marginal = 0.0;
      for (std::size_t mask = 0; mask < d.size(); ++mask) {
        if (mask >> site & 1u) marginal += d[mask];
      }
      CHECK(marginal == doctest::Approx(s.mean_density()).epsilon(1e-9));
    }
  }
}

TEST_CASE("two-dimensional tensor kernel block structure") {
  auto prod = SpectralSymbol::tensor({SpectralSymbol::constant(0.3), sine_band()});
  KernelWindow k(prod, Window::box({0, 0}, {2, 2}));
  REQUIRE(k.real());
  const auto& m = k.matrix_real();
  // lag (0, 1) couples, lag (1, *) vanishes because fhat_1(1) = 0
  CHECK(m(0, 0) == doctest::Approx(0.15).epsilon(1e-15));
  CHECK(m(0, 1) == doctest::Approx(0.3 / kPi).epsilon(1e-14));
  CHECK(m(0, 2) == 0.0);
  CHECK(m(0, 3) == 0.0);
  CHECK(k.gap_probability() > 0.0);
}
