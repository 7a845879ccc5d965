#include <doctest.h>

#include <cmath>
#include <vector>

#include "latdpp/rng.hpp"
#include "latdpp/stats.hpp"

using namespace latdpp;

TEST_CASE("chi-square survival function matches reference values") {
  // reference values computed with an independent implementation
  CHECK(chi2_sf(3.841458820694124, 1) == doctest::Approx(0.05).epsilon(1e-12));
  CHECK(chi2_sf(14.067140449340169, 7) == doctest::Approx(0.05).epsilon(1e-12));
  CHECK(chi2_sf(310.45738600537105, 255) == doctest::Approx(1.000000229416662e-02).epsilon(1e-10));
  CHECK(chi2_sf(175.0, 255) == doctest::Approx(9.999640391556102e-01).epsilon(1e-12));
  CHECK(chi2_sf(135.80672317102676, 100) == doctest::Approx(0.01).epsilon(1e-10));
  CHECK(chi2_sf(0.35, 3) == doctest::Approx(9.503661173684760e-01).epsilon(1e-12));
  CHECK(chi2_sf(0.0, 5) == 1.0);
  CHECK(chi2_sf(-1.0, 5) == 1.0);
}

TEST_CASE("goodness-of-fit pools rare cells") {
  // two fat cells plus many rare ones; pooled cells keep expected >= 5
  std::vector<double> probs = {0.495, 0.495, 0.004, 0.003, 0.002, 0.001};
  std::vector<std::uint64_t> counts = {4930, 4970, 41, 28, 22, 9};
  auto r = chi2_goodness_of_fit(counts, probs, 5.0);
  CHECK(r.cells >= 3);
  CHECK(r.cells <= probs.size());
  CHECK(r.dof == r.cells - 1);
  CHECK(r.p_value > 1e-4);
  CHECK(r.p_value <= 1.0);

  // a grossly wrong model must be rejected
  std::vector<std::uint64_t> bad = {9000, 900, 41, 28, 22, 9};
  auto rb = chi2_goodness_of_fit(bad, probs, 5.0);
  CHECK(rb.p_value < 1e-10);
}

TEST_CASE("median and slope") {
  std::vector<double> v = {5.0, 1.0, 3.0};
  CHECK(median(v) == 3.0);
  std::vector<double> w = {4.0, 1.0, 3.0, 2.0};
  CHECK(median(w) == 2.5);

  std::vector<double> x = {0.0, 1.0, 2.0, 3.0};
  std::vector<double> y = {1.0, 3.0, 5.0, 7.0};
  CHECK(ols_slope(x, y) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("bootstrap standard error is deterministic and sane") {
  Rng rng(4242);
  std::vector<double> data(4000);
  for (auto& d : data) d = rng.normal();
  auto stat = [&](std::span<const std::size_t> idx) {
    double s = 0.0;
    for (auto i : idx) s += data[i];
    return s / static_cast<double>(idx.size());
  };
  double se1 = bootstrap_se(data.size(), stat, 200, 7);
  double se2 = bootstrap_se(data.size(), stat, 200, 7);
  CHECK(se1 == se2);
  // SE of the mean of 4000 standard normals is ~ 1/sqrt(4000) = 0.0158
  CHECK(se1 > 0.010);
  CHECK(se1 < 0.022);
}

TEST_CASE("stream derivation separates domains and indices") {
  CHECK(derive_seed(1, StreamDomain::kSample, 0) != derive_seed(1, StreamDomain::kSample, 1));
  CHECK(derive_seed(1, StreamDomain::kSample, 0) != derive_seed(1, StreamDomain::kBootstrap, 0));
  CHECK(derive_seed(1, StreamDomain::kSample, 0) != derive_seed(2, StreamDomain::kSample, 0));
  Rng a(derive_seed(9, StreamDomain::kSample, 3)), b(derive_seed(9, StreamDomain::kSample, 3));
  for (int i = 0; i < 16; ++i) CHECK(a.next() == b.next());
}

TEST_CASE("site-keyed uniforms depend only on coordinates") {
  std::int64_t p1[] = {17};
  std::int64_t p2[] = {18};
  CHECK(site_uniform(5, p1) == site_uniform(5, p1));
  CHECK(site_uniform(5, p1) != site_uniform(5, p2));
  CHECK(site_uniform(5, p1) != site_uniform(6, p1));
  std::int64_t q1[] = {2, 3};
  std::int64_t q2[] = {3, 2};
  CHECK(site_uniform(5, q1) != site_uniform(5, q2));
}
