#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace latdpp {

double mean(std::span<const double> v);
double sample_variance(std::span<const double> v);  // unbiased
double median(std::span<const double> v);

// slope of the least-squares line through (x_i, y_i)
double ols_slope(std::span<const double> x, std::span<const double> y);

// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a),
// series for x < a+1 and continued fraction otherwise.
double gamma_q(double a, double x);

// Upper tail of the chi-square distribution with dof degrees of freedom.
double chi2_sf(double x, double dof);

struct Chi2Result {
  double statistic = 0.0;
  std::size_t dof = 0;
  double p_value = 1.0;
  std::size_t cells = 0;  // after pooling
};

// Goodness-of-fit against fully specified cell probabilities.  Cells with
// expected count below min_expected are pooled (smallest first) so the
// chi-square approximation stays valid.
Chi2Result chi2_goodness_of_fit(std::span<const std::uint64_t> counts,
                                std::span<const double> probs,
                                double min_expected = 5.0);

// Bootstrap standard error of statistic(resampled indices).  The statistic
// receives a multiset of indices into the original sample.  Deterministic
// given the seed; resample r uses stream r of the bootstrap domain.
double bootstrap_se(std::size_t n,
                    const std::function<double(std::span<const std::size_t>)>& statistic,
                    std::size_t resamples, std::uint64_t seed);

}  // namespace latdpp
