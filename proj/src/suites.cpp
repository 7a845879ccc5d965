#include "latdpp/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>

#include "latdpp/errors.hpp"
#include "latdpp/kernel.hpp"
#include "latdpp/parallel.hpp"
#include "latdpp/rng.hpp"
#include "latdpp/stats.hpp"
#include "latdpp/version.hpp"

namespace latdpp {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

using Clock = std::chrono::steady_clock;

ExperimentReport start_report(const RunConfig& config, const std::string& suite) {
  ExperimentReport r;
  r.suite = suite;
  r.seed = config.seed;
  r.version = kVersion;
  r.symbol_hash = config.symbol ? config.symbol->hash_hex() : "";
  r.resolved_config = config.raw;
  return r;
}

std::vector<std::string> row(std::initializer_list<std::string> cells) { return cells; }

std::string fmt_int(std::int64_t v) { return std::to_string(v); }
std::string fmt_bool(bool v) { return v ? "pass" : "fail"; }

IntPolynomial monomial(int degree) {
  std::vector<std::int64_t> c(static_cast<std::size_t>(degree) + 1, 0);
  c.back() = 1;
  return IntPolynomial(std::move(c));
}

// seeded weight vectors with dimensions in [1, dim_max]
std::vector<WeightVector> make_weight_vectors(std::size_t count, std::size_t dim_max,
                                              std::uint64_t seed, bool include_complex) {
  std::vector<WeightVector> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng(derive_seed(seed, StreamDomain::kWeights, i));
    std::size_t dim = 1 + static_cast<std::size_t>(rng.next() % dim_max);
    bool complex_entries = include_complex && (i % 2 == 1);
    std::vector<std::complex<double>> w(dim);
    for (auto& c : w) {
      double re = rng.normal();
      double im = complex_entries ? rng.normal() : 0.0;
      c = {re, im};
    }
    // a degenerate all-zero draw is astronomically unlikely; regenerate anyway
    double norm = 0.0;
    for (auto& c : w) norm += std::norm(c);
    if (norm == 0.0) w[0] = {1.0, 0.0};
    out.emplace_back(std::move(w));
  }
  return out;
}

std::shared_ptr<const Window> interval_window(std::int64_t origin, std::int64_t length) {
  return std::make_shared<Window>(
      Window::interval(origin, length, static_cast<std::size_t>(length)));
}

double binomial_se(double p, double n) { return std::sqrt(p * (1.0 - p) / n); }

// ---------------------------------------------------------------------------

ExperimentReport suite_sample(const RunConfig& config) {
  const auto& symbol = config.require_symbol();
  ExperimentReport r = start_report(config, "sample");
  std::int64_t n = param_int(config.params, "n", 64);
  std::int64_t samples = param_int(config.params, "samples", 10000);

  std::shared_ptr<const Window> w;
  if (symbol.dimension() == 1) {
    w = interval_window(0, n);
  } else {
    std::vector<std::int64_t> origin(static_cast<std::size_t>(symbol.dimension()), 0);
    std::vector<std::int64_t> sides(static_cast<std::size_t>(symbol.dimension()), n);
    std::size_t cap = 1;
    for (auto s : sides) cap *= static_cast<std::size_t>(s);
    w = std::make_shared<Window>(Window::box(origin, sides, cap));
  }
  auto batch = sample_batch(symbol, w, config.seed, static_cast<std::size_t>(samples),
                            SampleMethod::kAuto, config.threads);
  auto density = empirical_density(batch);

  // pooled density vs sigma, standard error from per-sample means
  std::vector<double> per_sample(batch.count());
  for (std::size_t s = 0; s < batch.count(); ++s) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < batch.sites(); ++i) c += batch.site(s, i);
    per_sample[s] = static_cast<double>(c) / static_cast<double>(batch.sites());
  }
  double se = std::sqrt(sample_variance(per_sample) / static_cast<double>(batch.count()));
  r.add_tolerance_check("pooled_density", density.pooled, symbol.mean_density(), 5.0 * se,
                        "5 standard errors");

  r.table.header = {"site", "empirical_mean", "sigma"};
  for (std::size_t i = 0; i < density.per_site.size(); ++i) {
    r.table.rows.push_back(row({fmt_int(static_cast<std::int64_t>(i)),
                                fmt17(density.per_site[i]), fmt17(symbol.mean_density())}));
  }
  return r;
}

ExperimentReport suite_exact_dist(const RunConfig& config) {
  const auto& symbol = config.require_symbol();
  ExperimentReport r = start_report(config, "exact-dist");
  std::int64_t n = param_int(config.params, "n", 8);
  if (n < 1 || n > static_cast<std::int64_t>(kMaxExactDistributionWindow)) {
    throw ConfigInvalid("params.n: must lie in [1, 14]");
  }
  Window w = Window::interval(0, n);
  auto dist = exact_distribution(symbol, w);

  double sum = 0.0, min_p = dist[0];
  for (double p : dist) {
    sum += p;
    min_p = std::min(min_p, p);
  }
  r.add_tolerance_check("sum_to_one", sum, 1.0, 1e-9);
  r.add_check("min_probability", min_p, 0.0, 1e-10, min_p >= -1e-10,
              "each cylinder probability >= -1e-10");

  double worst_marginal = 0.0;
  for (std::int64_t site = 0; site < n; ++site) {
    double m = 0.0;
    for (std::size_t mask = 0; mask < dist.size(); ++mask) {
      if (mask >> site & 1u) m += dist[mask];
    }
    worst_marginal = std::max(worst_marginal, std::abs(m - symbol.mean_density()));
  }
  r.add_check("marginal_max_error", worst_marginal, 0.0, 1e-9, worst_marginal <= 1e-9,
              "max |marginal - sigma| over sites");

  r.table.header = {"subset_mask", "probability"};
  for (std::size_t mask = 0; mask < dist.size(); ++mask) {
    r.table.rows.push_back(row({fmt_int(static_cast<std::int64_t>(mask)), fmt17(dist[mask])}));
  }
  return r;
}

ExperimentReport suite_gap_prob(const RunConfig& config) {
  const auto& symbol = config.require_symbol();
  ExperimentReport r = start_report(config, "gap-prob");
  auto lengths = param_int_list(config.params, "lengths", {1, 2, 4, 8});

  r.table.header = {"length", "gap_eigen", "gap_det", "abs_diff", "verdict"};
  for (std::int64_t ell : lengths) {
    Window w = Window::interval(0, ell);
    KernelWindow kernel(symbol, w);
    double by_eigen = kernel.gap_probability();
    double by_det;
    if (kernel.real()) {
      Eigen::MatrixXd m = Eigen::MatrixXd::Identity(ell, ell) - kernel.matrix_real();
      by_det = m.partialPivLu().determinant();
    } else {
      Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(ell, ell) - kernel.matrix_complex();
      by_det = m.partialPivLu().determinant().real();
    }
    bool pass = std::abs(by_eigen - by_det) <= 1e-10 && by_eigen > 0.0;
    r.add_check("gap_l" + std::to_string(ell), by_eigen, by_det, 1e-10, pass,
                "eigenvalue product vs determinant; strictly positive");
    r.table.rows.push_back(row({fmt_int(ell), fmt17(by_eigen), fmt17(by_det),
                                fmt17(std::abs(by_eigen - by_det)), fmt_bool(pass)}));
  }
  return r;
}

ExperimentReport suite_covariance(const RunConfig& config) {
  const auto& symbol = config.require_symbol();
  if (symbol.dimension() != 1) throw ConfigInvalid("suite: covariance sweep is one-dimensional");
  ExperimentReport r = start_report(config, "covariance");
  std::int64_t n = param_int(config.params, "n", 64);
  std::int64_t samples = param_int(config.params, "samples", 20000);
  auto lags = param_int_list(config.params, "lags", {0, 1, 2, 3, 4, 8});

  auto batch = sample_batch(symbol, interval_window(0, n), config.seed,
                            static_cast<std::size_t>(samples), SampleMethod::kAuto,
                            config.threads);
  r.table.header = {"lag", "analytic", "empirical", "std_error", "verdict"};
  for (std::int64_t lag : lags) {
    double analytic = symbol.covariance(lag);
    auto per = lag_products_per_sample(batch, std::span<const std::int64_t>(&lag, 1),
                                       symbol.mean_density());
    double emp = mean(per);
    double se = std::sqrt(sample_variance(per) / static_cast<double>(per.size()));
    bool pass = std::abs(emp - analytic) <= 5.0 * se;
    r.add_check("cov_lag" + std::to_string(lag), emp, analytic, 5.0 * se, pass,
                "5 standard errors");
    r.table.rows.push_back(
        row({fmt_int(lag), fmt17(analytic), fmt17(emp), fmt17(se), fmt_bool(pass)}));
  }
  return r;
}

ExperimentReport suite_riesz(const RunConfig& config) {
  const auto& symbol = config.require_symbol();
  if (symbol.dimension() != 1) throw ConfigInvalid("suite: riesz bounds are one-dimensional");
  ExperimentReport r = start_report(config, "riesz");
  std::int64_t vectors = param_int(config.params, "vectors", 50);
  std::int64_t dim_max = param_int(config.params, "dim_max", 64);
  std::int64_t samples = param_int(config.params, "samples", 20000);

  const double cf = std::sqrt(symbol.riesz_constant_sq());
  const double sqrt_sigma = std::sqrt(symbol.mean_density());
  auto ws = make_weight_vectors(static_cast<std::size_t>(vectors),
                                static_cast<std::size_t>(dim_max), config.seed, true);
  auto batch = sample_batch(symbol, interval_window(0, dim_max), config.seed,
                            static_cast<std::size_t>(samples), SampleMethod::kAuto,
                            config.threads);

  double worst_lower = 1e300, worst_upper = 1e300;
  bool emp_all = true;
  r.table.header = {"vector", "dim",   "lower_bound", "l2_analytic",
                    "upper_bound", "empirical_l2", "std_error", "verdict"};
  for (std::size_t i = 0; i < ws.size(); ++i) {
    const auto& a = ws[i];
    double l2 = l2_norm_analytic(symbol, a);
    double lo = cf * a.l2_norm(), hi = sqrt_sigma * a.l2_norm();
    worst_lower = std::min(worst_lower, l2 - lo);
    worst_upper = std::min(worst_upper, hi - l2);
    auto sums = weighted_sums(batch, a, symbol.mean_density());
    double emp = empirical_pnorm(sums, 2.0);
    double se = bootstrap_pnorm_se(sums, 2.0, 200,
                                   derive_seed(config.seed, StreamDomain::kBootstrap, i));
    bool pass = l2 + 1e-9 >= lo && l2 <= hi + 1e-9 && std::abs(emp - l2) <= 5.0 * se;
    emp_all = emp_all && pass;
    r.table.rows.push_back(row({fmt_int(static_cast<std::int64_t>(i)),
                                fmt_int(static_cast<std::int64_t>(a.size())), fmt17(lo),
                                fmt17(l2), fmt17(hi), fmt17(emp), fmt17(se), fmt_bool(pass)}));
  }
  r.add_check("lower_bound_margin", worst_lower, 0.0, 1e-9, worst_lower >= -1e-9,
              "min over vectors of l2 - c_f ||a||");
  r.add_check("upper_bound_margin", worst_upper, 0.0, 1e-9, worst_upper >= -1e-9,
              "min over vectors of sqrt(sigma)||a|| - l2");
  r.add_check("empirical_agreement", emp_all ? 1.0 : 0.0, 1.0, 0.0, emp_all,
              "each vector within 5 bootstrap SEs");
  return r;
}

ExperimentReport suite_subgaussian(const RunConfig& config) {
  const auto& symbol = config.require_symbol();
  if (symbol.dimension() != 1) throw ConfigInvalid("suite: moment bounds are one-dimensional");
  ExperimentReport r = start_report(config, "subgaussian");
  std::int64_t vectors = param_int(config.params, "vectors", 20);
  std::int64_t dim_max = param_int(config.params, "dim_max", 64);
  std::int64_t samples = param_int(config.params, "samples", 20000);

  auto ws = make_weight_vectors(static_cast<std::size_t>(vectors),
                                static_cast<std::size_t>(dim_max), config.seed, false);
  auto batch = sample_batch(symbol, interval_window(0, dim_max), config.seed,
                            static_cast<std::size_t>(samples), SampleMethod::kAuto,
                            config.threads);

  const double multipliers[] = {0.25, 0.5, 1.0};
  bool all = true;
  double worst = 1e300;
  r.table.header = {"vector", "lambda", "margin", "std_error", "verdict"};
  for (std::size_t i = 0; i < ws.size(); ++i) {
    for (double m : multipliers) {
      for (double sign : {1.0, -1.0}) {
        double lambda = sign * m / ws[i].l2_norm();
        auto est = subgaussian_margin(batch, ws[i], symbol.mean_density(), lambda);
        bool pass = est.margin >= -5.0 * est.std_error;
        all = all && pass;
        worst = std::min(worst, est.margin + 5.0 * est.std_error);
        r.table.rows.push_back(row({fmt_int(static_cast<std::int64_t>(i)), fmt17(lambda),
                                    fmt17(est.margin), fmt17(est.std_error), fmt_bool(pass)}));
      }
    }
  }
  r.add_check("all_margins_nonnegative", worst, 0.0, 0.0, all,
              "min over cases of margin + 5 SE");

  if (symbol.is_constant()) {
    // one-site closed form: margin = lambda^2 - log(p e^{l(1-p)} + (1-p) e^{-lp})
    double p = symbol.mean_density();
    WeightVector e0 = WeightVector::from_real({1.0});
    auto est = subgaussian_margin(batch, e0, p, 1.0);
    double analytic = 1.0 - std::log(p * std::exp(1.0 - p) + (1.0 - p) * std::exp(-p));
    r.add_tolerance_check("single_site_closed_form", est.margin, analytic,
                          5.0 * est.std_error, "Bernoulli moment generating function");
  }
  return r;
}

ExperimentReport suite_khintchine(const RunConfig& config) {
  const auto& symbol = config.require_symbol();
  if (symbol.dimension() != 1) throw ConfigInvalid("suite: norm equivalence is one-dimensional");
  ExperimentReport r = start_report(config, "khintchine");
  std::int64_t vectors = param_int(config.params, "vectors", 20);
  std::int64_t dim_max = param_int(config.params, "dim_max", 64);
  std::int64_t samples = param_int(config.params, "samples", 20000);
  auto ps = param_int_list(config.params, "ps", {3, 4, 6});

  auto ws = make_weight_vectors(static_cast<std::size_t>(vectors),
                                static_cast<std::size_t>(dim_max), config.seed, false);
  auto batch = sample_batch(symbol, interval_window(0, dim_max), config.seed,
                            static_cast<std::size_t>(samples), SampleMethod::kAuto,
                            config.threads);

  bool all = true;
  r.table.header = {"vector", "p",        "empirical_2",  "empirical_p", "chain_bound",
                    "alt_chain_bound", "absolute_bound", "std_error",   "verdict"};
  for (std::size_t i = 0; i < ws.size(); ++i) {
    auto sums = weighted_sums(batch, ws[i], symbol.mean_density());
    double emp2 = empirical_pnorm(sums, 2.0);
    for (std::int64_t pi : ps) {
      double p = static_cast<double>(pi);
      double empp = empirical_pnorm(sums, p);
      double cp = khintchine_constant(symbol, p);
      double cp_alt = khintchine_constant_alternate(symbol, p);
      double abs_bound = absolute_pnorm_bound(ws[i], p);
      double se = bootstrap_pnorm_se(sums, p, 200,
                                     derive_seed(config.seed, StreamDomain::kBootstrap,
                                                 i * 131 + static_cast<std::size_t>(pi)));
      bool pass = emp2 <= empp + 1e-12 && empp <= cp * emp2 + 5.0 * se &&
                  empp <= abs_bound + 5.0 * se;
      all = all && pass;
      r.table.rows.push_back(row({fmt_int(static_cast<std::int64_t>(i)), fmt_int(pi),
                                  fmt17(emp2), fmt17(empp), fmt17(cp * emp2),
                                  fmt17(cp_alt * emp2), fmt17(abs_bound), fmt17(se),
                                  fmt_bool(pass)}));
    }
  }
  r.add_check("norm_chain", all ? 1.0 : 0.0, 1.0, 0.0, all,
              "2-norm <= p-norm <= chain and absolute bounds, 5 SEs");
  return r;
}

// decay of |(1/N) sum xi_n e^{2 pi i n t}| at fixed frequencies
ExperimentReport suite_weyl(const RunConfig& config) {
  const auto& symbol = config.require_symbol();
  if (symbol.dimension() != 1) throw ConfigInvalid("suite: frequency decay is one-dimensional");
  ExperimentReport r = start_report(config, "weyl");
  auto lengths = param_int_list(config.params, "lengths",
                                {256, 512, 1024, 2048, 4096, 8192, 16384});
  std::int64_t samples = param_int(config.params, "samples", 100);
  double slope_max = param_double(config.params, "slope_max", -0.3);
  double pass_fraction = param_double(config.params, "pass_fraction", 0.95);
  std::vector<double> ts = {0.61803398874989484820, 1.0 / 3.0, 1.0 / 7.0};

  std::sort(lengths.begin(), lengths.end());
  std::int64_t n_max = lengths.back();
  if (!symbol.is_constant() && n_max > 4096) {
    throw ConfigInvalid("params.lengths: non-constant symbols need lengths <= 4096");
  }
  auto batch = sample_batch(symbol, interval_window(0, n_max), config.seed,
                            static_cast<std::size_t>(samples), SampleMethod::kAuto,
                            config.threads);

  std::vector<double> log_n;
  for (auto n : lengths) log_n.push_back(std::log(static_cast<double>(n)));
  std::vector<std::vector<double>> stat(static_cast<std::size_t>(samples),
                                        std::vector<double>(lengths.size()));
  std::size_t passes = 0;
  for (std::size_t s = 0; s < static_cast<std::size_t>(samples); ++s) {
    std::vector<std::complex<double>> acc(ts.size(), {0.0, 0.0});
    std::size_t next = 0;
    for (std::int64_t n = 0; n < n_max; ++n) {
      if (batch.site(s, static_cast<std::size_t>(n))) {
        for (std::size_t ti = 0; ti < ts.size(); ++ti) {
          double ang = kTwoPi * frac_times_int(ts[ti], n);
          acc[ti] += std::complex<double>(std::cos(ang), std::sin(ang));
        }
      }
      if (next < lengths.size() && n + 1 == lengths[next]) {
        double m = 0.0;
        for (const auto& a : acc) m += std::abs(a);
        stat[s][next] = m / static_cast<double>(ts.size() * lengths[next]);
        ++next;
      }
    }
    std::vector<double> logs(lengths.size());
    for (std::size_t k = 0; k < lengths.size(); ++k) {
      logs[k] = std::log(std::max(stat[s][k], 1e-300));
    }
    if (ols_slope(log_n, logs) <= slope_max) ++passes;
  }
  double frac = static_cast<double>(passes) / static_cast<double>(samples);
  r.add_check("decay_pass_fraction", frac, pass_fraction, 0.0, frac >= pass_fraction,
              "fraction of samples with log-log slope <= " + fmt17(slope_max));

  r.table.header = {"N", "median_statistic"};
  r.plot.header = {"N", "median_statistic"};
  for (std::size_t k = 0; k < lengths.size(); ++k) {
    std::vector<double> col(static_cast<std::size_t>(samples));
    for (std::size_t s = 0; s < col.size(); ++s) col[s] = stat[s][k];
    double med = median(col);
    r.table.rows.push_back(row({fmt_int(lengths[k]), fmt17(med)}));
    r.plot.rows.push_back(row({fmt_int(lengths[k]), fmt17(med)}));
  }
  return r;
}

ExperimentReport suite_salem_littlewood(const RunConfig& config) {
  const auto& symbol = config.require_symbol();
  if (symbol.dimension() != 1) throw ConfigInvalid("suite: frequency maxima are one-dimensional");
  int degree = static_cast<int>(param_int(config.params, "degree", 1));
  if (degree < 1 || degree > 2) throw ConfigInvalid("params.degree: must be 1 or 2");
  auto lengths = param_int_list(config.params, "lengths",
                                degree == 1
                                    ? std::vector<std::int64_t>{256, 512, 1024, 2048, 4096}
                                    : std::vector<std::int64_t>{64, 128, 256});
  std::int64_t samples = param_int(config.params, "samples", 1000);
  ExperimentReport r =
      salem_littlewood_suite(symbol, monomial(degree), lengths,
                             static_cast<std::size_t>(samples), config.seed, config.threads);
  r.seed = config.seed;
  r.symbol_hash = symbol.hash_hex();
  r.resolved_config = config.raw;
  return r;
}

ExperimentReport suite_sumset(const RunConfig& config) {
  const auto& symbol = config.require_symbol();
  ExperimentReport r = start_report(config, "sumset");
  std::int64_t w = param_int(config.params, "w", 500);
  std::int64_t m = param_int(config.params, "m", 50);
  std::int64_t samples = param_int(config.params, "samples", 100);
  double threshold = param_double(config.params, "full_coverage_fraction", 0.99);
  const int d = symbol.dimension();

  std::vector<std::int64_t> origin(static_cast<std::size_t>(d), -w);
  std::vector<std::int64_t> sides(static_cast<std::size_t>(d), 2 * w + 1);
  std::size_t cap = 1;
  for (auto s : sides) cap *= static_cast<std::size_t>(s);
  auto window = std::make_shared<Window>(Window::box(origin, sides, cap));
  if (!symbol.is_constant() && window->size() > Window::kDefaultCap) {
    throw ConfigInvalid("params.w: non-constant symbols need |W| <= 4096");
  }
  auto batch = sample_batch(symbol, window, config.seed, static_cast<std::size_t>(samples),
                            SampleMethod::kAuto, config.threads);

  std::size_t full = 0;
  r.table.header = {"sample", "coverage"};
  for (std::size_t s = 0; s < batch.count(); ++s) {
    double cov = sumset_coverage(batch.config(s), *window, m);
    if (cov == 1.0) ++full;
    r.table.rows.push_back(row({fmt_int(static_cast<std::int64_t>(s)), fmt17(cov)}));
  }
  double frac = static_cast<double>(full) / static_cast<double>(batch.count());
  r.add_check("full_coverage_fraction", frac, threshold, 0.0, frac >= threshold,
              "fraction of samples covering every target");
  return r;
}

ExperimentReport suite_gaps(const RunConfig& config) {
  const auto& symbol = config.require_symbol();
  if (symbol.dimension() != 1) throw ConfigInvalid("suite: gap statistics are one-dimensional");
  ExperimentReport r = start_report(config, "gaps");
  auto lengths = param_int_list(config.params, "lengths", {1024, 16384, 262144});
  std::int64_t samples = param_int(config.params, "samples", 100);
  auto gap_lengths = param_int_list(config.params, "gap_lengths", {2, 4, 8});
  std::int64_t presence_n = param_int(config.params, "presence_n", 2048);
  std::int64_t presence_samples = param_int(config.params, "presence_samples", 200);

  r.table.header = {"N", "median_max_gap"};
  r.plot.header = {"N", "median_max_gap"};
  std::vector<double> medians;
  for (std::int64_t n : lengths) {
    if (!symbol.is_constant() && n > 4096) {
      throw ConfigInvalid("params.lengths: non-constant symbols need lengths <= 4096");
    }
    auto batch = sample_batch(symbol, interval_window(0, n), config.seed,
                              static_cast<std::size_t>(samples), SampleMethod::kAuto,
                              config.threads);
    std::vector<double> gaps(batch.count());
    for (std::size_t s = 0; s < batch.count(); ++s) {
      gaps[s] = static_cast<double>(max_gap(batch.config(s)));
    }
    double med = median(gaps);
    medians.push_back(med);
    r.table.rows.push_back(row({fmt_int(n), fmt17(med)}));
    r.plot.rows.push_back(row({fmt_int(n), fmt17(med)}));
  }
  bool increasing = true;
  for (std::size_t i = 0; i + 1 < medians.size(); ++i) {
    increasing = increasing && medians[i] < medians[i + 1];
  }
  r.add_check("median_gap_strictly_increasing", increasing ? 1.0 : 0.0, 1.0, 0.0, increasing,
              "unbounded gaps show up as growing medians");

  auto presence = gap_presence_curve(symbol, gap_lengths, std::vector<std::int64_t>{presence_n},
                                     static_cast<std::size_t>(presence_samples),
                                     derive_seed(config.seed, StreamDomain::kSuite, 1),
                                     config.threads);
  for (auto& c : presence.checks) r.checks.push_back(std::move(c));
  for (auto& rw : presence.table.rows) {
    // widen gap rows into the shared table with a marker column
    r.table.rows.push_back(row({"presence:" + rw[0] + ":" + rw[1], rw[2]}));
  }
  return r;
}

ExperimentReport suite_residues(const RunConfig& config) {
  const auto& symbol = config.require_symbol();
  if (symbol.dimension() != 1) throw ConfigInvalid("suite: residue classes are one-dimensional");
  ExperimentReport r = start_report(config, "residues");
  std::int64_t n = param_int(config.params, "n", 1000000);
  std::int64_t q = param_int(config.params, "q", 7);
  std::int64_t samples = param_int(config.params, "samples", 4);
  int degree = static_cast<int>(param_int(config.params, "degree", 0));
  if (q < 2) throw ConfigInvalid("params.q: needs q >= 2");
  if (!symbol.is_constant() && n > 4096) {
    throw ConfigInvalid("params.n: non-constant symbols need n <= 4096");
  }

  std::optional<IntPolynomial> poly;
  if (degree >= 1) poly = monomial(degree);
  auto batch = sample_batch(symbol, interval_window(0, n), config.seed,
                            static_cast<std::size_t>(samples), SampleMethod::kAuto,
                            config.threads);

  bool all = true;
  double expected = 1.0 / static_cast<double>(q);
  r.table.header = {"sample", "class", "fraction", "expected", "std_error", "verdict"};
  for (std::size_t s = 0; s < batch.count(); ++s) {
    Configuration cfg = batch.config(s);
    auto hist = residue_histogram(cfg, q, poly ? &*poly : nullptr);
    double count = static_cast<double>(cfg.count());
    double se = binomial_se(expected, count);
    for (std::int64_t cls = 0; cls < q; ++cls) {
      double frac = hist[static_cast<std::size_t>(cls)];
      bool pass = std::abs(frac - expected) <= 5.0 * se;
      all = all && pass;
      r.table.rows.push_back(row({fmt_int(static_cast<std::int64_t>(s)), fmt_int(cls),
                                  fmt17(frac), fmt17(expected), fmt17(se), fmt_bool(pass)}));
    }
  }
  r.add_check("residue_equidistribution", all ? 1.0 : 0.0, 1.0, 0.0, all,
              "every class within 5 binomial SEs of 1/q");
  return r;
}

ExperimentReport suite_ergodic(const RunConfig& config) {
  const auto& symbol = config.require_symbol();
  if (symbol.dimension() != 1) throw ConfigInvalid("suite: ergodic averages are one-dimensional");
  ExperimentReport r = start_report(config, "ergodic");
  auto lengths = param_int_list(config.params, "lengths",
                                {1024, 2048, 4096, 8192, 16384, 32768, 65536, 131072});
  std::int64_t samples = param_int(config.params, "samples", 50);
  auto degrees = param_int_list(config.params, "degrees", {1, 2});
  double slope_max = param_double(config.params, "slope_max", -0.3);

  std::sort(lengths.begin(), lengths.end());
  std::int64_t n_max = lengths.back();
  if (!symbol.is_constant() && n_max > 4096) {
    throw ConfigInvalid("params.lengths: non-constant symbols need lengths <= 4096");
  }
  RotationSystem system;
  system.validate();
  const double sigma = symbol.mean_density();
  auto batch = sample_batch(symbol, interval_window(0, n_max), config.seed,
                            static_cast<std::size_t>(samples), SampleMethod::kAuto,
                            config.threads);

  std::vector<double> log_n;
  for (auto n : lengths) log_n.push_back(std::log(static_cast<double>(n)));
  r.table.header = {"degree", "N", "median_deviation"};
  r.plot.header = {"N", "median_deviation"};
  for (std::int64_t deg : degrees) {
    IntPolynomial poly = monomial(static_cast<int>(deg));
    // the orbit is shared by all samples
    std::vector<std::complex<double>> g(static_cast<std::size_t>(n_max));
    for (std::int64_t i = 0; i < n_max; ++i) {
      g[static_cast<std::size_t>(i)] = system.observe(rotation_point(system, poly, i));
    }
    std::vector<std::vector<double>> dev(static_cast<std::size_t>(samples),
                                         std::vector<double>(lengths.size()));
    parallel_for(
        static_cast<std::size_t>(samples),
        [&](std::size_t s) {
          std::complex<double> weighted{0.0, 0.0}, plain{0.0, 0.0};
          std::size_t next = 0;
          for (std::int64_t i = 0; i < n_max; ++i) {
            plain += g[static_cast<std::size_t>(i)];
            if (batch.site(s, static_cast<std::size_t>(i))) {
              weighted += g[static_cast<std::size_t>(i)];
            }
            if (next < lengths.size() && i + 1 == lengths[next]) {
              double n_d = static_cast<double>(lengths[next]);
              dev[s][next] = std::abs(weighted / n_d - sigma * plain / n_d);
              ++next;
            }
          }
        },
        config.threads);
    std::vector<double> med_log(lengths.size());
    for (std::size_t k = 0; k < lengths.size(); ++k) {
      std::vector<double> col(static_cast<std::size_t>(samples));
      for (std::size_t s = 0; s < col.size(); ++s) col[s] = dev[s][k];
      double med = median(col);
      med_log[k] = std::log(std::max(med, 1e-300));
      r.table.rows.push_back(row({fmt_int(deg), fmt_int(lengths[k]), fmt17(med)}));
      if (deg == degrees.back()) {
        r.plot.rows.push_back(row({fmt_int(lengths[k]), fmt17(med)}));
      }
    }
    double slope = ols_slope(log_n, med_log);
    r.add_check("deviation_slope_deg" + std::to_string(deg), slope, slope_max, 0.0,
                slope <= slope_max, "log-log slope of the median deviation");
  }
  return r;
}

using SuiteFn = ExperimentReport (*)(const RunConfig&);

struct SuiteEntry {
  const char* name;
  SuiteFn fn;
};

ExperimentReport suite_all(const RunConfig& config);

constexpr SuiteEntry kSuites[] = {
    {"sample", suite_sample},
    {"exact-dist", suite_exact_dist},
    {"gap-prob", suite_gap_prob},
    {"covariance", suite_covariance},
    {"riesz", suite_riesz},
    {"subgaussian", suite_subgaussian},
    {"khintchine", suite_khintchine},
    {"weyl", suite_weyl},
    {"salem-littlewood", suite_salem_littlewood},
    {"sumset", suite_sumset},
    {"gaps", suite_gaps},
    {"residues", suite_residues},
    {"ergodic", suite_ergodic},
    {"all", suite_all},
};

ExperimentReport suite_all(const RunConfig& config) {
  ExperimentReport r = start_report(config, "all");
  r.table.header = {"suite", "checks", "failures", "wall_time_s"};
  for (const auto& entry : kSuites) {
    if (std::string(entry.name) == "all") continue;
    RunConfig sub = config;
    sub.suite = entry.name;
    auto t0 = Clock::now();
    ExperimentReport sr = entry.fn(sub);
    sr.wall_time_s = std::chrono::duration<double>(Clock::now() - t0).count();
    std::size_t failures = 0;
    for (const auto& c : sr.checks) {
      if (!c.pass) ++failures;
      r.add_check(std::string(entry.name) + "/" + c.name, c.statistic, c.reference,
                  c.tolerance, c.pass, c.note);
    }
    r.table.rows.push_back(row({entry.name, fmt_int(static_cast<std::int64_t>(sr.checks.size())),
                                fmt_int(static_cast<std::int64_t>(failures)),
                                fmt17(sr.wall_time_s)}));
  }
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& e : kSuites) v.emplace_back(e.name);
    return v;
  }();
  return names;
}

ExperimentReport run_suite(const RunConfig& config) {
  for (const auto& entry : kSuites) {
    if (config.suite == entry.name) {
      auto t0 = Clock::now();
      ExperimentReport r = entry.fn(config);
      r.wall_time_s = std::chrono::duration<double>(Clock::now() - t0).count();
      return r;
    }
  }
  throw ConfigInvalid("suite: unknown suite '" + config.suite + "'");
}

ExperimentReport salem_littlewood_suite(const SpectralSymbol& symbol,
                                        const IntPolynomial& poly,
                                        std::span<const std::int64_t> lengths,
                                        std::size_t samples_per_n, std::uint64_t seed,
                                        int threads) {
  ExperimentReport r;
  r.suite = "salem-littlewood";
  r.seed = seed;
  r.version = kVersion;
  r.symbol_hash = symbol.hash_hex();
  const int d = poly.degree();
  const double sigma = symbol.mean_density();

  r.table.header = {"kind", "N", "statistic", "bound", "margin", "verdict"};
  r.plot.header = {"N", "median_max", "bound"};
  std::vector<double> med_by_n, logn, logmed;
  std::vector<std::int64_t> used;
  std::size_t idx = 0;
  for (std::int64_t n : lengths) {
    if (n < 8) continue;  // too short for a meaningful frequency grid
    auto batch = sample_batch(symbol, interval_window(0, n), derive_seed(seed, StreamDomain::kSuite, idx),
                              samples_per_n, SampleMethod::kAuto, threads);
    ++idx;
    std::vector<double> maxima(batch.count());
    parallel_for(
        batch.count(),
        [&](std::size_t s) { maxima[s] = weyl_max(batch.config(s), poly, sigma).max_modulus; },
        threads);

    const double bound =
        100.0 * std::sqrt(static_cast<double>(d) * static_cast<double>(n) *
                          std::log(static_cast<double>(n)));
    std::size_t violations = 0;
    for (double m : maxima) {
      if (m >= bound) ++violations;
    }
    double freq = static_cast<double>(violations) / static_cast<double>(maxima.size());
    double freq_bound = 1.0 / (static_cast<double>(n) * static_cast<double>(n));
    double med = median(maxima);
    med_by_n.push_back(med);
    used.push_back(n);
    logn.push_back(std::log(static_cast<double>(n)));
    logmed.push_back(std::log(std::max(med, 1e-300)));

    bool freq_pass = freq <= freq_bound;
    r.add_check("violation_freq_N" + std::to_string(n), freq, freq_bound, 0.0, freq_pass,
                "P(max >= 100 sqrt(d N log N)) <= 1/N^2");
    r.table.rows.push_back(row({"violation_freq", fmt_int(n), fmt17(freq), fmt17(freq_bound),
                                fmt17(freq_bound - freq), fmt_bool(freq_pass)}));
    r.table.rows.push_back(row({"median_max", fmt_int(n), fmt17(med), fmt17(bound),
                                fmt17(bound - med), fmt_bool(med <= bound)}));
    r.plot.rows.push_back(row({fmt_int(n), fmt17(med), fmt17(bound)}));
  }
  if (used.size() >= 2) {
    double n0 = static_cast<double>(used.front()), n1 = static_cast<double>(used.back());
    double ratio = med_by_n.back() / med_by_n.front();
    double ratio_bound = 2.0 * std::sqrt(n1 * std::log(n1) / (n0 * std::log(n0)));
    r.add_check("median_growth_ratio", ratio, ratio_bound, 0.0, ratio <= ratio_bound,
                "median max growth vs 2x the sqrt(N log N) ratio");
    r.add_check("median_growth_exponent", ols_slope(logn, logmed), 0.75, 0.25,
                std::abs(ols_slope(logn, logmed) - 0.75) <= 0.25,
                "informational: fitted exponent of the median");
  }
  return r;
}

ExperimentReport gap_presence_curve(const SpectralSymbol& symbol,
                                    std::span<const std::int64_t> gap_lengths,
                                    std::span<const std::int64_t> window_lengths,
                                    std::size_t samples, std::uint64_t seed, int threads) {
  ExperimentReport r;
  r.suite = "gap-presence";
  r.seed = seed;
  r.version = kVersion;
  r.symbol_hash = symbol.hash_hex();
  r.table.header = {"gap_length", "N", "empirical_presence", "reference", "std_error",
                    "verdict"};

  bool all = true;
  std::size_t idx = 0;
  for (std::int64_t n : window_lengths) {
    auto batch = sample_batch(symbol, interval_window(0, n),
                              derive_seed(seed, StreamDomain::kSuite, idx), samples,
                              SampleMethod::kAuto, threads);
    ++idx;
    std::vector<std::int64_t> gaps(batch.count());
    for (std::size_t s = 0; s < batch.count(); ++s) gaps[s] = max_gap(batch.config(s));

    for (std::int64_t ell : gap_lengths) {
      std::size_t hits = 0;
      for (auto gmax : gaps) {
        if (gmax >= ell) ++hits;
      }
      double emp = static_cast<double>(hits) / static_cast<double>(batch.count());
      double reference, se;
      bool pass;
      if (symbol.is_constant()) {
        // exact run-length recursion is the oracle
        reference = run_presence_probability(1.0 - symbol.mean_density(), ell, n);
        se = binomial_se(std::clamp(reference, 1e-12, 1.0 - 1e-12),
                         static_cast<double>(batch.count()));
        pass = std::abs(emp - reference) <= 5.0 * se;
      } else if (ell <= static_cast<std::int64_t>(Window::kDefaultCap)) {
        // expected count of gap starts; a scale, not an exact probability
        double per_start = gap_probability(symbol, Window::interval(0, ell));
        reference = std::min(1.0, static_cast<double>(n - ell + 1) * per_start);
        se = 0.0;
        pass = true;
      } else {
        reference = 0.0;
        se = 0.0;
        pass = true;
      }
      all = all && pass;
      r.table.rows.push_back(row({fmt_int(ell), fmt_int(n), fmt17(emp), fmt17(reference),
                                  fmt17(se), fmt_bool(pass)}));
    }
  }
  r.add_check("presence_vs_reference", all ? 1.0 : 0.0, 1.0, 0.0, all,
              "constant symbols: exact recursion within 5 SEs; otherwise reference scale");
  return r;
}

}  // namespace latdpp
