#include "latdpp/sampler.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "latdpp/errors.hpp"
#include "latdpp/parallel.hpp"
#include "latdpp/rng.hpp"

namespace latdpp {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kRowNormTol = 1e-6;   // phase-2 breakdown threshold
constexpr double kReorthTol = 1e-8;    // drift that triggers re-orthonormalization
constexpr double kDiagTol = 1e-6;      // conditional probability health window

}  // namespace

std::size_t Configuration::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

// ---------------------------------------------------------------------------
// spectral (two-phase) sampler
// ---------------------------------------------------------------------------

namespace {

template <typename Mat>
void modified_gram_schmidt(Mat& v) {
  using Scalar = typename Mat::Scalar;
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    for (Eigen::Index i = 0; i < j; ++i) {
      Scalar c = v.col(i).dot(v.col(j));
      v.col(j) -= c * v.col(i);
    }
    double nrm = v.col(j).norm();
    if (nrm > 0.0) v.col(j) /= nrm;
  }
}

// Samples the projection process spanned by the orthonormal columns of v.
// Each step picks a site from the squared row norms, zeroes that row by a
// Gram-Schmidt sweep against the largest-entry column, and restores
// orthonormality through the closed form for the rank-one-perturbed Gram
// matrix.  Falls back to a full re-orthonormalization if the row-norm sum
// drifts.
template <typename Mat>
std::vector<std::size_t> select_projection_sites(Mat v, Rng& rng) {
  using Scalar = typename Mat::Scalar;
  const Eigen::Index n = v.rows();
  Eigen::Index r = v.cols();
  std::vector<std::size_t> selected;
  selected.reserve(static_cast<std::size_t>(r));

  Eigen::VectorXd rho = v.rowwise().squaredNorm();
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> c(v.cols()), d(n);

  while (r > 0) {
    auto active = v.leftCols(r);
    double sum = rho.sum();
    if (std::abs(sum - static_cast<double>(r)) > kRowNormTol) {
      throw DegenerateProjection("row-norm sum deviates from remaining count by " +
                                 std::to_string(std::abs(sum - static_cast<double>(r))));
    }
    if (std::abs(sum - static_cast<double>(r)) > kReorthTol) {
      modified_gram_schmidt(active);
      rho = active.rowwise().squaredNorm();
      sum = rho.sum();
    }

    // inverse-CDF over the fixed site order
    double target = rng.unit() * sum;
    Eigen::Index x = -1;
    double acc = 0.0;
    for (Eigen::Index y = 0; y < n; ++y) {
      acc += rho(y);
      if (target < acc) {
        x = y;
        break;
      }
    }
    if (x < 0) {  // rounding pushed the target past the last mass
      for (Eigen::Index y = n - 1; y >= 0; --y) {
        if (rho(y) > 0.0) {
          x = y;
          break;
        }
      }
    }
    selected.push_back(static_cast<std::size_t>(x));

    // pivot: largest |entry| in the selected row, lowest index on ties
    Eigen::Index p = 0;
    double best = -1.0;
    for (Eigen::Index j = 0; j < r; ++j) {
      double a = std::abs(active(x, j));
      if (a > best) {
        best = a;
        p = j;
      }
    }
    if (p != r - 1) active.col(p).swap(active.col(r - 1));

    const Scalar piv = active(x, r - 1);
    const Eigen::Index m = r - 1;
    if (m == 0) break;
    for (Eigen::Index j = 0; j < m; ++j) c(j) = active(x, j) / piv;

    // zero row x in the non-pivot columns, then restore orthonormality:
    // the Gram matrix after the sweep is I + c c^*, whose inverse square
    // root is I - beta c c^*.
    for (Eigen::Index j = 0; j < m; ++j) {
      active.col(j) -= c(j) * active.col(r - 1);
    }
    double s = 0.0;
    for (Eigen::Index j = 0; j < m; ++j) s += std::norm(c(j));
    double beta = s > 1e-12 ? (1.0 - 1.0 / std::sqrt(1.0 + s)) / s : 0.5;
    // the Gram matrix after the sweep is I + conj(c) conj(c)^*
    d.noalias() = v.leftCols(m) * c.head(m).conjugate();
    for (Eigen::Index j = 0; j < m; ++j) {
      v.col(j) -= (beta * c(j)) * d;
    }
    r = m;
    rho = v.leftCols(r).rowwise().squaredNorm();
    rho(x) = 0.0;  // the selected row is exactly zero; keep rounding out
  }
  std::sort(selected.begin(), selected.end());
  return selected;
}

template <typename Mat>
Configuration spectral_sample_impl(const Mat& eigenvectors, const Eigen::VectorXd& lambda,
                                   std::uint64_t seed) {
  const Eigen::Index n = eigenvectors.rows();
  Rng rng(seed);
  std::vector<Eigen::Index> kept;
  kept.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    if (rng.unit() < lambda(i)) kept.push_back(i);
  }
  Configuration cfg(static_cast<std::size_t>(n), seed);
  if (kept.empty()) return cfg;
  Mat v(n, static_cast<Eigen::Index>(kept.size()));
  for (std::size_t j = 0; j < kept.size(); ++j) {
    v.col(static_cast<Eigen::Index>(j)) = eigenvectors.col(kept[j]);
  }
  for (std::size_t site : select_projection_sites(std::move(v), rng)) {
    cfg.set(site, true);
  }
  return cfg;
}

}  // namespace

Configuration sample_spectral(const KernelWindow& kernel, std::uint64_t seed) {
  if (kernel.real()) {
    return spectral_sample_impl(kernel.eigenvectors_real(), kernel.eigenvalues(), seed);
  }
  return spectral_sample_impl(kernel.eigenvectors_complex(), kernel.eigenvalues(), seed);
}

std::vector<int> spectral_phase1_kept(const KernelWindow& kernel, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<int> kept;
  const auto& lambda = kernel.eigenvalues();
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (rng.unit() < lambda(i)) kept.push_back(static_cast<int>(i));
  }
  return kept;
}

// ---------------------------------------------------------------------------
// sequential (conditional chain) sampler
// ---------------------------------------------------------------------------

namespace {

double draw_site(double raw_diag, Rng& rng, int& bit) {
  if (raw_diag < -kDiagTol || raw_diag > 1.0 + kDiagTol) {
    throw DegenerateProjection("conditional probability left [0,1]: " +
                               std::to_string(raw_diag));
  }
  double p = std::clamp(raw_diag, 0.0, 1.0);
  bit = rng.unit() < p ? 1 : 0;
  return raw_diag - (1 - bit);  // pivot for the Schur update
}

template <typename Mat>
Configuration sequential_dense_impl(Mat s, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  Configuration cfg(n, seed);
  for (Eigen::Index t = 0; t < static_cast<Eigen::Index>(n); ++t) {
    int bit = 0;
    double alpha = draw_site(std::real(s(t, t)), rng, bit);
    if (bit) cfg.set(static_cast<std::size_t>(t), true);
    const Eigen::Index m = static_cast<Eigen::Index>(n) - t - 1;
    if (m <= 0 || alpha == 0.0) continue;
    auto col = s.col(t).tail(m);
    s.bottomRightCorner(m, m).noalias() -= (col * col.adjoint()) / alpha;
  }
  return cfg;
}

// Displacement-generator form for one-dimensional symmetric piecewise
// symbols: k * fhat(k) = sum_b w_b sin(2 pi k b), so the kernel is
// Cauchy-like with real rank-2#nodes generators and the whole conditional
// chain runs in O(#nodes * n) per site.
struct SineNodeGenerators {
  std::vector<double> node_b, node_w;
  bool valid = false;
};

SineNodeGenerators piecewise_sine_nodes(const SpectralSymbol& symbol) {
  SineNodeGenerators out;
  if (symbol.dimension() != 1) return out;
  const auto* pw = std::get_if<PiecewiseConstantFactor>(&symbol.factors()[0]);
  if (!pw) return out;

  // jump representation of k * fhat(k); fold mirror nodes b > 1/2 onto 1 - b
  const std::size_t m = pw->heights.size();
  double boundary = pw->heights.front() - pw->heights.back();
  if (std::abs(boundary) > 1e-15) return out;
  std::vector<std::pair<Rational, double>> folded;
  for (std::size_t j = 1; j < m; ++j) {
    Rational b = pw->breakpoints[j];
    double delta = pw->heights[j] - pw->heights[j - 1];
    double sign = 1.0;
    if (Rational(1, 2) < b) {
      b = Rational(1, 1).minus(b);
      sign = -1.0;
    } else if (b == Rational(1, 2)) {
      continue;  // sin(pi k) = 0 for integer k
    }
    bool merged = false;
    for (auto& [bb, dd] : folded) {
      if (bb == b) {
        dd += sign * delta;
        merged = true;
        break;
      }
    }
    if (!merged) folded.emplace_back(b, sign * delta);
  }
  for (auto& [b, delta] : folded) {
    if (std::abs(delta) < 1e-15) continue;
    out.node_b.push_back(b.value());
    out.node_w.push_back(-delta / kTwoPi);
  }
  if (out.node_b.empty()) return out;

  // the representation must reproduce the true coefficients
  for (std::int64_t k = 1; k <= 32; ++k) {
    double recon = 0.0;
    for (std::size_t j = 0; j < out.node_b.size(); ++j) {
      recon += out.node_w[j] * std::sin(kTwoPi * static_cast<double>(k) * out.node_b[j]);
    }
    recon /= static_cast<double>(k);
    auto truth = symbol.fourier_coeff(k);
    if (std::abs(truth.imag()) > 1e-14 || std::abs(recon - truth.real()) > 1e-12) {
      return out;
    }
  }
  out.valid = true;
  return out;
}

Configuration sequential_generator_impl(const SineNodeGenerators& gen, double sigma,
                                        const Window& window, std::uint64_t seed) {
  const std::size_t n = window.size();
  const std::size_t r = 2 * gen.node_b.size();
  const std::int64_t origin = window.box_origin()[0];

  // G holds the weighted sin/cos pair per node, H the unweighted pair;
  // (i - j) K(i,j) = sum_cols G(i,c) H(j,c).  Row-major n x r.
  std::vector<double> G(n * r), H(n * r), diag(n, sigma), inv(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double site = static_cast<double>(origin + static_cast<std::int64_t>(i));
    for (std::size_t j = 0; j < gen.node_b.size(); ++j) {
      double ang = kTwoPi * gen.node_b[j] * site;
      double sn = std::sin(ang), cs = std::cos(ang);
      G[i * r + 2 * j] = gen.node_w[j] * sn;
      G[i * r + 2 * j + 1] = -gen.node_w[j] * cs;
      H[i * r + 2 * j] = cs;
      H[i * r + 2 * j + 1] = sn;
    }
    if (i > 0) inv[i] = 1.0 / static_cast<double>(i);
  }

  Rng rng(seed);
  Configuration cfg(n, seed);
  std::vector<double> col(n);
  for (std::size_t t = 0; t < n; ++t) {
    int bit = 0;
    double alpha = draw_site(diag[t], rng, bit);
    if (bit) cfg.set(t, true);
    if (t + 1 >= n || alpha == 0.0) continue;

    const double* gt = &G[t * r];
    const double* ht = &H[t * r];
    const double inv_alpha = 1.0 / alpha;
    if (r == 2) {
      const double g0 = gt[0], g1 = gt[1], h0 = ht[0], h1 = ht[1];
      for (std::size_t i = t + 1; i < n; ++i) {
        double* gi = &G[i * r];
        double* hi = &H[i * r];
        double ci = (gi[0] * h0 + gi[1] * h1) * inv[i - t];
        double f = ci * inv_alpha;
        gi[0] -= f * g0;
        gi[1] -= f * g1;
        hi[0] -= f * h0;
        hi[1] -= f * h1;
        diag[i] -= ci * f;
      }
    } else {
      for (std::size_t i = t + 1; i < n; ++i) {
        double* gi = &G[i * r];
        double* hi = &H[i * r];
        double dot = 0.0;
        for (std::size_t cidx = 0; cidx < r; ++cidx) dot += gi[cidx] * ht[cidx];
        double ci = dot * inv[i - t];
        double f = ci * inv_alpha;
        for (std::size_t cidx = 0; cidx < r; ++cidx) {
          gi[cidx] -= f * gt[cidx];
          hi[cidx] -= f * ht[cidx];
        }
        diag[i] -= ci * f;
      }
    }
  }
  return cfg;
}

}  // namespace

Configuration sample_sequential(const SpectralSymbol& symbol, const Window& window,
                                std::uint64_t seed) {
  if (symbol.dimension() != window.dimension()) {
    throw InvalidWindow("window dimension does not match symbol dimension");
  }
  if (window.dimension() == 1 && window.is_box()) {
    SineNodeGenerators gen = piecewise_sine_nodes(symbol);
    if (gen.valid) {
      return sequential_generator_impl(gen, symbol.mean_density(), window, seed);
    }
  }
  const std::size_t n = window.size();
  if (kernel_matrix_is_real(symbol, window)) {
    Eigen::MatrixXcd mc = kernel_matrix(symbol, window);
    Eigen::MatrixXd m = mc.real();
    return sequential_dense_impl(std::move(m), n, seed);
  }
  return sequential_dense_impl(kernel_matrix(symbol, window), n, seed);
}

Configuration sample_independent(const SpectralSymbol& symbol, const Window& window,
                                 std::uint64_t seed) {
  if (!symbol.is_constant()) {
    throw InvalidSymbol("independent sampling applies to constant symbols only");
  }
  if (symbol.dimension() != window.dimension()) {
    throw InvalidWindow("window dimension does not match symbol dimension");
  }
  const double sigma = symbol.mean_density();
  Configuration cfg(window.size(), seed);
  for (std::size_t i = 0; i < window.size(); ++i) {
    if (site_uniform(seed, window.point(i)) < sigma) cfg.set(i, true);
  }
  return cfg;
}

// ---------------------------------------------------------------------------
// batches
// ---------------------------------------------------------------------------

SampleBatch::SampleBatch(std::shared_ptr<const Window> window, std::uint64_t master_seed,
                         std::size_t count)
    : window_(std::move(window)), master_seed_(master_seed), count_(count) {
  if (!window_ || window_->size() == 0) throw InvalidWindow("batch needs a nonempty window");
  if (count_ == 0) throw InvalidWindow("batch needs at least one sample");
  sites_ = window_->size();
  words_per_sample_ = (sites_ + 63) / 64;
  words_.assign(count_ * words_per_sample_, 0);
}

Configuration SampleBatch::config(std::size_t sample) const {
  Configuration c(sites_, derive_seed(master_seed_, StreamDomain::kSample, sample));
  auto src = sample_words(sample);
  for (std::size_t i = 0; i < sites_; ++i) {
    if (src[i >> 6] >> (i & 63) & 1u) c.set(i, true);
  }
  return c;
}

void SampleBatch::store(std::size_t sample, const Configuration& c) {
  auto src = c.words();
  std::copy(src.begin(), src.end(),
            words_.begin() + static_cast<std::ptrdiff_t>(sample * words_per_sample_));
}

SampleBatch sample_batch(const SpectralSymbol& symbol, std::shared_ptr<const Window> window,
                         std::uint64_t master_seed, std::size_t count, SampleMethod method,
                         int threads) {
  SampleBatch batch(window, master_seed, count);
  if (method == SampleMethod::kAuto) {
    if (symbol.is_constant()) {
      method = SampleMethod::kIndependent;
    } else if (window->size() <= kSpectralAutoLimit) {
      method = SampleMethod::kSpectral;
    } else {
      method = SampleMethod::kSequential;
    }
  }

  auto run = [&](const std::function<Configuration(std::uint64_t)>& one) {
    parallel_for(
        count,
        [&](std::size_t i) {
          batch.store(i, one(derive_seed(master_seed, StreamDomain::kSample, i)));
        },
        threads);
  };

  switch (method) {
    case SampleMethod::kIndependent:
      run([&](std::uint64_t s) { return sample_independent(symbol, *window, s); });
      break;
    case SampleMethod::kSpectral: {
      KernelWindow kernel(symbol, *window);
      run([&](std::uint64_t s) { return sample_spectral(kernel, s); });
      break;
    }
    case SampleMethod::kSequential:
      run([&](std::uint64_t s) { return sample_sequential(symbol, *window, s); });
      break;
    case SampleMethod::kAuto:
      break;  // unreachable
  }
  return batch;
}

DensityEstimate empirical_density(const SampleBatch& batch) {
  DensityEstimate est;
  est.per_site.assign(batch.sites(), 0.0);
  for (std::size_t s = 0; s < batch.count(); ++s) {
    for (std::size_t i = 0; i < batch.sites(); ++i) {
      est.per_site[i] += batch.site(s, i) ? 1.0 : 0.0;
    }
  }
  double total = 0.0;
  for (auto& v : est.per_site) {
    v /= static_cast<double>(batch.count());
    total += v;
  }
  est.pooled = total / static_cast<double>(batch.sites());
  return est;
}

std::vector<double> lag_products_per_sample(const SampleBatch& batch,
                                            std::span<const std::int64_t> lag, double sigma) {
  const Window& w = batch.window();
  if (!w.is_box()) throw InvalidWindow("lag covariance needs a box window");
  const int d = w.dimension();
  if (static_cast<int>(lag.size()) != d) throw InvalidWindow("lag dimension mismatch");
  const auto& sides = w.box_sides();
  std::vector<std::int64_t> alag(lag.begin(), lag.end());
  for (int j = 0; j < d; ++j) {
    auto& v = alag[static_cast<std::size_t>(j)];
    if (v < 0) v = -v;  // covariance is symmetric in the lag
    if (v >= sides[static_cast<std::size_t>(j)]) {
      throw LagExceedsWindow("lag must be smaller than every box side");
    }
  }
  // strides for the lexicographic flattening (last axis fastest)
  std::vector<std::int64_t> stride(static_cast<std::size_t>(d), 1);
  for (int j = d - 2; j >= 0; --j) {
    stride[static_cast<std::size_t>(j)] =
        stride[static_cast<std::size_t>(j + 1)] * sides[static_cast<std::size_t>(j + 1)];
  }
  std::int64_t lag_flat = 0;
  std::size_t pairs = 1;
  std::vector<std::int64_t> base_sides(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    lag_flat += alag[static_cast<std::size_t>(j)] * stride[static_cast<std::size_t>(j)];
    base_sides[static_cast<std::size_t>(j)] =
        sides[static_cast<std::size_t>(j)] - alag[static_cast<std::size_t>(j)];
    pairs *= static_cast<std::size_t>(base_sides[static_cast<std::size_t>(j)]);
  }

  std::vector<double> out(batch.count());
  std::vector<std::int64_t> idx(static_cast<std::size_t>(d), 0);
  for (std::size_t s = 0; s < batch.count(); ++s) {
    double acc = 0.0;
    std::fill(idx.begin(), idx.end(), 0);
    for (std::size_t p = 0; p < pairs; ++p) {
      std::int64_t flat = 0;
      for (int j = 0; j < d; ++j) {
        flat += idx[static_cast<std::size_t>(j)] * stride[static_cast<std::size_t>(j)];
      }
      double a = (batch.site(s, static_cast<std::size_t>(flat)) ? 1.0 : 0.0) - sigma;
      double b =
          (batch.site(s, static_cast<std::size_t>(flat + lag_flat)) ? 1.0 : 0.0) - sigma;
      acc += a * b;
      for (int j = d - 1; j >= 0; --j) {
        auto& v = idx[static_cast<std::size_t>(j)];
        if (++v < base_sides[static_cast<std::size_t>(j)]) break;
        v = 0;
      }
    }
    out[s] = acc / static_cast<double>(pairs);
  }
  return out;
}

double empirical_covariance(const SampleBatch& batch, std::span<const std::int64_t> lag,
                            double sigma) {
  auto per = lag_products_per_sample(batch, lag, sigma);
  double s = 0.0;
  for (double v : per) s += v;
  return s / static_cast<double>(per.size());
}

double empirical_covariance(const SampleBatch& batch, std::int64_t lag, double sigma) {
  return empirical_covariance(batch, std::span<const std::int64_t>(&lag, 1), sigma);
}

}  // namespace latdpp
