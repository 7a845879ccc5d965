#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "latdpp/kernel.hpp"
#include "latdpp/symbol.hpp"
#include "latdpp/window.hpp"

namespace latdpp {

// Point configuration xi in {0,1}^W over a window, with seed provenance.
class Configuration {
 public:
  Configuration() = default;
  Configuration(std::size_t n_sites, std::uint64_t seed)
      : n_(n_sites), seed_(seed), words_((n_sites + 63) / 64, 0) {}

  std::size_t size() const { return n_; }
  std::uint64_t seed() const { return seed_; }
  bool test(std::size_t i) const { return words_[i >> 6] >> (i & 63) & 1u; }
  void set(std::size_t i, bool v) {
    std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (v) {
      words_[i >> 6] |= bit;
    } else {
      words_[i >> 6] &= ~bit;
    }
  }
  std::size_t count() const;
  std::span<const std::uint64_t> words() const { return words_; }

  friend bool operator==(const Configuration& a, const Configuration& b) {
    return a.n_ == b.n_ && a.words_ == b.words_;
  }

 private:
  std::size_t n_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<std::uint64_t> words_;
};

enum class SampleMethod {
  kAuto,         // constant symbol -> independent; small window -> spectral; else sequential
  kSpectral,     // two-phase eigendecomposition sampler (Bernoulli thinning + projection)
  kSequential,   // site-by-site conditional chain (Schur complements)
  kIndependent,  // per-site coin flips; constant symbols only
};

// Two-phase projection sampler.  Phase 1 keeps eigenvector i with
// probability lambda_i; phase 2 samples the projection process spanned by
// the kept eigenvectors.  Deterministic given the seed.
Configuration sample_spectral(const KernelWindow& kernel, std::uint64_t seed);

// Phase-1 kept eigenvector indices for the same seed (shares the stream
// prefix with sample_spectral; the sampled point count equals the size of
// this set).
std::vector<int> spectral_phase1_kept(const KernelWindow& kernel, std::uint64_t seed);

// Conditional chain sampler: walks the window in enumeration order drawing
// site n from P(xi_n = 1 | xi_0..xi_{n-1}) via Schur-complement updates.
// One-dimensional box windows of symmetric piecewise-constant symbols use an
// O(n^2) displacement-generator recursion; everything else updates the dense
// conditional kernel.
Configuration sample_sequential(const SpectralSymbol& symbol, const Window& window,
                                std::uint64_t seed);

// Independent per-site coins at the symbol's density; keyed by absolute site
// coordinates, so extending the window preserves shared outcomes.
Configuration sample_independent(const SpectralSymbol& symbol, const Window& window,
                                 std::uint64_t seed);

// Reproducible collection of configurations.  Sample i uses the stream
// derive_seed(master, StreamDomain::kSample, i); regeneration is
// bit-identical regardless of thread count.
class SampleBatch {
 public:
  SampleBatch(std::shared_ptr<const Window> window, std::uint64_t master_seed,
              std::size_t count);

  const Window& window() const { return *window_; }
  std::shared_ptr<const Window> window_ptr() const { return window_; }
  std::uint64_t master_seed() const { return master_seed_; }
  std::size_t count() const { return count_; }
  std::size_t sites() const { return sites_; }

  bool site(std::size_t sample, std::size_t site) const {
    const std::uint64_t* w = words_.data() + sample * words_per_sample_;
    return w[site >> 6] >> (site & 63) & 1u;
  }
  Configuration config(std::size_t sample) const;
  void store(std::size_t sample, const Configuration& c);

  std::span<const std::uint64_t> sample_words(std::size_t sample) const {
    return {words_.data() + sample * words_per_sample_, words_per_sample_};
  }
  std::size_t words_per_sample() const { return words_per_sample_; }

  friend bool operator==(const SampleBatch& a, const SampleBatch& b) {
    return a.sites_ == b.sites_ && a.count_ == b.count_ && a.words_ == b.words_;
  }

 private:
  std::shared_ptr<const Window> window_;
  std::uint64_t master_seed_ = 0;
  std::size_t count_ = 0;
  std::size_t sites_ = 0;
  std::size_t words_per_sample_ = 0;
  std::vector<std::uint64_t> words_;
};

SampleBatch sample_batch(const SpectralSymbol& symbol, std::shared_ptr<const Window> window,
                         std::uint64_t master_seed, std::size_t count,
                         SampleMethod method = SampleMethod::kAuto, int threads = 0);

// window size below which kAuto picks the spectral sampler
inline constexpr std::size_t kSpectralAutoLimit = 512;

struct DensityEstimate {
  std::vector<double> per_site;
  double pooled = 0.0;
};

DensityEstimate empirical_density(const SampleBatch& batch);

// Per-sample averages of (xi_i - sigma)(xi_{i+lag} - sigma) over all
// in-window pairs; the empirical covariance is their mean.
std::vector<double> lag_products_per_sample(const SampleBatch& batch,
                                            std::span<const std::int64_t> lag, double sigma);
double empirical_covariance(const SampleBatch& batch, std::span<const std::int64_t> lag,
                            double sigma);
double empirical_covariance(const SampleBatch& batch, std::int64_t lag, double sigma);

}  // namespace latdpp
