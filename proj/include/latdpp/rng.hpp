#pragma once

#include <cmath>
#include <cstdint>
#include <span>

namespace latdpp {

// Seeding and stream derivation are part of the reproducibility contract:
// batches regenerated from the same master seed must be bit-identical
// regardless of thread count or execution order.  All derived streams use
// the splitmix64 finalizer below; the derivation rules are normative and
// must not change between releases.

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

// Domain tags keep independent stream families from colliding.
enum class StreamDomain : std::uint64_t {
  kSample = 1,     // per-sample streams within a batch
  kBootstrap = 2,  // bootstrap resampling
  kWeights = 3,    // random weight-vector generation
  kSuite = 4,      // suite-internal auxiliary draws
};

// Stream i of a domain under a master seed.  sample i of a batch uses
// derive_seed(master, StreamDomain::kSample, i).
inline std::uint64_t derive_seed(std::uint64_t master, StreamDomain domain,
                                 std::uint64_t index) {
  std::uint64_t h = mix64(master + kGolden * static_cast<std::uint64_t>(domain));
  return mix64(h + kGolden * (index + 1));
}

inline double unit_double(std::uint64_t z) {
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

// splitmix64 stream.  Passes BigCrush; one 64-bit word of state.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += kGolden);
    return mix64(z);
  }

  // uniform in [0, 1)
  double unit() { return unit_double(next()); }

  // standard normal, Box-Muller with a cached spare
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = unit();
    double u2 = unit();
    while (u1 <= 0.0) u1 = unit();
    double r = std::sqrt(-2.0 * std::log(u1));
    double c = std::cos(6.283185307179586476925286766559 * u2);
    double s = std::sin(6.283185307179586476925286766559 * u2);
    spare_ = r * s;
    has_spare_ = true;
    return r * c;
  }

  std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

inline std::uint64_t zigzag(std::int64_t n) {
  return (static_cast<std::uint64_t>(n) << 1) ^
         static_cast<std::uint64_t>(n >> 63);
}

// Uniform keyed by absolute lattice coordinates rather than draw order, so a
// sample extended to a larger window keeps its outcomes on the shared sites.
inline double site_uniform(std::uint64_t seed, std::span<const std::int64_t> site) {
  std::uint64_t h = seed;
  for (std::size_t j = 0; j < site.size(); ++j) {
    h = mix64(h + kGolden * (j + 1) + zigzag(site[j]));
  }
  return unit_double(mix64(h));
}

}  // namespace latdpp
