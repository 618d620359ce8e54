#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace causalsort {

// splitmix64 finalizer; the basis for deriving substream seeds.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Hierarchical seed derivation: independent streams per (tag, index),
// e.g. (replicate, purpose). Replicate-level parallelism stays
// reproducible because substreams never share state.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag,
                                 std::uint64_t index = 0) {
  std::uint64_t h = mix64(seed);
  h = mix64(h ^ tag);
  h = mix64(h ^ index);
  return h;
}

// Substream purpose tags.
namespace substream {
inline constexpr std::uint64_t kGraph = 1;
inline constexpr std::uint64_t kInstance = 2;
inline constexpr std::uint64_t kData = 3;
inline constexpr std::uint64_t kAlgorithm = 4;
inline constexpr std::uint64_t kReplicate = 5;
inline constexpr std::uint64_t kBootstrap = 6;
inline constexpr std::uint64_t kCell = 7;
}  // namespace substream

// Seeded random stream. All distributions are generated from raw 64-bit
// draws (not std:: distribution objects) so that a given seed produces
// the same sequence on every platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), gen_(mix64(seed ^ 0x5bd1e995u)) {}

  // Child stream derived from this stream's seed, independent of how many
  // values have been drawn from the parent.
  Rng child(std::uint64_t tag, std::uint64_t index = 0) const {
    return Rng(derive_seed(seed_, tag, index));
  }

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return gen_(); }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform on {0, ..., n-1}, rejection sampled (no modulo bias).
  int uniform_int(int n) {
    if (n <= 0) throw std::invalid_argument("uniform_int: n must be positive");
    const std::uint64_t un = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = (UINT64_MAX / un) * un;
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return static_cast<int>(x % un);
  }

  // Standard normal via Box-Muller (second value cached).
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    constexpr double kTwoPi = 6.283185307179586476925286766559;
    const double u1 = 1.0 - uniform01();  // (0, 1]
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(kTwoPi * u2);
    has_spare_ = true;
    return r * std::cos(kTwoPi * u2);
  }

  // Exponential with the given rate (mean 1/rate).
  double exponential(double rate) {
    if (rate <= 0) throw std::invalid_argument("exponential: rate must be positive");
    return -std::log1p(-uniform01()) / rate;
  }

  // Uniform on (-hi,-lo) ∪ (lo,hi): magnitude uniform, sign fair.
  double two_interval(double lo, double hi) {
    const double mag = uniform(lo, hi);
    return (next_u64() & 1) ? mag : -mag;
  }

  // Fisher-Yates permutation of {0, ..., n-1}.
  std::vector<int> permutation(int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    for (int i = n - 1; i > 0; --i) std::swap(p[i], p[uniform_int(i + 1)]);
    return p;
  }

  // k distinct values from {0, ..., n-1} (partial Fisher-Yates).
  std::vector<int> sample_without_replacement(int n, int k) {
    if (k < 0 || k > n) {
      throw std::invalid_argument("sample_without_replacement: k out of range");
    }
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i;
    std::vector<int> out(k);
    for (int i = 0; i < k; ++i) {
      const int j = i + uniform_int(n - i);
      std::swap(pool[i], pool[j]);
      out[i] = pool[i];
    }
    return out;
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace causalsort
