#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace attrition {

// Seeded generator used everywhere randomness is needed. mt19937_64 has a
// standard-mandated bit stream, and the distribution helpers below are our
// own, so identical seeds give identical results on any platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform double in [0, 1), 53 random bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n), rejection sampled to avoid modulo bias.
  std::uint64_t uniform_int(std::uint64_t n) {
    if (n == 0) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  // Standard normal via Marsaglia's polar method.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform01() - 1.0;
      v = 2.0 * uniform01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
  }

  // Knuth's Poisson sampler; adequate for the modest rates the synthetic
  // generators use.
  long poisson(double lambda) {
    if (lambda <= 0.0) return 0;
    if (lambda > 30.0) {
      // Split large rates to keep the product away from underflow.
      const long half = poisson(lambda / 2.0);
      return half + poisson(lambda - lambda / 2.0);
    }
    const double l = std::exp(-lambda);
    long k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= uniform01();
    } while (p > l);
    return k - 1;
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[uniform_int(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// FNV-1a over the context string, mixed with the master seed. Experiments
// derive their own generators from (master, target, model) so the full run
// is reproducible regardless of scheduling order.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view context) {
  std::uint64_t h = 14695981039346656037ull ^ master;
  for (char c : context) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  h ^= master >> 32;
  h *= 1099511628211ull;
  return h;
}

}  // namespace attrition
