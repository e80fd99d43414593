#pragma once

// Reproducible random streams. The generator is std::mt19937_64 (bit-exact
// across standard libraries) and every variate mapping is implemented here
// rather than delegated to std::*_distribution, whose draw sequences are
// implementation-defined. Parallel consumers derive one independent stream
// per work item from (master seed, item index) via a splitmix64 finalizer.

#include <cmath>
#include <cstdint>
#include <random>

namespace fsomc {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::uint64_t stream_index) {
  std::uint64_t state = master_seed + 0x9E3779B97F4A7C15ULL * (stream_index + 1);
  return splitmix64_next(state);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // 53-bit mantissa uniform in [0, 1).
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Exact Poisson sampling via the multiplicative method. Chunked so that
  // exp(-mean) stays representable for any mean.
  long poisson(double mean) {
    long total = 0;
    while (mean > 256.0) {
      total += poisson_small(256.0);
      mean -= 256.0;
    }
    return total + poisson_small(mean);
  }

 private:
  long poisson_small(double mean) {
    const double limit = std::exp(-mean);
    long k = 0;
    double prod = 1.0;
    do {
      prod *= uniform01();
      ++k;
    } while (prod > limit);
    return k - 1;
  }

  std::mt19937_64 gen_;
};

// Order-independent compensated (Kahan) accumulation for Monte Carlo
// reductions.
class KahanAccumulator {
 public:
  void add(double x) {
    const double y = x - compensation_;
    const double t = sum_ + y;
    compensation_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace fsomc
