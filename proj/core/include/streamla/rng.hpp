#pragma once

#include <cmath>
#include <cstdint>
#include <mutex>
#include <random>

namespace streamla {

/// Deterministic random stream.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard, so a given seed yields the same stream on every platform. Uniform
/// and normal deviates are derived from raw engine output by code in this
/// library (not std::*_distribution, whose algorithms are unspecified):
///   - uniform: top 53 bits scaled by 2^-53, giving [0,1)
///   - normal: Marsaglia polar method, second deviate cached
class RngState {
 public:
  static constexpr std::uint64_t default_seed = 5489u;

  RngState() : RngState(default_seed) {}
  explicit RngState(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  void seed(std::uint64_t s) {
    seed_ = s;
    engine_.seed(s);
    have_spare_ = false;
  }
  std::uint64_t seed_value() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    have_spare_ = true;
    return u * f;
  }

  /// Uniform integer in [0, n). Rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  /// Independent child stream; advances this stream by two draws.
  RngState split() {
    const std::uint64_t hi = engine_();
    const std::uint64_t lo = engine_();
    return RngState(hi ^ (lo * 0x9E3779B97F4A7C15ull));
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

namespace rng {

/// Process-wide default stream, used by every generator that is not handed an
/// explicit RngState. Access is serialised.
class GlobalRng {
 public:
  static GlobalRng& instance() {
    static GlobalRng g;
    return g;
  }

  void seed(std::uint64_t s) {
    std::lock_guard lock(mutex_);
    state_.seed(s);
  }

  template <class Fn>
  decltype(auto) with(Fn&& fn) {
    std::lock_guard lock(mutex_);
    return fn(state_);
  }

 private:
  std::mutex mutex_;
  RngState state_;
};

inline void set_seed(std::uint64_t s) { GlobalRng::instance().seed(s); }

/// Re-seed the default stream from std::random_device.
inline void set_seed_random() {
  std::random_device rd;
  set_seed((static_cast<std::uint64_t>(rd()) << 32) ^ rd());
}

}  // namespace rng
}  // namespace streamla
