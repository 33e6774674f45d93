#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace fpl {

/// Purpose tags that keep streams for different consumers disjoint.
enum class StreamTag : std::uint64_t {
  Disorder = 1,
  Subsystems = 2,
  Sampling = 3,
  Circuit = 4,
  Synthetic = 5,
};

/// Random stream addressed by a key tuple, e.g. (tag, seed, realization).
///
/// Stream k is reachable directly without drawing streams 0..k-1. Only
/// fully specified standard components (seed_seq, mt19937_64) are used and
/// floats are formed from raw bits, so draws are identical on every platform.
class KeyedStream {
 public:
  KeyedStream(StreamTag tag, std::initializer_list<std::uint64_t> key);

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  /// Uniform integer in [0, n), unbiased.
  std::uint64_t below(std::uint64_t n);
  /// Standard normal via Box-Muller.
  double normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace fpl
