#pragma once

#include <cstdint>
#include <optional>
#include <random>

namespace mmdb {

/// Reproducible random stream identified by (root_seed, stream_id).
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard; the seed is a splitmix64 mix of both identifiers. Uniform and
/// normal variates are derived here rather than through <random>
/// distributions, whose algorithms vary between standard libraries. The
/// resulting byte stream therefore does not depend on platform or thread
/// schedule.
class RngStream {
 public:
  RngStream(std::uint64_t root_seed, std::uint64_t stream_id);

  std::uint64_t root_seed() const { return root_seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1).
  double uniform_open();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal (Marsaglia polar method).
  double normal();
  /// Standard Cauchy by inversion.
  double cauchy();
  bool bernoulli(double p) { return uniform() < p; }
  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t root_seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  std::optional<double> spare_normal_;
};

/// Stream id for replicate `replicate` of experiment cell `cell`.
constexpr std::uint64_t cell_stream(std::uint64_t cell, std::uint64_t replicate) {
  return (cell << 24) | (replicate & 0xFFFFFFu);
}

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace mmdb
