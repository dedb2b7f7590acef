#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace qsdc {

/// Combines a seed with a stream name and index into a new 64-bit seed.
/// Uses FNV-1a over the name and a splitmix64 finalizer, so the result is
/// identical on every platform.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view name, std::uint64_t index = 0);

/// A named, seedable source of randomness.
///
/// Every sampling operation takes one of these explicitly. Streams are
/// move-only: a stream belongs to exactly one session or worker at a time.
/// All draws are built from raw mt19937_64 output (no std distributions),
/// which keeps sequences bit-identical across standard libraries.
class RandomStream {
 public:
  RandomStream(std::string name, std::uint64_t seed);

  RandomStream(const RandomStream&) = delete;
  RandomStream& operator=(const RandomStream&) = delete;
  RandomStream(RandomStream&&) noexcept = default;
  RandomStream& operator=(RandomStream&&) noexcept = default;

  const std::string& name() const { return name_; }
  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();

  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);

  bool bernoulli(double p);

  /// k distinct indices from [0, n) in selection order (partial Fisher-Yates).
  std::vector<std::size_t> choose(std::size_t n, std::size_t k);

  /// Independent child stream; does not advance this stream.
  RandomStream derive(std::string_view child, std::uint64_t index = 0) const;

 private:
  std::string name_;
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace qsdc
