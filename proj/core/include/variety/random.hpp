#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace variety {

/// SplitMix64 finalizer; a bijective 64-bit mixer.
[[nodiscard]] std::uint64_t mix64(std::uint64_t x) noexcept;

/// Order-sensitive hash of a sequence of 64-bit words.
[[nodiscard]] std::uint64_t hash_words(std::initializer_list<std::uint64_t> words) noexcept;

/// FNV-1a over the bytes of a string, for folding names into stream keys.
[[nodiscard]] std::uint64_t hash_string(std::string_view s) noexcept;

/// Deterministic random source identified by (base_seed, stream_index).
///
/// The engine is mt19937_64, whose output sequence is fixed by the standard;
/// all variates are produced by code in this library rather than by
/// <random> distributions, so sequences are identical across standard
/// library implementations. A stream is single-owner; use child() to obtain
/// independent streams for parallel work.
class RandomStream {
 public:
  RandomStream(std::uint64_t base_seed, std::uint64_t stream_index);

  [[nodiscard]] std::uint64_t base_seed() const noexcept { return base_seed_; }
  [[nodiscard]] std::uint64_t stream_index() const noexcept { return stream_index_; }

  /// Stream keyed by (base_seed, hash(stream_index, index)). Does not consume
  /// draws from this stream.
  [[nodiscard]] RandomStream child(std::uint64_t index) const;

  [[nodiscard]] std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  [[nodiscard]] double uniform();
  /// Uniform on (0, 1).
  [[nodiscard]] double uniform_open();
  /// Uniform integer in [0, bound), unbiased (bound > 0).
  [[nodiscard]] std::uint64_t below(std::uint64_t bound);
  /// Standard normal (Marsaglia polar method).
  [[nodiscard]] double normal();
  /// Gamma(shape, 1) (Marsaglia-Tsang, with the U^(1/shape) boost for shape < 1).
  [[nodiscard]] double gamma(double shape);

 private:
  std::uint64_t base_seed_;
  std::uint64_t stream_index_;
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace variety
