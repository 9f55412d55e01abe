#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

namespace sphlab {

/// Philox4x32-10 counter-based generator.
///
/// Output block i is a pure function of (key, stream id, i), so any stream can
/// be reconstructed from its coordinates without replaying earlier draws.
class PhiloxEngine {
 public:
  using result_type = std::uint64_t;
  using Block = std::array<std::uint32_t, 4>;

  PhiloxEngine(std::uint64_t key, std::uint64_t stream_id);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Raw 10-round bijection; exposed for known-answer tests.
  static Block bijection(Block counter, std::array<std::uint32_t, 2> key);

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_id_;
  std::uint64_t block_index_ = 0;
  Block buffer_{};
  int cursor_ = 4;
};

/// Uniform and Gaussian variates drawn from one Philox stream.
class Generator {
 public:
  explicit Generator(PhiloxEngine engine) : engine_(engine) {}

  std::uint64_t next_u64() { return engine_(); }
  // [0, 1)
  double uniform01();
  // (0, 1)
  double uniform_open01();
  // Box-Muller; the second variate of each pair is cached.
  double normal();

 private:
  PhiloxEngine engine_;
  std::optional<double> spare_;
};

/// Seeded, splittable source of randomness.
///
/// A source is identified by its seed and the path of child indices used to
/// reach it. Equal (seed, path) always produces the same stream; siblings
/// never share state because each path hashes to its own Philox key.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed, std::vector<std::uint32_t> path = {});

  [[nodiscard]] RandomSource split(std::uint32_t child) const;

  [[nodiscard]] std::uint64_t seed() const { return seed_; }
  [[nodiscard]] const std::vector<std::uint32_t>& path() const { return path_; }

  /// Fresh generator positioned at the start of this source's stream.
  [[nodiscard]] Generator generator() const;

 private:
  std::uint64_t seed_;
  std::vector<std::uint32_t> path_;
};

inline RandomSource split_stream(const RandomSource& rs, std::uint32_t child) {
  return rs.split(child);
}

/// Stable 32-bit child index for a textual key (FNV-1a).
std::uint32_t stream_key(std::string_view name);

}  // namespace sphlab
