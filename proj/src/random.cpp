#include "sphlab/random.hpp"

#include <cmath>
#include <numbers>

namespace sphlab {
namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

PhiloxEngine::PhiloxEngine(std::uint64_t key, std::uint64_t stream_id)
    : key_{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)},
      stream_id_(stream_id) {}

PhiloxEngine::Block PhiloxEngine::bijection(Block ctr, std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

void PhiloxEngine::refill() {
  const Block counter{static_cast<std::uint32_t>(block_index_),
                      static_cast<std::uint32_t>(block_index_ >> 32),
                      static_cast<std::uint32_t>(stream_id_),
                      static_cast<std::uint32_t>(stream_id_ >> 32)};
  buffer_ = bijection(counter, key_);
  ++block_index_;
  cursor_ = 0;
}

PhiloxEngine::result_type PhiloxEngine::operator()() {
  if (cursor_ >= 4) refill();
  const std::uint64_t lo = buffer_[cursor_];
  const std::uint64_t hi = buffer_[cursor_ + 1];
  cursor_ += 2;
  return (hi << 32) | lo;
}

double Generator::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Generator::uniform_open01() {
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double Generator::normal() {
  if (spare_) {
    const double z = *spare_;
    spare_.reset();
    return z;
  }
  const double radius = std::sqrt(-2.0 * std::log(uniform_open01()));
  const double angle = 2.0 * std::numbers::pi * uniform01();
  spare_ = radius * std::sin(angle);
  return radius * std::cos(angle);
}

RandomSource::RandomSource(std::uint64_t seed, std::vector<std::uint32_t> path)
    : seed_(seed), path_(std::move(path)) {}

RandomSource RandomSource::split(std::uint32_t child) const {
  auto path = path_;
  path.push_back(child);
  return RandomSource(seed_, std::move(path));
}

Generator RandomSource::generator() const {
  std::uint64_t state = splitmix64(seed_);
  for (const std::uint32_t child : path_) {
    // Offset by one so that child 0 still perturbs the state.
    state = splitmix64(state ^ splitmix64(static_cast<std::uint64_t>(child) + 1));
  }
  const std::uint64_t key = state;
  const std::uint64_t stream_id = splitmix64(state ^ 0xA0761D6478BD642Full);
  return Generator(PhiloxEngine(key, stream_id));
}

std::uint32_t stream_key(std::string_view name) {
  std::uint32_t h = 2166136261u;
  for (const char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 16777619u;
  }
  return h;
}

}  // namespace sphlab
