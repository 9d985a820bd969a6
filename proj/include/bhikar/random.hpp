#pragma once

// Counter-based random streams for reproducible, order-independent simulation.
//
// The generator is splitmix64: a 64-bit counter advanced by the golden-ratio
// increment and run through a two-round multiply-xorshift finalizer. It is
// small, fast, and -- unlike std::mt19937 seeded through std::seed_seq or
// std::shuffle -- produces the same sequence on every platform and toolchain.
// Every game gets its own stream derived purely from (master_seed, config_id,
// game_index), so results never depend on scheduling or worker count.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>

namespace bhikar {

namespace detail {

// splitmix64 finalizer (Vigna's reference constants).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

}  // namespace detail

class RandomStream {
 public:
  RandomStream() = default;
  explicit constexpr RandomStream(std::uint64_t seed) noexcept : state_(seed) {}

  static constexpr const char* generator_name() noexcept { return "splitmix64"; }

  constexpr std::uint64_t next() noexcept {
    state_ += detail::kGolden;
    return detail::mix64(state_);
  }

  // Uniform draw in [0, n) without modulo bias (Lemire's multiply-shift with
  // rejection). n <= 1 returns 0 and consumes nothing from the stream.
  constexpr std::uint64_t bounded_uniform(std::uint64_t n) noexcept {
    if (n <= 1) return 0;
    unsigned __int128 m = static_cast<unsigned __int128>(next()) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(next()) * n;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  friend constexpr bool operator==(const RandomStream&, const RandomStream&) = default;

 private:
  std::uint64_t state_ = 0;
};

// Unbiased in-place Fisher-Yates. Hand-rolled rather than std::shuffle because
// std::shuffle's draw sequence is implementation-defined and we promise
// bit-identical runs everywhere.
template <typename T>
constexpr void shuffle(std::span<T> values, RandomStream& rng) noexcept {
  for (std::size_t i = values.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.bounded_uniform(i));
    using std::swap;
    swap(values[i - 1], values[j]);
  }
}

// Recipe for deriving per-game streams from one user-supplied seed.
struct SeedPlan {
  std::uint64_t master_seed = 0;
};

// Pure function of its inputs: stream_for(plan, c, g) is the same no matter
// which worker asks, in what order, or how many games ran before.
constexpr RandomStream stream_for(const SeedPlan& plan, std::uint64_t config_id,
                                  std::uint64_t game_index) noexcept {
  std::uint64_t h = plan.master_seed;
  h = detail::mix64(h ^ (detail::kGolden + config_id));
  h = detail::mix64(h ^ (0xD1B54A32D192ED03ULL + game_index));
  return RandomStream(h);
}

}  // namespace bhikar
