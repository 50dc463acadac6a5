#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace mixsim {

/// Named substreams. Every stream used by a run is derived from the master
/// seed and one of these names, never from the scenario.
namespace stream {
inline constexpr std::string_view kDeployment = "deployment";
inline constexpr std::string_view kAttackerPlacement = "attacker-placement";
inline constexpr std::string_view kEvents = "events";
inline constexpr std::string_view kTieBreak = "tie-break";
inline constexpr std::string_view kTrustGate = "trust-gate";
}  // namespace stream

/// 64-bit FNV-1a over the bytes of `name`.
std::uint64_t fnv1a64(std::string_view name) noexcept;

/// SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed for substream `name` of `master_seed`:
/// splitmix64(splitmix64(master_seed) ^ fnv1a64(name)).
std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view name) noexcept;

/**
 * A reproducible stream of random numbers backed by mt19937_64.
 *
 * Only the raw 64-bit engine output is used; the conversions to [0,1) and to
 * bounded integers are done here so that results do not depend on the
 * standard library's distribution implementations.
 */
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  RandomStream(std::uint64_t master_seed, std::string_view name)
      : engine_(derive_seed(master_seed, name)) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on the half-open interval [0, 1), 53 bits of resolution.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  double operator()() { return uniform01(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mixsim
