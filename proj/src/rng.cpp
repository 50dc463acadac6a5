#include "mixsim/rng.hpp"

#include <limits>
#include <stdexcept>

namespace mixsim {

std::uint64_t fnv1a64(std::string_view name) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : name) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view name) noexcept {
  return splitmix64(splitmix64(master_seed) ^ fnv1a64(name));
}

std::uint64_t RandomStream::below(std::uint64_t bound) {
  if (bound == 0) {
    throw std::invalid_argument("RandomStream::below: bound must be positive");
  }
  // Rejection keeps the result exactly uniform.
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

}  // namespace mixsim
