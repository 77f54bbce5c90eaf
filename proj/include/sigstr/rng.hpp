#ifndef SIGSTR_RNG_HPP
#define SIGSTR_RNG_HPP

// Deterministic seeded random stream (splitmix64). Every new signature draws
// exactly one value, so a given seed plus a given creation order reproduces
// the same h-bits — the property the restart and replay machinery relies on.

#include <cstdint>

namespace sigstr {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t x = state_;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }

  // Uniform value in [0, n), n > 0. Used by tests and the bench harness.
  std::uint64_t below(std::uint64_t n) { return next() % n; }

 private:
  std::uint64_t state_;
};

}  // namespace sigstr

#endif  // SIGSTR_RNG_HPP
