#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "focal/field.hpp"

namespace focal {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// Seeded deterministic stream. Identical seeds give identical samples.
class Rng {
 public:
  using result_type = std::mt19937_64::result_type;

  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  std::uint64_t seed() const { return seed_; }

  /// Independent child stream, e.g. one per trial or per prime.
  Rng derive(std::uint64_t index) const { return Rng(splitmix64(seed_ ^ splitmix64(index + 1))); }

  Fp element(const PrimeField& F) { return F.random(engine_); }
  Fp nonzero(const PrimeField& F) { return F.random_nonzero(engine_); }

  std::vector<Fp> vector(const PrimeField& F, std::size_t n) {
    std::vector<Fp> v;
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i) v.push_back(F.random(engine_));
    return v;
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace focal
