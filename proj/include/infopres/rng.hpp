#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

namespace infopres {

// Seeded random stream. Draws are built directly on mt19937_64 output so that
// sequences are identical across standard libraries (the std distributions are not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform();

  // Uniform integer in [0, bound), bound > 0, unbiased by rejection.
  std::uint64_t below(std::uint64_t bound);

  // Index sampled proportionally to the non-negative weights.
  std::size_t categorical(std::span<const double> weights);

  // Standard normal via Box-Muller (no cached second variate).
  double normal();

  std::uint64_t seed() const { return seed_; }

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
};

std::uint64_t splitmix64(std::uint64_t x);

// Derives an independent child seed from a parent seed and a stream index.
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t stream);

// 64-bit FNV-1a, used for labels in seed derivation and config hashing.
std::uint64_t fnv1a64(std::string_view text);

}  // namespace infopres
