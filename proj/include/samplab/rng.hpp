#pragma once

#include <array>
#include <cstdint>

namespace samplab {

// Deterministic xoshiro256++ stream with cheap derivation of independent
// child streams. Derivation hashes (base seed, salt), not the engine state,
// so worker i always sees the same stream no matter who consumed what first.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed);

  // Independent child stream; distinct salts give distinct streams.
  RngStream derive(std::uint64_t salt) const;

  std::uint64_t next_u64();

  // Uniform on [0,1).
  double uniform01();
  // Uniform on (0,1), both endpoints excluded.
  double uniform_open();
  double uniform(double a, double b);
  // Standard normal via Box-Muller (two uniforms per call).
  double normal();
  // Uniform on {0, ..., n-1}.
  long uniform_index(long n);

  std::uint64_t base_seed() const { return base_; }

 private:
  std::uint64_t base_;
  std::array<std::uint64_t, 4> s_;
};

}  // namespace samplab
