#pragma once

#include <cstdint>
#include <random>

namespace dbs {

// Reproducibility handle: identical (seed, stream) gives identical draws.
struct RandomSeed {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Bulk engine for sequential draws (Haar matrices, network angles, shots).
inline std::mt19937_64 make_engine(RandomSeed rs) {
  std::seed_seq seq{rs.seed, rs.stream};
  return std::mt19937_64(seq);
}

// Counter-based uniform in (0,1); depends only on (seed, stream, a, b), so
// work partitioned across threads by counter gives partition-independent
// results.
inline double counter_uniform(RandomSeed rs, std::uint64_t a, std::uint64_t b) {
  const std::uint64_t h =
      splitmix64(rs.seed ^ splitmix64(rs.stream ^ splitmix64(a ^ splitmix64(b))));
  return static_cast<double>(h >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

}  // namespace dbs
