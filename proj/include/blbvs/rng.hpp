#pragma once

#include <cstdint>
#include <random>
#include <unordered_map>
#include <vector>

namespace blbvs {

/// Master seed plus a counter-based stream derivation rule. The child
/// stream for (purpose, i, j) is seeded from the tuple itself, so streams
/// for distinct tuples are distinct and independent of which worker draws
/// them or in what order.
struct RngSpec {
  std::uint64_t master_seed = 0;

  enum class Stream : std::uint64_t {
    SubsetDraw = 1,
    Weights = 2,
    Bootstrap = 3,
    CvFolds = 4,
    SimPredictors = 5,
    SimCoefficients = 6,
    SimResponse = 7,
    GroundTruth = 8,
  };

  std::mt19937_64 stream(Stream purpose, std::uint64_t i = 0,
                         std::uint64_t j = 0) const {
    const std::uint64_t tag = static_cast<std::uint64_t>(purpose);
    std::seed_seq seq{
        static_cast<std::uint32_t>(master_seed),
        static_cast<std::uint32_t>(master_seed >> 32),
        static_cast<std::uint32_t>(tag),
        static_cast<std::uint32_t>(tag >> 32),
        static_cast<std::uint32_t>(i),
        static_cast<std::uint32_t>(i >> 32),
        static_cast<std::uint32_t>(j),
        static_cast<std::uint32_t>(j >> 32),
    };
    return std::mt19937_64(seq);
  }
};

namespace detail {

/// Draws k distinct values from {0..n-1} by a partial Fisher-Yates shuffle
/// over an implicit array, tracking only the displaced positions, so the
/// cost is O(k) regardless of n.
inline std::vector<long> sample_without_replacement(long n, long k,
                                                    std::mt19937_64& rng) {
  std::unordered_map<long, long> displaced;
  displaced.reserve(static_cast<std::size_t>(2 * k));
  auto value_at = [&](long pos) {
    auto it = displaced.find(pos);
    return it == displaced.end() ? pos : it->second;
  };
  std::vector<long> out(static_cast<std::size_t>(k));
  for (long t = 0; t < k; ++t) {
    std::uniform_int_distribution<long> pick(t, n - 1);
    const long u = pick(rng);
    out[static_cast<std::size_t>(t)] = value_at(u);
    displaced[u] = value_at(t);
  }
  return out;
}

}  // namespace detail
}  // namespace blbvs
