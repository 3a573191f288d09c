#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <mpfr.h>

#include "blbvs/rng.hpp"
#include "blbvs/types.hpp"

namespace blbvs {

/// b distinct row indices drawn without replacement from a parent dataset.
/// `gamma` is present for subsets sized by b = floor(n^gamma); samples
/// built from compressed bootstrap draws leave it empty.
struct SubsetSample {
  std::vector<long> indices;
  long b = 0;
  std::optional<double> gamma;
  long parent_n = 0;
};

/// A virtual size-n resample: the subset's distinct rows plus an integer
/// weight per row, with weights summing to parent_n exactly.
struct WeightedSample {
  SubsetSample subset;
  std::vector<long> weights;

  long total_weight() const {
    long t = 0;
    for (long w : weights) t += w;
    return t;
  }
};

/// floor(n^gamma), evaluated in 256-bit precision so the floor is exact
/// for every n up to 2^53.
inline long subset_size(long n, double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0))
    throw Error(ErrorCode::GammaOutOfRange,
                "gamma must lie in (0,1), got " + std::to_string(gamma));
  if (n < 1)
    throw Error(ErrorCode::BadConfig, "n must be >= 1");
  mpfr_t base, expo, pow;
  mpfr_init2(base, 256);
  mpfr_init2(expo, 256);
  mpfr_init2(pow, 256);
  mpfr_set_si(base, n, MPFR_RNDN);
  mpfr_set_d(expo, gamma, MPFR_RNDN);
  mpfr_pow(pow, base, expo, MPFR_RNDN);
  mpfr_floor(pow, pow);
  long b = mpfr_get_si(pow, MPFR_RNDN);
  mpfr_clears(base, expo, pow, static_cast<mpfr_ptr>(nullptr));
  b = std::max(1L, std::min(b, n));
  return b;
}

/// Draws s subsets of size b = floor(n^gamma). In disjoint mode (the
/// default) the subsets are pairwise disjoint and s*b <= n is required;
/// otherwise each subset is an independent without-replacement draw.
/// Deterministic given the RngSpec, regardless of caller threading.
inline std::vector<SubsetSample> draw_subsets(long n, int s, double gamma,
                                              const RngSpec& rng,
                                              bool disjoint = true) {
  if (s < 1) throw Error(ErrorCode::BadConfig, "s must be >= 1");
  const long b = subset_size(n, gamma);
  std::vector<SubsetSample> out;
  out.reserve(static_cast<std::size_t>(s));
  if (disjoint) {
    if (static_cast<long>(s) * b > n)
      throw Error(ErrorCode::NotEnoughRows,
                  "disjoint mode needs s*b <= n, got s=" + std::to_string(s) +
                      ", b=" + std::to_string(b) + ", n=" + std::to_string(n));
    auto stream = rng.stream(RngSpec::Stream::SubsetDraw);
    std::vector<long> all =
        detail::sample_without_replacement(n, static_cast<long>(s) * b, stream);
    for (int i = 0; i < s; ++i) {
      SubsetSample sub;
      sub.indices.assign(all.begin() + static_cast<long>(i) * b,
                         all.begin() + static_cast<long>(i + 1) * b);
      std::sort(sub.indices.begin(), sub.indices.end());
      sub.b = b;
      sub.gamma = gamma;
      sub.parent_n = n;
      out.push_back(std::move(sub));
    }
  } else {
    for (int i = 0; i < s; ++i) {
      auto stream = rng.stream(RngSpec::Stream::SubsetDraw,
                               static_cast<std::uint64_t>(i));
      SubsetSample sub;
      sub.indices = detail::sample_without_replacement(n, b, stream);
      std::sort(sub.indices.begin(), sub.indices.end());
      sub.b = b;
      sub.gamma = gamma;
      sub.parent_n = n;
      out.push_back(std::move(sub));
    }
  }
  return out;
}

/// Multinomial(parent_n, uniform over b cells) weights via the sequential
/// conditional-binomial method, O(b) per draw independent of parent_n.
inline WeightedSample draw_weights(const SubsetSample& subset,
                                   std::mt19937_64& stream) {
  const long b = subset.b;
  const long n = subset.parent_n;
  WeightedSample out;
  out.subset = subset;
  out.weights.assign(static_cast<std::size_t>(b), 0);
  long remaining = n;
  for (long k = 0; k < b - 1; ++k) {
    if (remaining == 0) break;
    const double p = 1.0 / static_cast<double>(b - k);
    std::binomial_distribution<long> bin(remaining, p);
    const long nk = bin(stream);
    out.weights[static_cast<std::size_t>(k)] = nk;
    remaining -= nk;
  }
  out.weights[static_cast<std::size_t>(b - 1)] = remaining;
  return out;
}

/// Conventional n-out-of-n bootstrap: n indices drawn uniformly with
/// replacement.
inline std::vector<long> draw_bootstrap_indices(long n,
                                                std::mt19937_64& stream) {
  if (n < 1) throw Error(ErrorCode::BadConfig, "n must be >= 1");
  std::vector<long> idx(static_cast<std::size_t>(n));
  std::uniform_int_distribution<long> pick(0, n - 1);
  for (long i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = pick(stream);
  return idx;
}

/// Compresses a with-replacement index multiset into (distinct rows,
/// counts) so the weighted solvers can serve conventional bootstrap
/// resamples unchanged.
inline WeightedSample compress_bootstrap(const std::vector<long>& indices,
                                         long parent_n) {
  std::map<long, long> counts;
  for (long i : indices) ++counts[i];
  WeightedSample out;
  out.subset.b = static_cast<long>(counts.size());
  out.subset.parent_n = parent_n;
  out.subset.indices.reserve(counts.size());
  out.weights.reserve(counts.size());
  for (const auto& [row, count] : counts) {
    out.subset.indices.push_back(row);
    out.weights.push_back(count);
  }
  return out;
}

}  // namespace blbvs
