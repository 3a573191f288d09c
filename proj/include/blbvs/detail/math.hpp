#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

namespace blbvs::detail {

inline double sigmoid(double eta) {
  if (eta >= 0.0) {
    return 1.0 / (1.0 + std::exp(-eta));
  }
  const double e = std::exp(eta);
  return e / (1.0 + e);
}

/// log(1 + exp(eta)) without overflow.
inline double log1pexp(double eta) {
  if (eta > 33.0) return eta;
  if (eta < -33.0) return std::exp(eta);
  return std::log1p(std::exp(eta));
}

inline constexpr double kProbClamp = 1e-15;

/// Binomial deviance contribution -2[y log mu + (1-y) log(1-mu)], with mu
/// clamped away from {0,1} so mismatched saturated predictions stay finite.
inline double binomial_deviance(double y, double mu) {
  const double m = std::min(1.0 - kProbClamp, std::max(kProbClamp, mu));
  return -2.0 * (y * std::log(m) + (1.0 - y) * std::log1p(-m));
}

/// Empirical quantile with linear interpolation between order statistics
/// (the common "type 7" definition). `sorted` must be ascending, nonempty.
inline double quantile_sorted(const std::vector<double>& sorted, double q) {
  const std::size_t m = sorted.size();
  if (m == 1) return sorted[0];
  const double h = q * static_cast<double>(m - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= m) return sorted[m - 1];
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

/// Sample standard deviation (divisor m-1) of one coefficient across fits.
inline double sample_sd(const std::vector<double>& xs) {
  const std::size_t m = xs.size();
  if (m < 2) return 0.0;
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(m);
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(m - 1));
}

inline double sample_variance(const std::vector<double>& xs) {
  const std::size_t m = xs.size();
  if (m < 2) return 0.0;
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(m);
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return ss / static_cast<double>(m - 1);
}

}  // namespace blbvs::detail
