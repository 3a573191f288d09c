#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "blbvs/types.hpp"

namespace blbvs {

/// Column-standardized copy of a dataset plus what is needed to map fitted
/// coefficients back to the original column scale.
struct StandardizeResult {
  GroupedDataset data;
  Vector centers;
  Vector scales;
  std::vector<std::uint8_t> zero_variance;

  bool any_zero_variance() const {
    for (auto f : zero_variance)
      if (f) return true;
    return false;
  }
};

/// Centers every column to mean 0 and rescales to population standard
/// deviation 1. Zero-variance columns are centered, get scale 1 and are
/// flagged so solvers can pin their coefficients.
inline StandardizeResult standardize_columns(const GroupedDataset& d) {
  StandardizeResult out;
  out.data = d;
  const Index n = d.n(), p = d.p();
  out.centers.resize(p);
  out.scales.resize(p);
  out.zero_variance.assign(static_cast<std::size_t>(p), 0);
  for (Index j = 0; j < p; ++j) {
    const double mean = d.x.col(j).mean();
    out.data.x.col(j).array() -= mean;
    const double var = out.data.x.col(j).squaredNorm() / static_cast<double>(n);
    double scale = std::sqrt(var);
    if (scale <= 0.0) {
      scale = 1.0;
      out.zero_variance[static_cast<std::size_t>(j)] = 1;
    } else {
      out.data.x.col(j) /= scale;
    }
    out.centers[j] = mean;
    out.scales[j] = scale;
  }
  out.data.standardized = true;
  return out;
}

/// Maps coefficients fitted on standardized columns back to the original
/// scale: beta_j = beta_j_std / scale_j and the intercept absorbs the
/// centers. Predictions are unchanged; zeros stay exactly zero.
inline Vector back_transform_coefficients(const Vector& beta_std,
                                          const Vector& centers,
                                          const Vector& scales) {
  const Index p = centers.size();
  if (beta_std.size() != p + 1)
    throw Error(ErrorCode::LengthMismatch,
                "coefficient vector must have length p+1");
  Vector beta(p + 1);
  double intercept = beta_std[0];
  for (Index j = 0; j < p; ++j) {
    beta[1 + j] = beta_std[1 + j] / scales[j];
    intercept -= beta[1 + j] * centers[j];
  }
  beta[0] = intercept;
  return beta;
}

/// eta_i = beta_0 + x_i . beta over the rows of x.
inline Vector linear_predictor(const Matrix& x, const Vector& beta) {
  if (beta.size() != x.cols() + 1)
    throw Error(ErrorCode::LengthMismatch,
                "coefficient vector must have length p+1");
  Vector eta = x * beta.tail(x.cols());
  eta.array() += beta[0];
  return eta;
}

}  // namespace blbvs
