#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "blbvs/resample.hpp"
#include "blbvs/types.hpp"

namespace blbvs::detail {

/// A weighted fit problem with the resampled rows gathered into dense
/// storage: X holds the b distinct rows, w the per-row resample weights,
/// W their total. Solvers normalize the data term by W, so a resample of
/// nominal size n and its explicit n-row expansion give the same
/// objective.
struct WeightedProblem {
  Matrix X;
  Vector y;
  Vector w;
  double W = 0.0;
  std::vector<std::uint8_t> pinned;  // zero-variance columns, coefficients held at 0
};

inline WeightedProblem gather_problem(const GroupedDataset& d,
                                      const WeightedSample& ws) {
  const auto b = static_cast<Index>(ws.subset.indices.size());
  if (static_cast<Index>(ws.weights.size()) != b)
    throw Error(ErrorCode::LengthMismatch,
                "weight vector length does not match subset size");
  WeightedProblem prob;
  prob.X.resize(b, d.p());
  prob.y.resize(b);
  prob.w.resize(b);
  for (Index k = 0; k < b; ++k) {
    const long row = ws.subset.indices[static_cast<std::size_t>(k)];
    if (row < 0 || row >= d.n())
      throw Error(ErrorCode::DimensionMismatch,
                  "subset index " + std::to_string(row) +
                      " outside dataset rows");
    const long wk = ws.weights[static_cast<std::size_t>(k)];
    if (wk < 0)
      throw Error(ErrorCode::BadConfig, "negative resample weight");
    prob.X.row(k) = d.x.row(row);
    prob.y[k] = d.y[row];
    prob.w[k] = static_cast<double>(wk);
  }
  prob.W = prob.w.sum();
  if (prob.W <= 0.0)
    throw Error(ErrorCode::ZeroWeightTotal, "all resample weights are zero");
  prob.pinned.assign(static_cast<std::size_t>(d.p()), 0);
  for (Index j = 0; j < d.p(); ++j) {
    const double m1 = prob.w.dot(prob.X.col(j)) / prob.W;
    const double m2 = prob.w.dot(prob.X.col(j).cwiseAbs2()) / prob.W;
    const double var = m2 - m1 * m1;
    if (m2 <= 0.0 || var <= 1e-14 * std::max(1.0, m2))
      prob.pinned[static_cast<std::size_t>(j)] = 1;
  }
  return prob;
}

}  // namespace blbvs::detail
