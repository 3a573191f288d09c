#pragma once

#include <cmath>
#include <vector>

#include "blbvs/detail/problem.hpp"
#include "blbvs/resample.hpp"
#include "blbvs/types.hpp"

namespace blbvs {

struct CcdSettings {
  int max_sweeps = 10'000;
  double tolerance = 1e-7;  // max absolute coefficient change per sweep
  bool active_set = true;
  // After the coefficient-change criterion is met, keep sweeping until the
  // KKT violation drops below this target (<= 0 disables the extra check).
  double kkt_target = 5e-5;
  const Vector* warm_start = nullptr;  // length p+1, not owned
  bool track_objective = false;
};

inline double soft_threshold(double z, double t) {
  if (z > t) return z - t;
  if (z < -t) return z + t;
  return 0.0;
}

namespace detail {

/// KKT residual of the weighted Lasso objective
///   (1/W) sum_i w_i (y_i - b0 - x_i.beta)^2 + lambda * ||beta||_1
/// given the current residual vector. Reports the max subgradient
/// violation over penalized coordinates; optionally folds in the
/// intercept gradient.
inline double lasso_kkt_from_residual(const WeightedProblem& prob,
                                      const Vector& beta, double lambda,
                                      const Vector& resid,
                                      bool include_intercept) {
  const Index p = prob.X.cols();
  Vector wr = prob.w.cwiseProduct(resid);
  double worst = 0.0;
  if (include_intercept) worst = std::abs(2.0 / prob.W * wr.sum());
  for (Index j = 0; j < p; ++j) {
    const double grad = -2.0 / prob.W * prob.X.col(j).dot(wr);
    const double bj = beta[1 + j];
    const double viol = bj != 0.0 ? std::abs(grad + lambda * (bj > 0 ? 1.0 : -1.0))
                                  : std::max(std::abs(grad) - lambda, 0.0);
    worst = std::max(worst, viol);
  }
  return worst;
}

}  // namespace detail

/// Weighted Gaussian Lasso by cyclic coordinate descent. Minimizes
///   (1/W) sum_i w_i (y_i - b0 - x_i.beta)^2 + lambda * sum_j |beta_j|
/// over the b distinct rows of the resample, which is exactly the
/// objective of the explicit n-row expansion. The intercept is never
/// penalized; zero-variance columns are pinned at 0. A fit that exhausts
/// max_sweeps comes back with converged=false rather than an error.
inline FitResult fit_lasso_weighted(const GroupedDataset& d,
                                    const WeightedSample& ws,
                                    const PenaltyConfig& penalty,
                                    const CcdSettings& settings = {}) {
  if (d.family != Family::Gaussian)
    throw Error(ErrorCode::BadConfig, "fit_lasso_weighted needs a Gaussian family");
  if (penalty.kind != PenaltyKind::Lasso)
    throw Error(ErrorCode::BadConfig, "fit_lasso_weighted needs a Lasso penalty");
  if (penalty.lambda < 0.0)
    throw Error(ErrorCode::BadConfig, "lambda must be nonnegative");
  if (settings.tolerance <= 0.0 || settings.max_sweeps < 1)
    throw Error(ErrorCode::BadConfig, "bad CCD settings");

  const detail::WeightedProblem prob = detail::gather_problem(d, ws);
  const Index p = prob.X.cols();
  const double lambda = penalty.lambda;
  const double thr = lambda / 2.0;

  // Weighted second moments; the coordinate-update denominators.
  Vector m2(p);
  for (Index j = 0; j < p; ++j)
    m2[j] = prob.w.dot(prob.X.col(j).cwiseAbs2()) / prob.W;

  Vector beta = Vector::Zero(p + 1);
  if (settings.warm_start != nullptr) {
    if (settings.warm_start->size() != p + 1)
      throw Error(ErrorCode::LengthMismatch, "warm start must have length p+1");
    beta = *settings.warm_start;
    for (Index j = 0; j < p; ++j)
      if (prob.pinned[static_cast<std::size_t>(j)]) beta[1 + j] = 0.0;
  } else {
    beta[0] = prob.w.dot(prob.y) / prob.W;
  }

  Vector resid = prob.y - prob.X * beta.tail(p);
  resid.array() -= beta[0];

  FitResult result;
  const auto objective = [&]() {
    return prob.w.dot(resid.cwiseAbs2()) / prob.W +
           lambda * beta.tail(p).cwiseAbs().sum();
  };

  const auto update_intercept = [&]() {
    const double delta = prob.w.dot(resid) / prob.W;
    beta[0] += delta;
    resid.array() -= delta;
    return std::abs(delta);
  };

  const auto update_coordinate = [&](Index j) {
    if (prob.pinned[static_cast<std::size_t>(j)]) return 0.0;
    const double old = beta[1 + j];
    const double z =
        prob.w.cwiseProduct(prob.X.col(j)).dot(resid) / prob.W + m2[j] * old;
    const double next = soft_threshold(z, thr) / m2[j];
    if (next != old) {
      resid.noalias() -= (next - old) * prob.X.col(j);
      beta[1 + j] = next;
    }
    return std::abs(next - old);
  };

  const auto full_sweep = [&]() {
    double max_delta = update_intercept();
    for (Index j = 0; j < p; ++j)
      max_delta = std::max(max_delta, update_coordinate(j));
    return max_delta;
  };

  std::vector<Index> active;
  const auto refresh_active = [&]() {
    active.clear();
    for (Index j = 0; j < p; ++j)
      if (beta[1 + j] != 0.0) active.push_back(j);
  };
  const auto active_sweep = [&]() {
    double max_delta = update_intercept();
    for (Index j : active)
      max_delta = std::max(max_delta, update_coordinate(j));
    return max_delta;
  };

  int sweeps = 0;
  bool converged = false;
  const auto note_sweep = [&]() {
    ++sweeps;
    if (settings.track_objective)
      result.objective_trace.push_back(objective());
  };

  while (sweeps < settings.max_sweeps) {
    double delta = full_sweep();
    note_sweep();
    if (settings.active_set && delta > settings.tolerance) {
      refresh_active();
      while (sweeps < settings.max_sweeps) {
        const double inner = active_sweep();
        note_sweep();
        if (inner <= settings.tolerance) break;
      }
      if (sweeps >= settings.max_sweeps) break;
      delta = full_sweep();  // verify against the coordinates left out
      note_sweep();
    }
    if (delta <= settings.tolerance) {
      const double kkt =
          detail::lasso_kkt_from_residual(prob, beta, lambda, resid, true);
      if (settings.kkt_target <= 0.0 || kkt <= settings.kkt_target) {
        converged = true;
        break;
      }
    }
  }

  result.beta = beta;
  result.selected = selection_from_beta(beta, d.groups);
  result.objective = objective();
  result.iterations = sweeps;
  result.converged = converged;
  result.kkt_violation =
      detail::lasso_kkt_from_residual(prob, beta, lambda, resid, false);
  return result;
}

/// Max KKT violation of `beta` for the weighted Lasso objective; 0 at the
/// optimum. The intercept is excluded per the optimality-certificate
/// contract (its gradient must vanish separately).
inline double kkt_check_lasso(const GroupedDataset& d, const WeightedSample& ws,
                              const PenaltyConfig& penalty, const Vector& beta) {
  if (beta.size() != d.p() + 1)
    throw Error(ErrorCode::LengthMismatch, "beta must have length p+1");
  const detail::WeightedProblem prob = detail::gather_problem(d, ws);
  Vector resid = prob.y - prob.X * beta.tail(d.p());
  resid.array() -= beta[0];
  return detail::lasso_kkt_from_residual(prob, beta, penalty.lambda, resid,
                                         false);
}

}  // namespace blbvs
