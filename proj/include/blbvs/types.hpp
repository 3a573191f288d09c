#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace blbvs {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

enum class ErrorCode {
  DimensionMismatch,
  BadResponse,
  EmptyGroup,
  OverlappingGroups,
  IncompleteGroupCover,
  GammaOutOfRange,
  NotEnoughRows,
  ZeroWeightTotal,
  FoldTooSmall,
  LengthMismatch,
  GroupCountMismatch,
  ZeroTruthTrace,
  MissingColumn,
  UnknownLevel,
  NonNumericContinuous,
  EmptyFile,
  MissingValue,
  BadConfig,
};

inline const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::BadResponse: return "BadResponse";
    case ErrorCode::EmptyGroup: return "EmptyGroup";
    case ErrorCode::OverlappingGroups: return "OverlappingGroups";
    case ErrorCode::IncompleteGroupCover: return "IncompleteGroupCover";
    case ErrorCode::GammaOutOfRange: return "GammaOutOfRange";
    case ErrorCode::NotEnoughRows: return "NotEnoughRows";
    case ErrorCode::ZeroWeightTotal: return "ZeroWeightTotal";
    case ErrorCode::FoldTooSmall: return "FoldTooSmall";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::GroupCountMismatch: return "GroupCountMismatch";
    case ErrorCode::ZeroTruthTrace: return "ZeroTruthTrace";
    case ErrorCode::MissingColumn: return "MissingColumn";
    case ErrorCode::UnknownLevel: return "UnknownLevel";
    case ErrorCode::NonNumericContinuous: return "NonNumericContinuous";
    case ErrorCode::EmptyFile: return "EmptyFile";
    case ErrorCode::MissingValue: return "MissingValue";
    case ErrorCode::BadConfig: return "BadConfig";
  }
  return "Unknown";
}

/// Library error type; `code()` identifies the violated contract.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

enum class Family { Gaussian, Binomial };
enum class PenaltyKind { Lasso, GroupLasso };

/// Rescale rule s(df) applied to each group's penalty term.
enum class RescaleRule { SqrtDf, Unit };

inline const char* to_string(Family f) {
  return f == Family::Gaussian ? "gaussian" : "binomial";
}
inline const char* to_string(PenaltyKind k) {
  return k == PenaltyKind::Lasso ? "lasso" : "group_lasso";
}
inline const char* to_string(RescaleRule r) {
  return r == RescaleRule::SqrtDf ? "sqrt_df" : "unit";
}

/// Partition of the design-matrix columns into groups. Column indices are
/// 0-based and exclude the intercept; group g covers df(g) = |groups[g]|
/// columns. The groups must be pairwise disjoint and cover {0..p-1}.
struct GroupStructure {
  std::vector<std::vector<int>> groups;

  int size() const { return static_cast<int>(groups.size()); }
  int df(int g) const { return static_cast<int>(groups[g].size()); }

  int n_columns() const {
    int p = 0;
    for (const auto& g : groups) p += static_cast<int>(g.size());
    return p;
  }

  std::vector<int> sizes() const {
    std::vector<int> out;
    out.reserve(groups.size());
    for (const auto& g : groups) out.push_back(static_cast<int>(g.size()));
    return out;
  }

  /// One singleton group per column.
  static GroupStructure singletons(int p) {
    GroupStructure gs;
    gs.groups.reserve(p);
    for (int j = 0; j < p; ++j) gs.groups.push_back({j});
    return gs;
  }

  /// Consecutive blocks of the given sizes, in order.
  static GroupStructure consecutive(const std::vector<int>& sizes) {
    GroupStructure gs;
    int col = 0;
    for (int sz : sizes) {
      std::vector<int> g(sz);
      for (int k = 0; k < sz; ++k) g[k] = col++;
      gs.groups.push_back(std::move(g));
    }
    return gs;
  }
};

/// Design matrix, response and group structure. `standardized` records
/// whether the columns passed through standardize_columns.
struct GroupedDataset {
  Matrix x;
  Vector y;
  GroupStructure groups;
  Family family = Family::Gaussian;
  bool standardized = false;

  Index n() const { return x.rows(); }
  Index p() const { return x.cols(); }
};

struct PenaltyConfig {
  PenaltyKind kind = PenaltyKind::Lasso;
  double lambda = 0.0;
  RescaleRule rescale = RescaleRule::SqrtDf;
  bool penalize_intercept = false;  // always false; recorded for clarity

  double rescale_value(int df) const {
    return rescale == RescaleRule::SqrtDf ? std::sqrt(static_cast<double>(df))
                                          : 1.0;
  }
};

/// Result of one penalized fit. beta[0] is the intercept; beta[1+j] the
/// coefficient of column j. A group is selected iff any of its
/// coefficients is nonzero, so zero groups are exactly zero vectors.
struct FitResult {
  Vector beta;
  std::vector<std::uint8_t> selected;
  double objective = 0.0;
  int iterations = 0;
  bool converged = false;
  bool separation = false;
  double kkt_violation = 0.0;
  std::vector<double> objective_trace;  // filled when track_objective is set
};

inline std::vector<std::uint8_t> selection_from_beta(
    const Vector& beta, const GroupStructure& groups) {
  std::vector<std::uint8_t> sel(groups.size(), 0);
  for (int g = 0; g < groups.size(); ++g) {
    for (int col : groups.groups[g]) {
      if (beta[1 + col] != 0.0) {
        sel[g] = 1;
        break;
      }
    }
  }
  return sel;
}

/// Checks every GroupedDataset invariant; throws on the first violation.
inline void validate_dataset(const GroupedDataset& d) {
  if (d.x.rows() < 2 || d.x.cols() < 1)
    throw Error(ErrorCode::DimensionMismatch,
                "need n >= 2 rows and p >= 1 columns, got " +
                    std::to_string(d.x.rows()) + "x" +
                    std::to_string(d.x.cols()));
  if (d.y.size() != d.x.rows())
    throw Error(ErrorCode::DimensionMismatch,
                "y has length " + std::to_string(d.y.size()) + " but x has " +
                    std::to_string(d.x.rows()) + " rows");
  if (d.family == Family::Binomial) {
    for (Index i = 0; i < d.y.size(); ++i) {
      if (d.y[i] != 0.0 && d.y[i] != 1.0)
        throw Error(ErrorCode::BadResponse,
                    "binomial response must be 0 or 1, found " +
                        std::to_string(d.y[i]) + " at row " +
                        std::to_string(i));
    }
  }
  const int p = static_cast<int>(d.x.cols());
  if (d.groups.size() < 1)
    throw Error(ErrorCode::EmptyGroup, "group structure has no groups");
  std::vector<std::uint8_t> seen(p, 0);
  int covered = 0;
  for (int g = 0; g < d.groups.size(); ++g) {
    if (d.groups.groups[g].empty())
      throw Error(ErrorCode::EmptyGroup,
                  "group " + std::to_string(g + 1) + " is empty");
    for (int col : d.groups.groups[g]) {
      if (col < 0 || col >= p)
        throw Error(ErrorCode::IncompleteGroupCover,
                    "group " + std::to_string(g + 1) +
                        " references column " + std::to_string(col) +
                        " outside [0," + std::to_string(p - 1) + "]");
      if (seen[col])
        throw Error(ErrorCode::OverlappingGroups,
                    "column " + std::to_string(col) +
                        " appears in more than one group");
      seen[col] = 1;
      ++covered;
    }
  }
  if (covered != p)
    throw Error(ErrorCode::IncompleteGroupCover,
                "groups cover " + std::to_string(covered) + " of " +
                    std::to_string(p) + " columns");
}

}  // namespace blbvs
