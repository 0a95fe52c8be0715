#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pairtab/model.hpp"
#include "pairtab/table.hpp"

namespace pairtab {

struct FitConfig {
  double tolerance = 1e-8;              // max absolute margin violation
  std::int64_t max_iterations = 100000;  // IPS sweeps
};

// Result of iterative proportional scaling. The fitted table is exactly of
// model form (theta_j * theta_k, with the extra factor on the pinned cell for
// SinglePair); margins match the data's sufficient statistic to `tolerance`
// when `converged` is set.
struct FittedModel {
  ModelSpec spec;
  std::vector<double> theta;  // theta[0] unused; 1-based
  std::optional<double> mu;   // SinglePair only
  RealPairTable fitted;
  double loglik = 0.0;  // sum over f>0 of f * log(fitted / N)
  std::int64_t iterations = 0;
  bool converged = false;
  double max_margin_violation = 0.0;
};

// Throws ZeroMarginError when a sufficient-statistic component is zero
// (boundary MLE). Returns converged = false when the sweep budget runs out.
FittedModel fit(const ModelSpec& spec, const PairTable& data, const FitConfig& cfg = {});

double expected_cell(const FittedModel& fm, PairIndex idx);

}  // namespace pairtab
