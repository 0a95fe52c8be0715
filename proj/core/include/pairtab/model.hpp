#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "pairtab/table.hpp"

namespace pairtab {

enum class ModelKind { NoProximity, SinglePair };

// Which log-linear family is meant: the plain pairwise-propensity model
// p(j,k) = theta_j * theta_k, or its extension with one distinguished cell
// (r,s) carrying an extra multiplicative factor.
struct ModelSpec {
  int n = 0;
  ModelKind kind = ModelKind::NoProximity;
  PairIndex pair;  // meaningful only for SinglePair

  static ModelSpec no_proximity(int n);
  static ModelSpec single_pair(int n, int r, int s);
};

// 0/1 design matrix, materialized only for rank computation and tests.
struct DesignMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::int8_t> entries;  // row-major

  int at(int r, int c) const { return entries[static_cast<std::size_t>(r) * cols + c]; }
};

struct SufficientStatistic {
  MarginVector margins;
  std::optional<std::pair<PairIndex, std::int64_t>> fixed_cell;
};

DesignMatrix design_matrix(const ModelSpec& spec);
SufficientStatistic sufficient_statistic(const ModelSpec& spec, const PairTable& t);

// Rank over the rationals via exact fraction-free elimination.
int model_rank(const ModelSpec& spec);
int matrix_rank(const DesignMatrix& m);

}  // namespace pairtab
