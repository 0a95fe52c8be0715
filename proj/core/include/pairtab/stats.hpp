#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "pairtab/mle.hpp"
#include "pairtab/table.hpp"

namespace pairtab {

// Pearson chi-square of an integer table against positive expected counts.
double chi_square_stat(const PairTable& F, const RealPairTable& fhat);

// Likelihood-ratio statistic 2 * sum fhat1 * log(fhat1 / fhat0) with the
// convention 0 * log(0/x) = 0. fhat0 must be strictly positive.
double g_squared(const RealPairTable& fhat1, const RealPairTable& fhat0);

// Upper and lower tails of the chi-square distribution, via the regularized
// incomplete gamma function (series for small x, continued fraction for
// large x).
double chisq_sf(double x, int df);
double chisq_cdf(double x, int df);

double bonferroni(double p, std::int64_t tests);

// Cellwise observed - fitted, signed.
RealPairTable deviation_table(const PairTable& f, const RealPairTable& fhat);

struct PairScanRow {
  PairIndex pair;
  double statistic = std::numeric_limits<double>::quiet_NaN();
  double p_raw = std::numeric_limits<double>::quiet_NaN();
  double p_adjusted = std::numeric_limits<double>::quiet_NaN();
  bool boundary = false;
  std::string note;
  // diagnostics: the conventional observed-vs-null likelihood ratio (equal to
  // `statistic` at exact MLEs) and the single-cell Pearson contribution
  double g2_observed = std::numeric_limits<double>::quiet_NaN();
  double pearson_cell = std::numeric_limits<double>::quiet_NaN();
};

// Fits the single-pair model for every pair and tests it against the
// no-proximity fit. Rows sorted by raw p-value (boundary rows flagged and
// placed last). tests == 0 means "number of scanned pairs".
std::vector<PairScanRow> pair_scan(const PairTable& data, const FitConfig& cfg = {},
                                   std::int64_t tests = 0);

}  // namespace pairtab
