#include "pairtab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pairtab/errors.hpp"

namespace pairtab {

namespace {

// Regularized incomplete gamma, series branch (x < a+1).
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < 2000; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * 1e-17) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Regularized upper incomplete gamma, continued fraction branch (x >= a+1).
double gamma_q_cf(double a, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 2000; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-17) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

void check_same_n(int a, int b) {
  if (a != b) throw std::invalid_argument("tables have different category counts");
}

}  // namespace

double chi_square_stat(const PairTable& F, const RealPairTable& fhat) {
  check_same_n(F.n(), fhat.n());
  double s = 0.0;
  for (std::size_t c = 0; c < F.size(); ++c) {
    const double e = fhat[c];
    if (e <= 0.0) throw ZeroExpectedError("expected table has a nonpositive cell");
    const double d = static_cast<double>(F[c]) - e;
    s += d * d / e;
  }
  return s;
}

double g_squared(const RealPairTable& fhat1, const RealPairTable& fhat0) {
  check_same_n(fhat1.n(), fhat0.n());
  double s = 0.0;
  for (std::size_t c = 0; c < fhat1.size(); ++c) {
    if (fhat0[c] <= 0.0) throw ZeroNullError("null fit has a nonpositive cell");
    if (fhat1[c] > 0.0) s += fhat1[c] * std::log(fhat1[c] / fhat0[c]);
  }
  return 2.0 * s;
}

double chisq_sf(double x, int df) {
  if (df < 1) throw std::invalid_argument("df must be positive");
  if (x < 0) throw std::invalid_argument("chi-square statistic must be nonnegative");
  if (x == 0.0) return 1.0;
  const double a = df / 2.0;
  const double xx = x / 2.0;
  if (xx < a + 1.0) return 1.0 - gamma_p_series(a, xx);
  return gamma_q_cf(a, xx);
}

double chisq_cdf(double x, int df) {
  if (df < 1) throw std::invalid_argument("df must be positive");
  if (x < 0) throw std::invalid_argument("chi-square statistic must be nonnegative");
  if (x == 0.0) return 0.0;
  const double a = df / 2.0;
  const double xx = x / 2.0;
  if (xx < a + 1.0) return gamma_p_series(a, xx);
  return 1.0 - gamma_q_cf(a, xx);
}

double bonferroni(double p, std::int64_t tests) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("p-value outside [0,1]");
  if (tests < 1) throw std::invalid_argument("tests must be positive");
  return std::min(1.0, p * static_cast<double>(tests));
}

RealPairTable deviation_table(const PairTable& f, const RealPairTable& fhat) {
  check_same_n(f.n(), fhat.n());
  RealPairTable out(f.n());
  for (std::size_t c = 0; c < f.size(); ++c) out[c] = static_cast<double>(f[c]) - fhat[c];
  return out;
}

std::vector<PairScanRow> pair_scan(const PairTable& data, const FitConfig& cfg,
                                   std::int64_t tests) {
  const int n = data.n();
  if (n < 4) throw std::invalid_argument("pair scan needs at least 4 categories");
  const FittedModel fit0 = fit(ModelSpec::no_proximity(n), data, cfg);
  const std::int64_t pairs = static_cast<std::int64_t>(cell_count(n));
  if (tests <= 0) tests = pairs;

  const int df =
      model_rank(ModelSpec::single_pair(n, 1, 2)) - model_rank(ModelSpec::no_proximity(n));

  std::vector<PairScanRow> rows;
  rows.reserve(static_cast<std::size_t>(pairs));
  for (int r = 1; r <= n; ++r) {
    for (int s = r + 1; s <= n; ++s) {
      PairScanRow row;
      row.pair = {r, s};
      const double e0 = fit0.fitted(r, s);
      const double dev = static_cast<double>(data(r, s)) - e0;
      row.pearson_cell = dev * dev / e0;
      try {
        const FittedModel fit1 = fit(ModelSpec::single_pair(n, r, s), data, cfg);
        row.statistic = g_squared(fit1.fitted, fit0.fitted);
        double g2o = 0.0;
        for (std::size_t c = 0; c < data.size(); ++c) {
          if (data[c] > 0)
            g2o += static_cast<double>(data[c]) * std::log(fit1.fitted[c] / fit0.fitted[c]);
        }
        row.g2_observed = 2.0 * g2o;
        row.p_raw = chisq_sf(std::max(0.0, row.statistic), df);
        row.p_adjusted = bonferroni(row.p_raw, tests);
      } catch (const ZeroMarginError& e) {
        row.boundary = true;
        row.note = e.what();
      }
      rows.push_back(std::move(row));
    }
  }

  std::sort(rows.begin(), rows.end(), [](const PairScanRow& a, const PairScanRow& b) {
    if (a.boundary != b.boundary) return !a.boundary;
    if (!a.boundary && a.p_raw != b.p_raw) return a.p_raw < b.p_raw;
    return a.pair < b.pair;
  });
  return rows;
}

}  // namespace pairtab
