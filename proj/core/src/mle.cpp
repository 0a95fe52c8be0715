#include "pairtab/mle.hpp"

#include <cmath>
#include <stdexcept>

#include "pairtab/errors.hpp"

namespace pairtab {

namespace {

// theta_j = sqrt(f(j,a) f(j,b) / f(a,b)) for a triple avoiding the pinned
// cell; the fitted table is exactly multiplicative, so any valid triple gives
// the same value up to round-off.
double recover_theta(const RealPairTable& fitted, int j, const ModelSpec& spec) {
  const int n = fitted.n();
  auto pinned = [&](int x, int y) {
    if (spec.kind != ModelKind::SinglePair) return false;
    PairIndex p{std::min(x, y), std::max(x, y)};
    return p == spec.pair;
  };
  for (int a = 1; a <= n; ++a) {
    if (a == j || pinned(j, a)) continue;
    for (int b = a + 1; b <= n; ++b) {
      if (b == j || pinned(j, b) || pinned(a, b)) continue;
      const double num = fitted(std::min(j, a), std::max(j, a)) *
                         fitted(std::min(j, b), std::max(j, b));
      return std::sqrt(num / fitted(a, b));
    }
  }
  throw std::invalid_argument("no valid triple for theta recovery");
}

}  // namespace

FittedModel fit(const ModelSpec& spec, const PairTable& data, const FitConfig& cfg) {
  if (spec.n != data.n()) throw std::invalid_argument("model/table category counts differ");
  if (cfg.tolerance <= 0 || cfg.max_iterations < 1)
    throw std::invalid_argument("invalid fit configuration");
  const int n = spec.n;
  const bool single = spec.kind == ModelKind::SinglePair;
  if (single && n < 4)
    throw std::invalid_argument("single-pair fits need at least 4 categories");

  const MarginVector u = margins(data);
  std::int64_t pinned_value = 0;
  std::size_t pinned_flat = 0;
  MarginVector target = u;
  if (single) {
    pinned_value = data(spec.pair);
    pinned_flat = flat_index(n, spec.pair);
    if (pinned_value == 0)
      throw ZeroMarginError("fixed-cell sufficient statistic is zero");
    target[spec.pair.j] -= pinned_value;
    target[spec.pair.k] -= pinned_value;
  }
  for (int j = 1; j <= n; ++j) {
    if (target[j] <= 0) throw ZeroMarginError("zero margin for category " + std::to_string(j));
  }

  const std::size_t cells = cell_count(n);
  std::int64_t target_total = 0;
  for (int j = 1; j <= n; ++j) target_total += target[j];
  const double active_cells = static_cast<double>(cells) - (single ? 1.0 : 0.0);
  const double init = static_cast<double>(target_total) / 2.0 / active_cells;

  RealPairTable fitted(n, init);
  if (single) fitted[pinned_flat] = 0.0;  // excluded from scaling, re-pinned below

  std::vector<double> m(static_cast<std::size_t>(n) + 1, 0.0);
  std::vector<double> ratio(static_cast<std::size_t>(n) + 1, 0.0);
  std::int64_t iter = 0;
  double gap = 0.0;
  bool converged = false;
  for (;;) {
    std::fill(m.begin(), m.end(), 0.0);
    std::size_t flat = 0;
    for (int j = 1; j <= n; ++j) {
      for (int k = j + 1; k <= n; ++k, ++flat) {
        m[j] += fitted[flat];
        m[k] += fitted[flat];
      }
    }
    gap = 0.0;
    for (int j = 1; j <= n; ++j) gap = std::max(gap, std::abs(m[j] - target[j]));
    if (gap <= cfg.tolerance) {
      converged = true;
      break;
    }
    if (iter >= cfg.max_iterations) break;
    for (int j = 1; j <= n; ++j) ratio[j] = std::sqrt(target[j] / m[j]);
    flat = 0;
    for (int j = 1; j <= n; ++j) {
      for (int k = j + 1; k <= n; ++k, ++flat) {
        fitted[flat] *= ratio[j] * ratio[k];
      }
    }
    if (single) fitted[pinned_flat] = 0.0;
    ++iter;
  }
  if (single) fitted[pinned_flat] = static_cast<double>(pinned_value);

  FittedModel fm;
  fm.spec = spec;
  fm.fitted = std::move(fitted);
  fm.iterations = iter;
  fm.converged = converged;
  fm.max_margin_violation = gap;

  fm.theta.assign(static_cast<std::size_t>(n) + 1, 0.0);
  for (int j = 1; j <= n; ++j) fm.theta[j] = recover_theta(fm.fitted, j, spec);
  if (single) {
    fm.mu = static_cast<double>(pinned_value) /
            (fm.theta[spec.pair.j] * fm.theta[spec.pair.k]);
  }

  const double N = static_cast<double>(total(data));
  double ll = 0.0;
  for (std::size_t c = 0; c < cells; ++c) {
    const auto fv = data[c];
    if (fv > 0) ll += static_cast<double>(fv) * std::log(fm.fitted[c] / N);
  }
  fm.loglik = ll;
  return fm;
}

double expected_cell(const FittedModel& fm, PairIndex idx) { return fm.fitted(idx); }

}  // namespace pairtab
