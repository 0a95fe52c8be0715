#include "pairtab/enumerate.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "pairtab/errors.hpp"
#include "pairtab/stats.hpp"

namespace pairtab {

namespace {

struct DfsState {
  int n;
  std::vector<PairIndex> order;           // free cells, most-constrained first
  std::vector<std::int64_t> rem;          // remaining margin per category
  std::vector<int> open;                  // unassigned incident cells per category
  PairTable work;
  std::int64_t cap;
  std::vector<PairTable>* out;
};

void dfs(DfsState& st, std::size_t pos) {
  if (pos == st.order.size()) {
    for (int j = 1; j <= st.n; ++j) {
      if (st.rem[j] != 0) return;
    }
    if (static_cast<std::int64_t>(st.out->size()) >= st.cap)
      throw FiberTooLargeError("fiber enumeration exceeded cap");
    st.out->push_back(st.work);
    return;
  }
  const PairIndex cell = st.order[pos];
  const int j = cell.j, k = cell.k;
  --st.open[j];
  --st.open[k];
  std::int64_t lo = 0;
  std::int64_t hi = std::min(st.rem[j], st.rem[k]);
  if (st.open[j] == 0) lo = std::max(lo, st.rem[j]), hi = std::min(hi, st.rem[j]);
  if (st.open[k] == 0) lo = std::max(lo, st.rem[k]), hi = std::min(hi, st.rem[k]);
  for (std::int64_t v = lo; v <= hi; ++v) {
    st.rem[j] -= v;
    st.rem[k] -= v;
    st.work(cell) = v;
    dfs(st, pos + 1);
    st.rem[j] += v;
    st.rem[k] += v;
  }
  st.work(cell) = 0;
  ++st.open[j];
  ++st.open[k];
}

}  // namespace

FiberEnumeration enumerate_fiber(const MarginVector& u,
                                 std::optional<std::pair<PairIndex, std::int64_t>> fixed,
                                 std::int64_t cap) {
  const int n = u.n();
  if (n < 3) throw std::invalid_argument("fiber enumeration needs at least 3 categories");
  if (cap < 1) throw std::invalid_argument("cap must be positive");

  FiberEnumeration fe;
  fe.margins = u;
  fe.fixed_cell = fixed;

  DfsState st;
  st.n = n;
  st.rem.assign(static_cast<std::size_t>(n) + 1, 0);
  st.open.assign(static_cast<std::size_t>(n) + 1, 0);
  for (int j = 1; j <= n; ++j) st.rem[j] = u[j];
  st.work = PairTable(n);
  st.cap = cap;
  st.out = &fe.tables;

  if (fixed) {
    const auto [cell, value] = *fixed;
    if (!valid_pair(cell, n)) throw std::invalid_argument("invalid fixed cell");
    if (value < 0) throw std::invalid_argument("negative fixed-cell value");
    st.rem[cell.j] -= value;
    st.rem[cell.k] -= value;
    if (st.rem[cell.j] < 0 || st.rem[cell.k] < 0) return fe;  // empty fiber
    st.work(cell) = value;
  }

  for (int j = 1; j <= n; ++j) {
    for (int k = j + 1; k <= n; ++k) {
      if (fixed && PairIndex{j, k} == fixed->first) continue;
      st.order.push_back({j, k});
      ++st.open[j];
      ++st.open[k];
    }
  }
  std::sort(st.order.begin(), st.order.end(), [&](PairIndex a, PairIndex b) {
    const auto slack_a = std::min(u[a.j], u[a.k]);
    const auto slack_b = std::min(u[b.j], u[b.k]);
    if (slack_a != slack_b) return slack_a < slack_b;
    const auto sum_a = u[a.j] + u[a.k], sum_b = u[b.j] + u[b.k];
    if (sum_a != sum_b) return sum_a < sum_b;
    return a < b;
  });

  dfs(st, 0);

  // hypergeometric weights, normalized in a numerically safe way
  std::vector<double> logw;
  logw.reserve(fe.tables.size());
  double max_lw = -std::numeric_limits<double>::infinity();
  for (const PairTable& t : fe.tables) {
    double lw = 0.0;
    for (std::int64_t v : t.cells()) lw -= std::lgamma(static_cast<double>(v) + 1.0);
    logw.push_back(lw);
    max_lw = std::max(max_lw, lw);
  }
  double z = 0.0;
  for (double lw : logw) z += std::exp(lw - max_lw);
  fe.weights.reserve(logw.size());
  for (double lw : logw) fe.weights.push_back(std::exp(lw - max_lw) / z);
  return fe;
}

double exact_p_value(const MarginVector& u, const PairTable& observed, const RealPairTable& fhat,
                     std::int64_t cap) {
  if (margins(observed) != u)
    throw std::invalid_argument("observed table does not have the given margins");
  const FiberEnumeration fe = enumerate_fiber(u, {}, cap);
  const double obs = chi_square_stat(observed, fhat);
  const double tie_eps = 1e-9 * (1.0 + std::abs(obs));
  double p = 0.0;
  for (std::size_t i = 0; i < fe.tables.size(); ++i) {
    if (chi_square_stat(fe.tables[i], fhat) >= obs - tie_eps) p += fe.weights[i];
  }
  return p;
}

double log10_from_decimal_string(std::string_view digits) {
  std::string clean;
  clean.reserve(digits.size());
  for (char ch : digits) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    if (!std::isdigit(static_cast<unsigned char>(ch)))
      throw std::invalid_argument("count is not a decimal integer");
    clean.push_back(ch);
  }
  const std::size_t first = clean.find_first_not_of('0');
  if (clean.empty() || first == std::string::npos)
    throw std::invalid_argument("count must be positive");
  clean.erase(0, first);
  const std::size_t take = std::min<std::size_t>(clean.size(), 18);
  const double mantissa = std::stod(clean.substr(0, take));
  return std::log10(mantissa) + static_cast<double>(clean.size() - take);
}

MagnitudeEstimate subtable_lower_bound(std::span<const double> log10_counts) {
  if (log10_counts.empty()) throw std::invalid_argument("no counts given");
  double s = 0.0;
  for (double v : log10_counts) s += v;
  return {s, MagnitudeKind::SubtableLowerBound};
}

MagnitudeEstimate subtable_lower_bound_from_strings(std::span<const std::string> counts) {
  std::vector<double> logs;
  logs.reserve(counts.size());
  for (const std::string& c : counts) logs.push_back(log10_from_decimal_string(c));
  return subtable_lower_bound(logs);
}

MagnitudeEstimate ellipsoid_log_volume(std::span<const double> fhat_cells, double r_squared) {
  if (fhat_cells.empty()) throw std::invalid_argument("empty expected table");
  if (r_squared <= 0) throw std::invalid_argument("radius must be positive");
  const double d = static_cast<double>(fhat_cells.size());
  constexpr double ln10 = std::numbers::ln10;
  double half_sum_log10_fhat = 0.0;
  for (double v : fhat_cells) {
    if (v <= 0) throw ZeroExpectedError("expected table has a nonpositive cell");
    half_sum_log10_fhat += 0.5 * std::log10(v);
  }
  const double log10_ball =
      (d / 2.0) * std::log10(std::numbers::pi) - std::lgamma(d / 2.0 + 1.0) / ln10;
  const double log10_radii = (d / 2.0) * std::log10(r_squared) + half_sum_log10_fhat;
  return {log10_ball + log10_radii, MagnitudeKind::EllipsoidVolume};
}

MagnitudeEstimate ellipsoid_log_volume(const RealPairTable& fhat, double r_squared) {
  const auto cells = fhat.cells();
  return ellipsoid_log_volume(std::span<const double>(cells.data(), cells.size()), r_squared);
}

MagnitudeEstimate lattice_correction_magnitude(double r_squared, std::int64_t n) {
  if (r_squared <= 0) throw std::invalid_argument("radius must be positive");
  if (n < 1) throw std::invalid_argument("dimension must be positive");
  return {static_cast<double>(n) / 4.0 * std::log10(r_squared), MagnitudeKind::LatticeCorrection};
}

MagnitudeEstimate log_binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) throw std::invalid_argument("binomial arguments out of range");
  constexpr double ln10 = std::numbers::ln10;
  const double v = (std::lgamma(static_cast<double>(n) + 1.0) -
                    std::lgamma(static_cast<double>(k) + 1.0) -
                    std::lgamma(static_cast<double>(n - k) + 1.0)) /
                   ln10;
  return {v, MagnitudeKind::BinomialCount};
}

MagnitudeEstimate fiber_ratio_report(double lower_bound_log10, double ellipsoid_log10) {
  if (!std::isfinite(lower_bound_log10) || !std::isfinite(ellipsoid_log10))
    throw std::invalid_argument("ratio inputs must be finite");
  return {ellipsoid_log10 - lower_bound_log10, MagnitudeKind::Ratio};
}

}  // namespace pairtab
