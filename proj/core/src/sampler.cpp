#include "pairtab/sampler.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace pairtab {

std::uint64_t bounded_uniform(Rng& rng, std::uint64_t n) {
  const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % n;
  }
}

double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

const MarkovMove& propose(const PairTable& t, const MarkovBasis& basis, Rng& rng) {
  if (t.n() != basis.n) throw std::invalid_argument("basis/table category counts differ");
  return basis.moves[bounded_uniform(rng, basis.moves.size())];
}

double acceptance_ratio(const PairTable& t, const MarkovMove& m) {
  // pi(t') / pi(t) for pi proportional to 1 / prod cells!; the factorials
  // collapse to a four-factor product over the touched cells.
  double num = 1.0, den = 1.0;
  for (const auto& e : m.entries()) {
    const auto v = t(e.cell);
    if (e.delta > 0) {
      den *= static_cast<double>(v + 1);
    } else {
      if (v == 0) return 0.0;
      num *= static_cast<double>(v);
    }
  }
  return num / den;
}

GofResult run_chain(const PairTable& start, const MarkovBasis& basis, const ChainConfig& cfg,
                    const std::function<double(const PairTable&)>& stat, ChainTarget target) {
  if (start.n() != basis.n) throw std::invalid_argument("basis/table category counts differ");
  if (cfg.thinning < 1 || cfg.samples < 1)
    throw std::invalid_argument("invalid chain configuration");

  Rng rng(cfg.seed);
  PairTable state = start;
  const std::size_t move_count = basis.packed.size();

  GofResult res;
  res.observed_stat = stat(start);
  res.steps_total = cfg.resolved_burn_in() + cfg.samples * cfg.thinning;
  if (cfg.record_stream) res.stream.reserve(static_cast<std::size_t>(cfg.samples));

  double sum = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  // ">= observed" must include exact ties; statistics of tied tables can
  // differ by round-off because their cells accumulate in different orders
  const double tie_eps = 1e-9 * (1.0 + std::abs(res.observed_stat));

  const std::int64_t burn = cfg.resolved_burn_in();
  std::int64_t recorded = 0;
  for (std::int64_t step = 1; step <= res.steps_total; ++step) {
    const auto& p = basis.packed[bounded_uniform(rng, move_count)];
    const std::int64_t a = state[p[2]], b = state[p[3]];
    if (a > 0 && b > 0) {
      bool accept = true;
      if (target == ChainTarget::Hypergeometric) {
        const double ratio = (static_cast<double>(a) * static_cast<double>(b)) /
                             (static_cast<double>(state[p[0]] + 1) *
                              static_cast<double>(state[p[1]] + 1));
        accept = ratio >= 1.0 || uniform01(rng) < ratio;
      }
      if (accept) {
        state[p[0]] += 1;
        state[p[1]] += 1;
        state[p[2]] -= 1;
        state[p[3]] -= 1;
        ++res.accepted;
      }
    }
    if (step > burn && (step - burn) % cfg.thinning == 0) {
      const double s = stat(state);
      ++recorded;
      sum += s;
      lo = std::min(lo, s);
      hi = std::max(hi, s);
      if (s >= res.observed_stat - tie_eps) ++res.exceed_count;
      if (cfg.record_stream) res.stream.push_back(s);
    }
  }

  res.sampled = {recorded, lo, hi, sum / static_cast<double>(recorded)};
  res.p_value = static_cast<double>(res.exceed_count) / static_cast<double>(recorded);
  return res;
}

double estimate_p_value(std::span<const double> sampled, double observed) {
  if (sampled.empty()) throw std::invalid_argument("no sampled statistics");
  const double tie_eps = 1e-9 * (1.0 + std::abs(observed));
  std::int64_t exceed = 0;
  for (double s : sampled) {
    if (s >= observed - tie_eps) ++exceed;
  }
  return static_cast<double>(exceed) / static_cast<double>(sampled.size());
}

}  // namespace pairtab
