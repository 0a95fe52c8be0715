#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "pairtab/markov.hpp"
#include "pairtab/table.hpp"

namespace pairtab {

using Rng = std::mt19937_64;

// Unbiased draw from [0, n) by rejection; deterministic across platforms.
std::uint64_t bounded_uniform(Rng& rng, std::uint64_t n);
// Uniform double in [0, 1) built from the top 53 bits.
double uniform01(Rng& rng);

struct ChainConfig {
  std::uint64_t seed = 1;
  std::int64_t burn_in = -1;  // negative: one thinning interval
  std::int64_t thinning = 30000;
  std::int64_t samples = 10000;
  bool record_stream = false;

  std::int64_t resolved_burn_in() const { return burn_in < 0 ? thinning : burn_in; }
};

// Stationary law of the walk. Hypergeometric (pi(t) proportional to
// 1/prod t(cell)!) is the conditional distribution the exact test is defined
// under; Uniform weights every fiber table equally.
enum class ChainTarget { Hypergeometric, Uniform };

struct SampleSummary {
  std::int64_t count = 0;
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
};

struct GofResult {
  double observed_stat = 0.0;
  SampleSummary sampled;
  std::vector<double> stream;  // filled only when cfg.record_stream
  double p_value = 0.0;
  std::int64_t exceed_count = 0;
  std::int64_t steps_total = 0;
  std::int64_t accepted = 0;
};

// Uniform draw from the basis (symmetric proposal: each move and its
// negation are equally likely).
const MarkovMove& propose(const PairTable& t, const MarkovBasis& basis, Rng& rng);

// pi(t + m) / pi(t) for the hypergeometric target; 0 when the move would
// drive a cell negative.
double acceptance_ratio(const PairTable& t, const MarkovMove& m);

// Metropolis-Hastings walk started at `start`. Runs
// burn_in + samples * thinning proposal steps (rejections advance the step
// counter), records stat(state) every `thinning` steps after burn-in, and
// estimates the p-value as the fraction of recorded statistics >= stat(start).
GofResult run_chain(const PairTable& start, const MarkovBasis& basis, const ChainConfig& cfg,
                    const std::function<double(const PairTable&)>& stat,
                    ChainTarget target = ChainTarget::Hypergeometric);

double estimate_p_value(std::span<const double> sampled, double observed);

}  // namespace pairtab
