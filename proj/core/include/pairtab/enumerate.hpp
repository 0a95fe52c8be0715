#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "pairtab/table.hpp"

namespace pairtab {

// Complete list of the fiber's tables with normalized hypergeometric weights
// (proportional to 1 / prod cells!).
struct FiberEnumeration {
  MarginVector margins;
  std::optional<std::pair<PairIndex, std::int64_t>> fixed_cell;
  std::vector<PairTable> tables;
  std::vector<double> weights;
};

FiberEnumeration enumerate_fiber(const MarginVector& u,
                                 std::optional<std::pair<PairIndex, std::int64_t>> fixed = {},
                                 std::int64_t cap = 1'000'000);

// Exact conditional tail probability: total weight of fiber tables whose
// chi-square against fhat is >= the observed table's.
double exact_p_value(const MarginVector& u, const PairTable& observed, const RealPairTable& fhat,
                     std::int64_t cap = 1'000'000);

enum class MagnitudeKind {
  SubtableLowerBound,
  EllipsoidVolume,
  LatticeCorrection,
  BinomialCount,
  Ratio,
};

// Order-of-magnitude quantity carried in log10 space.
struct MagnitudeEstimate {
  double log10_value = 0.0;
  MagnitudeKind kind = MagnitudeKind::Ratio;
};

// log10 of a positive integer given as a decimal string (arbitrary length).
double log10_from_decimal_string(std::string_view digits);

// log10 of the product of the given counts (as log10 values).
MagnitudeEstimate subtable_lower_bound(std::span<const double> log10_counts);
MagnitudeEstimate subtable_lower_bound_from_strings(std::span<const std::string> counts);

// Volume of { x : sum x_c^2 / fhat_c <= r^2 } in log10, dimension = #cells.
MagnitudeEstimate ellipsoid_log_volume(std::span<const double> fhat_cells, double r_squared);
MagnitudeEstimate ellipsoid_log_volume(const RealPairTable& fhat, double r_squared);

// log10 of r^(n/2), the lattice-point correction term's scale.
MagnitudeEstimate lattice_correction_magnitude(double r_squared, std::int64_t n);

// log10 of C(n, k) via log-gamma.
MagnitudeEstimate log_binomial(std::int64_t n, std::int64_t k);

// log10 of (ellipsoid bound / fiber lower bound).
MagnitudeEstimate fiber_ratio_report(double lower_bound_log10, double ellipsoid_log10);

}  // namespace pairtab
