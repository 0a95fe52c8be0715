#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string>

#include "pairtab/io.hpp"
#include "pairtab/table.hpp"

namespace pairtab::test {

inline std::string data_dir() { return PAIRTAB_DATA_DIR; }
inline std::string test_data_dir() { return PAIRTAB_TEST_DATA_DIR; }
inline std::string cli_bin() { return PAIRTAB_CLI_BIN; }

inline const PairTable& lymphocyte_table() {
  static const PairTable t = parse_table_file(data_dir() + "/lymphocyte_etca.csv");
  return t;
}

struct Cell {
  int j;
  int k;
  std::int64_t v;
};

inline PairTable make_table(int n, std::initializer_list<Cell> cells) {
  PairTable t(n);
  for (const Cell& c : cells) t(c.j, c.k) = c.v;
  return t;
}

inline PairTable random_table(std::mt19937_64& rng, int n, int max_count) {
  PairTable t(n);
  std::uniform_int_distribution<int> d(0, max_count);
  for (std::size_t c = 0; c < t.size(); ++c) t[c] = d(rng);
  return t;
}

// Random table whose margins are all >= 1 (fittable) and <= max_margin.
inline PairTable random_fittable_table(std::mt19937_64& rng, int n, int max_count,
                                       std::int64_t max_margin) {
  for (;;) {
    PairTable t = random_table(rng, n, max_count);
    const MarginVector u = margins(t);
    bool ok = true;
    for (int j = 1; j <= n; ++j) {
      if (u[j] < 1 || u[j] > max_margin) ok = false;
    }
    if (ok) return t;
  }
}

inline std::uint64_t table_key(const PairTable& t) {
  std::uint64_t h = 1469598103934665603ULL;
  for (std::int64_t v : t.cells()) {
    h ^= static_cast<std::uint64_t>(v);
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace pairtab::test
