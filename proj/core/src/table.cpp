#include "pairtab/table.hpp"

namespace pairtab {

PairIndex cell_at(int n, std::size_t flat) {
  // walk rows; row j holds n - j cells
  int j = 1;
  std::size_t row_len = static_cast<std::size_t>(n) - 1;
  while (flat >= row_len) {
    flat -= row_len;
    --row_len;
    ++j;
  }
  return {j, j + 1 + static_cast<int>(flat)};
}

MarginVector margins(const PairTable& t) {
  const int n = t.n();
  MarginVector u(n);
  std::size_t flat = 0;
  for (int j = 1; j <= n; ++j) {
    for (int k = j + 1; k <= n; ++k, ++flat) {
      const std::int64_t v = t[flat];
      u[j] += v;
      u[k] += v;
    }
  }
  return u;
}

std::int64_t total(const PairTable& t) {
  std::int64_t s = 0;
  for (std::int64_t v : t.cells()) s += v;
  return s;
}

void validate(const PairTable& t) {
  for (std::int64_t v : t.cells()) {
    if (v < 0) throw NegativeCellError("table has a negative cell");
  }
}

}  // namespace pairtab
