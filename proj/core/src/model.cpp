#include "pairtab/model.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>

namespace pairtab {

ModelSpec ModelSpec::no_proximity(int n) {
  if (n < 3) throw std::invalid_argument("model requires at least 3 categories");
  return {n, ModelKind::NoProximity, {}};
}

ModelSpec ModelSpec::single_pair(int n, int r, int s) {
  if (n < 3) throw std::invalid_argument("model requires at least 3 categories");
  if (!valid_pair({r, s}, n)) throw std::invalid_argument("invalid pair (r,s)");
  return {n, ModelKind::SinglePair, {r, s}};
}

DesignMatrix design_matrix(const ModelSpec& spec) {
  const int n = spec.n;
  const int cols = static_cast<int>(cell_count(n));
  const int rows = spec.kind == ModelKind::SinglePair ? n + 1 : n;
  DesignMatrix m{rows, cols, std::vector<std::int8_t>(static_cast<std::size_t>(rows) * cols, 0)};
  int c = 0;
  for (int j = 1; j <= n; ++j) {
    for (int k = j + 1; k <= n; ++k, ++c) {
      m.entries[static_cast<std::size_t>(j - 1) * cols + c] = 1;
      m.entries[static_cast<std::size_t>(k - 1) * cols + c] = 1;
    }
  }
  if (spec.kind == ModelKind::SinglePair) {
    const std::size_t col = flat_index(n, spec.pair);
    m.entries[static_cast<std::size_t>(n) * cols + col] = 1;
  }
  return m;
}

SufficientStatistic sufficient_statistic(const ModelSpec& spec, const PairTable& t) {
  if (spec.n != t.n()) throw std::invalid_argument("model/table category counts differ");
  SufficientStatistic s{margins(t), {}};
  if (spec.kind == ModelKind::SinglePair) {
    s.fixed_cell = {spec.pair, t(spec.pair)};
  }
  return s;
}

int matrix_rank(const DesignMatrix& m) {
  using boost::multiprecision::cpp_int;
  const int rows = m.rows;
  const int cols = m.cols;
  std::vector<std::vector<cpp_int>> a(rows, std::vector<cpp_int>(cols));
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) a[r][c] = m.at(r, c);

  // fraction-free (Bareiss) row echelon
  int rank = 0;
  cpp_int prev = 1;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r) {
      if (a[r][col] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(a[rank], a[pivot]);
    const cpp_int p = a[rank][col];
    for (int r = rank + 1; r < rows; ++r) {
      const cpp_int f = a[r][col];
      for (int c = col; c < cols; ++c) {
        a[r][c] = (a[r][c] * p - a[rank][c] * f) / prev;
      }
    }
    prev = p;
    ++rank;
  }
  return rank;
}

int model_rank(const ModelSpec& spec) {
  if (spec.n < 3) throw std::invalid_argument("model requires at least 3 categories");
  return matrix_rank(design_matrix(spec));
}

}  // namespace pairtab
