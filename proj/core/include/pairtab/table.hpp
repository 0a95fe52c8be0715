#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "pairtab/errors.hpp"

namespace pairtab {

// Unordered pair of distinct categories, stored canonically as 1 <= j < k <= n.
struct PairIndex {
  int j = 0;
  int k = 0;
  friend auto operator<=>(const PairIndex&, const PairIndex&) = default;
};

inline std::size_t cell_count(int n) {
  return static_cast<std::size_t>(n) * (n - 1) / 2;
}

inline bool valid_pair(PairIndex p, int n) {
  return 1 <= p.j && p.j < p.k && p.k <= n;
}

// Row-major offset of (j,k) within the upper triangle.
inline std::size_t flat_index(int n, PairIndex p) {
  return static_cast<std::size_t>(p.j - 1) * n - static_cast<std::size_t>(p.j) * (p.j + 1) / 2 +
         p.k - 1;
}

// Inverse of flat_index.
PairIndex cell_at(int n, std::size_t flat);

// Dense upper-triangular grid over n categories, diagonal excluded.
template <typename T>
class PairGrid {
 public:
  PairGrid() = default;
  explicit PairGrid(int n, T init = T{}) : n_(n), cells_(cell_count(n), init) {
    if (n < 3) throw std::invalid_argument("PairGrid requires at least 3 categories");
  }

  int n() const { return n_; }
  std::size_t size() const { return cells_.size(); }

  T operator()(int j, int k) const { return cells_[checked(j, k)]; }
  T& operator()(int j, int k) { return cells_[checked(j, k)]; }
  T operator()(PairIndex p) const { return cells_[checked(p.j, p.k)]; }
  T& operator()(PairIndex p) { return cells_[checked(p.j, p.k)]; }

  T operator[](std::size_t flat) const { return cells_[flat]; }
  T& operator[](std::size_t flat) { return cells_[flat]; }

  std::span<const T> cells() const { return cells_; }

  friend bool operator==(const PairGrid&, const PairGrid&) = default;

 private:
  std::size_t checked(int j, int k) const {
    if (!valid_pair({j, k}, n_)) throw std::out_of_range("cell index out of range");
    return flat_index(n_, {j, k});
  }

  int n_ = 0;
  std::vector<T> cells_;
};

using PairTable = PairGrid<std::int64_t>;
using RealPairTable = PairGrid<double>;

// Per-category totals u_k; always has even sum for a valid table.
struct MarginVector {
  std::vector<std::int64_t> u;  // u[0] unused; 1-based like categories

  explicit MarginVector(int n = 0) : u(static_cast<std::size_t>(n) + 1, 0) {}
  int n() const { return static_cast<int>(u.size()) - 1; }
  std::int64_t operator[](int k) const { return u[static_cast<std::size_t>(k)]; }
  std::int64_t& operator[](int k) { return u[static_cast<std::size_t>(k)]; }
  friend bool operator==(const MarginVector&, const MarginVector&) = default;
};

MarginVector margins(const PairTable& t);
std::int64_t total(const PairTable& t);

// Nonnegativity check used when ingesting tables from files.
void validate(const PairTable& t);

}  // namespace pairtab
