#include "pairtab/markov.hpp"

#include <map>
#include <string>

#include "pairtab/enumerate.hpp"
#include "pairtab/errors.hpp"

namespace pairtab {

std::array<MarkovMove::Entry, 4> MarkovMove::entries() const {
  const int i = quad[0], j = quad[1], k = quad[2], l = quad[3];
  const int s = sign;
  if (variant == MoveVariant::A) {
    return {{{{i, j}, s}, {{k, l}, s}, {{i, k}, -s}, {{j, l}, -s}}};
  }
  return {{{{i, l}, s}, {{j, k}, s}, {{i, k}, -s}, {{j, l}, -s}}};
}

MarkovBasis generate_basis(int n) {
  if (n < 4) throw TooSmallError("Markov basis needs at least 4 categories");
  MarkovBasis basis;
  basis.n = n;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int k = j + 1; k <= n; ++k)
        for (int l = k + 1; l <= n; ++l) {
          const auto quad = std::array<std::uint16_t, 4>{
              static_cast<std::uint16_t>(i), static_cast<std::uint16_t>(j),
              static_cast<std::uint16_t>(k), static_cast<std::uint16_t>(l)};
          for (MoveVariant v : {MoveVariant::A, MoveVariant::B}) {
            for (int s : {1, -1}) {
              basis.moves.push_back({quad, v, static_cast<std::int8_t>(s)});
            }
          }
        }
  basis.packed.reserve(basis.moves.size());
  for (const MarkovMove& m : basis.moves) {
    std::array<std::int32_t, 4> p{};
    int plus = 0, minus = 2;
    for (const auto& e : m.entries()) {
      const auto off = static_cast<std::int32_t>(flat_index(n, e.cell));
      p[e.delta > 0 ? plus++ : minus++] = off;
    }
    basis.packed.push_back(p);
  }
  return basis;
}

bool move_applicable(const PairTable& t, const MarkovMove& m) {
  for (const auto& e : m.entries()) {
    if (t(e.cell) + e.delta < 0) return false;
  }
  return true;
}

PairTable apply_move(const PairTable& t, const MarkovMove& m) {
  PairTable out = t;
  for (const auto& e : m.entries()) {
    auto& cell = out(e.cell);
    cell += e.delta;
    if (cell < 0) throw NegativeCellError("move drives a cell negative");
  }
  return out;
}

NormalFormResult normal_form(const PairTable& t) {
  const int n = t.n();
  NormalFormResult res{t, 0};
  PairTable& x = res.table;
  if (n < 4) return res;

  // Reduce toward the sorted pattern: for every i<j<k<l, replace positive
  // aligned cells (i,j),(k,l) or nested cells (i,l),(j,k) with the crossing
  // cells (i,k),(j,l). Terminates because sum t*(k-j) strictly grows on
  // aligned reductions and is invariant on nested ones, which strictly
  // shrink sum t*(k-j)^2.
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 1; i <= n - 3; ++i)
      for (int j = i + 1; j <= n - 2; ++j)
        for (int k = j + 1; k <= n - 1; ++k)
          for (int l = k + 1; l <= n; ++l) {
            const std::size_t ij = flat_index(n, {i, j}), kl = flat_index(n, {k, l}),
                              ik = flat_index(n, {i, k}), jl = flat_index(n, {j, l}),
                              il = flat_index(n, {i, l}), jk = flat_index(n, {j, k});
            std::int64_t c = std::min(x[ij], x[kl]);
            if (c > 0) {
              x[ij] -= c;
              x[kl] -= c;
              x[ik] += c;
              x[jl] += c;
              res.steps += c;
              changed = true;
            }
            c = std::min(x[il], x[jk]);
            if (c > 0) {
              x[il] -= c;
              x[jk] -= c;
              x[ik] += c;
              x[jl] += c;
              res.steps += c;
              changed = true;
            }
          }
  }
  return res;
}

bool connectivity_check(const MarginVector& u, const MarkovBasis& basis, std::int64_t cap) {
  const FiberEnumeration fiber = enumerate_fiber(u, {}, cap);
  const std::size_t count = fiber.tables.size();
  if (count <= 1) return true;

  std::map<std::vector<std::int64_t>, std::size_t> index;
  for (std::size_t i = 0; i < count; ++i) {
    const auto cells = fiber.tables[i].cells();
    index.emplace(std::vector<std::int64_t>(cells.begin(), cells.end()), i);
  }

  std::vector<std::size_t> component(count);
  for (std::size_t i = 0; i < count; ++i) component[i] = i;
  auto find = [&](std::size_t a) {
    while (component[a] != a) a = component[a] = component[component[a]];
    return a;
  };

  std::vector<std::int64_t> scratch;
  for (std::size_t i = 0; i < count; ++i) {
    const auto cells = fiber.tables[i].cells();
    for (const auto& p : basis.packed) {
      if (cells[p[2]] == 0 || cells[p[3]] == 0) continue;
      scratch.assign(cells.begin(), cells.end());
      scratch[p[0]] += 1;
      scratch[p[1]] += 1;
      scratch[p[2]] -= 1;
      scratch[p[3]] -= 1;
      const auto it = index.find(scratch);
      if (it != index.end()) {
        const std::size_t a = find(i), b = find(it->second);
        if (a != b) component[a] = b;
      }
    }
  }
  const std::size_t root = find(0);
  for (std::size_t i = 1; i < count; ++i) {
    if (find(i) != root) return false;
  }
  return true;
}

}  // namespace pairtab
