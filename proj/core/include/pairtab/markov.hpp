#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "pairtab/table.hpp"

namespace pairtab {

enum class MoveVariant : std::uint8_t { A, B };

// Degree-2 margin-preserving move on a 4-subset i<j<k<l.
//   variant A, sign +1:  +1 at (i,j),(k,l); -1 at (i,k),(j,l)
//   variant B, sign +1:  +1 at (i,l),(j,k); -1 at (i,k),(j,l)
// sign -1 negates all entries.
struct MarkovMove {
  std::array<std::uint16_t, 4> quad{};  // i<j<k<l, 1-based
  MoveVariant variant = MoveVariant::A;
  std::int8_t sign = 1;

  struct Entry {
    PairIndex cell;
    int delta;
  };
  std::array<Entry, 4> entries() const;
};

// The full basis: both variants and both signs for every 4-subset,
// 4 * C(n,4) moves. `packed[m]` holds the flat offsets of move m's cells
// ordered so the first two receive +1 and the last two receive -1.
struct MarkovBasis {
  int n = 0;
  std::vector<MarkovMove> moves;
  std::vector<std::array<std::int32_t, 4>> packed;
};

MarkovBasis generate_basis(int n);  // throws TooSmallError for n < 4

bool move_applicable(const PairTable& t, const MarkovMove& m);
PairTable apply_move(const PairTable& t, const MarkovMove& m);  // throws NegativeCellError

// Reduction to the unique sorted table of the fiber: while any 4-subset has
// both "aligned" cells (i,j),(k,l) positive or both "nested" cells
// (i,l),(j,k) positive, a basis move replaces them with the "crossing" cells
// (i,k),(j,l). steps counts unit basis moves (bulk reductions count their
// multiplicity).
struct NormalFormResult {
  PairTable table;
  std::int64_t steps = 0;
};
NormalFormResult normal_form(const PairTable& t);

// True iff the move graph on the enumerated fiber of u is connected.
// Throws FiberTooLargeError when enumeration exceeds `cap` tables.
bool connectivity_check(const MarginVector& u, const MarkovBasis& basis,
                        std::int64_t cap = 1'000'000);

}  // namespace pairtab
