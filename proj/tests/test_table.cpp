#include <random>

#include "doctest.h"
#include "pairtab/markov.hpp"
#include "pairtab/table.hpp"
#include "test_support.hpp"

using namespace pairtab;
using namespace pairtab::test;

TEST_SUITE("table") {

TEST_CASE("flat index round trip") {
  for (int n : {3, 4, 7, 22}) {
    std::size_t flat = 0;
    for (int j = 1; j <= n; ++j)
      for (int k = j + 1; k <= n; ++k, ++flat) {
        CHECK(flat_index(n, {j, k}) == flat);
        CHECK(cell_at(n, flat) == PairIndex{j, k});
      }
    CHECK(flat == cell_count(n));
  }
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(PairTable(2), std::invalid_argument);
  PairTable t(4);
  CHECK_THROWS_AS(t(2, 2), std::out_of_range);
  CHECK_THROWS_AS(t(3, 2), std::out_of_range);
  CHECK_THROWS_AS(t(1, 5), std::out_of_range);
  CHECK_THROWS_AS(t(0, 1), std::out_of_range);
}

TEST_CASE("margins of the bundled table match its published totals") {
  const MarginVector u = margins(lymphocyte_table());
  CHECK(u[1] == 541);
  CHECK(u[19] == 156);
  CHECK(u[22] == 193);
}

TEST_CASE("margins of simple tables") {
  CHECK(margins(PairTable(4)) == MarginVector(4));
  const PairTable t = make_table(4, {{1, 2, 3}, {3, 4, 5}});
  const MarginVector u = margins(t);
  CHECK(u[1] == 3);
  CHECK(u[2] == 3);
  CHECK(u[3] == 5);
  CHECK(u[4] == 5);
}

TEST_CASE("total") {
  CHECK(total(PairTable(5)) == 0);
  CHECK(total(make_table(4, {{1, 2, 3}, {3, 4, 5}})) == 8);

  const PairTable& data = lymphocyte_table();
  const MarginVector u = margins(data);
  std::int64_t usum = 0;
  for (int j = 1; j <= data.n(); ++j) usum += u[j];
  CHECK(2 * total(data) == usum);
}

TEST_CASE("apply_move swaps between matchings") {
  const PairTable t = make_table(4, {{1, 3, 1}, {2, 4, 1}});
  const MarkovMove crossing_to_aligned{{1, 2, 3, 4}, MoveVariant::A, 1};
  const PairTable out = apply_move(t, crossing_to_aligned);
  CHECK(out == make_table(4, {{1, 2, 1}, {3, 4, 1}}));
  CHECK(margins(out) == margins(t));
}

TEST_CASE("apply_move round trips with the negated move") {
  std::mt19937_64 rng(7);
  const MarkovBasis basis = generate_basis(5);
  for (int trial = 0; trial < 50; ++trial) {
    const PairTable t = random_table(rng, 5, 4);
    for (const MarkovMove& m : basis.moves) {
      if (!move_applicable(t, m)) continue;
      MarkovMove neg = m;
      neg.sign = -m.sign;
      CHECK(apply_move(apply_move(t, m), neg) == t);
      break;
    }
  }
}

TEST_CASE("apply_move refuses to go negative") {
  const PairTable zero(4);
  const MarkovBasis basis = generate_basis(4);
  for (const MarkovMove& m : basis.moves) {
    CHECK(!move_applicable(zero, m));
    CHECK_THROWS_AS(apply_move(zero, m), NegativeCellError);
  }
}

TEST_CASE("margins are preserved by every applicable move") {
  std::mt19937_64 rng(11);
  for (int n : {4, 6, 8}) {
    const MarkovBasis basis = generate_basis(n);
    for (int trial = 0; trial < 20; ++trial) {
      const PairTable t = random_table(rng, n, 3);
      const MarginVector u = margins(t);
      for (const MarkovMove& m : basis.moves) {
        if (move_applicable(t, m)) CHECK(margins(apply_move(t, m)) == u);
      }
    }
  }
}

TEST_CASE("margins are linear in the table") {
  std::mt19937_64 rng(13);
  const PairTable a = random_table(rng, 6, 5);
  const PairTable b = random_table(rng, 6, 5);
  PairTable sum(6);
  for (std::size_t c = 0; c < sum.size(); ++c) sum[c] = a[c] + b[c];
  const MarginVector ua = margins(a), ub = margins(b), us = margins(sum);
  for (int j = 1; j <= 6; ++j) CHECK(us[j] == ua[j] + ub[j]);
}

}  // TEST_SUITE
