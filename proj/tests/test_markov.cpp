#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "pairtab/markov.hpp"
#include "test_support.hpp"

using namespace pairtab;
using namespace pairtab::test;

TEST_SUITE("markov") {

TEST_CASE("basis sizes") {
  CHECK(generate_basis(4).moves.size() == 4);
  CHECK(generate_basis(5).moves.size() == 20);
  CHECK(generate_basis(22).moves.size() == 29260);
  CHECK_THROWS_AS(generate_basis(3), TooSmallError);
}

TEST_CASE("moves are enumerated once and lie in the margin kernel") {
  const MarkovBasis basis = generate_basis(5);
  std::set<std::vector<std::int64_t>> distinct;
  const PairTable big(5, 10);
  const MarginVector u = margins(big);
  for (const MarkovMove& m : basis.moves) {
    const PairTable moved = apply_move(big, m);
    CHECK(margins(moved) == u);
    std::vector<std::int64_t> delta;
    for (std::size_t c = 0; c < moved.size(); ++c) delta.push_back(moved[c] - big[c]);
    CHECK(distinct.insert(delta).second);
  }
}

TEST_CASE("packed offsets agree with the move entries") {
  const MarkovBasis basis = generate_basis(6);
  for (std::size_t i = 0; i < basis.moves.size(); ++i) {
    const auto entries = basis.moves[i].entries();
    std::set<std::int32_t> plus, minus;
    for (const auto& e : entries) {
      const auto off = static_cast<std::int32_t>(flat_index(6, e.cell));
      (e.delta > 0 ? plus : minus).insert(off);
    }
    CHECK(plus == std::set<std::int32_t>{basis.packed[i][0], basis.packed[i][1]});
    CHECK(minus == std::set<std::int32_t>{basis.packed[i][2], basis.packed[i][3]});
  }
}

TEST_CASE("normal form sorts an aligned matching") {
  const PairTable aligned = make_table(4, {{1, 2, 1}, {3, 4, 1}});
  const NormalFormResult res = normal_form(aligned);
  CHECK(res.table == make_table(4, {{1, 3, 1}, {2, 4, 1}}));
  CHECK(res.steps == 1);
  CHECK(margins(res.table) == margins(aligned));
}

TEST_CASE("normal form sorts a nested matching in one move") {
  const NormalFormResult res = normal_form(make_table(4, {{1, 4, 1}, {2, 3, 1}}));
  CHECK(res.table == make_table(4, {{1, 3, 1}, {2, 4, 1}}));
  CHECK(res.steps == 1);
}

TEST_CASE("a sorted table is already the normal form") {
  const PairTable sorted = make_table(4, {{1, 3, 1}, {2, 4, 1}});
  const NormalFormResult res = normal_form(sorted);
  CHECK(res.table == sorted);
  CHECK(res.steps == 0);

  // stars cannot be reduced either: every two support edges share a vertex
  const PairTable star = make_table(5, {{1, 2, 3}, {1, 3, 2}, {1, 4, 1}, {1, 5, 4}});
  CHECK(normal_form(star).steps == 0);
}

TEST_CASE("bulk reductions count unit moves") {
  const NormalFormResult res = normal_form(make_table(4, {{1, 2, 2}, {3, 4, 2}}));
  CHECK(res.steps == 2);
  CHECK(res.table == make_table(4, {{1, 3, 2}, {2, 4, 2}}));
}

TEST_CASE("normal form is idempotent and preserves the fiber") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 5);
    const PairTable t = random_table(rng, n, 3);
    const NormalFormResult first = normal_form(t);
    CHECK(margins(first.table) == margins(t));
    const NormalFormResult second = normal_form(first.table);
    CHECK(second.steps == 0);
    CHECK(second.table == first.table);
  }
}

TEST_CASE("randomized reduction orders land on the same table") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 5);
    const PairTable t = random_table(rng, n, 3);
    const PairTable canonical = normal_form(t).table;
    CHECK(random_order_reduce(t, rng) == canonical);
    CHECK(random_order_reduce(t, rng) == canonical);
  }
}

TEST_CASE("connectivity on small fibers") {
  const MarkovBasis basis4 = generate_basis(4);

  MarginVector u(4);
  u[1] = u[2] = u[3] = u[4] = 1;
  CHECK(connectivity_check(u, basis4));

  MarginVector u2(4);
  u2[1] = u2[2] = u2[3] = u2[4] = 2;
  CHECK(connectivity_check(u2, basis4));
  CHECK_THROWS_AS(connectivity_check(u2, basis4, 2), FiberTooLargeError);

  std::mt19937_64 rng(41);
  const MarkovBasis basis5 = generate_basis(5);
  for (int trial = 0; trial < 10; ++trial) {
    const PairTable t = random_table(rng, 5, 2);
    CHECK(connectivity_check(margins(t), basis5));
  }
}

}  // TEST_SUITE
