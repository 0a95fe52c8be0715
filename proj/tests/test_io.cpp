#include <random>
#include <sstream>

#include "doctest.h"
#include "pairtab/io.hpp"
#include "test_support.hpp"

using namespace pairtab;
using namespace pairtab::test;

TEST_SUITE("io") {

TEST_CASE("long format parses cells and defaults the rest to zero") {
  std::istringstream in("chr_a,chr_b,count\n1,2,44\n2,4,7\n");
  const PairTable t = parse_table(in);
  CHECK(t.n() == 4);
  CHECK(t(1, 2) == 44);
  CHECK(t(2, 4) == 7);
  CHECK(t(1, 3) == 0);
  CHECK(t(3, 4) == 0);
}

TEST_CASE("long format accepts comments, blank lines and an n override") {
  std::istringstream in("# comment\nchr_a,chr_b,count\n\n1,2,3\n");
  const PairTable t = parse_table(in, false, 5);
  CHECK(t.n() == 5);
  CHECK(t(1, 2) == 3);
  CHECK(t(4, 5) == 0);
}

TEST_CASE("long format rejects malformed rows with line numbers") {
  auto parse_str = [](const std::string& s) {
    std::istringstream in(s);
    return parse_table(in);
  };
  CHECK_THROWS_WITH_AS(parse_str("chr_a,chr_b,count\n5,5,3\n"),
                       doctest::Contains("diagonal"), ParseError);
  CHECK_THROWS_WITH_AS(parse_str("chr_a,chr_b,count\n4,2,3\n"),
                       doctest::Contains("chr_a < chr_b"), ParseError);
  CHECK_THROWS_WITH_AS(parse_str("chr_a,chr_b,count\n1,2,-3\n"),
                       doctest::Contains("negative"), ParseError);
  CHECK_THROWS_WITH_AS(parse_str("chr_a,chr_b,count\n1,2,3.5\n"),
                       doctest::Contains("non-integer"), ParseError);
  CHECK_THROWS_WITH_AS(parse_str("chr_a,chr_b,count\n1,2,3\n2,3,1\n1,2,4\n"),
                       doctest::Contains("duplicate"), ParseError);
  CHECK_THROWS_WITH_AS(parse_str("chr_a,chr_b,count\n1,2\n"),
                       doctest::Contains("3 comma-separated"), ParseError);

  try {
    parse_str("chr_a,chr_b,count\n1,2,3\n5,5,1\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }

  std::istringstream in("chr_a,chr_b,count\n1,9,3\n");
  CHECK_THROWS_WITH_AS(parse_table(in, false, 4), doctest::Contains("exceeds"), ParseError);
}

TEST_CASE("matrix format matches the long format on the bundled data") {
  const PairTable a = parse_table_file(data_dir() + "/lymphocyte_etca.csv");
  const PairTable b = parse_table_file(data_dir() + "/lymphocyte_etca_matrix.txt", true);
  CHECK(a == b);
}

TEST_CASE("matrix format validates row lengths") {
  std::istringstream good("1 2 3\n4 5\n6\n");
  const PairTable t = parse_table(good, true);
  CHECK(t.n() == 4);
  CHECK(t(1, 4) == 3);
  CHECK(t(3, 4) == 6);

  std::istringstream bad("1 2 3\n4\n6\n");
  CHECK_THROWS_AS(parse_table(bad, true), ParseError);
  std::istringstream empty("# nothing\n");
  CHECK_THROWS_AS(parse_table(empty, true), ParseError);
}

TEST_CASE("serialize-parse round trip") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 6);
    const PairTable t = random_table(rng, n, 9);
    std::ostringstream out;
    serialize_table(out, t);
    std::istringstream in(out.str());
    CHECK(parse_table(in) == t);
  }

  const PairTable& data = lymphocyte_table();
  std::ostringstream out;
  serialize_table(out, data);
  std::istringstream in(out.str());
  CHECK(parse_table(in) == data);
}

TEST_CASE("missing files raise parse errors") {
  CHECK_THROWS_AS(parse_table_file("/nonexistent/table.csv"), ParseError);
}

}  // TEST_SUITE
