#include "pairtab/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <vector>

#include "pairtab/errors.hpp"

namespace pairtab {

namespace {

bool parse_int(std::string_view tok, std::int64_t& out) {
  // trim surrounding whitespace
  while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.front()))) tok.remove_prefix(1);
  while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.back()))) tok.remove_suffix(1);
  if (tok.empty()) return false;
  const auto* end = tok.data() + tok.size();
  const auto res = std::from_chars(tok.data(), end, out);
  return res.ec == std::errc() && res.ptr == end;
}

struct RawCell {
  int a;
  int b;
  std::int64_t count;
  int line;
};

PairTable parse_long(std::istream& in, std::optional<int> n_override) {
  std::vector<RawCell> entries;
  std::string line;
  int lineno = 0;
  bool header_seen = false;
  int max_cat = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv(line);
    if (const auto hash = sv.find('#'); hash != std::string_view::npos) sv = sv.substr(0, hash);
    bool blank = true;
    for (char ch : sv) {
      if (!std::isspace(static_cast<unsigned char>(ch))) blank = false;
    }
    if (blank) continue;
    if (!header_seen) {
      header_seen = true;
      bool alpha = false;
      for (char ch : sv) {
        if (std::isalpha(static_cast<unsigned char>(ch))) alpha = true;
      }
      if (alpha) continue;  // header row
    }
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = sv.find(',', start);
      fields.push_back(sv.substr(start, comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (fields.size() != 3) throw ParseError("expected 3 comma-separated fields", lineno);
    std::int64_t a, b, count;
    if (!parse_int(fields[0], a) || !parse_int(fields[1], b) || !parse_int(fields[2], count))
      throw ParseError("non-integer field", lineno);
    if (a < 1 || b < 1) throw ParseError("categories are 1-based", lineno);
    if (a == b) throw ParseError("diagonal cells are not allowed", lineno);
    if (a > b) throw ParseError("cells must satisfy chr_a < chr_b", lineno);
    if (count < 0) throw ParseError("negative count", lineno);
    entries.push_back({static_cast<int>(a), static_cast<int>(b), count, lineno});
    max_cat = std::max(max_cat, static_cast<int>(b));
  }
  int n = n_override.value_or(max_cat);
  if (n_override && max_cat > *n_override)
    throw ParseError("cell category exceeds the declared n", entries.back().line);
  if (n < 3) throw ParseError("need at least 3 categories", lineno);

  PairTable t(n);
  std::map<std::size_t, int> seen;
  for (const RawCell& e : entries) {
    const std::size_t flat = flat_index(n, {e.a, e.b});
    if (const auto it = seen.find(flat); it != seen.end())
      throw ParseError("duplicate cell, first listed on line " + std::to_string(it->second),
                       e.line);
    seen.emplace(flat, e.line);
    t[flat] = e.count;
  }
  return t;
}

PairTable parse_matrix(std::istream& in, std::optional<int> n_override) {
  std::vector<std::vector<std::int64_t>> rows;
  std::vector<int> row_lines;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv(line);
    if (const auto hash = sv.find('#'); hash != std::string_view::npos) sv = sv.substr(0, hash);
    std::istringstream iss{std::string(sv)};
    std::vector<std::int64_t> vals;
    std::string tok;
    while (iss >> tok) {
      std::int64_t v;
      if (!parse_int(tok, v)) throw ParseError("non-integer entry", lineno);
      if (v < 0) throw ParseError("negative count", lineno);
      vals.push_back(v);
    }
    if (vals.empty()) continue;
    rows.push_back(std::move(vals));
    row_lines.push_back(lineno);
  }
  if (rows.empty()) throw ParseError("no rows found", lineno);
  const int n = n_override.value_or(static_cast<int>(rows[0].size()) + 1);
  if (n < 3) throw ParseError("need at least 3 categories", row_lines[0]);
  if (rows.size() != static_cast<std::size_t>(n) - 1)
    throw ParseError("expected " + std::to_string(n - 1) + " rows", row_lines.back());
  PairTable t(n);
  for (int j = 1; j <= n - 1; ++j) {
    const auto& row = rows[static_cast<std::size_t>(j) - 1];
    if (row.size() != static_cast<std::size_t>(n - j))
      throw ParseError("row " + std::to_string(j) + " must have " + std::to_string(n - j) +
                           " entries",
                       row_lines[static_cast<std::size_t>(j) - 1]);
    for (int k = j + 1; k <= n; ++k) t(j, k) = row[static_cast<std::size_t>(k - j) - 1];
  }
  return t;
}

}  // namespace

PairTable parse_table(std::istream& in, bool matrix_format, std::optional<int> n_override) {
  return matrix_format ? parse_matrix(in, n_override) : parse_long(in, n_override);
}

PairTable parse_table_file(const std::string& path, bool matrix_format,
                           std::optional<int> n_override) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  return parse_table(in, matrix_format, n_override);
}

void serialize_table(std::ostream& out, const PairTable& t) {
  out << "chr_a,chr_b,count\n";
  const int n = t.n();
  for (int j = 1; j <= n; ++j) {
    for (int k = j + 1; k <= n; ++k) {
      out << j << ',' << k << ',' << t(j, k) << '\n';
    }
  }
}

}  // namespace pairtab
