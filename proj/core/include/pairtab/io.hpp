#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "pairtab/table.hpp"

namespace pairtab {

// Long format: header "chr_a,chr_b,count", one 1-indexed cell per line with
// a < b; unlisted cells are zero. Matrix format: row j holds the
// whitespace-separated counts f(j,j+1) .. f(j,n); '#' starts a comment.
// n is inferred (largest category / first row width + 1) unless overridden.
PairTable parse_table(std::istream& in, bool matrix_format = false,
                      std::optional<int> n_override = {});
PairTable parse_table_file(const std::string& path, bool matrix_format = false,
                           std::optional<int> n_override = {});

// Canonical long format with every cell listed, including zeros.
void serialize_table(std::ostream& out, const PairTable& t);

}  // namespace pairtab
