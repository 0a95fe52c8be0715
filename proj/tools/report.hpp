#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pairtab/enumerate.hpp"
#include "pairtab/mle.hpp"
#include "pairtab/sampler.hpp"
#include "pairtab/stats.hpp"
#include "pairtab/table.hpp"

namespace pairtab::cli {

using ordered_json = nlohmann::ordered_json;

ordered_json tool_block();
ordered_json input_block(const std::string& path, const PairTable& t);
ordered_json fit_block(const FittedModel& fm, bool include_table);
ordered_json gof_block(const GofResult& res, const ChainConfig& cfg, ChainTarget target);
ordered_json scan_rows_block(const std::vector<PairScanRow>& rows, bool diagnostics);
ordered_json magnitude_block(const MagnitudeEstimate& m);

// Writes to the path, or stdout when empty.
void emit_text(const std::string& text, const std::string& out_path);

std::string format_sig(double v, int digits);

std::string fit_tsv(const PairTable& data, const FittedModel& fm, int digits);
std::string gof_tsv(const GofResult& res, int digits);
std::string scan_tsv(const std::vector<PairScanRow>& rows, bool diagnostics, int digits);
std::string table_tsv(const PairTable& t);

}  // namespace pairtab::cli
