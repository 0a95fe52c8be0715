#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pairtab/version.hpp"

namespace pairtab::cli {

namespace {

const char* kind_name(MagnitudeKind k) {
  switch (k) {
    case MagnitudeKind::SubtableLowerBound: return "subtable_lower_bound";
    case MagnitudeKind::EllipsoidVolume: return "ellipsoid_volume";
    case MagnitudeKind::LatticeCorrection: return "lattice_correction";
    case MagnitudeKind::BinomialCount: return "binomial_count";
    case MagnitudeKind::Ratio: return "ratio";
  }
  return "unknown";
}

ordered_json nan_safe(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

}  // namespace

ordered_json tool_block() {
  return {{"name", kToolName}, {"version", kVersion}};
}

ordered_json input_block(const std::string& path, const PairTable& t) {
  const MarginVector u = margins(t);
  std::vector<std::int64_t> uv(u.u.begin() + 1, u.u.end());
  return {{"path", path}, {"n", t.n()}, {"total", total(t)}, {"margins", uv}};
}

ordered_json fit_block(const FittedModel& fm, bool include_table) {
  ordered_json j;
  j["model"] = fm.spec.kind == ModelKind::NoProximity
                   ? "no-proximity"
                   : "pair:" + std::to_string(fm.spec.pair.j) + "," +
                         std::to_string(fm.spec.pair.k);
  j["converged"] = fm.converged;
  j["iterations"] = fm.iterations;
  j["max_margin_violation"] = fm.max_margin_violation;
  j["loglik"] = fm.loglik;
  j["theta"] = std::vector<double>(fm.theta.begin() + 1, fm.theta.end());
  if (fm.mu) j["mu"] = *fm.mu;
  if (include_table) {
    ordered_json cells = ordered_json::array();
    const int n = fm.fitted.n();
    for (int a = 1; a <= n; ++a)
      for (int b = a + 1; b <= n; ++b) cells.push_back({a, b, fm.fitted(a, b)});
    j["fitted"] = std::move(cells);
  }
  return j;
}

ordered_json gof_block(const GofResult& res, const ChainConfig& cfg, ChainTarget target) {
  ordered_json j;
  j["target"] = target == ChainTarget::Hypergeometric ? "hypergeometric" : "uniform";
  j["observed_stat"] = res.observed_stat;
  j["p_value"] = res.p_value;
  j["exceed_count"] = res.exceed_count;
  j["samples"] = res.sampled.count;
  j["sampled_stats"] = {{"count", res.sampled.count},
                        {"min", res.sampled.min},
                        {"max", res.sampled.max},
                        {"mean", res.sampled.mean}};
  j["steps_total"] = res.steps_total;
  j["accepted"] = res.accepted;
  j["acceptance_rate"] =
      static_cast<double>(res.accepted) / static_cast<double>(res.steps_total);
  j["seed"] = cfg.seed;
  if (!res.stream.empty()) j["stream"] = res.stream;
  return j;
}

ordered_json scan_rows_block(const std::vector<PairScanRow>& rows, bool diagnostics) {
  ordered_json arr = ordered_json::array();
  for (const PairScanRow& r : rows) {
    ordered_json row;
    row["pair"] = {r.pair.j, r.pair.k};
    row["statistic"] = nan_safe(r.statistic);
    row["p_raw"] = nan_safe(r.p_raw);
    row["p_adjusted"] = nan_safe(r.p_adjusted);
    row["boundary"] = r.boundary;
    if (!r.note.empty()) row["note"] = r.note;
    if (diagnostics) {
      row["g2_observed"] = nan_safe(r.g2_observed);
      row["pearson_cell"] = nan_safe(r.pearson_cell);
    }
    arr.push_back(std::move(row));
  }
  return arr;
}

ordered_json magnitude_block(const MagnitudeEstimate& m) {
  return {{"kind", kind_name(m.kind)}, {"log10", m.log10_value}};
}

void emit_text(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw Error("cannot open output file '" + out_path + "'");
  out << text;
}

std::string format_sig(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return buf;
}

std::string fit_tsv(const PairTable& data, const FittedModel& fm, int digits) {
  std::ostringstream os;
  os << "# model\t" << (fm.spec.kind == ModelKind::NoProximity ? "no-proximity" : "single-pair")
     << "\n# converged\t" << (fm.converged ? "yes" : "no") << "\n# iterations\t" << fm.iterations
     << "\n# loglik\t" << format_sig(fm.loglik, digits) << "\n";
  os << "chr_a\tchr_b\tobserved\tfitted\n";
  const int n = data.n();
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      os << a << '\t' << b << '\t' << data(a, b) << '\t' << format_sig(fm.fitted(a, b), digits)
         << '\n';
  return os.str();
}

std::string gof_tsv(const GofResult& res, int digits) {
  std::ostringstream os;
  os << "observed_stat\t" << format_sig(res.observed_stat, digits) << '\n'
     << "p_value\t" << format_sig(res.p_value, digits) << '\n'
     << "exceed_count\t" << res.exceed_count << '\n'
     << "samples\t" << res.sampled.count << '\n'
     << "sampled_min\t" << format_sig(res.sampled.min, digits) << '\n'
     << "sampled_mean\t" << format_sig(res.sampled.mean, digits) << '\n'
     << "sampled_max\t" << format_sig(res.sampled.max, digits) << '\n'
     << "steps_total\t" << res.steps_total << '\n'
     << "accepted\t" << res.accepted << '\n';
  return os.str();
}

std::string scan_tsv(const std::vector<PairScanRow>& rows, bool diagnostics, int digits) {
  std::ostringstream os;
  os << "chr_a\tchr_b\tstatistic\tp_raw\tp_adjusted\tboundary";
  if (diagnostics) os << "\tg2_observed\tpearson_cell";
  os << '\n';
  for (const PairScanRow& r : rows) {
    os << r.pair.j << '\t' << r.pair.k << '\t';
    if (r.boundary) {
      os << "-\t-\t-\tyes";
      if (diagnostics) os << "\t-\t" << format_sig(r.pearson_cell, digits);
    } else {
      os << format_sig(r.statistic, digits) << '\t' << format_sig(r.p_raw, digits) << '\t'
         << format_sig(r.p_adjusted, digits) << "\tno";
      if (diagnostics)
        os << '\t' << format_sig(r.g2_observed, digits) << '\t'
           << format_sig(r.pearson_cell, digits);
    }
    os << '\n';
  }
  return os.str();
}

std::string table_tsv(const PairTable& t) {
  std::ostringstream os;
  os << "chr_a\tchr_b\tcount\n";
  const int n = t.n();
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b) os << a << '\t' << b << '\t' << t(a, b) << '\n';
  return os.str();
}

}  // namespace pairtab::cli
