#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pairtab/enumerate.hpp"
#include "pairtab/errors.hpp"
#include "pairtab/io.hpp"
#include "pairtab/markov.hpp"
#include "pairtab/mle.hpp"
#include "pairtab/sampler.hpp"
#include "pairtab/stats.hpp"
#include "pairtab/table.hpp"
#include "pairtab/version.hpp"
#include "report.hpp"

namespace {

using namespace pairtab;
using cli::ordered_json;

struct CommonOpts {
  std::string path;
  bool matrix = false;
  int n_override = 0;
  std::string out;
  std::string format = "json";
  int digits = 6;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("table", o.path, "input table file")->required();
  cmd->add_flag("--matrix", o.matrix, "read the upper-triangular matrix layout");
  cmd->add_option("--n", o.n_override, "category count override (inferred otherwise)");
  cmd->add_option("--out", o.out, "write the report to a file instead of stdout");
  cmd->add_option("--format", o.format, "report format")
      ->check(CLI::IsMember({"json", "tsv"}));
  cmd->add_option("--digits", o.digits, "significant digits in tsv output")
      ->check(CLI::Range(1, 17));
}

PairTable load_table(const CommonOpts& o) {
  std::optional<int> n;
  if (o.n_override > 0) n = o.n_override;
  return parse_table_file(o.path, o.matrix, n);
}

ModelSpec parse_model(const std::string& text, int n) {
  if (text == "no-proximity") return ModelSpec::no_proximity(n);
  if (text.rfind("pair:", 0) == 0) {
    const std::string rest = text.substr(5);
    const auto comma = rest.find(',');
    if (comma != std::string::npos) {
      try {
        const int r = std::stoi(rest.substr(0, comma));
        const int s = std::stoi(rest.substr(comma + 1));
        return ModelSpec::single_pair(n, r, s);
      } catch (const std::exception&) {
      }
    }
  }
  throw CLI::ValidationError("--model", "expected 'no-proximity' or 'pair:r,s'");
}

ordered_json report_head(const std::string& command, const CommonOpts& o, const PairTable& t) {
  ordered_json j;
  j["tool"] = cli::tool_block();
  j["command"] = command;
  j["input"] = cli::input_block(o.path, t);
  return j;
}

void emit_report(const ordered_json& j, const CommonOpts& o, const std::string& tsv) {
  if (o.format == "tsv") {
    cli::emit_text(tsv, o.out);
  } else {
    cli::emit_text(j.dump(2) + "\n", o.out);
  }
}

int run_fit(const CommonOpts& o, const std::string& model, double tol, std::int64_t max_iter) {
  const PairTable data = load_table(o);
  const ModelSpec spec = parse_model(model, data.n());
  const FitConfig cfg{tol, max_iter};
  const FittedModel fm = fit(spec, data, cfg);

  ordered_json j = report_head("fit", o, data);
  j["config"] = {{"model", model}, {"tol", tol}, {"max_iter", max_iter}};
  j["fit"] = cli::fit_block(fm, true);
  emit_report(j, o, cli::fit_tsv(data, fm, o.digits));
  return 0;
}

int run_gof(const CommonOpts& o, double tol, std::int64_t max_iter, const ChainConfig& ccfg,
            const std::string& target_name, bool exact, std::int64_t cap) {
  const PairTable data = load_table(o);
  const FittedModel fm = fit(ModelSpec::no_proximity(data.n()), data, {tol, max_iter});
  const RealPairTable& fhat = fm.fitted;

  if (exact) {
    const double observed = chi_square_stat(data, fhat);
    const double p = exact_p_value(margins(data), data, fhat, cap);
    ordered_json j = report_head("gof", o, data);
    j["config"] = {{"tol", tol}, {"max_iter", max_iter}, {"cap", cap}};
    j["fit"] = cli::fit_block(fm, false);
    j["gof"] = {{"method", "exact"}, {"observed_stat", observed}, {"p_value", p}};
    emit_report(j, o,
                "method\texact\nobserved_stat\t" + cli::format_sig(observed, o.digits) +
                    "\np_value\t" + cli::format_sig(p, o.digits) + "\n");
    return 0;
  }

  const ChainTarget target =
      target_name == "uniform" ? ChainTarget::Uniform : ChainTarget::Hypergeometric;
  const MarkovBasis basis = generate_basis(data.n());
  const GofResult res = run_chain(
      data, basis, ccfg, [&](const PairTable& t) { return chi_square_stat(t, fhat); }, target);

  ordered_json j = report_head("gof", o, data);
  j["config"] = {{"tol", tol},
                 {"max_iter", max_iter},
                 {"seed", ccfg.seed},
                 {"burn_in", ccfg.resolved_burn_in()},
                 {"thinning", ccfg.thinning},
                 {"samples", ccfg.samples},
                 {"target", target_name}};
  j["fit"] = cli::fit_block(fm, false);
  j["gof"] = cli::gof_block(res, ccfg, target);
  emit_report(j, o, cli::gof_tsv(res, o.digits));
  return 0;
}

int run_scan(const CommonOpts& o, double tol, std::int64_t max_iter, std::int64_t tests,
             const std::string& pair_filter, bool diagnostics) {
  const PairTable data = load_table(o);
  std::vector<PairScanRow> rows = pair_scan(data, {tol, max_iter}, tests);
  if (!pair_filter.empty()) {
    const auto comma = pair_filter.find(',');
    if (comma == std::string::npos)
      throw CLI::ValidationError("--pair", "expected 'r,s'");
    const int r = std::stoi(pair_filter.substr(0, comma));
    const int s = std::stoi(pair_filter.substr(comma + 1));
    std::erase_if(rows, [&](const PairScanRow& row) { return row.pair != PairIndex{r, s}; });
  }

  ordered_json j = report_head("scan", o, data);
  j["config"] = {{"tol", tol},
                 {"max_iter", max_iter},
                 {"tests", tests <= 0 ? static_cast<std::int64_t>(cell_count(data.n())) : tests},
                 {"diagnostics", diagnostics}};
  j["scan"] = cli::scan_rows_block(rows, diagnostics);
  emit_report(j, o, cli::scan_tsv(rows, diagnostics, o.digits));
  return 0;
}

int run_estimate(const CommonOpts& o, double tol, std::int64_t max_iter,
                 const std::string& counts_path, double r2_opt, const std::string& binom,
                 double floor_log10, double upper_log10) {
  const PairTable data = load_table(o);
  const FittedModel fm = fit(ModelSpec::no_proximity(data.n()), data, {tol, max_iter});
  const double r2 = r2_opt > 0 ? r2_opt : chi_square_stat(data, fm.fitted);
  const auto dim = static_cast<std::int64_t>(cell_count(data.n()));

  const MagnitudeEstimate ell = ellipsoid_log_volume(fm.fitted, r2);
  const MagnitudeEstimate corr = lattice_correction_magnitude(r2, dim);

  ordered_json e;
  e["r_squared"] = r2;
  e["dimension"] = dim;
  e["ellipsoid_log10"] = ell.log10_value;
  e["lattice_correction_log10"] = corr.log10_value;

  std::optional<double> subtable;
  if (!counts_path.empty()) {
    std::ifstream in(counts_path);
    if (!in) throw ParseError("cannot open '" + counts_path + "'", 0);
    std::vector<std::string> counts;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      std::string trimmed;
      for (char ch : line)
        if (!std::isspace(static_cast<unsigned char>(ch))) trimmed.push_back(ch);
      if (trimmed.empty()) continue;
      counts.push_back(trimmed);
    }
    if (counts.empty()) throw ParseError("no counts in '" + counts_path + "'", lineno);
    subtable = subtable_lower_bound_from_strings(counts).log10_value;
    e["subtable_lower_bound_log10"] = *subtable;
  }

  std::optional<double> binom_log10;
  if (!binom.empty()) {
    const auto comma = binom.find(',');
    if (comma == std::string::npos) throw CLI::ValidationError("--binom", "expected 'n,k'");
    const std::int64_t bn = std::stoll(binom.substr(0, comma));
    const std::int64_t bk = std::stoll(binom.substr(comma + 1));
    binom_log10 = log_binomial(bn, bk).log10_value;
    e["binomial_log10"] = *binom_log10;
  }

  std::optional<double> composed;
  if (subtable && binom_log10) {
    composed = *subtable + *binom_log10;
    e["composed_lower_bound_log10"] = *composed;
  }

  std::optional<double> lower;
  if (floor_log10 > 0) {
    lower = floor_log10;
  } else if (composed) {
    lower = composed;
  } else if (subtable) {
    lower = subtable;
  }
  if (lower) {
    const double upper = upper_log10 > 0 ? upper_log10 : ell.log10_value;
    const MagnitudeEstimate ratio = fiber_ratio_report(*lower, upper);
    e["ratio_lower_log10"] = *lower;
    e["ratio_upper_log10"] = upper;
    e["ratio_log10"] = ratio.log10_value;
  }

  ordered_json j = report_head("estimate", o, data);
  j["config"] = {{"tol", tol}, {"max_iter", max_iter}, {"r2", r2},
                 {"counts", counts_path}, {"binom", binom},
                 {"floor", floor_log10}, {"upper_log10", upper_log10}};
  j["estimate"] = e;

  std::string tsv;
  for (auto& [key, value] : e.items()) {
    tsv += key + "\t" + (value.is_number() ? cli::format_sig(value.get<double>(), o.digits)
                                           : value.dump()) + "\n";
  }
  emit_report(j, o, tsv);
  return 0;
}

int run_normal_form(const CommonOpts& o) {
  const PairTable data = load_table(o);
  const NormalFormResult res = normal_form(data);

  ordered_json j = report_head("normal-form", o, data);
  j["config"] = ordered_json::object();
  ordered_json cells = ordered_json::array();
  const int n = res.table.n();
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      if (res.table(a, b) != 0) cells.push_back({a, b, res.table(a, b)});
  j["normal_form"] = {{"steps", res.steps}, {"cells", cells}};

  emit_report(j, o, "# steps\t" + std::to_string(res.steps) + "\n" + cli::table_tsv(res.table));
  return 0;
}

void emit_error(const CommonOpts& o, const std::string& type, const std::string& message) {
  ordered_json j;
  j["tool"] = cli::tool_block();
  j["error"] = {{"type", type}, {"message", message}};
  try {
    cli::emit_text(j.dump(2) + "\n", o.out);
  } catch (const std::exception&) {
    std::cout << j.dump(2) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact conditional inference on pairwise-exchange count tables"};
  app.set_version_flag("--version", std::string(kToolName) + " " + kVersion);
  app.require_subcommand(1);

  CommonOpts common;
  std::string model = "no-proximity";
  double tol = 1e-8;
  std::int64_t max_iter = 100000;
  ChainConfig ccfg;
  std::string target_name = "hypergeometric";
  std::int64_t tests = 0;
  std::string pair_filter;
  bool diagnostics = false;
  std::string counts_path, binom;
  double r2_opt = 0.0, floor_log10 = 0.0, upper_log10 = 0.0;
  bool exact = false;
  std::int64_t cap = 1000000;

  CLI::App* fit_cmd = app.add_subcommand("fit", "fit a model by iterative proportional scaling");
  add_common(fit_cmd, common);
  fit_cmd->add_option("--model", model, "no-proximity (default) or pair:r,s");
  fit_cmd->add_option("--tol", tol, "margin convergence tolerance");
  fit_cmd->add_option("--max-iter", max_iter, "sweep budget")->check(CLI::PositiveNumber);

  CLI::App* gof_cmd =
      app.add_subcommand("gof", "goodness-of-fit p-value by a Markov-basis random walk");
  add_common(gof_cmd, common);
  gof_cmd->add_option("--tol", tol, "margin convergence tolerance");
  gof_cmd->add_option("--max-iter", max_iter, "sweep budget")->check(CLI::PositiveNumber);
  gof_cmd->add_option("--seed", ccfg.seed, "random seed");
  gof_cmd->add_option("--burn-in", ccfg.burn_in, "steps before sampling (default: one thinning)");
  gof_cmd->add_option("--thin", ccfg.thinning, "steps between retained samples")
      ->check(CLI::PositiveNumber);
  gof_cmd->add_option("--samples", ccfg.samples, "retained sample count")
      ->check(CLI::PositiveNumber);
  gof_cmd->add_option("--target", target_name, "stationary law of the walk")
      ->check(CLI::IsMember({"hypergeometric", "uniform"}));
  gof_cmd->add_flag("--stream", ccfg.record_stream, "include all sampled statistics in the report");
  gof_cmd->add_flag("--exact", exact, "enumerate the fiber instead of sampling it");
  gof_cmd->add_option("--cap", cap, "enumeration cap for --exact")->check(CLI::PositiveNumber);

  CLI::App* scan_cmd = app.add_subcommand("scan", "likelihood-ratio test of every pair");
  add_common(scan_cmd, common);
  scan_cmd->add_option("--tol", tol, "margin convergence tolerance");
  scan_cmd->add_option("--max-iter", max_iter, "sweep budget")->check(CLI::PositiveNumber);
  scan_cmd->add_option("--tests", tests, "Bonferroni multiplier (default: number of pairs)");
  scan_cmd->add_option("--pair", pair_filter, "report a single pair r,s");
  scan_cmd->add_flag("--diagnostics", diagnostics, "add cross-check columns");

  CLI::App* est_cmd = app.add_subcommand("estimate", "fiber-size and ellipsoid magnitudes");
  add_common(est_cmd, common);
  est_cmd->add_option("--tol", tol, "margin convergence tolerance");
  est_cmd->add_option("--max-iter", max_iter, "sweep budget")->check(CLI::PositiveNumber);
  est_cmd->add_option("--counts", counts_path, "file of subtable lattice-point counts");
  est_cmd->add_option("--r2", r2_opt, "ellipsoid radius^2 (default: observed chi-square)");
  est_cmd->add_option("--binom", binom, "move-combination count n,k");
  est_cmd->add_option("--floor", floor_log10, "conservative lower-bound floor (log10)");
  est_cmd->add_option("--upper-log10", upper_log10, "override the ratio's upper bound (log10)");

  CLI::App* nf_cmd = app.add_subcommand("normal-form", "reduce to the fiber's sorted table");
  add_common(nf_cmd, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (fit_cmd->parsed()) return run_fit(common, model, tol, max_iter);
    if (gof_cmd->parsed()) return run_gof(common, tol, max_iter, ccfg, target_name, exact, cap);
    if (scan_cmd->parsed())
      return run_scan(common, tol, max_iter, tests, pair_filter, diagnostics);
    if (est_cmd->parsed())
      return run_estimate(common, tol, max_iter, counts_path, r2_opt, binom, floor_log10,
                          upper_log10);
    if (nf_cmd->parsed()) return run_normal_form(common);
  } catch (const ParseError& e) {
    emit_error(common, "parse", e.what());
    return 2;
  } catch (const CLI::ValidationError& e) {
    emit_error(common, "usage", e.what());
    return 2;
  } catch (const ZeroMarginError& e) {
    emit_error(common, "boundary", e.what());
    return 3;
  } catch (const FiberTooLargeError& e) {
    emit_error(common, "cap", e.what());
    return 4;
  } catch (const std::invalid_argument& e) {
    emit_error(common, "usage", e.what());
    return 2;
  } catch (const std::exception& e) {
    emit_error(common, "internal", e.what());
    return 1;
  }
  return 0;
}
