#include "cexpde_cli/cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>

#include "cexpde/errors.hpp"
#include "cexpde_cli/corpus.hpp"
#include "cexpde_cli/json_writer.hpp"
#include "cexpde_cli/report.hpp"

namespace cexpde::cli {

namespace {

constexpr int kUsageError = 1;
constexpr int kCorpusMismatch = 4;

Box parse_box(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw CLI::ValidationError("--box", "expected lo:hi");
  Box box;
  try {
    std::size_t used = 0;
    const std::string lo = text.substr(0, colon);
    const std::string hi = text.substr(colon + 1);
    box.lo = std::stod(lo, &used);
    if (used != lo.size()) throw std::invalid_argument(lo);
    box.hi = std::stod(hi, &used);
    if (used != hi.size()) throw std::invalid_argument(hi);
  } catch (const std::logic_error&) {
    throw CLI::ValidationError("--box", "expected lo:hi with numeric bounds, got '" + text + "'");
  }
  if (!(box.lo < box.hi)) throw CLI::ValidationError("--box", "lo must be smaller than hi");
  return box;
}

void report_parse_error(const ParseError& e, const std::string& text, std::ostream& err) {
  err << "error: " << e.what() << "\n  " << text << "\n  "
      << std::string(std::min(e.offset(), text.size()), ' ') << "^\n";
}

bool emit(const std::string& text, const std::string& path, std::ostream& out, std::ostream& err) {
  if (path.empty()) {
    out << text << '\n';
    return true;
  }
  std::ofstream file(path, std::ios::binary);
  file << text << '\n';
  if (!file) {
    err << "error: cannot write " << path << '\n';
    return false;
  }
  return true;
}

}  // namespace

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Complete-exceptionality and Monge-Ampere classification of second-order PDEs", "cexpde"};
  app.set_version_flag("--version", std::string(tool_version()));
  app.require_subcommand(1);

  ClassifyOptions copt;
  std::string box_text = "-2:2";
  bool json_flag = false;
  bool pretty = false;
  std::string classify_out;
  auto* classify_cmd = app.add_subcommand("classify", "Classify a single PDE F = 0");
  classify_cmd->add_option("--pde", copt.pde, "Expression F in the jet variables x1, u, u1, u11, ...")->required();
  classify_cmd->add_option("--n", copt.n, "Number of independent variables")->required()->check(CLI::Range(2, 64));
  classify_cmd->add_option("--seed", copt.seed, "Sampling seed")->capture_default_str();
  classify_cmd->add_option("--samples", copt.samples, "Sample count")->check(CLI::Range(1, 1000000))->capture_default_str();
  classify_cmd->add_option("--box", box_text, "Sampling range lo:hi for every coordinate")->capture_default_str();
  classify_cmd->add_option("--tol", copt.tol, "Relative residual tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  auto* json_opt = classify_cmd->add_flag("--json", json_flag, "Compact JSON (default)");
  classify_cmd->add_flag("--pretty", pretty, "Indented JSON")->excludes(json_opt);
  classify_cmd->add_option("--out", classify_out, "Write the report to this path");
  classify_cmd->add_flag("--timing", copt.timing, "Include wall-clock duration in the report");

  std::string corpus_file;
  std::uint64_t corpus_seed = 42;
  std::string corpus_out;
  auto* corpus_cmd = app.add_subcommand("corpus", "Classify every entry of a corpus file and compare");
  corpus_cmd->add_option("--file", corpus_file, "Corpus JSON file")->required();
  corpus_cmd->add_option("--seed", corpus_seed, "Global seed")->capture_default_str();
  corpus_cmd->add_option("--out", corpus_out, "Write the aggregate report to this path");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (*classify_cmd) copt.box = parse_box(box_text);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kUsageError;
  }

  if (*classify_cmd) {
    try {
      Classification c = classify_pde(copt);
      if (!emit(write_json(c.report, pretty ? 2 : -1), classify_out, out, err)) return kUsageError;
      if (c.outcome == Outcome::Disagreement) err << "error: " << c.overall << " between modules\n";
      return exit_code(c.outcome);
    } catch (const ParseError& e) {
      report_parse_error(e, copt.pde, err);
      return kUsageError;
    } catch (const Error& e) {
      err << "error: " << e.what() << '\n';
      return kUsageError;
    }
  }

  try {
    const auto entries = load_corpus(corpus_file);
    const CorpusRun run = run_corpus(entries, corpus_seed);
    if (!emit(write_json(run.report), corpus_out, out, err)) return kUsageError;
    for (const auto& d : run.diffs) err << "mismatch: " << d << '\n';
    return run.all_match() ? 0 : kCorpusMismatch;
  } catch (const CorpusError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
}

}  // namespace cexpde::cli
