#include "cexpde_cli/corpus.hpp"

#include <fstream>
#include <future>
#include <set>

#include "cexpde/random.hpp"
#include "cexpde_cli/report.hpp"

namespace cexpde::cli {

namespace {

using nlohmann::json;

const std::set<std::string>& classification_names() {
  static const std::set<std::string> names = {"linear", "quasi-linear", "monge-ampere", "non-ma"};
  return names;
}

[[noreturn]] void violation(std::size_t index, const std::string& what) {
  throw CorpusError("corpus entry " + std::to_string(index) + ": " + what);
}

std::string require_string(const json& e, std::size_t index, const char* key) {
  if (!e.contains(key) || !e[key].is_string()) violation(index, std::string("missing string field '") + key + "'");
  return e[key].get<std::string>();
}

json entry_result(const CorpusEntry& entry, std::uint64_t global_seed) {
  ClassifyOptions opts;
  opts.pde = entry.expression;
  opts.n = entry.n;
  opts.seed = derive_seed(global_seed, entry.name);
  json result = {{"name", entry.name},
                 {"expected", {{"classification", entry.expected_classification},
                               {"exceptional", entry.expected_exceptional}}}};
  std::vector<std::string> diff;
  try {
    Classification c = classify_pde(opts);
    const std::string cls = c.ma_class ? std::string(to_string(*c.ma_class)) : "unavailable";
    const bool exceptional = c.exceptionality && *c.exceptionality == Exceptionality::Exceptional;
    result["actual"] = {{"classification", cls},
                        {"exceptional", exceptional},
                        {"overall", c.overall}};
    if (cls != entry.expected_classification)
      diff.push_back("classification: expected " + entry.expected_classification + ", got " + cls);
    if (!c.exceptionality || *c.exceptionality == Exceptionality::Inconclusive)
      diff.push_back("exceptional: verdict inconclusive");
    else if (exceptional != entry.expected_exceptional)
      diff.push_back(std::string("exceptional: expected ") + (entry.expected_exceptional ? "true" : "false") +
                     ", got " + (exceptional ? "true" : "false"));
    if (c.outcome == Outcome::Disagreement) diff.push_back("criteria disagree: " + c.overall);
    result["report"] = std::move(c.report);
  } catch (const std::exception& e) {
    result["actual"] = nullptr;
    diff.push_back(std::string("error: ") + e.what());
  }
  result["match"] = diff.empty();
  result["diff"] = diff;
  return result;
}

}  // namespace

std::vector<CorpusEntry> parse_corpus(const json& doc) {
  if (!doc.is_array()) throw CorpusError("corpus must be a JSON array of entries");
  if (doc.empty()) throw CorpusError("corpus is empty");
  std::vector<CorpusEntry> entries;
  std::set<std::string> names;
  static const std::set<std::string> known = {"name", "n", "expression", "expected_classification",
                                              "expected_exceptional", "notes"};
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const json& e = doc[i];
    if (!e.is_object()) violation(i, "not an object");
    for (auto it = e.begin(); it != e.end(); ++it)
      if (!known.count(it.key())) violation(i, "unknown field '" + it.key() + "'");
    CorpusEntry entry;
    entry.name = require_string(e, i, "name");
    if (entry.name.empty()) violation(i, "empty name");
    if (!names.insert(entry.name).second) violation(i, "duplicate name '" + entry.name + "'");
    if (!e.contains("n") || !e["n"].is_number_integer() || e["n"].get<int>() < 2)
      violation(i, "'n' must be an integer >= 2");
    entry.n = e["n"].get<int>();
    entry.expression = require_string(e, i, "expression");
    entry.expected_classification = require_string(e, i, "expected_classification");
    if (!classification_names().count(entry.expected_classification))
      violation(i, "unknown classification '" + entry.expected_classification + "'");
    if (!e.contains("expected_exceptional") || !e["expected_exceptional"].is_boolean())
      violation(i, "missing boolean field 'expected_exceptional'");
    entry.expected_exceptional = e["expected_exceptional"].get<bool>();
    if (e.contains("notes")) entry.notes = require_string(e, i, "notes");
    try {
      parse(entry.expression, entry.n);
    } catch (const ParseError& err) {
      violation(i, "expression does not parse: " + std::string(err.what()));
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

std::vector<CorpusEntry> load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CorpusError("cannot open corpus file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw CorpusError("corpus file is not valid JSON: " + std::string(e.what()));
  }
  return parse_corpus(doc);
}

CorpusRun run_corpus(const std::vector<CorpusEntry>& entries, std::uint64_t seed) {
  std::vector<std::future<json>> pending;
  pending.reserve(entries.size());
  for (const auto& entry : entries)
    pending.push_back(std::async(std::launch::async, entry_result, std::cref(entry), seed));

  CorpusRun run;
  json results = json::array();
  int matched = 0;
  for (auto& f : pending) {
    json r = f.get();
    if (r["match"].get<bool>()) {
      ++matched;
    } else {
      for (const auto& d : r["diff"]) run.diffs.push_back(r["name"].get<std::string>() + ": " + d.get<std::string>());
    }
    results.push_back(std::move(r));
  }
  run.report = {{"schema", std::string(kCorpusReportSchemaVersion)},
                {"tool", {{"name", "cexpde"}, {"version", std::string(tool_version())}}},
                {"seed", seed},
                {"entries", std::move(results)},
                {"summary", {{"total", static_cast<int>(entries.size())},
                             {"matched", matched},
                             {"mismatched", static_cast<int>(entries.size()) - matched}}}};
  return run;
}

}  // namespace cexpde::cli
