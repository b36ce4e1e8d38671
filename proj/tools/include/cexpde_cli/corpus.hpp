#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "cexpde/errors.hpp"

namespace cexpde::cli {

inline constexpr std::string_view kCorpusReportSchemaVersion = "cexpde.corpus_report.v1";

struct CorpusEntry {
  std::string name;
  int n = 2;
  std::string expression;
  std::string expected_classification;
  bool expected_exceptional = false;
  std::string notes;
};

/// Missing file, malformed JSON or a document that violates the corpus
/// schema.
class CorpusError : public Error {
 public:
  using Error::Error;
};

std::vector<CorpusEntry> parse_corpus(const nlohmann::json& doc);
std::vector<CorpusEntry> load_corpus(const std::filesystem::path& path);

struct CorpusRun {
  nlohmann::json report;
  /// One line per mismatching entry.
  std::vector<std::string> diffs;
  bool all_match() const { return diffs.empty(); }
};

/// Classifies every entry with the seed derived from (seed, name). Entries
/// run concurrently; the report keeps corpus order.
CorpusRun run_corpus(const std::vector<CorpusEntry>& entries, std::uint64_t seed);

}  // namespace cexpde::cli
