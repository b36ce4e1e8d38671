#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "cexpde/expr.hpp"
#include "cexpde/monge_ampere.hpp"
#include "cexpde/symbol.hpp"

namespace cexpde::cli {

std::string_view tool_version();

inline constexpr std::string_view kReportSchemaVersion = "cexpde.classification_report.v1";
inline constexpr std::string_view kVerdictExceptional = "completely exceptional (Monge–Ampère)";
inline constexpr std::string_view kVerdictNotExceptional = "not exceptional";
inline constexpr std::string_view kVerdictInconclusive = "inconclusive";
inline constexpr std::string_view kVerdictDisagreement = "criterion disagreement";

struct ClassifyOptions {
  std::string pde;
  int n = 2;
  std::uint64_t seed = 42;
  int samples = 64;
  Box box{};
  double tol = kDefaultTolerance;
  bool timing = false;
};

enum class Outcome { Consistent, Inconclusive, Disagreement };

struct Classification {
  nlohmann::json report;
  Outcome outcome = Outcome::Inconclusive;
  std::string overall;
  std::optional<Exceptionality> exceptionality;
  std::optional<MAClass> ma_class;
};

/// Runs every module on the parsed PDE. Throws ParseError for bad input.
Classification classify_pde(const ClassifyOptions& options);

/// 0 consistent, 2 inconclusive, 3 disagreement.
int exit_code(Outcome outcome);

}  // namespace cexpde::cli
