#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace cexpde::cli {

/// Entry point of the `cexpde` tool; `args` excludes the program name.
/// Exit codes: 0 ok, 1 usage/parse/input error, 2 inconclusive,
/// 3 criterion disagreement, 4 corpus mismatch.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace cexpde::cli
