#pragma once

#include <string>

#include <json.hpp>

namespace cexpde::cli {

/// Deterministic serialisation: object keys sorted, floating point numbers
/// with 17 significant digits, non-finite numbers as null. indent < 0 gives
/// the compact form.
std::string write_json(const nlohmann::json& value, int indent = -1);

}  // namespace cexpde::cli
