#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "imcf/classifier.hpp"

namespace imcf::cli {

using Json = nlohmann::ordered_json;

std::string_view to_string(Branch b);

/// {type, x, y, left_limit, right_limit, extremum?, vprime_subtype?} plus the
/// derived vprime_shape and table1 row.
Json classification_json(const Classification& c, const Parameters& p);

/// Parsed back by tests; the inverse of the core fields of classification_json.
Classification classification_from_json(const Json& j);

}  // namespace imcf::cli
