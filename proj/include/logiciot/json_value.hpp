#pragma once

#include <json.hpp>

#include "logiciot/value.hpp"

namespace logiciot
{

using ordered_json = nlohmann::ordered_json;

/// Exact integers within +/-2^53 are written as JSON integers, every other
/// number as a JSON float.
ordered_json to_json(const Value & v);

/// Scalars only; arrays and objects throw std::invalid_argument.
Value from_json(const nlohmann::ordered_json & j);
Value from_json(const nlohmann::json & j);

}  // namespace logiciot
