#pragma once

#include <string>

#include "json.hpp"

namespace idstat {

/// Byte-stable JSON: keys sorted, floats with 17 significant digits, two-space indent.
std::string canonical_dump(const nlohmann::json& j, int indent = 2);

/// "%.17g" for a double; non-finite values become "inf", "-inf" or "nan".
std::string format_double(double x);

}  // namespace idstat
