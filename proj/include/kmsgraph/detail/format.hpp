#pragma once

#include <string>

#include "json.hpp"

namespace kmsgraph::detail {

/** Shortest decimal form that parses back to the same double. */
inline std::string format_double(double v) {
  return nlohmann::ordered_json(v).dump();
}

}  // namespace kmsgraph::detail
