#pragma once

#include <string>

#include "json.hpp"
#include "kmsgraph/graph.hpp"
#include "kmsgraph/types.hpp"

namespace kmsgraph::report {

nlohmann::ordered_json analyze_json(const Graph& g, const Tolerances& tol = {},
                                    const Limits& limits = {});
std::string analyze_text(const Graph& g, const Tolerances& tol = {},
                         const Limits& limits = {});

nlohmann::ordered_json classify_json(const Graph& g, double beta,
                                     const Tolerances& tol = {},
                                     const Limits& limits = {});

nlohmann::ordered_json spectrum_json(const Graph& g, const Tolerances& tol = {},
                                     const Limits& limits = {});
std::string spectrum_ascii(const Graph& g, const Tolerances& tol = {},
                           const Limits& limits = {});
std::string spectrum_svg(const Graph& g, const Tolerances& tol = {},
                         const Limits& limits = {});

nlohmann::ordered_json trace_json(const Graph& g, const Tolerances& tol = {},
                                  const Limits& limits = {});

nlohmann::ordered_json ground_json(const Graph& g, const Tolerances& tol = {},
                                   const Limits& limits = {});

}  // namespace kmsgraph::report
