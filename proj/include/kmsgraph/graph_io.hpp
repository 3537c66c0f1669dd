#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "kmsgraph/graph.hpp"
#include "kmsgraph/types.hpp"

namespace kmsgraph {

/**
 * Declarative description of a weighted graph together with named weight
 * profiles. A profile reweights the edges that carry an override for it and
 * leaves the rest at their base weight.
 */
struct GraphDocument {
  struct Edge {
    std::string id;
    std::string src;
    std::string dst;
    double weight = 1.0;
    std::map<std::string, double> overrides;
  };

  std::vector<std::string> vertices;
  std::vector<std::string> profiles;
  std::vector<Edge> edges;

  /** Instantiates the graph under the named profile ("" = base weights). */
  Graph build(const std::string& profile = "", const Limits& limits = {}) const;

  bool has_profile(const std::string& name) const;

  nlohmann::ordered_json to_json() const;
  static GraphDocument from_json(const nlohmann::ordered_json& j);

  /** Canonical line-oriented form; parses back to an identical document. */
  std::string dump_text() const;

  /** Accepts either the line-oriented form or its JSON equivalent. */
  static GraphDocument parse(const std::string& text);
  static GraphDocument load(const std::string& path);
};

}  // namespace kmsgraph
