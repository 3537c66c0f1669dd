#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "kmsgraph/types.hpp"

namespace kmsgraph {

/**
 * Finite directed multigraph with real edge weights.
 *
 * Vertices and edges are referred to by dense indices; the declaration
 * order of vertices is the canonical total order used for tie-breaking
 * (component bases, loop rotations, report ordering).
 */
class Graph {
public:
  struct Edge {
    std::string id;
    int src = -1;
    int dst = -1;
    double weight = 0.0;
  };

  struct EdgeDecl {
    std::string id;
    std::string src;
    std::string dst;
    double weight = 0.0;
  };

  Graph(const std::vector<std::string>& vertex_ids,
        const std::vector<EdgeDecl>& edges,
        const Limits& limits = {});

  int vertex_count() const { return static_cast<int>(vertex_ids_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  const std::string& vertex_id(int v) const { return vertex_ids_.at(v); }
  const Edge& edge(int e) const { return edges_.at(e); }
  const std::vector<std::string>& vertex_ids() const { return vertex_ids_; }
  const std::vector<Edge>& edges() const { return edges_; }

  /** Throws Error(InvalidInput) when the id is unknown. */
  int vertex_index(const std::string& id) const;
  int edge_index(const std::string& id) const;

  const std::vector<int>& out_edges(int v) const { return out_.at(v); }
  const std::vector<int>& in_edges(int v) const { return in_.at(v); }

  bool is_sink(int v) const { return out_.at(v).empty(); }

private:
  std::vector<std::string> vertex_ids_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, int> vertex_lookup_;
  std::unordered_map<std::string, int> edge_lookup_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
};

/**
 * Finite path, stored as an edge index sequence plus an anchor vertex.
 * The anchor is the source; it keeps length-zero paths well defined.
 */
struct Path {
  std::vector<int> edges;
  int base = -1;

  static Path trivial(int vertex) { return Path{{}, vertex}; }

  int length() const { return static_cast<int>(edges.size()); }
  bool empty() const { return edges.empty(); }

  int source() const { return base; }
  int range(const Graph& g) const {
    return edges.empty() ? base : g.edge(edges.back()).dst;
  }

  /** Vertex visited after `pos` edges, pos in [0, length()]. */
  int vertex_at(const Graph& g, int pos) const;

  double weight(const Graph& g) const;

  /** Composability and anchor consistency. */
  bool valid(const Graph& g) const;

  bool operator==(const Path& other) const {
    return base == other.base && edges == other.edges;
  }
};

/** True when `prefix` is an initial segment of `path` (anchors must agree). */
bool is_prefix(const Graph& g, const Path& prefix, const Path& path);

/** Concatenation; requires range(lhs) == source(rhs). */
Path concat(const Graph& g, const Path& lhs, const Path& rhs);

/**
 * Strongly connected set of vertices supporting at least one cycle.
 * `circular` means the induced subgraph is a single simple cycle; `loop`
 * is then that cycle, rotated to start at the least member vertex.
 */
struct Component {
  std::vector<int> members;  // ascending vertex indices
  bool circular = false;
  std::optional<Path> loop;

  int least() const { return members.front(); }
  bool contains(int v) const;
  bool operator==(const Component& other) const { return members == other.members; }
};

/** All components, ordered by least member vertex. */
std::vector<Component> components(const Graph& g);

/** Vertices that can reach `set`, including `set` itself. */
std::vector<int> closure(const Graph& g, const std::vector<int>& set);

/** Vertices reachable from `set`, including `set` itself. */
std::vector<int> hereditary_closure(const Graph& g, const std::vector<int>& set);

/** Vertices with no outgoing edges, ascending. */
std::vector<int> sinks(const Graph& g);

/**
 * All simple cycles lying inside `region`, each rotated to start at its
 * least vertex. Enumeration is capped by limits.max_simple_cycles.
 */
std::vector<Path> simple_cycles(const Graph& g, const std::vector<int>& region,
                                const Limits& limits = {});

/**
 * Sign pattern of simple-cycle weights within a region. Mixed takes
 * precedence over HasZeroLoop when both strict signs occur.
 */
struct SignProfile {
  enum class Tag { NoLoops, AllPositive, AllNegative, HasZeroLoop, Mixed };
  Tag tag = Tag::NoLoops;
  std::optional<Path> witness;  // a zero cycle, or a negative one for Mixed
};

SignProfile sign_profile(const Graph& g, const std::vector<int>& region,
                         const Tolerances& tol = {}, const Limits& limits = {});

}  // namespace kmsgraph
