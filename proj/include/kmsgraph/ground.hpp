#pragma once

#include <limits>
#include <string>
#include <vector>

#include "kmsgraph/graph.hpp"
#include "kmsgraph/types.hpp"

namespace kmsgraph {

/**
 * Least weight of any finite path ending at each vertex, capped at zero by
 * the trivial path. Vertices fed by a negative-weight cycle have no least
 * weight and are flagged minus_inf.
 */
struct Potentials {
  std::vector<double> value;
  std::vector<char> minus_inf;

  bool finite(int v) const { return !minus_inf[v]; }
  double at(int v) const {
    return minus_inf[v] ? -std::numeric_limits<double>::infinity() : value[v];
  }
};

Potentials potentials(const Graph& g, const Tolerances& tol = {});

/**
 * Edges that realize the potential of their range, plus the vertices whose
 * potential is exactly zero (the admissible sources of minimizing paths).
 */
struct TightSubgraph {
  std::vector<int> start_vertices;
  std::vector<int> tight_edges;
  std::vector<char> edge_tight;

  bool is_tight(int e) const { return edge_tight[e] != 0; }
};

TightSubgraph tight_subgraph(const Graph& g, const Potentials& pot,
                             const Tolerances& tol = {});

/**
 * A point of the path-space boundary: either a finite path ending at a sink
 * or an eventually periodic infinite path prefix.cycle.cycle...
 */
struct BoundaryPath {
  Path prefix;
  Path cycle;
  bool infinite = false;

  static BoundaryPath ending_at_sink(Path p) { return {std::move(p), {}, false}; }
  static BoundaryPath periodic(Path prefix, Path cycle) {
    return {std::move(prefix), std::move(cycle), true};
  }
};

/**
 * Whether the boundary path minimizes weight among all boundary paths, i.e.
 * its source has zero potential and every edge is tight. For periodic paths
 * one period decides. Malformed paths are rejected as invalid input.
 */
bool min_membership(const Graph& g, const BoundaryPath& bp, const Tolerances& tol = {});

/**
 * Tail-equivalence classes of minimizing boundary paths. Each orbit is
 * anchored at a sink or at a tight cycle and counted by the number of
 * minimizing paths it contains; count -1 marks an infinite family. The
 * census is rich when the orbit picture fails to be a finite list of
 * finite-count orbits.
 */
struct Census {
  struct SinkOrbit {
    int sink;
    long count;
  };
  struct CycleOrbit {
    Path cycle;
    long count;
  };

  Potentials potential;
  TightSubgraph tight;
  std::vector<SinkOrbit> sink_orbits;
  std::vector<CycleOrbit> cycle_orbits;
  bool rich = false;
  std::string rich_reason;
};

Census census(const Graph& g, const Tolerances& tol = {});

}  // namespace kmsgraph
