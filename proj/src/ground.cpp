#include "kmsgraph/ground.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "kmsgraph/detail/scc.hpp"

namespace kmsgraph {

Potentials potentials(const Graph& g, const Tolerances& tol) {
  (void)tol;
  int n = g.vertex_count();
  Potentials out;
  out.value.assign(n, 0.0);
  out.minus_inf.assign(n, 0);

  auto relax = [&](std::vector<double>& m, std::vector<char>* improved) {
    std::vector<double> next(n);
    for (int v = 0; v < n; ++v) {
      double best = 0.0;
      for (int e : g.in_edges(v))
        best = std::min(best, m[g.edge(e).src] + g.edge(e).weight);
      next[v] = best;
      if (improved && best < m[v] - 1e-15) (*improved)[v] = 1;
    }
    m = next;
  };

  // The zero cap acts as a virtual source into every vertex, so n rounds
  // converge unless a negative cycle keeps improving.
  for (int round = 0; round < n; ++round) relax(out.value, nullptr);
  std::vector<char> improving(n, 0);
  std::vector<double> probe = out.value;
  relax(probe, &improving);

  std::vector<int> queue;
  for (int v = 0; v < n; ++v)
    if (improving[v]) {
      out.minus_inf[v] = 1;
      queue.push_back(v);
    }
  while (!queue.empty()) {
    int v = queue.back();
    queue.pop_back();
    for (int e : g.out_edges(v)) {
      int w = g.edge(e).dst;
      if (!out.minus_inf[w]) {
        out.minus_inf[w] = 1;
        queue.push_back(w);
      }
    }
  }
  return out;
}

TightSubgraph tight_subgraph(const Graph& g, const Potentials& pot,
                             const Tolerances& tol) {
  TightSubgraph out;
  out.edge_tight.assign(g.edge_count(), 0);
  for (int e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edge(e);
    if (!pot.finite(edge.src) || !pot.finite(edge.dst)) continue;
    if (std::abs(pot.value[edge.dst] - (pot.value[edge.src] + edge.weight)) <=
        tol.weight_zero) {
      out.edge_tight[e] = 1;
      out.tight_edges.push_back(e);
    }
  }
  for (int v = 0; v < g.vertex_count(); ++v)
    if (pot.finite(v) && std::abs(pot.value[v]) <= tol.weight_zero)
      out.start_vertices.push_back(v);
  return out;
}

bool min_membership(const Graph& g, const BoundaryPath& bp, const Tolerances& tol) {
  if (!bp.prefix.valid(g)) throw Error(Error::Kind::InvalidInput, "invalid prefix path");
  if (bp.infinite) {
    if (!bp.cycle.valid(g) || bp.cycle.empty())
      throw Error(Error::Kind::InvalidInput, "invalid cycle");
    if (bp.cycle.range(g) != bp.cycle.source())
      throw Error(Error::Kind::InvalidInput, "cycle does not close");
    if (bp.prefix.range(g) != bp.cycle.source())
      throw Error(Error::Kind::InvalidInput, "cycle does not continue the prefix");
  } else if (!g.is_sink(bp.prefix.range(g))) {
    throw Error(Error::Kind::InvalidInput, "finite boundary path must end at a sink");
  }

  Potentials pot = potentials(g, tol);
  TightSubgraph tight = tight_subgraph(g, pot, tol);
  int source = bp.prefix.source();
  if (!pot.finite(source) || std::abs(pot.value[source]) > tol.weight_zero) return false;
  for (int e : bp.prefix.edges)
    if (!tight.is_tight(e)) return false;
  if (bp.infinite)
    for (int e : bp.cycle.edges)
      if (!tight.is_tight(e)) return false;
  return true;
}

namespace {

constexpr long kOrbitCap = 1000000000L;

/**
 * Counts tight paths from every zero-potential vertex to the target set,
 * stopping on first arrival. Returns -1 when a tight cycle feeds the target
 * and the family is infinite.
 */
long count_orbit(const Graph& g, const TightSubgraph& tight, const Potentials& pot,
                 const std::vector<char>& target, const Tolerances& tol) {
  int n = g.vertex_count();
  // Restrict to vertices that can reach the target along tight edges.
  std::vector<char> relevant = target;
  bool grew = true;
  while (grew) {
    grew = false;
    for (int e : tight.tight_edges) {
      const auto& edge = g.edge(e);
      if (relevant[edge.dst] && !relevant[edge.src] && !target[edge.src]) {
        relevant[edge.src] = 1;
        grew = true;
      }
    }
  }

  std::vector<long> memo(n, -2);
  std::vector<char> on_stack(n, 0);
  bool infinite = false;

  std::function<long(int)> walk = [&](int v) -> long {
    if (target[v]) return 1;
    if (!relevant[v]) return 0;
    if (memo[v] != -2) return memo[v];
    if (on_stack[v]) {
      infinite = true;
      return 0;
    }
    on_stack[v] = 1;
    long acc = 0;
    for (int e : g.out_edges(v)) {
      if (!tight.is_tight(e)) continue;
      acc += walk(g.edge(e).dst);
      if (acc > kOrbitCap) {
        infinite = true;
        acc = kOrbitCap;
      }
    }
    on_stack[v] = 0;
    memo[v] = acc;
    return acc;
  };

  long total = 0;
  for (int v : tight.start_vertices) {
    (void)tol;
    total += walk(v);
    if (total > kOrbitCap) infinite = true;
  }
  return infinite ? -1 : total;
}

}  // namespace

Census census(const Graph& g, const Tolerances& tol) {
  Census out;
  out.potential = potentials(g, tol);
  out.tight = tight_subgraph(g, out.potential, tol);

  std::vector<std::vector<int>> adj(g.vertex_count());
  for (int e : out.tight.tight_edges) adj[g.edge(e).src].push_back(g.edge(e).dst);
  std::vector<std::vector<int>> classes = detail::strongly_connected(adj);

  auto set_rich = [&](const std::string& reason) {
    if (!out.rich) {
      out.rich = true;
      out.rich_reason = reason;
    }
  };

  struct CycleClass {
    std::vector<int> members;
    Path cycle;
  };
  std::vector<CycleClass> cycles;
  for (const auto& members : classes) {
    std::vector<char> inside(g.vertex_count(), 0);
    for (int v : members) inside[v] = 1;
    int internal_edges = 0;
    for (int e : out.tight.tight_edges)
      if (inside[g.edge(e).src] && inside[g.edge(e).dst]) ++internal_edges;
    if (internal_edges == 0) continue;

    bool simple = internal_edges == static_cast<int>(members.size());
    if (simple) {
      for (int v : members) {
        int deg = 0;
        for (int e : g.out_edges(v))
          if (out.tight.is_tight(e) && inside[g.edge(e).dst]) ++deg;
        if (deg != 1) simple = false;
      }
    }
    if (!simple) {
      set_rich("several tight cycles run through the vertices {" +
               [&] {
                 std::string s;
                 for (size_t i = 0; i < members.size(); ++i)
                   s += (i ? ", " : "") + g.vertex_id(members[i]);
                 return s;
               }() +
               "}");
      continue;
    }

    int base = members.front();
    for (int v : members)
      if (out.potential.finite(v) &&
          std::abs(out.potential.value[v]) <= tol.weight_zero) {
        base = v;
        break;
      }
    Path cycle = Path::trivial(base);
    int at = base;
    do {
      for (int e : g.out_edges(at))
        if (out.tight.is_tight(e) && inside[g.edge(e).dst]) {
          cycle.edges.push_back(e);
          at = g.edge(e).dst;
          break;
        }
    } while (at != base);
    cycles.push_back(CycleClass{members, std::move(cycle)});
  }

  // A vertex with two tight routes toward recurrent behaviour splits a
  // minimizing family in two at every visit.
  std::vector<char> reaches_cycle(g.vertex_count(), 0);
  for (const auto& members : classes) {
    std::vector<char> inside(g.vertex_count(), 0);
    for (int v : members) inside[v] = 1;
    int internal_edges = 0;
    for (int e : out.tight.tight_edges)
      if (inside[g.edge(e).src] && inside[g.edge(e).dst]) ++internal_edges;
    if (internal_edges > 0)
      for (int v : members) reaches_cycle[v] = 1;
  }
  bool grew = true;
  while (grew) {
    grew = false;
    for (int e : out.tight.tight_edges) {
      const auto& edge = g.edge(e);
      if (reaches_cycle[edge.dst] && !reaches_cycle[edge.src]) {
        reaches_cycle[edge.src] = 1;
        grew = true;
      }
    }
  }
  for (int v = 0; v < g.vertex_count(); ++v) {
    int toward = 0;
    for (int e : g.out_edges(v))
      if (out.tight.is_tight(e) && reaches_cycle[g.edge(e).dst]) ++toward;
    if (toward >= 2)
      set_rich("two tight edges at " + g.vertex_id(v) + " both lead into cycles");
  }

  for (int s : sinks(g)) {
    std::vector<char> target(g.vertex_count(), 0);
    target[s] = 1;
    long count = count_orbit(g, out.tight, out.potential, target, tol);
    if (count == -1)
      set_rich("a tight cycle feeds the sink " + g.vertex_id(s));
    if (count != 0) out.sink_orbits.push_back(Census::SinkOrbit{s, count});
  }
  for (const CycleClass& cc : cycles) {
    std::vector<char> target(g.vertex_count(), 0);
    for (int v : cc.members) target[v] = 1;
    long count = count_orbit(g, out.tight, out.potential, target, tol);
    if (count == -1)
      set_rich("infinitely many tight routes into the cycle at " +
               g.vertex_id(cc.cycle.base));
    if (count != 0) out.cycle_orbits.push_back(Census::CycleOrbit{cc.cycle, count});
  }
  return out;
}

}  // namespace kmsgraph
