#include "kmsgraph/graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "kmsgraph/detail/scc.hpp"

namespace kmsgraph {

Graph::Graph(const std::vector<std::string>& vertex_ids,
             const std::vector<EdgeDecl>& edges, const Limits& limits) {
  if (vertex_ids.empty())
    throw Error(Error::Kind::InvalidInput, "graph needs at least one vertex");
  if (static_cast<int>(vertex_ids.size()) > limits.max_vertices)
    throw Error(Error::Kind::Limit,
                "vertex count " + std::to_string(vertex_ids.size()) +
                    " exceeds the cap of " + std::to_string(limits.max_vertices));
  vertex_ids_ = vertex_ids;
  for (int i = 0; i < static_cast<int>(vertex_ids_.size()); ++i) {
    if (vertex_ids_[i].empty())
      throw Error(Error::Kind::InvalidInput, "empty vertex id");
    if (!vertex_lookup_.emplace(vertex_ids_[i], i).second)
      throw Error(Error::Kind::InvalidInput, "duplicate vertex id: " + vertex_ids_[i]);
  }
  out_.resize(vertex_ids_.size());
  in_.resize(vertex_ids_.size());
  for (const EdgeDecl& d : edges) {
    if (d.id.empty()) throw Error(Error::Kind::InvalidInput, "empty edge id");
    if (!std::isfinite(d.weight))
      throw Error(Error::Kind::InvalidInput, "non-finite weight on edge " + d.id);
    auto s = vertex_lookup_.find(d.src);
    auto r = vertex_lookup_.find(d.dst);
    if (s == vertex_lookup_.end())
      throw Error(Error::Kind::InvalidInput,
                  "edge " + d.id + " references unknown vertex " + d.src);
    if (r == vertex_lookup_.end())
      throw Error(Error::Kind::InvalidInput,
                  "edge " + d.id + " references unknown vertex " + d.dst);
    int e = static_cast<int>(edges_.size());
    if (!edge_lookup_.emplace(d.id, e).second)
      throw Error(Error::Kind::InvalidInput, "duplicate edge id: " + d.id);
    edges_.push_back(Edge{d.id, s->second, r->second, d.weight});
    out_[s->second].push_back(e);
    in_[r->second].push_back(e);
  }
}

int Graph::vertex_index(const std::string& id) const {
  auto it = vertex_lookup_.find(id);
  if (it == vertex_lookup_.end())
    throw Error(Error::Kind::InvalidInput, "unknown vertex id: " + id);
  return it->second;
}

int Graph::edge_index(const std::string& id) const {
  auto it = edge_lookup_.find(id);
  if (it == edge_lookup_.end())
    throw Error(Error::Kind::InvalidInput, "unknown edge id: " + id);
  return it->second;
}

int Path::vertex_at(const Graph& g, int pos) const {
  if (pos < 0 || pos > length())
    throw Error(Error::Kind::InvalidInput, "path position out of range");
  return pos == 0 ? base : g.edge(edges[pos - 1]).dst;
}

double Path::weight(const Graph& g) const {
  double w = 0.0;
  for (int e : edges) w += g.edge(e).weight;
  return w;
}

bool Path::valid(const Graph& g) const {
  if (base < 0 || base >= g.vertex_count()) return false;
  int at = base;
  for (int e : edges) {
    if (e < 0 || e >= g.edge_count()) return false;
    if (g.edge(e).src != at) return false;
    at = g.edge(e).dst;
  }
  return true;
}

bool is_prefix(const Graph& g, const Path& prefix, const Path& path) {
  (void)g;
  if (prefix.base != path.base) return false;
  if (prefix.edges.size() > path.edges.size()) return false;
  return std::equal(prefix.edges.begin(), prefix.edges.end(), path.edges.begin());
}

Path concat(const Graph& g, const Path& lhs, const Path& rhs) {
  if (lhs.range(g) != rhs.source())
    throw Error(Error::Kind::InvalidInput, "paths are not composable");
  Path out = lhs;
  out.edges.insert(out.edges.end(), rhs.edges.begin(), rhs.edges.end());
  return out;
}

bool Component::contains(int v) const {
  return std::binary_search(members.begin(), members.end(), v);
}

std::vector<Component> components(const Graph& g) {
  std::vector<std::vector<int>> adj(g.vertex_count());
  for (const auto& e : g.edges()) adj[e.src].push_back(e.dst);
  std::vector<Component> out;
  for (auto& cls : detail::strongly_connected(adj)) {
    // A class belongs here only if it carries a cycle: either it has more
    // than one vertex or its single vertex has a self-loop.
    bool has_edge = false;
    std::set<int> in_class(cls.begin(), cls.end());
    for (int v : cls)
      for (int e : g.out_edges(v))
        if (in_class.count(g.edge(e).dst)) has_edge = true;
    if (!has_edge) continue;

    Component c;
    c.members = cls;
    // Circular: every member has exactly one inside successor edge and one
    // inside predecessor edge.
    c.circular = true;
    for (int v : cls) {
      int out_deg = 0, in_deg = 0;
      for (int e : g.out_edges(v))
        if (in_class.count(g.edge(e).dst)) ++out_deg;
      for (int e : g.in_edges(v))
        if (in_class.count(g.edge(e).src)) ++in_deg;
      if (out_deg != 1 || in_deg != 1) {
        c.circular = false;
        break;
      }
    }
    if (c.circular) {
      Path loop = Path::trivial(c.least());
      int at = c.least();
      do {
        int next_edge = -1;
        for (int e : g.out_edges(at))
          if (in_class.count(g.edge(e).dst)) next_edge = e;
        loop.edges.push_back(next_edge);
        at = g.edge(next_edge).dst;
      } while (at != c.least());
      c.loop = std::move(loop);
    }
    out.push_back(std::move(c));
  }
  return out;
}

namespace {

std::vector<char> to_mask(const Graph& g, const std::vector<int>& set) {
  std::vector<char> mask(g.vertex_count(), 0);
  for (int v : set) {
    if (v < 0 || v >= g.vertex_count())
      throw Error(Error::Kind::InvalidInput, "vertex index out of range");
    mask[v] = 1;
  }
  return mask;
}

std::vector<int> mask_to_sorted(const std::vector<char>& mask) {
  std::vector<int> out;
  for (int v = 0; v < static_cast<int>(mask.size()); ++v)
    if (mask[v]) out.push_back(v);
  return out;
}

std::vector<int> reach(const Graph& g, const std::vector<int>& set, bool backwards) {
  std::vector<char> seen = to_mask(g, set);
  std::vector<int> work = mask_to_sorted(seen);
  while (!work.empty()) {
    int v = work.back();
    work.pop_back();
    const auto& edges = backwards ? g.in_edges(v) : g.out_edges(v);
    for (int e : edges) {
      int w = backwards ? g.edge(e).src : g.edge(e).dst;
      if (!seen[w]) {
        seen[w] = 1;
        work.push_back(w);
      }
    }
  }
  return mask_to_sorted(seen);
}

}  // namespace

std::vector<int> closure(const Graph& g, const std::vector<int>& set) {
  return reach(g, set, /*backwards=*/true);
}

std::vector<int> hereditary_closure(const Graph& g, const std::vector<int>& set) {
  return reach(g, set, /*backwards=*/false);
}

std::vector<int> sinks(const Graph& g) {
  std::vector<int> out;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.is_sink(v)) out.push_back(v);
  return out;
}

namespace {

// Johnson-style enumeration: for each root in ascending order, walk only
// vertices >= root, so every cycle is produced exactly once, rotated to
// start at its least vertex. The blocked set bounds work between outputs.
class CycleEnumerator {
public:
  CycleEnumerator(const Graph& g, const std::vector<char>& region, long cap)
      : g_(g), region_(region), cap_(cap), blocked_(g.vertex_count(), 0),
        block_list_(g.vertex_count()) {}

  std::vector<Path> run() {
    for (int root = 0; root < g_.vertex_count(); ++root) {
      if (!region_[root]) continue;
      root_ = root;
      std::fill(blocked_.begin(), blocked_.end(), 0);
      for (auto& l : block_list_) l.clear();
      circuit(root);
    }
    return std::move(found_);
  }

private:
  bool admissible(int v) const { return region_[v] && v >= root_; }

  void unblock(int v) {
    blocked_[v] = 0;
    for (int w : block_list_[v])
      if (blocked_[w]) unblock(w);
    block_list_[v].clear();
  }

  bool circuit(int v) {
    bool closed = false;
    blocked_[v] = 1;
    for (int e : g_.out_edges(v)) {
      int w = g_.edge(e).dst;
      if (!admissible(w)) continue;
      if (w == root_) {
        edge_stack_.push_back(e);
        Path cycle{edge_stack_, root_};
        found_.push_back(std::move(cycle));
        if (static_cast<long>(found_.size()) > cap_)
          throw Error(Error::Kind::Limit, "simple cycle enumeration cap exceeded");
        edge_stack_.pop_back();
        closed = true;
      } else if (!blocked_[w]) {
        edge_stack_.push_back(e);
        if (circuit(w)) closed = true;
        edge_stack_.pop_back();
      }
    }
    if (closed) {
      unblock(v);
    } else {
      for (int e : g_.out_edges(v)) {
        int w = g_.edge(e).dst;
        if (!admissible(w) || w == root_) continue;
        auto& lst = block_list_[w];
        if (std::find(lst.begin(), lst.end(), v) == lst.end()) lst.push_back(v);
      }
    }
    return closed;
  }

  const Graph& g_;
  const std::vector<char>& region_;
  long cap_;
  int root_ = 0;
  std::vector<char> blocked_;
  std::vector<std::vector<int>> block_list_;
  std::vector<int> edge_stack_;
  std::vector<Path> found_;
};

}  // namespace

std::vector<Path> simple_cycles(const Graph& g, const std::vector<int>& region,
                                const Limits& limits) {
  std::vector<char> mask = to_mask(g, region);
  return CycleEnumerator(g, mask, limits.max_simple_cycles).run();
}

SignProfile sign_profile(const Graph& g, const std::vector<int>& region,
                         const Tolerances& tol, const Limits& limits) {
  SignProfile profile;
  std::optional<Path> first_zero, first_neg;
  bool pos = false, neg = false, zero = false;
  for (Path& cycle : simple_cycles(g, region, limits)) {
    double w = cycle.weight(g);
    if (std::abs(w) <= tol.weight_zero) {
      zero = true;
      if (!first_zero) first_zero = cycle;
    } else if (w > 0) {
      pos = true;
    } else {
      neg = true;
      if (!first_neg) first_neg = cycle;
    }
  }
  if (pos && neg) {
    profile.tag = SignProfile::Tag::Mixed;
    profile.witness = first_neg;
  } else if (zero) {
    profile.tag = SignProfile::Tag::HasZeroLoop;
    profile.witness = first_zero;
  } else if (pos) {
    profile.tag = SignProfile::Tag::AllPositive;
  } else if (neg) {
    profile.tag = SignProfile::Tag::AllNegative;
  } else {
    profile.tag = SignProfile::Tag::NoLoops;
  }
  return profile;
}

}  // namespace kmsgraph
