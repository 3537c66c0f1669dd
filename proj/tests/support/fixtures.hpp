#pragma once

// Shared fixtures, random graph generators, and reference computations for
// the test suites. The reference routines deliberately avoid the library's
// own algorithms: spectral radii come from Gelfand limits by repeated
// squaring, and circle-state values come from explicit path enumeration
// with certified tail bounds.

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include "kmsgraph/classify.hpp"
#include "kmsgraph/graph.hpp"
#include "kmsgraph/spectral.hpp"
#include "kmsgraph/states.hpp"

namespace testsupport {

/** The reference graph, same as fixtures/reference.graph. */
inline kmsgraph::Graph reference_graph(const std::string& profile = "") {
  auto w = [&](double base, double f1, double f2) {
    if (profile == "F1") return f1;
    if (profile == "F2") return f2;
    return base;
  };
  std::vector<std::string> vs = {"s1", "v2", "v3", "v4", "v5", "v6",
                                 "v7", "v8", "v9", "v10", "s2"};
  std::vector<kmsgraph::Graph::EdgeDecl> es = {
      {"e1", "v2", "s1", 1},           {"e2", "v2", "v3", 1},
      {"e3", "v3", "v4", 1},           {"a", "v4", "v3", w(1, -2, -1)},
      {"e5", "v3", "v5", 1},           {"b", "v5", "v6", w(1, -2, 1)},
      {"e7", "v6", "v5", 1},           {"e8", "v6", "v5", 1},
      {"e9", "v7", "v5", 1},           {"e10", "v7", "v8", 1},
      {"e11", "v9", "v8", 1},          {"c", "v8", "v8", w(1, 0, 1)},
      {"e13", "v9", "s2", 1},          {"d", "v9", "v10", w(1, 1, -1.5)},
      {"e15", "v10", "v9", 1},         {"e16", "v10", "v9", 1}};
  return kmsgraph::Graph(vs, es);
}

inline kmsgraph::Component component_of(const kmsgraph::Graph& g, int vertex) {
  for (const kmsgraph::Component& c : kmsgraph::components(g))
    if (c.contains(vertex)) return c;
  throw std::runtime_error("vertex lies in no component");
}

inline kmsgraph::Component component_named(const kmsgraph::Graph& g,
                                           const std::string& label) {
  for (const kmsgraph::Component& c : kmsgraph::components(g))
    if (kmsgraph::component_label(g, c) == label) return c;
  throw std::runtime_error("no component labeled " + label);
}

// ---------------------------------------------------------------------------
// Reference spectral radius: Gelfand limit via repeated squaring. After 40
// squarings the norm estimate ||M^k||^(1/k) with k = 2^40 is within a factor
// (dim * max)^(2^-40) of the radius, far below the comparison tolerances.
// ---------------------------------------------------------------------------
inline double reference_spectral_radius(const kmsgraph::WeightMatrix& m) {
  int n = m.row_count();
  if (n == 0) return 0.0;
  std::vector<double> a(m.a);
  auto inf_norm = [&](const std::vector<double>& x) {
    double best = 0.0;
    for (int i = 0; i < n; ++i) {
      double row = 0.0;
      for (int j = 0; j < n; ++j) row += std::abs(x[static_cast<size_t>(i) * n + j]);
      best = std::max(best, row);
    }
    return best;
  };
  double norm0 = inf_norm(a);
  if (norm0 == 0.0) return 0.0;
  for (auto& x : a) x /= norm0;
  double log_scale = std::log(norm0);  // log ||M^{2^t}|| ~ 2^t * running value
  for (int step = 0; step < 40; ++step) {
    std::vector<double> b(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        double aik = a[static_cast<size_t>(i) * n + k];
        if (aik == 0.0) continue;
        for (int j = 0; j < n; ++j)
          b[static_cast<size_t>(i) * n + j] += aik * a[static_cast<size_t>(k) * n + j];
      }
    double norm = inf_norm(b);
    if (norm == 0.0) return 0.0;  // nilpotent
    for (auto& x : b) x /= norm;
    a = std::move(b);
    log_scale = log_scale + std::log(norm) / static_cast<double>(1LL << (step + 1));
  }
  return std::exp(log_scale);
}

// ---------------------------------------------------------------------------
// Reference circle-state values by explicit first-passage path enumeration.
//
// A first-passage path ends at the base vertex and visits it nowhere else
// (the trivial path at the base counts). Every state value is a sum of
// path weights exp(-beta weight(alpha)) over first-passage paths alpha
// whose periodic extension alpha.loop.loop... carries both legs of the
// word as prefixes with coinciding tails. Enumeration covers all paths up
// to a depth; the remainder is bounded through matrix powers and a
// Collatz-Wielandt certificate.
// ---------------------------------------------------------------------------
struct CircleReference {
  kmsgraph::CircularData data;
  double beta = 0.0;
  std::vector<kmsgraph::Path> paths;   // complete levels 0..depth
  std::vector<double> path_weights;    // exp(-beta weight)
  double z_partial = 0.0;
  double tail = 0.0;    // certified bound on the weight of all longer paths
  bool tail_ok = false; // tail bound established (or enumeration exhausted)

  /** Edge of the periodic extension alpha.loop.loop... at position t. */
  int extension_edge(const kmsgraph::Path& alpha, int t) const {
    if (t < alpha.length()) return alpha.edges[static_cast<size_t>(t)];
    return data.loop.edges[static_cast<size_t>((t - alpha.length()) % data.period)];
  }

  /** Whether the word is carried by alpha's periodic extension. */
  bool carries(const kmsgraph::Graph& g, const kmsgraph::Path& alpha,
               const kmsgraph::Word& w) const {
    if (w.mu.base != alpha.base || w.nu.base != alpha.base) return false;
    for (int t = 0; t < w.mu.length(); ++t)
      if (w.mu.edges[static_cast<size_t>(t)] != extension_edge(alpha, t)) return false;
    for (int t = 0; t < w.nu.length(); ++t)
      if (w.nu.edges[static_cast<size_t>(t)] != extension_edge(alpha, t)) return false;
    int window = alpha.length() + 2 * data.period + w.mu.length() + w.nu.length();
    for (int t = 0; t < window; ++t)
      if (extension_edge(alpha, w.mu.length() + t) !=
          extension_edge(alpha, w.nu.length() + t))
        return false;
    (void)g;
    return true;
  }

  std::complex<double> evaluate_partial(const kmsgraph::Graph& g,
                                        std::complex<double> lambda,
                                        const kmsgraph::Word& w) const {
    if (w.zero) return 0.0;
    double total = 0.0;
    for (size_t i = 0; i < paths.size(); ++i)
      if (carries(g, paths[i], w)) total += path_weights[i];
    int diff = w.mu.length() - w.nu.length();
    if (total == 0.0) return 0.0;
    if (diff % data.period != 0) throw std::runtime_error("carried word off-period");
    std::complex<double> phase = std::pow(lambda, diff / data.period);
    double z = z_partial;  // denominators compare against the same enumeration
    return phase * total / z;
  }
};

inline CircleReference make_circle_reference(const kmsgraph::Graph& g, double beta,
                                             const kmsgraph::CircularData& data,
                                             long path_cap = 200000) {
  CircleReference ref;
  ref.data = data;
  ref.beta = beta;
  std::vector<int> cls = kmsgraph::closure(g, data.component.members);
  std::vector<char> in_closure(static_cast<size_t>(g.vertex_count()), 0);
  for (int v : cls) in_closure[static_cast<size_t>(v)] = 1;

  std::vector<kmsgraph::Path> level{kmsgraph::Path::trivial(data.base)};
  bool exhausted = false;
  int depth = 0;
  while (true) {
    for (const kmsgraph::Path& p : level) {
      ref.paths.push_back(p);
      double weight = std::exp(-beta * p.weight(g));
      ref.path_weights.push_back(weight);
      ref.z_partial += weight;
    }
    std::vector<kmsgraph::Path> next;
    for (const kmsgraph::Path& p : level)
      for (int e : g.in_edges(p.base)) {
        int src = g.edge(e).src;
        if (src == data.base || !in_closure[static_cast<size_t>(src)]) continue;
        kmsgraph::Path longer;
        longer.base = src;
        longer.edges.reserve(p.edges.size() + 1);
        longer.edges.push_back(e);
        longer.edges.insert(longer.edges.end(), p.edges.begin(), p.edges.end());
        next.push_back(std::move(longer));
      }
    if (next.empty()) {
      exhausted = true;
      break;
    }
    if (static_cast<long>(ref.paths.size() + next.size()) > path_cap) break;
    level = std::move(next);
    ++depth;
  }

  if (exhausted) {
    ref.tail = 0.0;
    ref.tail_ok = true;
    return ref;
  }

  // Tail bound: with M the one-step weight matrix on the closure with
  // departures from the base removed, the tail is sum_{k>depth} 1^T M^k e_base.
  // For positive y with M y <= q y, q < 1:
  //   sum_{j>=0} 1^T M^j r <= (max_i r_i / y_i) * (1^T y) / (1 - q).
  int n = static_cast<int>(cls.size());
  auto pos = [&](int v) {
    return static_cast<int>(std::lower_bound(cls.begin(), cls.end(), v) - cls.begin());
  };
  std::vector<double> mat(static_cast<size_t>(n) * n, 0.0);
  for (int e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edge(e);
    if (!in_closure[static_cast<size_t>(edge.src)] ||
        !in_closure[static_cast<size_t>(edge.dst)])
      continue;
    if (edge.src == data.base) continue;
    mat[static_cast<size_t>(pos(edge.src)) * n + pos(edge.dst)] +=
        std::exp(-beta * edge.weight);
  }
  auto matvec = [&](const std::vector<double>& x) {
    std::vector<double> y(static_cast<size_t>(n), 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) y[i] += mat[static_cast<size_t>(i) * n + j] * x[j];
    return y;
  };

  std::vector<double> r(static_cast<size_t>(n), 0.0);
  r[static_cast<size_t>(pos(data.base))] = 1.0;
  for (int k = 0; k <= depth; ++k) r = matvec(r);  // r = M^{depth+1} e_base

  std::vector<double> y(static_cast<size_t>(n), 1.0);
  for (int it = 0; it < 200; ++it) {
    std::vector<double> my = matvec(y);
    double top = 0.0;
    for (int i = 0; i < n; ++i) {
      y[i] += my[i];
      top = std::max(top, y[i]);
    }
    for (auto& v : y) v /= top;
  }
  std::vector<double> my = matvec(y);
  double q = 0.0;
  for (int i = 0; i < n; ++i) q = std::max(q, my[i] / y[i]);
  if (q >= 1.0) return ref;  // tail_ok stays false

  double c = 0.0, ysum = 0.0;
  for (int i = 0; i < n; ++i) {
    c = std::max(c, r[i] / y[i]);
    ysum += y[i];
  }
  ref.tail = c * ysum / (1.0 - q);
  ref.tail_ok = true;
  return ref;
}

// ---------------------------------------------------------------------------
// Random graphs and words.
// ---------------------------------------------------------------------------
inline double random_weight(std::mt19937_64& rng) {
  static const double levels[] = {-2, -1.5, -1, -0.5, 0, 0.5, 1, 1.5, 2};
  return levels[std::uniform_int_distribution<int>(0, 8)(rng)];
}

inline kmsgraph::Graph random_graph(std::mt19937_64& rng) {
  int n = std::uniform_int_distribution<int>(2, 8)(rng);
  int sink_count = std::uniform_int_distribution<int>(0, std::min(2, n - 1))(rng);
  int m = std::uniform_int_distribution<int>(1, 16)(rng);
  std::vector<std::string> vs;
  for (int i = 0; i < n; ++i) vs.push_back("u" + std::to_string(i));
  std::vector<kmsgraph::Graph::EdgeDecl> es;
  std::uniform_int_distribution<int> src_pick(0, n - 1 - sink_count);
  std::uniform_int_distribution<int> dst_pick(0, n - 1);
  for (int i = 0; i < m; ++i)
    es.push_back({"f" + std::to_string(i), vs[static_cast<size_t>(src_pick(rng))],
                  vs[static_cast<size_t>(dst_pick(rng))], random_weight(rng)});
  return kmsgraph::Graph(vs, es);
}

/**
 * A graph whose component containing u0 is a two-cycle of exactly zero
 * weight, fed by an acyclic upstream region: the circle-family situation
 * at every inverse temperature. Returns the graph; the component is the
 * one containing vertex "u0".
 */
inline kmsgraph::Graph random_circle_graph(std::mt19937_64& rng) {
  int extra = std::uniform_int_distribution<int>(0, 5)(rng);
  int n = 2 + extra;
  std::vector<std::string> vs;
  for (int i = 0; i < n; ++i) vs.push_back("u" + std::to_string(i));
  std::vector<kmsgraph::Graph::EdgeDecl> es;
  double x = random_weight(rng);
  es.push_back({"cyc0", "u0", "u1", x});
  es.push_back({"cyc1", "u1", "u0", -x});
  int m = n > 2 ? std::uniform_int_distribution<int>(1, 10)(rng) : 0;
  for (int i = 0; i < m; ++i) {
    // upstream edges only descend toward the cycle, keeping that region acyclic
    int src = std::uniform_int_distribution<int>(2, n - 1)(rng);
    int dst = std::uniform_int_distribution<int>(0, src - 1)(rng);
    es.push_back({"f" + std::to_string(i), vs[static_cast<size_t>(src)],
                  vs[static_cast<size_t>(dst)], random_weight(rng)});
  }
  return kmsgraph::Graph(vs, es);
}

inline kmsgraph::Path random_walk(const kmsgraph::Graph& g, std::mt19937_64& rng,
                                  int base, int max_len) {
  kmsgraph::Path p = kmsgraph::Path::trivial(base);
  int len = std::uniform_int_distribution<int>(0, max_len)(rng);
  int at = base;
  for (int i = 0; i < len; ++i) {
    const auto& outs = g.out_edges(at);
    if (outs.empty()) break;
    int e = outs[static_cast<size_t>(
        std::uniform_int_distribution<int>(0, static_cast<int>(outs.size()) - 1)(rng))];
    p.edges.push_back(e);
    at = g.edge(e).dst;
  }
  return p;
}

/** Random valid word; both legs end at a common vertex. */
inline kmsgraph::Word random_word(const kmsgraph::Graph& g, std::mt19937_64& rng,
                                  int max_len) {
  std::uniform_int_distribution<int> vertex_pick(0, g.vertex_count() - 1);
  kmsgraph::Path mu = random_walk(g, rng, vertex_pick(rng), max_len);
  int target = mu.range(g);
  for (int attempt = 0; attempt < 60; ++attempt) {
    kmsgraph::Path nu = random_walk(g, rng, vertex_pick(rng), max_len);
    if (nu.range(g) == target) return kmsgraph::Word{mu, nu, false};
  }
  return kmsgraph::Word{mu, kmsgraph::Path::trivial(target), false};
}

/** Random word whose legs stay inside the given vertex set. */
inline kmsgraph::Word random_closure_word(const kmsgraph::Graph& g,
                                          std::mt19937_64& rng,
                                          const std::vector<int>& closure_set,
                                          int max_len) {
  std::vector<char> in_set(static_cast<size_t>(g.vertex_count()), 0);
  for (int v : closure_set) in_set[static_cast<size_t>(v)] = 1;
  std::uniform_int_distribution<int> pick(0, static_cast<int>(closure_set.size()) - 1);
  auto walk = [&]() {
    kmsgraph::Path p =
        kmsgraph::Path::trivial(closure_set[static_cast<size_t>(pick(rng))]);
    int len = std::uniform_int_distribution<int>(0, max_len)(rng);
    int at = p.base;
    for (int i = 0; i < len; ++i) {
      std::vector<int> usable;
      for (int e : g.out_edges(at))
        if (in_set[static_cast<size_t>(g.edge(e).dst)]) usable.push_back(e);
      if (usable.empty()) break;
      int e = usable[static_cast<size_t>(std::uniform_int_distribution<int>(
          0, static_cast<int>(usable.size()) - 1)(rng))];
      p.edges.push_back(e);
      at = g.edge(e).dst;
    }
    return p;
  };
  kmsgraph::Path mu = walk();
  int target = mu.range(g);
  for (int attempt = 0; attempt < 60; ++attempt) {
    kmsgraph::Path nu = walk();
    if (nu.range(g) == target) return kmsgraph::Word{mu, nu, false};
  }
  return kmsgraph::Word{mu, kmsgraph::Path::trivial(target), false};
}

}  // namespace testsupport
