#include "kmsgraph/traces.hpp"

#include <algorithm>
#include <cmath>

#include "kmsgraph/classify.hpp"

namespace kmsgraph {

namespace {

std::vector<int> without(const std::vector<int>& set, const std::vector<int>& minus) {
  std::vector<int> out;
  std::set_difference(set.begin(), set.end(), minus.begin(), minus.end(),
                      std::back_inserter(out));
  return out;
}

constexpr long long kCountCap = 1000000000000000LL;

}  // namespace

ZeroSets zero_sets(const Graph& g, const Tolerances& tol, const Limits& limits) {
  ZeroSets out;
  for (const Component& c : components(g)) {
    if (!c.circular) continue;
    if (std::abs(c.loop->weight(g)) > tol.weight_zero) continue;
    std::vector<int> rest = without(closure(g, c.members), c.members);
    if (sign_profile(g, rest, tol, limits).tag == SignProfile::Tag::NoLoops)
      out.circulars.push_back(c);
  }
  for (int s : sinks(g)) {
    std::vector<int> cls = closure(g, {s});
    if (sign_profile(g, cls, tol, limits).tag == SignProfile::Tag::NoLoops)
      out.sink_vertices.push_back(s);
  }
  std::vector<char> kept(g.vertex_count(), 0);
  for (const Component& c : out.circulars)
    for (int v : closure(g, c.members)) kept[v] = 1;
  for (int s : out.sink_vertices)
    for (int v : closure(g, {s})) kept[v] = 1;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (!kept[v]) out.excluded.push_back(v);
  return out;
}

namespace {

/**
 * Paths terminating at `target`, restricted to `region`, with the edges
 * sourced at `target` removed. The relevant region is acyclic for genuine
 * trace sources; a cycle is reported as NotApplicable.
 */
long long count_terminating_paths(const Graph& g, const std::vector<int>& region,
                                  int target) {
  std::vector<char> in_region(g.vertex_count(), 0);
  for (int v : region) in_region[v] = 1;
  std::vector<long long> memo(g.vertex_count(), -1);
  std::vector<char> on_stack(g.vertex_count(), 0);

  // c(v) = number of admissible paths from v ending at target.
  std::function<long long(int)> count = [&](int v) -> long long {
    if (memo[v] >= 0) return memo[v];
    if (on_stack[v])
      throw Error(Error::Kind::NotApplicable,
                  "path count diverges: cycle upstream of " + g.vertex_id(target));
    on_stack[v] = 1;
    long long acc = v == target ? 1 : 0;
    if (v != target) {
      for (int e : g.out_edges(v)) {
        int w = g.edge(e).dst;
        if (!in_region[w]) continue;
        acc += count(w);
        if (acc > kCountCap)
          throw Error(Error::Kind::Limit, "path count exceeds the supported range");
      }
    }
    on_stack[v] = 0;
    memo[v] = acc;
    return acc;
  };

  long long total = 0;
  for (int v : region) {
    total += count(v);
    if (total > kCountCap)
      throw Error(Error::Kind::Limit, "path count exceeds the supported range");
  }
  return total;
}

}  // namespace

long sink_multiplicity(const Graph& g, int sink) {
  if (!g.is_sink(sink))
    throw Error(Error::Kind::InvalidInput,
                "vertex " + g.vertex_id(sink) + " is not a sink");
  return static_cast<long>(count_terminating_paths(g, closure(g, {sink}), sink));
}

long component_multiplicity(const Graph& g, const Component& c, int base) {
  if (!c.circular)
    throw Error(Error::Kind::InvalidInput,
                "multiplicity requires a circular component");
  if (base < 0) base = c.least();
  if (!c.contains(base))
    throw Error(Error::Kind::InvalidInput, "base vertex outside the component");
  return static_cast<long>(count_terminating_paths(g, closure(g, c.members), base));
}

std::vector<AlgebraSummand> algebra_structure(const Graph& g, const Tolerances& tol,
                                              const Limits& limits) {
  ZeroSets zs = zero_sets(g, tol, limits);
  std::vector<AlgebraSummand> out;
  for (int s : zs.sink_vertices)
    out.push_back(AlgebraSummand{AlgebraSummand::Kind::MatrixAlgebra, g.vertex_id(s),
                                 sink_multiplicity(g, s)});
  for (const Component& c : zs.circulars)
    out.push_back(AlgebraSummand{AlgebraSummand::Kind::MatrixOverCircle,
                                 component_label(g, c), component_multiplicity(g, c)});
  return out;
}

std::string algebra_display(const std::vector<AlgebraSummand>& summands) {
  if (summands.empty()) return "0";
  std::string out;
  for (size_t i = 0; i < summands.size(); ++i) {
    if (i) out += " (+) ";
    out += "M_" + std::to_string(summands[i].dimension);
    out += summands[i].kind == AlgebraSummand::Kind::MatrixAlgebra ? "(C)" : "(C(T))";
  }
  return out;
}

LaurentPoly LaurentPoly::monomial(int degree, long long c) {
  LaurentPoly p;
  if (c != 0) p.coeff[degree] = c;
  return p;
}

void LaurentPoly::add(int degree, long long c) {
  if (c == 0) return;
  auto [it, inserted] = coeff.emplace(degree, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) coeff.erase(it);
  }
}

LaurentPoly LaurentPoly::times(const LaurentPoly& other) const {
  LaurentPoly out;
  for (const auto& [d1, c1] : coeff)
    for (const auto& [d2, c2] : other.coeff) out.add(d1 + d2, c1 * c2);
  return out;
}

LaurentPoly LaurentPoly::star() const {
  LaurentPoly out;
  for (const auto& [d, c] : coeff) out.coeff[-d] = c;
  return out;
}

std::complex<double> LaurentPoly::eval(std::complex<double> z) const {
  std::complex<double> acc = 0.0;
  for (const auto& [d, c] : coeff)
    acc += static_cast<double>(c) * std::pow(z, d);
  return acc;
}

long long LaurentPoly::constant_term() const {
  auto it = coeff.find(0);
  return it == coeff.end() ? 0 : it->second;
}

LaurentMatrix LaurentMatrix::identity(int n) {
  LaurentMatrix m = zeros(n);
  for (int i = 0; i < n; ++i) m.at(i, i) = LaurentPoly::one();
  return m;
}

LaurentMatrix LaurentMatrix::unit(int n, int row, int col, const LaurentPoly& value) {
  LaurentMatrix m = zeros(n);
  m.at(row, col) = value;
  return m;
}

LaurentMatrix LaurentMatrix::times(const LaurentMatrix& other) const {
  if (n != other.n) throw Error(Error::Kind::InvalidInput, "block size mismatch");
  LaurentMatrix out = zeros(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const LaurentPoly& left = at(i, k);
      if (left.is_zero()) continue;
      for (int j = 0; j < n; ++j) {
        const LaurentPoly& right = other.at(k, j);
        if (right.is_zero()) continue;
        LaurentPoly prod = left.times(right);
        for (const auto& [d, c] : prod.coeff) out.at(i, j).add(d, c);
      }
    }
  return out;
}

LaurentMatrix LaurentMatrix::plus(const LaurentMatrix& other) const {
  if (n != other.n) throw Error(Error::Kind::InvalidInput, "block size mismatch");
  LaurentMatrix out = *this;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (const auto& [d, c] : other.at(i, j).coeff) out.at(i, j).add(d, c);
  return out;
}

LaurentMatrix LaurentMatrix::star() const {
  LaurentMatrix out = zeros(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.at(j, i) = at(i, j).star();
  return out;
}

LaurentPoly LaurentMatrix::trace() const {
  LaurentPoly out;
  for (int i = 0; i < n; ++i)
    for (const auto& [d, c] : at(i, i).coeff) out.add(d, c);
  return out;
}

bool LaurentMatrix::is_zero() const {
  for (const auto& p : a)
    if (!p.is_zero()) return false;
  return true;
}

namespace {

/** All quotient-graph paths ending at `target` with no edge sourced at `target`. */
std::vector<Path> enumerate_basis(const Graph& g, const std::vector<char>& edge_kept,
                                  int target) {
  std::vector<Path> out;
  std::vector<Path> frontier{Path::trivial(target)};
  while (!frontier.empty()) {
    std::vector<Path> next;
    for (const Path& p : frontier) {
      out.push_back(p);
      if (static_cast<long long>(out.size()) > kCountCap)
        throw Error(Error::Kind::Limit, "basis enumeration exceeded the cap");
      int head = p.source();
      for (int e : g.in_edges(head)) {
        if (!edge_kept[e]) continue;
        if (g.edge(e).src == target) continue;
        Path longer;
        longer.base = g.edge(e).src;
        longer.edges.reserve(p.edges.size() + 1);
        longer.edges.push_back(e);
        longer.edges.insert(longer.edges.end(), p.edges.begin(), p.edges.end());
        next.push_back(std::move(longer));
      }
    }
    frontier = std::move(next);
    if (out.size() > 100000)
      throw Error(Error::Kind::Limit, "basis enumeration exceeded the cap");
  }
  std::sort(out.begin(), out.end(), [](const Path& a, const Path& b) {
    if (a.edges.size() != b.edges.size()) return a.edges.size() < b.edges.size();
    return a.edges < b.edges;
  });
  return out;
}

int basis_index(const std::vector<Path>& basis, const Path& p) {
  for (size_t i = 0; i < basis.size(); ++i)
    if (basis[i] == p) return static_cast<int>(i);
  return -1;
}

}  // namespace

Representation build_representation(const Graph& g, const Tolerances& tol,
                                    const Limits& limits) {
  ZeroSets zs = zero_sets(g, tol, limits);
  Representation rep;
  rep.vertex_kept.assign(g.vertex_count(), 0);
  for (int v = 0; v < g.vertex_count(); ++v) rep.vertex_kept[v] = 1;
  for (int v : zs.excluded) rep.vertex_kept[v] = 0;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (rep.vertex_kept[v]) rep.kept_vertices.push_back(v);
  rep.edge_kept.assign(g.edge_count(), 0);
  for (int e = 0; e < g.edge_count(); ++e)
    rep.edge_kept[e] = rep.vertex_kept[g.edge(e).dst];

  for (int s : zs.sink_vertices) {
    Representation::Block block;
    block.is_sink = true;
    block.sink = s;
    block.base = s;
    block.source = g.vertex_id(s);
    block.basis = enumerate_basis(g, rep.edge_kept, s);
    if (static_cast<long>(block.basis.size()) != sink_multiplicity(g, s))
      throw Error(Error::Kind::Numerical,
                  "basis count disagrees with the path count at " + block.source);
    rep.blocks.push_back(std::move(block));
  }
  for (const Component& c : zs.circulars) {
    Representation::Block block;
    block.is_sink = false;
    block.component = c;
    block.base = c.least();
    block.source = component_label(g, c);
    block.basis = enumerate_basis(g, rep.edge_kept, block.base);
    if (static_cast<long>(block.basis.size()) != component_multiplicity(g, c))
      throw Error(Error::Kind::Numerical,
                  "basis count disagrees with the path count at " + block.source);
    rep.blocks.push_back(std::move(block));
  }

  int nblocks = static_cast<int>(rep.blocks.size());
  auto zero_line = [&]() {
    std::vector<LaurentMatrix> line;
    for (int b = 0; b < nblocks; ++b)
      line.push_back(LaurentMatrix::zeros(static_cast<int>(rep.blocks[b].basis.size())));
    return line;
  };

  rep.vertex_rep.assign(g.vertex_count(), {});
  for (int v = 0; v < g.vertex_count(); ++v) {
    rep.vertex_rep[v] = zero_line();
    if (!rep.vertex_kept[v]) continue;
    for (int b = 0; b < nblocks; ++b) {
      const auto& basis = rep.blocks[b].basis;
      for (size_t i = 0; i < basis.size(); ++i)
        if (basis[i].source() == v)
          rep.vertex_rep[v][b].at(static_cast<int>(i), static_cast<int>(i)) =
              LaurentPoly::one();
    }
  }

  rep.edge_rep.assign(g.edge_count(), {});
  for (int e = 0; e < g.edge_count(); ++e) {
    rep.edge_rep[e] = zero_line();
    if (!rep.edge_kept[e]) continue;
    const auto& edge = g.edge(e);
    for (int b = 0; b < nblocks; ++b) {
      const Representation::Block& block = rep.blocks[b];
      const auto& basis = block.basis;
      if (!block.is_sink && edge.src == block.base) {
        // The unique quotient edge leaving the base closes the cycle; it
        // carries the circle variable and maps the wound-around path back
        // to the trivial one.
        const Path& loop = *block.component.loop;
        if (e != loop.edges.front())
          throw Error(Error::Kind::Numerical,
                      "unexpected edge sourced at the base of " + block.source);
        Path remainder{std::vector<int>(loop.edges.begin() + 1, loop.edges.end()),
                       edge.dst};
        int row = basis_index(basis, Path::trivial(block.base));
        int col = basis_index(basis, remainder);
        if (row < 0 || col < 0)
          throw Error(Error::Kind::Numerical,
                      "cycle paths missing from the basis of " + block.source);
        rep.edge_rep[e][b].at(row, col) = LaurentPoly::monomial(1, 1);
        continue;
      }
      for (size_t i = 0; i < basis.size(); ++i) {
        if (basis[i].source() != edge.dst) continue;
        Path extended;
        extended.base = edge.src;
        extended.edges.reserve(basis[i].edges.size() + 1);
        extended.edges.push_back(e);
        extended.edges.insert(extended.edges.end(), basis[i].edges.begin(),
                              basis[i].edges.end());
        int row = basis_index(basis, extended);
        if (row < 0)
          throw Error(Error::Kind::Numerical,
                      "basis of " + block.source + " is not closed under extension");
        rep.edge_rep[e][b].at(row, static_cast<int>(i)) = LaurentPoly::one();
      }
    }
  }

  // Defining relations, checked exactly.
  for (int b = 0; b < nblocks; ++b) {
    int n = static_cast<int>(rep.blocks[b].basis.size());
    LaurentMatrix sum = LaurentMatrix::zeros(n);
    for (int v : rep.kept_vertices) sum = sum.plus(rep.vertex_rep[v][b]);
    if (!(sum == LaurentMatrix::identity(n)))
      throw Error(Error::Kind::Numerical,
                  "projections do not resolve the identity in " + rep.blocks[b].source);
  }
  for (int e = 0; e < g.edge_count(); ++e) {
    if (!rep.edge_kept[e]) continue;
    for (int b = 0; b < nblocks; ++b) {
      LaurentMatrix lhs = rep.edge_rep[e][b].star().times(rep.edge_rep[e][b]);
      if (!(lhs == rep.vertex_rep[g.edge(e).dst][b]))
        throw Error(Error::Kind::Numerical, "isometry relation fails for edge " +
                                                g.edge(e).id + " in " +
                                                rep.blocks[b].source);
    }
  }
  for (int v : rep.kept_vertices) {
    bool has_kept_out = false;
    for (int e : g.out_edges(v))
      if (rep.edge_kept[e]) has_kept_out = true;
    if (!has_kept_out) continue;
    for (int b = 0; b < nblocks; ++b) {
      int n = static_cast<int>(rep.blocks[b].basis.size());
      LaurentMatrix sum = LaurentMatrix::zeros(n);
      for (int e : g.out_edges(v)) {
        if (!rep.edge_kept[e]) continue;
        sum = sum.plus(rep.edge_rep[e][b].times(rep.edge_rep[e][b].star()));
      }
      if (!(sum == rep.vertex_rep[v][b]))
        throw Error(Error::Kind::Numerical,
                    "range projections do not assemble the vertex projection at " +
                        g.vertex_id(v) + " in " + rep.blocks[b].source);
    }
  }
  return rep;
}

std::vector<LaurentMatrix> Representation::rep_of_word(const Graph& g,
                                                       const Word& w) const {
  int nblocks = static_cast<int>(blocks.size());
  std::vector<LaurentMatrix> out;
  for (int b = 0; b < nblocks; ++b)
    out.push_back(LaurentMatrix::zeros(static_cast<int>(blocks[b].basis.size())));
  if (w.zero) return out;
  if (!w.valid(g)) throw Error(Error::Kind::InvalidInput, "invalid word");

  auto path_dies = [&](const Path& p) {
    if (!vertex_kept[p.base]) return true;
    for (int e : p.edges)
      if (!edge_kept[e]) return true;
    return false;
  };
  if (path_dies(w.mu) || path_dies(w.nu)) return out;

  for (int b = 0; b < nblocks; ++b) {
    int n = static_cast<int>(blocks[b].basis.size());
    auto path_rep = [&](const Path& p) {
      if (p.empty()) return vertex_rep[p.base][b];
      LaurentMatrix m = edge_rep[p.edges.front()][b];
      for (size_t i = 1; i < p.edges.size(); ++i) m = m.times(edge_rep[p.edges[i]][b]);
      return m;
    };
    (void)n;
    out[b] = path_rep(w.mu).times(path_rep(w.nu).star());
  }
  return out;
}

std::complex<double> trace_eval(const Graph& g, const Representation& rep,
                                const TraceWeights& weights, const Word& w) {
  if (weights.weight.size() != rep.blocks.size() ||
      weights.measures.size() != rep.blocks.size())
    throw Error(Error::Kind::InvalidInput, "trace weights misaligned with blocks");
  std::vector<LaurentMatrix> mats = rep.rep_of_word(g, w);
  std::complex<double> total = 0.0;
  for (size_t b = 0; b < rep.blocks.size(); ++b) {
    if (weights.weight[b] == 0.0) continue;
    long n = static_cast<long>(rep.blocks[b].basis.size());
    LaurentPoly tr = mats[b].trace();
    std::complex<double> value = 0.0;
    if (rep.blocks[b].is_sink) {
      value = static_cast<double>(tr.constant_term());
    } else if (weights.measures[b].kind == CircleMeasure::Kind::Lebesgue) {
      value = static_cast<double>(tr.constant_term());
    } else {
      for (const auto& atom : weights.measures[b].atoms)
        value += atom.mass * tr.eval(atom.lambda);
    }
    total += weights.weight[b] * value / static_cast<double>(n);
  }
  return total;
}

}  // namespace kmsgraph
