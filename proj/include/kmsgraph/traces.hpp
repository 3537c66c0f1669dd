#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "kmsgraph/graph.hpp"
#include "kmsgraph/states.hpp"
#include "kmsgraph/types.hpp"

namespace kmsgraph {

/**
 * Sources of trace states: circular components with zero loop weight whose
 * surrounding closure has no other loops, and sinks whose closure has no
 * loops at all. `excluded` is the complement of the union of their
 * closures; it is hereditary and saturated, and the quotient by it is what
 * the finite-dimensional picture represents.
 */
struct ZeroSets {
  std::vector<Component> circulars;
  std::vector<int> sink_vertices;
  std::vector<int> excluded;
};

ZeroSets zero_sets(const Graph& g, const Tolerances& tol = {}, const Limits& limits = {});

/** Number of paths terminating at the sink (counted in the full graph). */
long sink_multiplicity(const Graph& g, int sink);

/**
 * Number of paths terminating at the base of the circular component with
 * no edge sourced at the base, counted in the full graph. The count does
 * not depend on which component vertex serves as the base; the default is
 * the least member.
 */
long component_multiplicity(const Graph& g, const Component& c, int base = -1);

struct AlgebraSummand {
  enum class Kind { MatrixAlgebra, MatrixOverCircle };
  Kind kind;
  std::string source;  // sink id or component label
  long dimension = 0;
};

/** Summands in display order: sinks first, then circular components. */
std::vector<AlgebraSummand> algebra_structure(const Graph& g, const Tolerances& tol = {},
                                              const Limits& limits = {});

std::string algebra_display(const std::vector<AlgebraSummand>& summands);

/** Laurent polynomial in the circle variable with integer coefficients. */
struct LaurentPoly {
  std::map<int, long long> coeff;  // degree -> coefficient, zeros erased

  static LaurentPoly zero() { return {}; }
  static LaurentPoly one() { return monomial(0, 1); }
  static LaurentPoly monomial(int degree, long long c);

  bool is_zero() const { return coeff.empty(); }
  void add(int degree, long long c);
  LaurentPoly times(const LaurentPoly& other) const;
  /** Adjoint: conjugate-transpose partner, z -> z^-1 (real coefficients). */
  LaurentPoly star() const;
  std::complex<double> eval(std::complex<double> z) const;
  long long constant_term() const;
  bool operator==(const LaurentPoly& other) const { return coeff == other.coeff; }
};

struct LaurentMatrix {
  int n = 0;
  std::vector<LaurentPoly> a;  // row-major

  static LaurentMatrix zeros(int n) { return LaurentMatrix{n, std::vector<LaurentPoly>(static_cast<size_t>(n) * n)}; }
  static LaurentMatrix identity(int n);
  static LaurentMatrix unit(int n, int row, int col, const LaurentPoly& value);

  const LaurentPoly& at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
  LaurentPoly& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }

  LaurentMatrix times(const LaurentMatrix& other) const;
  LaurentMatrix plus(const LaurentMatrix& other) const;
  LaurentMatrix star() const;
  LaurentPoly trace() const;
  bool is_zero() const;
  bool operator==(const LaurentMatrix& other) const { return n == other.n && a == other.a; }
};

/**
 * Finite-dimensional representation of the zero-temperature quotient: one
 * matrix block per trace source, with path bases enumerated in the quotient
 * graph. Generator images satisfy the defining relations exactly.
 */
struct Representation {
  struct Block {
    bool is_sink = false;
    int sink = -1;
    Component component;
    int base = -1;                 // component base vertex
    std::string source;           // sink id or component label
    std::vector<Path> basis;      // paths in the quotient ending at the source
  };

  std::vector<int> kept_vertices;  // ascending; complement of the excluded set
  std::vector<char> vertex_kept;  // indexed by vertex
  std::vector<char> edge_kept;    // indexed by edge
  std::vector<Block> blocks;
  std::vector<std::vector<LaurentMatrix>> vertex_rep;  // [vertex][block]
  std::vector<std::vector<LaurentMatrix>> edge_rep;    // [edge][block]

  std::vector<LaurentMatrix> rep_of_word(const Graph& g, const Word& w) const;
};

Representation build_representation(const Graph& g, const Tolerances& tol = {},
                                    const Limits& limits = {});

/** Per-source weights of a trace state; aligned with Representation::blocks. */
struct TraceWeights {
  std::vector<double> weight;            // convex weights per block
  std::vector<CircleMeasure> measures;   // used for circle blocks only
};

std::complex<double> trace_eval(const Graph& g, const Representation& rep,
                                const TraceWeights& weights, const Word& w);

}  // namespace kmsgraph
