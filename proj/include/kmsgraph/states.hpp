#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "kmsgraph/graph.hpp"
#include "kmsgraph/harmonic.hpp"
#include "kmsgraph/types.hpp"

namespace kmsgraph {

/**
 * Algebra word S_mu S_nu^*; valid when both paths terminate at the same
 * vertex. The distinguished zero word absorbs products of incomparable
 * words.
 */
struct Word {
  Path mu;
  Path nu;
  bool zero = false;

  static Word zero_word() {
    Word w;
    w.zero = true;
    return w;
  }
  static Word projection(int vertex) {
    return Word{Path::trivial(vertex), Path::trivial(vertex), false};
  }

  bool valid(const Graph& g) const {
    return zero || (mu.valid(g) && nu.valid(g) && mu.range(g) == nu.range(g));
  }
  bool is_projection(const Graph& g) const {
    return !zero && mu.empty() && nu.empty() && mu.base == nu.base;
  }
  /** Adjoint swaps the legs. */
  Word adjoint() const { return zero ? *this : Word{nu, mu, false}; }
};

/** Product in the path algebra: splice when one s-leg extends the other, else zero. */
Word word_multiply(const Graph& g, const Word& lhs, const Word& rhs);

/**
 * Value of the diagonal-type state attached to an almost-harmonic vector:
 * delta_{mu,nu} exp(-beta weight(mu)) psi(range mu).
 */
double eval_gauge_invariant(const Graph& g, const HarmonicVector& psi, double beta,
                            const Word& w);

/** Circular component with a distinguished base vertex and primitive loop. */
struct CircularData {
  Component component;
  int base = -1;
  Path loop;
  int period = 0;

  static CircularData from_component(const Graph& g, const Component& c);
};

/**
 * Shared precomputation for the circle of states over a circular component:
 * the normalizer and the first-passage weight column at the base vertex.
 * Construction fails when the series diverges at this beta or the loop
 * weight is nonzero.
 */
class CircularStateContext {
public:
  CircularStateContext(const Graph& g, double beta, const CircularData& data,
                       const Tolerances& tol = {});

  double normalizer() const { return z_; }
  /** Sum of first-passage path weights from v into the base; 1 at the base itself. */
  double passage_weight(int vertex) const { return zcol_.at(vertex); }

  std::complex<double> evaluate(std::complex<double> lambda, const Word& w) const;

  /** The k = 0 Fourier layer: the gauge-invariant state of this circle family. */
  HarmonicVector fourier_zero_vector() const;

  const CircularData& data() const { return data_; }
  double beta() const { return beta_; }

private:
  const Graph* g_;
  CircularData data_;
  double beta_ = 0.0;
  double z_ = 0.0;
  std::vector<double> zcol_;  // indexed by vertex, zero off the closure
};

double circular_normalizer(const Graph& g, double beta, const CircularData& data,
                           const Tolerances& tol = {});

std::complex<double> eval_omega_lambda(const Graph& g, double beta,
                                       const CircularData& data,
                                       std::complex<double> lambda, const Word& w,
                                       const Tolerances& tol = {});

/** Probability measure on the circle: normalized Lebesgue or finite atoms. */
struct CircleMeasure {
  enum class Kind { Lebesgue, Atoms };
  struct Atom {
    std::complex<double> lambda;
    double mass = 0.0;
  };
  Kind kind = Kind::Lebesgue;
  std::vector<Atom> atoms;
};

/**
 * Convex description of an equilibrium state at a fixed inverse temperature:
 * weighted sinks, weighted non-circular components, and weighted circular
 * components each carrying a circle measure.
 */
struct KmsStateSpec {
  struct SinkTerm {
    int sink = -1;
    double weight = 0.0;
  };
  struct ComponentTerm {
    Component component;
    double weight = 0.0;
  };
  struct CircularTerm {
    Component component;
    double weight = 0.0;
    CircleMeasure measure;
  };
  double beta = 0.0;
  std::vector<SinkTerm> sinks;
  std::vector<ComponentTerm> point_components;
  std::vector<CircularTerm> circles;
};

/** Reusable evaluator with the per-term vectors and contexts precomputed. */
class StateEvaluator {
public:
  StateEvaluator(const Graph& g, KmsStateSpec spec, const Tolerances& tol = {});
  std::complex<double> operator()(const Word& w) const;
  const KmsStateSpec& spec() const { return spec_; }

private:
  const Graph* g_;
  KmsStateSpec spec_;
  std::vector<HarmonicVector> sink_vectors_;
  std::vector<HarmonicVector> component_vectors_;
  std::vector<CircularStateContext> circle_contexts_;
};

std::complex<double> eval_state(const Graph& g, const KmsStateSpec& spec, const Word& w,
                                const Tolerances& tol = {});

using StateFn = std::function<std::complex<double>(const Word&)>;

/**
 * Equilibrium-condition residual
 * |omega(w1 w2) - exp(-beta (weight(mu1) - weight(nu1))) omega(w2 w1)|.
 */
double kms_check(const Graph& g, const StateFn& omega, double beta, const Word& w1,
                 const Word& w2);

}  // namespace kmsgraph
