#pragma once

#include <utility>
#include <vector>

#include "kmsgraph/graph.hpp"
#include "kmsgraph/spectral.hpp"
#include "kmsgraph/types.hpp"

namespace kmsgraph {

/** Entrywise-nonnegative vector over all vertices, usually sum-normalized. */
struct HarmonicVector {
  std::vector<double> values;

  double at(int v) const { return values.at(v); }
  double sum() const;
  std::vector<int> support(double threshold = 1e-11) const;
};

enum class Harmonicity { Harmonic, AlmostHarmonic, Neither };

/**
 * Harmonic: psi = B psi everywhere. AlmostHarmonic: equality may fail only
 * at sinks, and there psi >= (B psi) still holds trivially since rows of
 * sinks are zero; concretely (B psi)_v = psi_v off sinks and
 * (B psi)_s <= psi_s at sinks.
 */
Harmonicity is_almost_harmonic(const Graph& g, const WeightMatrix& b,
                               const HarmonicVector& psi, const Tolerances& tol = {});

/** Whether sum_n (A^n)_{., s} converges, i.e. the closure away from s is subcritical. */
bool is_summable_sink(const Graph& g, double beta, int sink, const Tolerances& tol = {});

/** Whether C is critical (radius 1) and everything upstream of it subcritical. */
bool is_harmonic_component(const Graph& g, double beta, const Component& c,
                           const Tolerances& tol = {});

struct ExtremePoint {
  enum class Kind { SinkVector, ComponentVector };
  Kind kind;
  int sink = -1;        // valid for SinkVector
  Component component;  // valid for ComponentVector
  HarmonicVector vector;
};

/** Normalized almost-harmonic vector concentrated on the closure of a summable sink. */
ExtremePoint phi_sink(const Graph& g, double beta, int sink, const Tolerances& tol = {});

/**
 * Normalized harmonic vector of a critical component: Perron data on the
 * component, extended upstream through the subcritical closure.
 */
ExtremePoint phi_component(const Graph& g, double beta, const Component& c,
                           const Tolerances& tol = {});

/** All extreme points at this inverse temperature: components first, then sinks. */
std::vector<ExtremePoint> extreme_points(const Graph& g, double beta,
                                         const Tolerances& tol = {});

struct SimplexDecomposition {
  std::vector<std::pair<Component, double>> component_terms;
  std::vector<std::pair<int, double>> sink_terms;
  double residual = 0.0;
};

/**
 * Barycentric coordinates of a normalized almost-harmonic vector: sink
 * coefficients from the defect, component coefficients by matching the
 * harmonic remainder against minimal critical components of its support.
 */
SimplexDecomposition decompose(const Graph& g, double beta, const HarmonicVector& psi,
                               const Tolerances& tol = {});

}  // namespace kmsgraph
