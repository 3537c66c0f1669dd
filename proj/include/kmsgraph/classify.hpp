#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kmsgraph/graph.hpp"
#include "kmsgraph/types.hpp"

namespace kmsgraph {

/**
 * Inverse temperature interval attached to a circular component or a sink:
 * the whole line, or an open ray pinned at the nearest critical value of
 * the surrounding closure.
 */
struct BetaInterval {
  enum class Kind { All, AboveEndpoint, BelowEndpoint };
  Kind kind = Kind::All;
  double endpoint = 0.0;

  bool contains(double beta, double margin) const {
    switch (kind) {
      case Kind::All: return true;
      case Kind::AboveEndpoint: return beta > endpoint + margin;
      case Kind::BelowEndpoint: return beta < endpoint - margin;
    }
    return false;
  }
};

/**
 * Critical inverse temperature of a component with uniformly signed loop
 * weights: the unique root of rho(A(beta)^C) = 1. Circular components with
 * nonzero loop weight cross at exactly 0. Throws NotApplicable when the
 * sign profile admits no root (zero or mixed loops).
 */
double beta_c(const Graph& g, const Component& c, const Tolerances& tol = {},
              const Limits& limits = {});

struct ComponentVerdict {
  enum class Kind {
    PositiveSide,   // non-circular, equilibrium at a single beta_c > 0
    NegativeSide,   // non-circular, single beta_c < 0
    CircularFamily, // circular with zero loop weight, circle of states per beta
    None,
  };
  Component component;
  std::string label;  // C1, C2, ... by least-member order
  Kind kind = Kind::None;
  std::optional<double> critical_beta;  // PositiveSide / NegativeSide
  bool admits_positive = false;         // CircularFamily only
  bool admits_negative = false;
  std::optional<BetaInterval> interval;  // CircularFamily only
  std::string reason;                    // None only
};

struct SinkVerdict {
  int sink = -1;
  bool admits_positive = false;
  bool admits_negative = false;
  std::optional<BetaInterval> interval;  // absent when no side admits states
  std::string reason;
};

ComponentVerdict classify_component(const Graph& g, const Component& c,
                                    const Tolerances& tol = {}, const Limits& limits = {});

SinkVerdict classify_sink(const Graph& g, int sink, const Tolerances& tol = {},
                          const Limits& limits = {});

/** Sources of equilibrium states at a fixed nonzero inverse temperature. */
struct KmsSets {
  double beta = 0.0;
  std::vector<ComponentVerdict> point_components;   // beta equals their beta_c
  std::vector<ComponentVerdict> circle_components;  // beta interior to their interval
  std::vector<int> summable_sinks;
};

KmsSets kms_sets(const Graph& g, double beta, const Tolerances& tol = {},
                 const Limits& limits = {});

/** One row of the equilibrium diagram. */
struct SpectrumRow {
  enum class Kind { Absent, FullLine, OpenRay, Point };
  std::string source;  // sink vertex id or component label
  bool is_sink = false;
  Kind kind = Kind::Absent;
  int direction = 0;       // OpenRay: +1 up, -1 down
  double endpoint = 0.0;   // OpenRay endpoint or Point position
  bool circle_family = false;
  std::string endpoint_label;  // closed form when recognizable
};

struct SpectrumReport {
  std::vector<SpectrumRow> rows;  // sinks first, then components
  std::vector<ComponentVerdict> component_verdicts;
  std::vector<SinkVerdict> sink_verdicts;
};

SpectrumReport spectrum(const Graph& g, const Tolerances& tol = {},
                        const Limits& limits = {});

/**
 * Closed-form rendering of +-log(k)/m for small integers, or "" when the
 * value is not within tol.classification of one.
 */
std::string closed_form_label(double value, const Tolerances& tol = {});

/** Components labeled C1, C2, ... in least-member order. */
std::string component_label(const Graph& g, const Component& c);

/** The component carrying the given label; throws InvalidInput. */
Component find_component(const Graph& g, const std::string& label);

}  // namespace kmsgraph
