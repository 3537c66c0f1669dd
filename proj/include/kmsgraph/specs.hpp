#pragma once

#include <string>

#include "kmsgraph/graph.hpp"
#include "kmsgraph/states.hpp"
#include "kmsgraph/traces.hpp"

namespace kmsgraph {

/**
 * Textual path and state descriptions shared by the command line tool and
 * the Python bindings. All parsers throw Error(InvalidInput) on malformed
 * input.
 */

/**
 * Path spec: a comma-separated list of edge ids, or "@v" for the trivial
 * path at vertex v. The anchor of a nonempty path is the source of its
 * first edge.
 */
Path parse_path_spec(const Graph& g, const std::string& text);

/** Word from two path specs; an empty nu defaults to the range of mu. */
Word parse_word_spec(const Graph& g, const std::string& mu,
                     const std::string& nu = "");

/**
 * Circle measure: {"kind":"lebesgue"} or
 * {"kind":"atoms","atoms":[{"lambda":[re,im],"mass":m}, ...]}.
 */
CircleMeasure parse_measure_json(const std::string& text);

/**
 * Mixed equilibrium state at a fixed inverse temperature:
 *   {"sinks":      [{"sink": id, "weight": w}, ...],
 *    "components": [{"component": label, "weight": w}, ...],
 *    "circles":    [{"component": label, "weight": w, "measure": {...}}, ...]}
 * Components are referred to by their C1, C2, ... labels.
 */
KmsStateSpec parse_state_spec_json(const Graph& g, double beta,
                                   const std::string& text);

/**
 * Trace weights keyed by block source (sink id or component label):
 *   {"weights": {source: w, ...}, "measures": {source: {...}, ...}}
 * Unlisted blocks get weight zero; the weights must sum to one.
 */
TraceWeights parse_trace_weights_json(const Representation& rep,
                                      const std::string& text);

}  // namespace kmsgraph
