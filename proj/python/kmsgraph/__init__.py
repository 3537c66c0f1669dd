"""Equilibrium and ground state structure of weighted graph algebras.

The heavy lifting lives in the compiled ``_core`` module; this package adds
ergonomic wrappers that accept and return plain Python objects. Reports come
back as dicts mirroring the command line tool's JSON output.
"""

import json as _json

from ._core import (
    Error,
    Graph,
    GraphDocument,
    analyze_text,
    beta_c,
    circular_normalizer,
    extreme_points,
    omega_eval,
    spectrum_ascii,
    spectrum_svg,
)
from . import _core as _core

__version__ = "0.1.0"

__all__ = [
    "Error",
    "Graph",
    "GraphDocument",
    "analyze",
    "analyze_text",
    "beta_c",
    "circular_normalizer",
    "classify",
    "extreme_points",
    "ground",
    "kms_residual",
    "load",
    "loads",
    "omega_eval",
    "spectrum",
    "spectrum_ascii",
    "spectrum_svg",
    "state_eval",
    "trace_eval",
    "trace_structure",
]


def load(path, profile=""):
    """Build the graph stored at ``path`` under the named weight profile."""
    return GraphDocument.load(str(path)).build(profile)


def loads(text, profile=""):
    """Build a graph from document text (line-oriented or JSON)."""
    return GraphDocument.parse(text).build(profile)


def _ensure_json(spec):
    return spec if isinstance(spec, str) else _json.dumps(spec)


def analyze(graph):
    """Structural summary: vertices, edges, sinks and components."""
    return _json.loads(_core.analyze_json(graph))


def classify(graph, beta):
    """Equilibrium structure at one inverse temperature."""
    return _json.loads(_core.classify_json(graph, beta))


def spectrum(graph):
    """Inverse temperatures admitting equilibria, row per source."""
    return _json.loads(_core.spectrum_json(graph))


def trace_structure(graph):
    """Zero-temperature quotient: sources, multiplicities and summands."""
    return _json.loads(_core.trace_json(graph))


def ground(graph):
    """Zero-temperature limit census: potentials, tight edges, orbits."""
    return _json.loads(_core.ground_json(graph))


def state_eval(graph, beta, spec, mu, nu=""):
    """Value of a mixed equilibrium state on the word S_mu S_nu^*.

    ``spec`` is a dict (or JSON string) with optional keys ``sinks``,
    ``components`` and ``circles``; paths are comma-separated edge ids or
    ``@vertex`` for a trivial path.
    """
    return _core.state_eval(graph, beta, _ensure_json(spec), mu, nu)


def kms_residual(graph, beta, spec, mu1, nu1, mu2, nu2):
    """Equilibrium-condition residual of a state on one pair of words."""
    return _core.kms_residual(graph, beta, _ensure_json(spec), mu1, nu1, mu2, nu2)


def trace_eval(graph, weights, mu, nu=""):
    """Value of a trace state on the word S_mu S_nu^*."""
    return _core.trace_eval(graph, _ensure_json(weights), mu, nu)
