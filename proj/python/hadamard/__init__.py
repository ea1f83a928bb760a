"""Geodesic means and finite-horizon convergence diagnostics in Hadamard spaces."""

import json

from ._core import (
    Error,
    GeometryError,
    HorizonError,
    ParseError,
    Sequence,
    Space,
    WindowError,
    abel_identity_check,
    almost_periodicity,
    asymptotic_center,
    classify,
    combine,
    distance,
    karcher_mean,
    limit_candidate,
    midpoint,
    quasilin,
    reference_corpus,
    vp_table,
)
from ._core import generate as _generate


def generate(spec):
    """Generate a sequence from a spec given as a dict or a JSON string."""
    if not isinstance(spec, str):
        spec = json.dumps(spec)
    return _generate(spec)


__all__ = [
    "Error",
    "GeometryError",
    "HorizonError",
    "ParseError",
    "Sequence",
    "Space",
    "WindowError",
    "abel_identity_check",
    "almost_periodicity",
    "asymptotic_center",
    "classify",
    "combine",
    "distance",
    "generate",
    "karcher_mean",
    "limit_candidate",
    "midpoint",
    "quasilin",
    "reference_corpus",
    "vp_table",
]
