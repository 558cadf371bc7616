"""Exact admissibility and Bayes certificates for finite decision problems,
with Levi-Civita field arithmetic for infinitesimal priors.

Rationals come back as ``fractions.Fraction``; Levi-Civita values as ``LC``.
"""

import json
from fractions import Fraction

from ._core import (
    LC,
    CertificateFailure,
    Error,
    NotInfinite,
    ParseError,
    SchemaError,
    ZeroDivision,
    run_cli,
)
from . import _core

__all__ = [
    "LC",
    "CertificateFailure",
    "Error",
    "NotInfinite",
    "ParseError",
    "SchemaError",
    "ZeroDivision",
    "bernoulli_boundary",
    "classify",
    "normal_location",
    "risk",
    "run_cli",
    "synthesize_prior",
]


def _encode(obj):
    return obj if isinstance(obj, str) else json.dumps(obj, default=str)


def risk(problem, procedure):
    """Risk vector of one procedure, one Fraction per state."""
    return [Fraction(r) for r in json.loads(_core.risk_json(_encode(problem), _encode(procedure)))]


def classify(problem, procedures):
    """Classification reports (admissibility, game value, witness prior) in input order."""
    return json.loads(_core.classify_json(_encode(problem), _encode(procedures)))


def synthesize_prior(problem, procedure):
    """Least favourable prior and game value against one procedure."""
    return json.loads(_core.synthesize_prior_json(_encode(problem), _encode(procedure)))


def normal_location(dim=1, order=8):
    """Normal-location report with K = eps^-1."""
    return json.loads(_core.normal_location_json(dim, order))


def bernoulli_boundary(order=8):
    """Bernoulli boundary report for the rule (0, 0)."""
    return json.loads(_core.bernoulli_boundary_json(order))
