"""Exact mistake-bound measures, self-directed learning episodes and agnostic
experiments on finite concept classes.

    >>> import sdlab
    >>> sdlab.m_sd(sdlab.zoo.k_intervals(2, 8))
    4
"""

import json as _json

from ._core import (  # noqa: F401
    ArgumentError,
    BudgetExceeded,
    ConceptClass,
    InvariantViolation,
    ProtocolError,
    StateError,
    UnsupportedError,
    fixed_order_bound,
    labelling_game_value,
    m_best,
    m_sd,
    m_worst,
    online_bound,
    resolve,
    teaching_dim,
    vc_dim,
    zoo,
    zoo_uris,
)
from . import _core


def report(cls, measures=None, class_id="", budget_states=None, budget_ms=None):
    """Dimension report as a dict; budget-limited measures carry lower/upper bounds."""
    if isinstance(cls, str):
        class_id = class_id or cls
        cls = resolve(cls)
    text = _core._report_json(cls, list(measures or []), class_id, budget_states, budget_ms)
    return _json.loads(text)


def simulate(cls, target=None, seed=0):
    """SD-SOA against the optimal adversary (or a fixed target). Returns (steps, summary)."""
    lines = [_json.loads(l) for l in _core._simulate_jsonl(cls, target, seed).splitlines() if l]
    return lines[:-1], lines[-1]


def agnostic(cls, sample=None, lowerbound_k=None, labels="bernoulli", trials=100, seed=0, eta=None):
    """Multiplicative weights over projection experts; returns the regret report as a dict."""
    return _json.loads(_core._agnostic_json(cls, sample, lowerbound_k, labels, trials, seed, eta))


def reproduce(suite="core"):
    """Claim-vs-computed rows of a suite ("core" or "long")."""
    return _core._reproduce(suite)


__all__ = [name for name in dir() if not name.startswith("_")]
