"""Weighted envy-freeness with subsidies.

Instances and allocations use the same JSON layout as the command-line tool,
passed here as plain dicts. Rationals come back as ``fractions.Fraction``.
"""

import json
from fractions import Fraction

from . import _core
from ._core import WefsubError

__all__ = [
    "WefsubError",
    "error_kind",
    "check",
    "solve",
    "vcg",
    "adjusted_winner",
    "mef",
    "fixture_instance",
    "fixture_names",
    "verify_fixture",
]

_RATIONAL_KEYS = {"subsidies", "payments", "vcg_payments", "upfront_constant", "guarantee", "split", "water_level"}


def _encode(doc):
    return doc if isinstance(doc, str) else json.dumps(doc, default=str)


def _fractions(value):
    if value is None:
        return None
    if isinstance(value, list):
        return [Fraction(v) for v in value]
    return Fraction(value)


def _decode(text):
    doc = json.loads(text)
    for key in _RATIONAL_KEYS & doc.keys():
        doc[key] = _fractions(doc[key])
    return doc


def _allocation(allocation):
    if isinstance(allocation, dict):
        return allocation
    return {"bundles": [list(bundle) for bundle in allocation]}


def error_kind(error):
    """Kind name (e.g. "WeightSumError") carried by a WefsubError."""
    return error.args[1] if len(error.args) > 1 else None


def check(instance, allocation):
    """Envy-freeability, minimum subsidies and fairness predicates."""
    return _decode(_core.check(_encode(instance), _encode(_allocation(allocation))))


def solve(instance, algorithm="auto"):
    return _decode(_core.solve(_encode(instance), algorithm))


def vcg(instance, upfront=None):
    return _decode(_core.vcg(_encode(instance), None if upfront is None else str(Fraction(upfront))))


def adjusted_winner(instance):
    return _decode(_core.adjusted_winner(_encode(instance)))


def mef(instance, allocation, budget):
    return _decode(_core.mef(_encode(instance), _encode(_allocation(allocation)), str(Fraction(budget))))


def fixture_instance(name):
    return json.loads(_core.fixture_instance(name))


def fixture_names():
    return list(_core.fixture_names())


def verify_fixture(name):
    """(passed, claim) for a registered fixture."""
    return _core.verify_fixture(name)
