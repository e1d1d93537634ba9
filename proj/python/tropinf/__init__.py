"""Tropical most-likely-trajectory inference for parametric probabilistic PCF."""

from fractions import Fraction

from . import _tropinf
from ._tropinf import (
    Cone,
    DimensionError,
    Error,
    InvariantError,
    ParseError,
    Program,
    Report,
    ResourceExhausted,
    parse,
)
from ._tropinf import TypeError as ProgramTypeError

__all__ = [
    "Cone",
    "DimensionError",
    "Error",
    "InvariantError",
    "ParseError",
    "Program",
    "ProgramTypeError",
    "Report",
    "ResourceExhausted",
    "analyze",
    "enumerate",
    "parse",
    "solve_i1",
    "solve_i2",
]


def _program(p):
    return parse(p) if isinstance(p, str) else p


def _prob_text(x):
    if isinstance(x, str):
        return x
    q = Fraction(x)
    return f"{q.numerator}/{q.denominator}"


def enumerate(program, budget=10000):
    """Return (trajectories, truncated) for all reductions within `budget` steps per path."""
    return _tropinf.enumerate(_program(program), budget)


def analyze(program, target=1, window=2, max_rounds=16, max_entries=200000):
    """Stabilized minimal polynomial with selected trajectories and their cones."""
    return _tropinf.analyze(_program(program), target, window, max_rounds, max_entries)


def solve_i1(report, probs):
    """Most likely trajectories at the given probabilities (str, int, float or Fraction)."""
    out = _tropinf.solve_i1(report, [_prob_text(p) for p in probs])
    out["probability"] = Fraction(out["probability"])
    return out


def solve_i2(report, exponents):
    """Cone of parameters where the trajectory with these exponents is most likely."""
    cone = _tropinf.solve_i2(report, list(exponents))
    return _ConeView(cone)


class _ConeView:
    def __init__(self, cone):
        self._cone = cone

    rows = property(lambda self: self._cone.rows)
    witness = property(lambda self: self._cone.witness)
    strict = property(lambda self: self._cone.strict)
    relative = property(lambda self: self._cone.relative)

    def contains(self, probs):
        return self._cone.contains([_prob_text(p) for p in probs])

    def __repr__(self):
        return "<Cone " + (" and ".join(self.rows) or "whole orthant") + ">"
