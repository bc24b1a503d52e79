"""Exact rational approximation of mixed integer quadratic programs.

Instances are plain text in the ``miqp-instance v1`` format. Numbers go in and
come out as :class:`fractions.Fraction`; floats are rejected.
"""

from fractions import Fraction
from pathlib import Path

from . import _emiqp
from ._emiqp import brute_force_max_cut, sqrt_bounds, tr_minimize, weak_epsilon

__all__ = [
    "Instance",
    "brute_force_max_cut",
    "sqrt_bounds",
    "tr_minimize",
    "weak_epsilon",
]


class Instance:
    """A parsed instance file."""

    def __init__(self, text):
        self.text = _emiqp.normalize(text)

    @classmethod
    def load(cls, path):
        return cls(Path(path).read_text())

    def save(self, path):
        Path(path).write_text(self.text)

    @classmethod
    def maxcut(cls, vertices, edges):
        """Edges are (u, v) or (u, v, weight) tuples."""
        full = [(e[0], e[1], e[2] if len(e) > 2 else 1) for e in edges]
        text, _ = _emiqp.gen_maxcut(vertices, full)
        return cls(text)

    @classmethod
    def cvp(cls, basis, target, radius):
        return cls(_emiqp.gen_cvp(basis, target, radius))

    @classmethod
    def random(cls, kind, seed, n, p, range=5):
        return cls(_emiqp.gen_random(kind, seed, n, p, range))

    @property
    def meta(self):
        out = {}
        for line in self.text.splitlines():
            if line.startswith("meta "):
                _, key, value = line.split(" ", 2)
                out[key] = value
        return out

    def solve(self, eps=None, psi=62):
        """Approximate minimizer; eps may be omitted for polytope instances."""
        return _emiqp.solve(self.text, eps, psi)

    def oracle(self, bits=40):
        return _emiqp.oracle(self.text, bits)

    def verify(self, point, eps, bits=40, slack=0):
        return _emiqp.verify(self.text, point, eps, bits, slack)

    def __eq__(self, other):
        return isinstance(other, Instance) and self.text == other.text

    def __repr__(self):
        first = self.text.splitlines()[:3]
        return f"Instance({' | '.join(first)} ...)"
