"""Dynamic approximate maximum weight matching (Python front end).

Weights cross the boundary as exact rational strings; this module converts them
to and from ``fractions.Fraction``.
"""

import json
from fractions import Fraction

from . import _dynmwm
from ._dynmwm import BudgetExceeded, UpdateError, registered_solvers

__all__ = [
    "Solver",
    "mwm",
    "mcm_size",
    "gen_trace",
    "run_trace",
    "unfold_stats",
    "certify_partition",
    "certify_alpha",
    "registered_solvers",
    "UpdateError",
    "BudgetExceeded",
]


def _w(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    return str(x)


def _edges_out(es):
    return [(u, v, Fraction(w)) for u, v, w in es]


def _edges_in(es):
    return [(u, v, _w(w)) for u, v, w in es]


class Solver:
    """A fully dynamic matching solver chosen by registry name."""

    def __init__(self, solver="oracle", eps=Fraction(1, 10), inner="oracle", depth=1, unit=1,
                 max_weight=1000000, max_degree=0):
        self._s = _dynmwm.Solver(solver, _w(eps), inner, depth, _w(unit), _w(max_weight), max_degree)

    @property
    def name(self):
        return self._s.name

    def insert(self, u, v, w):
        removed, added = self._s.insert(u, v, _w(w))
        return _edges_out(removed), _edges_out(added)

    def erase(self, u, v):
        removed, added = self._s.erase(u, v)
        return _edges_out(removed), _edges_out(added)

    def matching(self):
        return _edges_out(self._s.matching())

    def weight(self):
        return Fraction(self._s.weight())

    def vertex_match(self, v):
        return self._s.vertex_match(v)


def mwm(edges):
    weight, chosen = _dynmwm.mwm(_edges_in(edges))
    return Fraction(weight), _edges_out(chosen)


def mcm_size(edges):
    return _dynmwm.mcm_size(_edges_in(edges))


def gen_trace(model="uniform-random", **kw):
    return [(op, u, v, Fraction(w), seq) for op, u, v, w, seq in _dynmwm.gen_trace(model, **kw)]


def run_trace(solver, trace, eps=Fraction(1, 10), inner="oracle", depth=1, max_weight=1000000, max_degree=0,
              oracle_audit=False):
    """Returns (summary dict, metrics CSV text)."""
    raw = [(op, u, v, _w(w), seq) for op, u, v, w, seq in trace]
    summary, csv = _dynmwm.run_trace(solver, raw, _w(eps), inner, depth, _w(max_weight), max_degree, oracle_audit)
    return json.loads(summary), csv


def unfold_stats(edges, W):
    """(vertex count, edge count, maximum cardinality matching size) of the unfolded graph."""
    return _dynmwm.unfold_stats(_edges_in(edges), W)


def certify_partition(N, delta):
    return _dynmwm.certify_partition(N, _w(delta))


def certify_alpha(alpha=Fraction(2, 3), N=6, delta=Fraction(1, 63), multiplier=3):
    return _dynmwm.certify_alpha(_w(alpha), N, _w(delta), multiplier)
