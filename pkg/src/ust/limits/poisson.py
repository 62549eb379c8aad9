"""Degree laws on complete graphs and the 1 + Poisson(1) limit."""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Mapping

from ..events import CylinderEvent
from ..graph import GraphError, generate_family
from ..transfer import prob_cylinder

__all__ = [
    "PoissonPlusOne",
    "poisson_plus_one_pmf",
    "kn_degree_pmf",
    "falling_factorial",
    "falling_factorial_moment",
    "KN_MIN",
    "KN_MAX",
]

KN_MIN, KN_MAX = 3, 12


def poisson_plus_one_pmf(k: int) -> float:
    """P(X = k) for X = 1 + Poisson(1)."""
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return 0.0
    return math.exp(-1.0) / math.factorial(k - 1)


class PoissonPlusOne:
    """The law of one plus a Poisson variable of mean one."""

    mean = 2.0

    @staticmethod
    def pmf(k: int) -> float:
        return poisson_plus_one_pmf(k)

    @staticmethod
    def truncated(kmax: int = 40) -> dict[int, float]:
        return {k: poisson_plus_one_pmf(k) for k in range(kmax + 1)}


def falling_factorial(k: int, r: int) -> int:
    out = 1
    for i in range(r):
        out *= k - i
    return out


def falling_factorial_moment(dist: Mapping[int, object], r: int):
    """Sum of p(k) k(k-1)...(k-r+1); exact when the probabilities are exact."""
    if r < 0:
        raise ValueError("r must be >= 0")
    return sum(p * falling_factorial(k, r) for k, p in dist.items())


def kn_degree_pmf(n: int) -> dict[int, Fraction]:
    """Exact law of the tree degree of a fixed vertex of K_n.

    By symmetry each k-subset of the n-1 incident edges is equally likely to
    be exactly the tree's edges at the vertex, so one cylinder determinant
    per k suffices.
    """
    if not KN_MIN <= n <= KN_MAX:
        raise GraphError(f"n must lie in [{KN_MIN}, {KN_MAX}], got {n}")
    g = generate_family("complete", n)
    star = [eid for eid, _ in g.adjacency[0]]
    pmf = {}
    for k in range(n):
        ev = CylinderEvent(tuple(star[:k]), tuple(star[k:]))
        pmf[k] = math.comb(n - 1, k) * prob_cylinder(g, ev, exact=True)
    return pmf
