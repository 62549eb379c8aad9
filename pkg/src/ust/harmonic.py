"""Discrete harmonic analysis on weighted graphs.

The excess (Laplacian) operator is ``Δf(v) = Σ_{e=vy} [f(v) - f(y)] w(e)``.
Self-edges contribute nothing to it.  Potentials are solved by grounding one
vertex and eliminating its row and column, which removes the one-dimensional
nullspace of constants.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .graph import Graph, GraphError, is_connected
from .linalg import solve, use_exact

__all__ = [
    "Potential",
    "laplacian",
    "excess",
    "unit_current_potential",
    "hitting_voltage",
    "effective_resistance",
    "expected_visits",
    "green_matrix",
    "torus_potential",
    "torus_potential_table",
    "torus_voltage_table",
    "circulant_eigenvalues",
    "circulant_determinant",
]

FOURIER_IMAG_TOL = 1e-9


@dataclass(frozen=True)
class Potential:
    """Vertex-indexed voltages; ``values[reference]`` is the pinned vertex."""

    values: tuple
    reference: int

    def __getitem__(self, v: int):
        return self.values[v]

    def __len__(self) -> int:
        return len(self.values)

    def shifted(self, c) -> "Potential":
        return Potential(tuple(x + c for x in self.values), self.reference)


def _require_connected(g: Graph) -> None:
    if g.memo.get("connected") is None:
        g.memo["connected"] = is_connected(g)
    if not g.memo["connected"]:
        raise GraphError("graph is disconnected")


def _check_vertex(g: Graph, *vs: int) -> None:
    for v in vs:
        if not 0 <= v < g.vertex_count:
            raise GraphError(f"vertex {v} out of range")


def laplacian(g: Graph, exact: bool | None = None) -> list[list]:
    ex = use_exact(g.vertex_count, exact)
    n = g.vertex_count
    zero = Fraction(0) if ex else 0.0
    m = [[zero] * n for _ in range(n)]
    for e in g.edges:
        if e.is_loop:
            continue
        w = e.weight if ex else float(e.weight)
        m[e.u][e.u] += w
        m[e.v][e.v] += w
        m[e.u][e.v] -= w
        m[e.v][e.u] -= w
    return m


def excess(g: Graph, f: Sequence) -> list:
    """The excess Δf at every vertex."""
    out = [f[0] * 0 for _ in range(g.vertex_count)]
    for e in g.edges:
        if e.is_loop:
            continue
        d = (f[e.u] - f[e.v]) * e.weight
        out[e.u] += d
        out[e.v] -= d
    return out


def _grounded_solve(g: Graph, ground: int, rhs_cols: list[list], ex: bool) -> list[list]:
    """Solve Δ restricted to V minus ``ground`` for each column of ``rhs_cols``.

    ``rhs_cols[c][v]`` is the c-th right-hand side at vertex v.  Returns
    solutions in the same layout with 0 at ``ground``.
    """
    n = g.vertex_count
    lap = laplacian(g, ex)
    keep = [v for v in range(n) if v != ground]
    red = [[lap[i][j] for j in keep] for i in keep]
    rhs = [[col[i] for col in rhs_cols] for i in keep]
    sol = solve(red, rhs, ex)
    zero = Fraction(0) if ex else 0.0
    out = []
    for c in range(len(rhs_cols)):
        vals = [zero] * n
        for r, v in enumerate(keep):
            vals[v] = sol[r][c]
        out.append(vals)
    return out


def unit_current_potential(g: Graph, x: int, y: int, exact: bool | None = None) -> Potential:
    """Voltages φ with Δφ = δ_x - δ_y, grounded so that φ(y) = 0."""
    _check_vertex(g, x, y)
    if x == y:
        raise GraphError("source and sink must differ")
    _require_connected(g)
    ex = use_exact(g.vertex_count, exact)
    one, zero = (Fraction(1), Fraction(0)) if ex else (1.0, 0.0)
    rhs = [zero] * g.vertex_count
    rhs[x] = one
    rhs[y] = -one
    (vals,) = _grounded_solve(g, y, [rhs], ex)
    return Potential(tuple(vals), y)


def hitting_voltage(g: Graph, a: int, b: int, exact: bool | None = None) -> Potential:
    """h(a) = 1, h(b) = 0, harmonic elsewhere.

    h(x) is the probability that a walk from x reaches a before b.
    """
    phi = unit_current_potential(g, a, b, exact)
    top = phi[a]
    return Potential(tuple(v / top for v in phi.values), b)


def effective_resistance(g: Graph, a: int, b: int, exact: bool | None = None):
    phi = unit_current_potential(g, a, b, exact)
    return phi[a] - phi[b]


def expected_visits(g: Graph, a: int, b: int, x: int, exact: bool | None = None):
    """Expected visits to x by a walk from a before it first hits b.

    Computed as d(x) φ_ab(x); d counts self-edges twice, matching the walk's
    lazy steps.
    """
    _check_vertex(g, x)
    phi = unit_current_potential(g, a, b, exact)
    if x == b:
        return phi[b] * 0
    d = g.degree(x)
    return phi[x] * (d if isinstance(phi[x], Fraction) else float(d))


def green_matrix(g: Graph, exact: bool | None = None) -> list[list]:
    """``G[z][x]`` = voltage at z for unit current from x to the last vertex.

    Cached on the graph.  φ_xy(z) - φ_xy(w) = G[z][x] - G[z][y] - G[w][x] + G[w][y].
    """
    ex = use_exact(g.vertex_count, exact)
    key = ("green", ex)
    if key in g.memo:
        return g.memo[key]
    _require_connected(g)
    n = g.vertex_count
    ground = n - 1
    one, zero = (Fraction(1), Fraction(0)) if ex else (1.0, 0.0)
    cols = []
    for x in range(n):
        col = [zero] * n
        if x != ground:
            col[x] = one
            col[ground] = -one
        cols.append(col)
    if n == 1:
        sols = [[zero]]
    else:
        sols = _grounded_solve(g, ground, cols, ex)
    gm = [[sols[x][z] for x in range(n)] for z in range(n)]
    g.memo[key] = gm
    return gm


# ---- closed-form torus solution --------------------------------------------

def torus_potential(n: int, i: int, j: int) -> float:
    """Unit-current potential on the n-torus from (0,0) to (1,0), by Fourier sum.

    V(i,j) = (1/n²) Σ_{(k,l)≠(0,0)} (1 - ζ^{-k}) ζ^{ki+lj} / λ_kl with
    λ_kl = 4 - 2cos(2πk/n) - 2cos(2πl/n), shifted so V(1,0) = 0.
    """
    if n < 3:
        raise GraphError("torus needs n >= 3")
    return _torus_raw(n, i, j) - _torus_raw(n, 1, 0)


def _torus_raw(n: int, i: int, j: int) -> float:
    re = 0.0
    im = 0.0
    two_pi_n = 2.0 * math.pi / n
    for k in range(n):
        ck = math.cos(two_pi_n * k)
        for l in range(n):
            if k == 0 and l == 0:
                continue
            lam = 4.0 - 2.0 * ck - 2.0 * math.cos(two_pi_n * l)
            # (1 - ζ^{-k}) ζ^{ki+lj} = ζ^{ki+lj} - ζ^{k(i-1)+lj}
            t1 = two_pi_n * ((k * i + l * j) % n)
            t2 = two_pi_n * ((k * (i - 1) + l * j) % n)
            re += (math.cos(t1) - math.cos(t2)) / lam
            im += (math.sin(t1) - math.sin(t2)) / lam
    re /= n * n
    im /= n * n
    if abs(im) > FOURIER_IMAG_TOL:
        raise ArithmeticError(f"Fourier sum left imaginary residue {im:.3g}")
    return re


def torus_potential_table(n: int) -> list[list[float]]:
    """``table[j][i]`` = torus_potential(n, i, j)."""
    return [[torus_potential(n, i, j) for i in range(n)] for j in range(n)]


def torus_voltage_table(values: Sequence, n: int) -> list[list]:
    """Lay out vertex values of the n-torus as printed rows, top row first."""
    from .graph import torus_vertex

    return [[values[torus_vertex(n, i, j)] for i in range(n)] for j in reversed(range(n))]


# ---- circulants ------------------------------------------------------------

def circulant_eigenvalues(coeffs: Sequence) -> list[complex]:
    """Eigenvalues λ_j = Σ_t a_t ζ^{jt}, ζ = exp(2πi/k), of M(i,j) = a((i-j) mod k)."""
    k = len(coeffs)
    if k < 1:
        raise ValueError("need at least one coefficient")
    out = []
    for j in range(k):
        re = 0.0
        im = 0.0
        for t, a in enumerate(coeffs):
            ang = 2.0 * math.pi * ((j * t) % k) / k
            a = float(a)
            re += a * math.cos(ang)
            im += a * math.sin(ang)
        out.append(complex(re, im))
    return out


def circulant_determinant(coeffs: Sequence) -> float:
    prod = complex(1.0, 0.0)
    for lam in circulant_eigenvalues(coeffs):
        prod *= lam
    if abs(prod.imag) > 1e-9 * max(1.0, abs(prod.real)):
        raise ArithmeticError("circulant determinant is not real")
    return prod.real
