"""Constants shared by the compiled and pure-Python kernels.

Random numbers come from xorshift64* (Vigna, 2016):

    x ^= x >> 12; x ^= x << 25; x ^= x >> 27; out = x * 0x2545F4914F6CDD1D

with all arithmetic mod 2**64.  A user seed is turned into a nonzero state by
one round of splitmix64.  A uniform double in [0, 1) is ``(out >> 11) * 2**-53``.
"""
from __future__ import annotations

import math

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
XORSHIFT_MULT = 0x2545F4914F6CDD1D
INV_2_53 = 1.0 / 9007199254740992.0

POISSON_TABLE_MAX = 40


def splitmix64(x: int) -> int:
    z = (x + GOLDEN) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def seed_state(seed: int) -> int:
    s = splitmix64(seed & MASK64)
    return s if s else GOLDEN


def derive_seed(seed: int, index: int) -> int:
    """Seed of the ``index``-th independent trial of a batch seeded with ``seed``."""
    return splitmix64((seed + (index + 1) * GOLDEN) & MASK64)


def _poisson1_cdf() -> list[float]:
    out = []
    acc = 0.0
    term = math.exp(-1.0)
    for k in range(POISSON_TABLE_MAX + 1):
        acc += term
        out.append(acc)
        term /= k + 1
    return out


# cumulative Poisson(1) pmf for k = 0..40; the tail beyond is < 1e-48
POISSON1_CDF = _poisson1_cdf()
