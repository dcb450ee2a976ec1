"""Seeded random instances: rationals, quaternions, series, matrices, weights.

Every rational component is drawn uniformly from the distinct values
``p/q`` with ``|p| <= 4`` and ``1 <= q <= 3`` (21 values), using
``random.Random``.
"""

from __future__ import annotations

import random

from .graph import Graph
from .quaternion import GaussianRational, Q, Quaternion
from .series import GAUSSIAN, QUATERNION, RATIONAL, TruncatedSeries, coerce
from .smatrix import SeriesMatrix

SMALL_RATIONALS = tuple(sorted({Q(p, q) for p in range(-4, 5) for q in range(1, 4)}))
NONZERO_RATIONALS = tuple(r for r in SMALL_RATIONALS if r)


def rational(rng: random.Random):
    return rng.choice(SMALL_RATIONALS)


def quaternion(rng: random.Random, nonzero: bool = False) -> Quaternion:
    while True:
        q = Quaternion(*(rational(rng) for _ in range(4)))
        if q or not nonzero:
            return q


def gaussian(rng: random.Random, nonzero: bool = False) -> GaussianRational:
    while True:
        z = GaussianRational(rational(rng), rational(rng))
        if z or not nonzero:
            return z


def coefficient(rng: random.Random, ring: str, nonzero: bool = False):
    if ring == QUATERNION:
        return quaternion(rng, nonzero)
    if ring == GAUSSIAN:
        return gaussian(rng, nonzero)
    return rng.choice(NONZERO_RATIONALS) if nonzero else rational(rng)


def series(rng: random.Random, order: int, ring: str = QUATERNION, constant=None) -> TruncatedSeries:
    """Random series; ``constant`` pins ``c_0`` ("unit" draws any nonzero value)."""
    cs = [coefficient(rng, ring) for _ in range(order + 1)]
    if constant == "unit":
        cs[0] = coefficient(rng, ring, nonzero=True)
    elif constant is not None:
        cs[0] = coerce(constant, ring)
    return TruncatedSeries(cs, order, ring)


def matrix(rng: random.Random, rows: int, cols: int, order: int, ring: str = QUATERNION) -> SeriesMatrix:
    return SeriesMatrix([[series(rng, order, ring) for _ in range(cols)] for _ in range(rows)], order)


def constant_matrix(rng: random.Random, n: int, ring: str = QUATERNION) -> list[list]:
    return [[coefficient(rng, ring) for _ in range(n)] for _ in range(n)]


def arc_weights(G: Graph, rng: random.Random) -> Graph:
    return G.with_weights([quaternion(rng) for _ in G.arcs])


def arc_permutation(G: Graph, rng: random.Random) -> list[int]:
    perm = list(range(len(G.arcs)))
    rng.shuffle(perm)
    return perm


RINGS = (RATIONAL, GAUSSIAN, QUATERNION)
