"""Four routes to the quaternionic weighted zeta function of a graph, the
classical Ihara reciprocal for unit weights, and a comparator."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable

from .graph import (
    Graph,
    build_edge_matrices,
    build_vertex_matrices,
    enumerate_reduced_lyndon_cycles,
    pair_factor,
)
from .quaternion import Q, Quaternion, format_rational
from .series import QUATERNION, RATIONAL, TruncatedSeries
from . import smatrix
from .smatrix import SeriesMatrix, det_t

METHODS = ("euler", "expgen", "hashimoto", "bass")
MIN_ORDER = {"euler": 1, "expgen": 1, "hashimoto": 1, "bass": 2, "ihara": 2}


@dataclass
class ZetaResult:
    method: str
    z: TruncatedSeries
    z_inv: TruncatedSeries
    cycle_count: int | None = None
    elapsed: float = 0.0


def _check_order(method: str, T: int) -> None:
    need = MIN_ORDER[method]
    if T < need:
        raise ValueError(f"{method} requires order ≥ {need}")


def cycle_factor(w: Quaternion, length: int, T: int) -> TruncatedSeries:
    """``(1 - w t^r)(1 - w t^r)^* = 1 - 2 Re(w) t^r + |w|^2 t^(2r)``."""
    cs = [Q(0)] * (T + 1)
    cs[0] = Q(1)
    if length <= T:
        cs[length] -= 2 * w.real
    if 2 * length <= T:
        cs[2 * length] += w.norm2()
    return TruncatedSeries._raw(cs, T, RATIONAL)


def zeta_euler(G: Graph, T: int) -> ZetaResult:
    """Product of inverted real quadratic factors over Lyndon-indexed reduced cycles."""
    _check_order("euler", T)
    start = time.perf_counter()
    cycles = enumerate_reduced_lyndon_cycles(G, T)
    z = TruncatedSeries.one(T)
    for C in cycles:
        z = z * cycle_factor(C.weight(G), len(C), T).inverse()
    return ZetaResult("euler", z, z.inverse(), len(cycles), time.perf_counter() - start)


def zeta_expgen(G: Graph, T: int) -> ZetaResult:
    """``exp`` of ``sum_C sum_{n : n|C| <= T} 2 Re(w(C)^n) / n  t^(n|C|)``."""
    _check_order("expgen", T)
    start = time.perf_counter()
    cycles = enumerate_reduced_lyndon_cycles(G, T)
    gen = [Q(0)] * (T + 1)
    for C in cycles:
        w = C.weight(G)
        r = len(C)
        power = Quaternion.one()
        for n in range(1, T // r + 1):
            power = power * w
            gen[n * r] += 2 * power.real / n
    z = TruncatedSeries._raw(gen, T, RATIONAL).exp()
    return ZetaResult("expgen", z, z.inverse(), len(cycles), time.perf_counter() - start)


def hashimoto_matrix(G: Graph, T: int) -> SeriesMatrix:
    """``I_2m - (B_w - J_w) t``."""
    B, J = build_edge_matrices(G)
    size = len(G.arcs)
    const = [[Quaternion.one() if r == c else Quaternion.zero() for c in range(size)] for r in range(size)]
    lin = [[J[r][c] - B[r][c] for c in range(size)] for r in range(size)]
    return SeriesMatrix.linear(const, lin, T)


def zeta_hashimoto(G: Graph, T: int) -> ZetaResult:
    """Study determinant of the weighted edge matrix."""
    _check_order("hashimoto", T)
    start = time.perf_counter()
    z_inv = smatrix.sdet_t(hashimoto_matrix(G, T))
    return ZetaResult("hashimoto", z_inv.inverse(), z_inv, None, time.perf_counter() - start)


def bass_matrix(G: Graph, T: int) -> SeriesMatrix:
    """``I_n - t W~ + t^2 D~``."""
    vm = build_vertex_matrices(G, T)
    I = SeriesMatrix.identity(G.n, T, QUATERNION)
    return I - vm.w_tilde.shift(1) + vm.d_tilde.shift(2)


def zeta_bass(G: Graph, T: int) -> ZetaResult:
    """Vertex-sized Study determinant times one real factor per edge."""
    _check_order("bass", T)
    start = time.perf_counter()
    z_inv = smatrix.sdet_t(bass_matrix(G, T))
    for e, _ in G.arc_pairs():
        f = pair_factor(G, e, T)
        prod = f * f.conj()
        if not prod.is_real():
            raise smatrix.RealnessError(f"edge factor is not real: {prod}")
        z_inv = z_inv * prod.real_part()
    return ZetaResult("bass", z_inv.inverse(), z_inv, None, time.perf_counter() - start)


def ihara_zeta(G: Graph, T: int) -> tuple[TruncatedSeries, TruncatedSeries]:
    """Both classical reciprocal formulas with unit weights, via ``det_t``.

    Returns ``(det(I - t(B - J0)), (1 - t^2)^(r-1) det(I - tA + t^2(D - I)))``.
    """
    _check_order("ihara", T)
    size = len(G.arcs)
    B = [[Q(0)] * size for _ in range(size)]
    for e in range(size):
        for f in G.out_arcs[G.terminal(e)]:
            if f != G.inverse[e]:
                B[e][f] = Q(-1)
    ident = [[Q(1) if r == c else Q(0) for c in range(size)] for r in range(size)]
    edge = det_t(SeriesMatrix.linear(ident, B, T))

    n = G.n
    rows = []
    for u in range(n):
        row = []
        for v in range(n):
            cs = [Q(0)] * (T + 1)
            if u == v:
                cs[0] = Q(1)
                cs[2] = Q(len(G.out_arcs[u]) - 1)
            elif any(G.terminal(a) == v for a in G.out_arcs[u]):
                cs[1] = Q(-1)
            row.append(TruncatedSeries._raw(cs, T, RATIONAL))
        rows.append(row)
    vertex = det_t(SeriesMatrix(rows, T))
    one_minus_t2 = TruncatedSeries.one(T) - TruncatedSeries.monomial(Q(1), 2, T)
    bass = vertex * one_minus_t2 ** (G.betti - 1)
    return edge, bass


ROUTES: dict[str, Callable[[Graph, int], ZetaResult]] = {
    "euler": zeta_euler,
    "expgen": zeta_expgen,
    "hashimoto": zeta_hashimoto,
    "bass": zeta_bass,
}


def zeta_ihara_squared(G: Graph, T: int) -> ZetaResult:
    """The squared classical reciprocal, comparable with the quaternionic routes
    when every weight is 1."""
    start = time.perf_counter()
    edge, _ = ihara_zeta(G, T)
    z_inv = edge * edge
    return ZetaResult("ihara", z_inv.inverse(), z_inv, None, time.perf_counter() - start)


ROUTES_WITH_IHARA = {**ROUTES, "ihara": zeta_ihara_squared}


@dataclass
class Discrepancy:
    degree: int
    methods: tuple[str, str]
    values: tuple[str, str]


@dataclass
class ComparisonReport:
    order: int
    results: dict[str, ZetaResult]
    agreement: bool
    first_discrepancy: Discrepancy | None = None
    n: int = 0
    m: int = 0


def first_discrepancy(results: dict[str, ZetaResult]) -> Discrepancy | None:
    """Lowest degree at which two methods' reciprocals differ."""
    names = list(results)
    if not names:
        return None
    T = results[names[0]].z_inv.order
    for k in range(T + 1):
        ref = results[names[0]].z_inv[k]
        for other in names[1:]:
            val = results[other].z_inv[k]
            if val != ref:
                return Discrepancy(k, (names[0], other), (format_rational(ref), format_rational(val)))
    return None


def _run(args: tuple[str, Graph, int]) -> ZetaResult:
    method, G, T = args
    return ROUTES_WITH_IHARA[method](G, T)


def compare_methods(
    G: Graph, T: int, methods: Iterable[str] = METHODS, workers: int = 1
) -> ComparisonReport:
    """Run each selected route and report coefficientwise agreement of ``z_inv``."""
    methods = list(dict.fromkeys(methods))
    if len(methods) < 2:
        raise ValueError("need at least two methods")
    for name in methods:
        if name not in ROUTES_WITH_IHARA:
            raise ValueError(f"unknown method {name!r}")
        _check_order(name, T)
    jobs = [(name, G, T) for name in methods]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as pool:
            outs = list(pool.map(_run, jobs))
    else:
        outs = [_run(job) for job in jobs]
    results = dict(zip(methods, outs))
    disc = first_discrepancy(results)
    return ComparisonReport(T, results, disc is None, disc, G.n, G.m)
