"""Seeded property suites behind ``qzeta verify``.

Each property draws its own ``random.Random`` from ``(seed, name)`` and runs
its trials on a size schedule that grows with the trial index, so the first
failure seen is also among the smallest instances tried.  A property stops at
its first failure and keeps that instance, serialized, for reproduction.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable

from . import sampling
from . import smatrix
from .graph import (
    NAMED_GRAPHS,
    Graph,
    enumerate_reduced_lyndon_cycles,
    is_reduced_cycle,
)
from .lyndon import (
    identity_minus_at,
    is_lyndon,
    lyndon_factorize,
    lyndon_words,
    matrix_lyndon_product,
    verify_word_identity,
)
from .quaternion import I, J, K, Quaternion, quaternion_to_json, symplectic_decompose, symplectic_recompose
from .series import QUATERNION, TruncatedSeries, series_to_json
from .smatrix import SeriesMatrix, psi_t, symplectic_form
from .zeta import ROUTES, ihara_zeta, zeta_hashimoto


def _ser(x):
    if isinstance(x, TruncatedSeries):
        return series_to_json(x)
    if isinstance(x, SeriesMatrix):
        return [[series_to_json(e) for e in row] for row in x.entries]
    if isinstance(x, Quaternion):
        return quaternion_to_json(x)
    if isinstance(x, Graph):
        return x.to_document()
    if isinstance(x, (list, tuple)):
        return [_ser(v) for v in x]
    if isinstance(x, dict):
        return {k: _ser(v) for k, v in x.items()}
    if isinstance(x, (int, str, bool)) or x is None:
        return x
    return str(x)


def _sized(trial: int, trials: int, sizes: list):
    """Pick from ``sizes`` (ascending) so that later trials get larger instances."""
    return sizes[min(len(sizes) - 1, trial * len(sizes) // max(trials, 1))]


@dataclass
class Property:
    name: str
    suite: str
    check: Callable[[random.Random, int, int], dict | None]


@dataclass
class Outcome:
    name: str
    suite: str
    trials: int
    passed: bool
    failure: dict | None = None


@dataclass
class VerifyReport:
    seed: int
    trials: int
    outcomes: list[Outcome] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(o.passed for o in self.outcomes)

    def failures(self) -> list[Outcome]:
        return [o for o in self.outcomes if not o.passed]


PROPERTIES: list[Property] = []


def prop(name: str, suite: str):
    def register(fn):
        PROPERTIES.append(Property(name, suite, fn))
        return fn

    return register


# -- quaternions -------------------------------------------------------------


@prop("quaternion relation table", "quaternion")
def _relations(rng, trial, trials):
    one = Quaternion.one()
    table = {
        (I, I): -one, (J, J): -one, (K, K): -one,
        (I, J): K, (J, I): -K, (J, K): I, (K, J): -I, (K, I): J, (I, K): -J,
    }
    for (a, b), want in table.items():
        if a * b != want:
            return {"a": a, "b": b, "got": a * b, "want": want}
    return None


@prop("quaternion conjugation and norm", "quaternion")
def _conj_norm(rng, trial, trials):
    a, b = sampling.quaternion(rng), sampling.quaternion(rng)
    ok = (
        (a * b).conj() == b.conj() * a.conj()
        and (a * b).norm2() == a.norm2() * b.norm2()
        and (a * b).real == (b * a).real
        and a * a.conj() == Quaternion(a.norm2())
        and a.conj().conj() == a
        and symplectic_recompose(*symplectic_decompose(a)) == a
    )
    if a:
        ok = ok and a * a.inverse() == 1 and a.inverse() * a == 1
    return None if ok else {"a": a, "b": b}


# -- series -------------------------------------------------------------------


def _series_order(trial, trials):
    return _sized(trial, trials, [1, 2, 3, 4, 5, 6, 7, 8])


@prop("exp of log is identity", "series")
def _exp_log(rng, trial, trials):
    T = _series_order(trial, trials)
    a = sampling.series(rng, T, QUATERNION, constant=1)
    return None if a.log().exp() == a else {"a": a}


@prop("log of exp is identity", "series")
def _log_exp(rng, trial, trials):
    T = _series_order(trial, trials)
    b = sampling.series(rng, T, QUATERNION, constant=0)
    return None if b.exp().log() == b else {"b": b}


@prop("series inverse is two-sided", "series")
def _inverse(rng, trial, trials):
    T = _series_order(trial, trials)
    a = sampling.series(rng, T, QUATERNION, constant="unit")
    inv = a.inverse()
    one = TruncatedSeries.one(T, QUATERNION)
    return None if a * inv == one and inv * a == one else {"a": a}


def _commuting_pair(rng, T):
    # polynomials in one common series commute with each other
    s = sampling.series(rng, T, QUATERNION, constant=0)
    p = TruncatedSeries.zero(T, QUATERNION)
    q = TruncatedSeries.zero(T, QUATERNION)
    power = TruncatedSeries.one(T, QUATERNION)
    for _ in range(3):
        power = power * s
        p = p + power * sampling.rational(rng)
        q = q + power * sampling.rational(rng)
    return p, q


@prop("exp of commuting sum", "series")
def _exp_sum(rng, trial, trials):
    T = _series_order(trial, trials)
    a, b = _commuting_pair(rng, T)
    return None if (a + b).exp() == a.exp() * b.exp() else {"a": a, "b": b}


@prop("log of commuting product", "series")
def _log_prod(rng, trial, trials):
    T = _series_order(trial, trials)
    a, b = _commuting_pair(rng, T)
    a, b = a + 1, b + 1
    return None if (a * b).log() == a.log() + b.log() else {"a": a, "b": b}


@prop("log of inverse", "series")
def _log_inv(rng, trial, trials):
    T = _series_order(trial, trials)
    a = sampling.series(rng, T, QUATERNION, constant=1)
    return None if a.inverse().log() == -a.log() else {"a": a}


@prop("series times conjugate is real and central", "series")
def _norm_series(rng, trial, trials):
    T = _series_order(trial, trials)
    a = sampling.series(rng, T, QUATERNION)
    b = sampling.series(rng, T, QUATERNION)
    na, nb = a * a.conj(), b * b.conj()
    ok = na.is_real() and na == a.conj() * a and na * nb == nb * na and (a * b).conj() == b.conj() * a.conj()
    return None if ok else {"a": a, "b": b}


# -- lyndon -------------------------------------------------------------------


def _brute_lyndon(N, L):
    out = []
    for r in range(1, L + 1):
        for w in itertools.product(range(1, N + 1), repeat=r):
            if all(w < w[k:] + w[:k] for k in range(1, r)):
                out.append(w)
    return sorted(out)


@prop("lyndon words match brute force", "lyndon")
def _lyndon_set(rng, trial, trials):
    N = 1 + trial % 3
    L = 1 + trial % 7
    got, want = lyndon_words(N, L), _brute_lyndon(N, L)
    return None if got == want else {"N": N, "L": L}


@prop("lyndon factorization", "lyndon")
def _factorization(rng, trial, trials):
    N = 1 + rng.randrange(3)
    w = tuple(rng.randint(1, N) for _ in range(1 + rng.randrange(10)))
    f = lyndon_factorize(w)
    ok = (
        tuple(x for part in f for x in part) == w
        and all(is_lyndon(p) for p in f)
        and all(f[k] >= f[k + 1] for k in range(len(f) - 1))
    )
    return None if ok else {"word": list(w)}


@prop("free monoid product identities", "lyndon")
def _word_identity(rng, trial, trials):
    N, T = _sized(trial, trials, [(1, 3), (2, 3), (2, 4), (3, 3), (2, 5), (3, 4)])
    return None if verify_word_identity(N, T) else {"N": N, "T": T}


@prop("matrix lyndon product", "lyndon")
def _matrix_product(rng, trial, trials):
    n, T = _sized(trial, trials, [(1, 2), (2, 2), (2, 3), (2, 4), (3, 3), (3, 4)])
    ring = sampling.RINGS[trial % 3]
    A = sampling.constant_matrix(rng, n, ring)
    ok = matrix_lyndon_product(A, T) == identity_minus_at(A, T)
    return None if ok else {"A": [[str(x) for x in row] for row in A], "T": T}


# -- study determinant -------------------------------------------------------


def _matrix_size(trial, trials):
    return _sized(trial, trials, [(1, 1), (1, 3), (2, 2), (2, 4), (3, 3), (3, 5)])


@prop("sdet realness", "sdet")
def _realness(rng, trial, trials):
    n, T = _matrix_size(trial, trials)
    M = sampling.matrix(rng, n, n, T)
    d = smatrix.det_t(psi_t(M))
    return None if d.is_real() else {"M": M}


@prop("sdet multiplicativity", "sdet")
def _multiplicative(rng, trial, trials):
    n, T = _matrix_size(trial, trials)
    M, N = sampling.matrix(rng, n, n, T), sampling.matrix(rng, n, n, T)
    ok = smatrix.sdet_t(M @ N) == smatrix.sdet_t(M) * smatrix.sdet_t(N)
    return None if ok else {"M": M, "N": N}


@prop("sdet shear invariance", "sdet")
def _shear(rng, trial, trials):
    n, T = _matrix_size(trial, trials)
    n = max(n, 2)
    M = sampling.matrix(rng, n, n, T)
    r, s = rng.sample(range(n), 2)
    b = sampling.series(rng, T)
    rows = [list(row) for row in M.entries]
    rows[r] = [x + b * y for x, y in zip(rows[r], rows[s])]
    cols = [list(row) for row in M.entries]
    for row in cols:
        row[r] = row[r] + row[s] * b
    base = smatrix.sdet_t(M)
    ok = smatrix.sdet_t(SeriesMatrix(rows, T)) == base and smatrix.sdet_t(SeriesMatrix(cols, T)) == base
    return None if ok else {"M": M, "b": b, "target": r, "source": s}


@prop("sdet swap invariance", "sdet")
def _swap(rng, trial, trials):
    n, T = _matrix_size(trial, trials)
    n = max(n, 2)
    M = sampling.matrix(rng, n, n, T)
    r, s = rng.sample(range(n), 2)
    rows = [list(row) for row in M.entries]
    rows[r], rows[s] = rows[s], rows[r]
    cols = [list(row) for row in M.entries]
    for row in cols:
        row[r], row[s] = row[s], row[r]
    base = smatrix.sdet_t(M)
    ok = smatrix.sdet_t(SeriesMatrix(rows, T)) == base and smatrix.sdet_t(SeriesMatrix(cols, T)) == base
    return None if ok else {"M": M, "swap": [r, s]}


@prop("sdet scalar rule", "sdet")
def _scalar(rng, trial, trials):
    n, T = _matrix_size(trial, trials)
    M = sampling.matrix(rng, n, n, T)
    a = sampling.series(rng, T)
    scale = (a * a.conj()).real_part() ** n
    base = smatrix.sdet_t(M)
    ok = smatrix.sdet_t(a * M) == scale * base and smatrix.sdet_t(M * a) == scale * base
    return None if ok else {"M": M, "alpha": a}


@prop("sdet triangular rule", "sdet")
def _triangular(rng, trial, trials):
    n, T = _matrix_size(trial, trials)
    M = sampling.matrix(rng, n, n, T)
    zero = TruncatedSeries.zero(T, QUATERNION)
    upper = trial % 2 == 0
    rows = [
        [e if (c >= r if upper else c <= r) else zero for c, e in enumerate(row)]
        for r, row in enumerate(M.entries)
    ]
    diag = [rows[k][k] for k in range(n)]
    ok = smatrix.sdet_t(SeriesMatrix(rows, T)) == smatrix.triangular_sdet(diag)
    return None if ok else {"M": SeriesMatrix(rows, T)}


@prop("sdet sylvester identity", "sdet")
def _sylvester(rng, trial, trials):
    n, T = _matrix_size(trial, trials)
    m = 1 + rng.randrange(3)
    A = sampling.matrix(rng, m, n, T)
    B = sampling.matrix(rng, n, m, T)
    lhs = smatrix.sdet_t(SeriesMatrix.identity(m, T, QUATERNION) - A @ B)
    rhs = smatrix.sdet_t(SeriesMatrix.identity(n, T, QUATERNION) - B @ A)
    return None if lhs == rhs else {"A": A, "B": B}


@prop("psi multiplicativity", "sdet")
def _psi_hom(rng, trial, trials):
    _, T = _matrix_size(trial, trials)
    r, k, c = (1 + rng.randrange(3) for _ in range(3))
    M, N = sampling.matrix(rng, r, k, T), sampling.matrix(rng, k, c, T)
    return None if psi_t(M @ N) == psi_t(M) @ psi_t(N) else {"M": M, "N": N}


@prop("psi image characterization", "sdet")
def _psi_image(rng, trial, trials):
    n, T = _matrix_size(trial, trials)
    M = sampling.matrix(rng, n, n, T)
    P = psi_t(M)
    Jf = symplectic_form(n, T)
    return None if Jf @ P == P.conj() @ Jf else {"M": M}


# -- graphs and zeta ---------------------------------------------------------

TEST_GRAPHS = ("P2", "C3", "C4", "C5", "K4", "K23")


def brute_force_cycle_classes(G: Graph, max_len: int) -> set[tuple[int, ...]]:
    """Canonical (lexicographically least) rotation of every prime reduced
    closed walk of length ``<= max_len``, found without any pruning."""
    classes = set()
    for r in range(1, max_len + 1):
        stack = [[a] for a in range(len(G.arcs))]
        while stack:
            path = stack.pop()
            if len(path) == r:
                if is_reduced_cycle(G, path):
                    rots = [tuple(path[k:] + path[:k]) for k in range(r)]
                    if len(set(rots)) == r:
                        classes.add(min(rots))
                continue
            last = path[-1]
            for f in range(len(G.arcs)):
                if G.origin(f) == G.terminal(last) and f != G.inverse[last]:
                    stack.append(path + [f])
    return classes


@prop("cycle enumeration matches brute force", "cycles")
def _cycles(rng, trial, trials):
    name = TEST_GRAPHS[trial % len(TEST_GRAPHS)]
    G = NAMED_GRAPHS[name]()
    L = 6 if name == "K4" else 8
    perm = sampling.arc_permutation(G, rng)
    G = G.relabel_arcs(perm)
    got = {c.arcs for c in enumerate_reduced_lyndon_cycles(G, L)}
    want = brute_force_cycle_classes(G, L)
    return None if got == want else {"graph": name, "max_len": L, "perm": perm}


@prop("four routes agree", "zeta")
def _four_way(rng, trial, trials):
    name = TEST_GRAPHS[trial % len(TEST_GRAPHS)]
    T = _sized(trial, trials, [4, 6, 8])
    G = sampling.arc_weights(NAMED_GRAPHS[name](), rng)
    values = {m: route(G, T).z_inv for m, route in ROUTES.items()}
    ref = values["euler"]
    ok = all(v == ref for v in values.values())
    return None if ok else {"graph": G, "order": T}


@prop("unit weights give squared ihara", "zeta")
def _ihara(rng, trial, trials):
    name = TEST_GRAPHS[trial % len(TEST_GRAPHS)]
    G = NAMED_GRAPHS[name]()
    T = 8
    edge, bass = ihara_zeta(G, T)
    ok = edge == bass and zeta_hashimoto(G, T).z_inv == edge * edge
    return None if ok else {"graph": name, "order": T}


@prop("arc relabeling invariance", "zeta")
def _relabel(rng, trial, trials):
    G = sampling.arc_weights(NAMED_GRAPHS["K4"](), rng)
    T = 6
    perm = sampling.arc_permutation(G, rng)
    ok = zeta_hashimoto(G, T).z_inv == zeta_hashimoto(G.relabel_arcs(perm), T).z_inv
    return None if ok else {"graph": G, "perm": perm, "order": T}


SUITES = tuple(dict.fromkeys(p.suite for p in PROPERTIES))


def run_verify(seed: int, trials: int, suite: str | None = None, progress=None) -> VerifyReport:
    """Run every registered property (or one suite) ``trials`` times."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if suite is not None and suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    report = VerifyReport(seed, trials)
    for p in PROPERTIES:
        if suite is not None and p.suite != suite:
            continue
        rng = random.Random(f"{seed}:{p.name}")
        outcome = Outcome(p.name, p.suite, trials, True)
        for trial in range(trials):
            try:
                failure = p.check(rng, trial, trials)
            except Exception as exc:  # a crash is a failure to report, not to hide
                failure = {"error": f"{type(exc).__name__}: {exc}"}
            if failure is not None:
                outcome.passed = False
                outcome.failure = {"seed": seed, "trial": trial, **_ser(failure)}
                break
        report.outcomes.append(outcome)
        if progress is not None:
            progress(outcome)
    return report
