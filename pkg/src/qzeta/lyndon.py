"""Lyndon words, their factorization, and the product identities they give.

Words are tuples of positive integers compared lexicographically (a proper
prefix sorts first, as with Python tuples).
"""

from __future__ import annotations

import itertools
import logging
from collections import defaultdict
from typing import Iterator, Sequence

from .quaternion import ONE, Q, Rational
from .series import TruncatedSeries, coerce, join, ring_of, RATIONAL
from .smatrix import SeriesMatrix

log = logging.getLogger(__name__)

Word = tuple[int, ...]


def lyndon_words(alphabet_size: int, max_len: int) -> list[Word]:
    """All Lyndon words over ``1..alphabet_size`` of length at most ``max_len``,
    in increasing lexicographic order (Duval's generation scheme)."""
    if alphabet_size < 1 or max_len < 1:
        raise ValueError("alphabet size and maximum length must be positive")
    return list(iter_lyndon_words(alphabet_size, max_len))


def iter_lyndon_words(alphabet_size: int, max_len: int) -> Iterator[Word]:
    w = [1]
    while w:
        yield tuple(w)
        m = len(w)
        while len(w) < max_len:
            w.append(w[len(w) - m])
        while w and w[-1] == alphabet_size:
            w.pop()
        if w:
            w[-1] += 1


def lyndon_factorize(w: Sequence[int]) -> list[Word]:
    """Nonincreasing Lyndon factors whose concatenation is ``w`` (Duval)."""
    w = tuple(w)
    n = len(w)
    if n == 0:
        raise ValueError("empty word has no factorization")
    out = []
    i = 0
    while i < n:
        j, k = i + 1, i
        while j < n and w[k] <= w[j]:
            k = i if w[k] < w[j] else k + 1
            j += 1
        while i <= k:
            out.append(w[i : i + j - k])
            i += j - k
    return out


def is_lyndon(w: Sequence) -> bool:
    """Nonempty and strictly smaller than every proper rotation.

    Works for any sequence of comparable letters.
    """
    w = tuple(w)
    n = len(w)
    if n == 0:
        return False
    j = 1
    # w is Lyndon iff Duval's scan consumes it as a single factor
    k = 0
    while j < n:
        if w[k] < w[j]:
            k = 0
        elif w[k] == w[j]:
            k += 1
        else:
            return False
        j += 1
    return k == 0


def necklace_count(alphabet_size: int, length: int) -> int:
    """Number of Lyndon words of exactly ``length`` (Witt/Moebius formula)."""
    total = 0
    for d in range(1, length + 1):
        if length % d == 0:
            total += _moebius(length // d) * alphabet_size**d
    return total // length


def _moebius(n: int) -> int:
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


class WordSeries:
    """Truncated series in ``Q[X*][[t]]``: a map ``(degree, word) -> coefficient``.

    Concatenation multiplies words and adds degrees; rationals are central.
    The grading ``degree == len(word)`` is not assumed.
    """

    __slots__ = ("order", "terms")

    def __init__(self, order: int, terms: dict | None = None):
        self.order = order
        self.terms: dict[tuple[int, Word], Rational] = {}
        for key, c in (terms or {}).items():
            if c and key[0] <= order:
                self.terms[key] = Q(c)

    @classmethod
    def one(cls, order: int) -> WordSeries:
        return cls(order, {(0, ()): ONE})

    @classmethod
    def term(cls, word: Word, degree: int, coeff, order: int) -> WordSeries:
        return cls(order, {(degree, tuple(word)): coeff})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WordSeries):
            return NotImplemented
        return self.order == other.order and self.terms == other.terms

    def __repr__(self) -> str:
        return f"WordSeries(order={self.order}, terms={len(self.terms)})"

    def __add__(self, other: WordSeries) -> WordSeries:
        out = defaultdict(lambda: Q(0), self.terms)
        for key, c in other.terms.items():
            out[key] += c
        return WordSeries(self.order, out)

    def __neg__(self) -> WordSeries:
        return WordSeries(self.order, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: WordSeries) -> WordSeries:
        return self + (-other)

    def __mul__(self, other: WordSeries) -> WordSeries:
        if self.order != other.order:
            raise ValueError("truncation orders differ")
        out: dict = defaultdict(lambda: Q(0))
        for (d1, w1), c1 in self.terms.items():
            for (d2, w2), c2 in other.terms.items():
                if d1 + d2 <= self.order:
                    out[(d1 + d2, w1 + w2)] += c1 * c2
        return WordSeries(self.order, out)

    def first_difference(self, other: WordSeries) -> tuple[int, Word] | None:
        keys = sorted(set(self.terms) | set(other.terms))
        for key in keys:
            if self.terms.get(key, 0) != other.terms.get(key, 0):
                return key
        return None


def _geometric(word: Word, order: int) -> WordSeries:
    """``(1 - word t^|word|)^-1`` truncated."""
    r = len(word)
    return WordSeries(order, {(k * r, word * k): ONE for k in range(order // r + 1)})


def all_words_series(N: int, order: int) -> WordSeries:
    """``sum_w w t^|w|`` over all words of length at most ``order``."""
    terms = {}
    for r in range(order + 1):
        for w in itertools.product(range(1, N + 1), repeat=r):
            terms[(r, w)] = ONE
    return WordSeries(order, terms)


def word_identity_mismatch(N: int, T: int) -> tuple[str, int, Word] | None:
    """First coefficient ``(identity, degree, word)`` where a free-monoid product
    identity fails, or ``None`` when both hold modulo ``t^(T+1)``.

    Checked: the decreasing-order product of ``(1 - l t^|l|)^-1`` equals the sum
    of all words, and the increasing-order product of ``(1 - l t^|l|)`` equals
    ``1 - (x_1 + ... + x_N) t``.
    """
    if N < 1 or T < 1:
        raise ValueError("N and T must be positive")
    lyndon = lyndon_words(N, T)
    lhs = WordSeries.one(T)
    for l in reversed(lyndon):
        lhs = lhs * _geometric(l, T)
    diff = lhs.first_difference(all_words_series(N, T))
    if diff is not None:
        return ("inverse product", *diff)

    lhs = WordSeries.one(T)
    for l in lyndon:
        lhs = lhs * (WordSeries.one(T) - WordSeries.term(l, len(l), ONE, T))
    rhs = WordSeries.one(T)
    for x in range(1, N + 1):
        rhs = rhs - WordSeries.term((x,), 1, ONE, T)
    diff = lhs.first_difference(rhs)
    if diff is not None:
        return ("product", *diff)
    return None


def verify_word_identity(N: int, T: int) -> bool:
    mismatch = word_identity_mismatch(N, T)
    if mismatch is not None:
        log.warning("word identity fails for N=%d T=%d at %s", N, T, mismatch)
        return False
    return True


def chained_lyndon_words(n: int, max_len: int) -> list[tuple[tuple[int, int], ...]]:
    """Lyndon words over ``[n] x [n]`` (0-based pairs, lexicographic order)
    whose letters chain, ``(i1, i2)(i2, i3)...(ir, jr)``, sorted increasingly."""
    out = []
    for r in range(1, max_len + 1):
        for idx in itertools.product(range(n), repeat=r + 1):
            word = tuple((idx[k], idx[k + 1]) for k in range(r))
            if is_lyndon(word):
                out.append(word)
    out.sort()
    return out


def _as_constant_grid(A) -> tuple[list[list], str]:
    if isinstance(A, SeriesMatrix):
        if any(any(e.coeffs[1:]) for row in A.entries for e in row):
            raise ValueError("matrix entries must be constants")
        grid = A.constant_term()
    else:
        grid = [list(row) for row in A]
    n = len(grid)
    if any(len(row) != n for row in grid):
        raise ValueError("matrix must be square")
    ring = join(RATIONAL, *(ring_of(c) for row in grid for c in row))
    return [[coerce(c, ring) for c in row] for row in grid], ring


def matrix_lyndon_product(A, T: int) -> SeriesMatrix:
    """Increasing-order product over chained Lyndon words ``l`` of length ``<= T``
    of ``I - a_{i1 i2} a_{i2 i3} ... a_{ir jr} E_{i1 jr} t^r``.

    The result equals ``I - A t`` modulo ``t^(T+1)``.  Each factor differs
    from the identity in one entry, so it is applied as a column operation.
    """
    grid, ring = _as_constant_grid(A)
    n = len(grid)
    cols = [[TruncatedSeries.one(T, ring) if r == c else TruncatedSeries.zero(T, ring)
             for r in range(n)] for c in range(n)]
    for word in chained_lyndon_words(n, T):
        coeff = grid[word[0][0]][word[0][1]]
        for i, j in word[1:]:
            coeff = coeff * grid[i][j]
        if not coeff:
            continue
        a, b = word[0][0], word[-1][1]
        r = len(word)
        # P <- P (I - c E_ab t^r): column b loses column a times c t^r
        cols[b] = [x - (y * coeff).shift(r) for x, y in zip(cols[b], cols[a])]
    return SeriesMatrix([[cols[c][r] for c in range(n)] for r in range(n)], T)


def matrix_lyndon_product_unskipped(A, T: int) -> SeriesMatrix:
    """Same product taken over every Lyndon word on ``[n] x [n]``, forming
    ``A_l = A(i1,j1) ... A(ir,jr)`` by full matrix products."""
    grid, ring = _as_constant_grid(A)
    n = len(grid)

    def unit(i: int, j: int) -> SeriesMatrix:
        rows = [[grid[i][j] if (r, c) == (i, j) else coerce(0, ring) for c in range(n)]
                for r in range(n)]
        return SeriesMatrix.from_constants(rows, T, ring)

    letters = {k + 1: unit(*divmod(k, n)) for k in range(n * n)}
    I = SeriesMatrix.identity(n, T, ring)
    P = I
    for word in lyndon_words(n * n, T):
        Al = I
        for x in word:
            Al = Al @ letters[x]
        P = P @ (I - Al.shift(len(word)))
    return P


def identity_minus_at(A, T: int) -> SeriesMatrix:
    grid, ring = _as_constant_grid(A)
    n = len(grid)
    const = [[coerce(1 if r == c else 0, ring) for c in range(n)] for r in range(n)]
    return SeriesMatrix.linear(const, [[-x for x in row] for row in grid], T)
