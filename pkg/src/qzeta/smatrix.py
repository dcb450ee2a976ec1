"""Matrices of truncated series, the complex embedding of quaternionic
matrices, and the determinants built on it."""

from __future__ import annotations

from typing import Callable, Iterable, Sequence

from . import kernels
from .quaternion import ONE, ZERO, GaussianRational, Quaternion, symplectic_decompose
from .series import (
    GAUSSIAN,
    QUATERNION,
    RATIONAL,
    OrderMismatch,
    TruncatedSeries,
    coerce,
    join,
    ring_of,
)

# Laplace expansion over column subsets costs O(2^n n) series products.
MAX_COFACTOR_SIZE = 16


class SeriesMatrix:
    """A dense ``rows x cols`` matrix of series sharing one truncation order."""

    __slots__ = ("entries", "rows", "cols", "order", "ring")

    def __init__(self, entries: Iterable[Iterable[TruncatedSeries]], order: int | None = None):
        grid = [list(row) for row in entries]
        if not grid or not grid[0]:
            if order is None:
                raise ValueError("empty matrix needs an explicit order")
            self.entries = []
            self.rows = self.cols = 0
            self.order = order
            self.ring = RATIONAL
            return
        cols = len(grid[0])
        if any(len(row) != cols for row in grid):
            raise ValueError("ragged matrix")
        orders = {e.order for row in grid for e in row}
        if order is not None:
            orders.add(order)
        if len(orders) != 1:
            raise OrderMismatch(f"entries have differing orders {sorted(orders)}")
        self.order = orders.pop()
        self.ring = join(*(e.ring for row in grid for e in row))
        self.entries = [[e.astype(self.ring) for e in row] for row in grid]
        self.rows = len(grid)
        self.cols = cols

    @classmethod
    def from_constants(cls, rows: Sequence[Sequence], order: int, ring: str | None = None) -> SeriesMatrix:
        if ring is None:
            ring = join(RATIONAL, *(ring_of(c) for row in rows for c in row)) if rows else RATIONAL
        return cls(
            [[TruncatedSeries.constant(coerce(c, ring), order, ring) for c in row] for row in rows],
            order,
        )

    @classmethod
    def zeros(cls, rows: int, cols: int, order: int, ring: str = RATIONAL) -> SeriesMatrix:
        z = TruncatedSeries.zero(order, ring)
        return cls([[z] * cols for _ in range(rows)], order)

    @classmethod
    def identity(cls, n: int, order: int, ring: str = RATIONAL) -> SeriesMatrix:
        z = TruncatedSeries.zero(order, ring)
        o = TruncatedSeries.one(order, ring)
        return cls([[o if r == c else z for c in range(n)] for r in range(n)], order)

    @classmethod
    def linear(cls, constant: Sequence[Sequence], linear: Sequence[Sequence], order: int) -> SeriesMatrix:
        """``constant + linear * t`` from two constant coefficient grids."""
        ring = join(
            RATIONAL,
            *(ring_of(c) for row in constant for c in row),
            *(ring_of(c) for row in linear for c in row),
        )
        return cls(
            [
                [TruncatedSeries([a, b], order, ring) for a, b in zip(ra, rb)]
                for ra, rb in zip(constant, linear)
            ],
            order,
        )

    def __repr__(self) -> str:
        return f"SeriesMatrix({self.rows}x{self.cols}, order={self.order}, ring={self.ring})"

    def __getitem__(self, idx: tuple[int, int]) -> TruncatedSeries:
        r, c = idx
        return self.entries[r][c]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SeriesMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self.order == other.order
            and self.entries == other.entries
        )

    __hash__ = None

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def astype(self, ring: str) -> SeriesMatrix:
        return SeriesMatrix([[e.astype(ring) for e in row] for row in self.entries], self.order)

    def map(self, fn: Callable[[TruncatedSeries], TruncatedSeries]) -> SeriesMatrix:
        return SeriesMatrix([[fn(e) for e in row] for row in self.entries], self.order)

    def _check_same(self, other: SeriesMatrix) -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        if self.order != other.order:
            raise OrderMismatch(f"truncation orders differ: {self.order} vs {other.order}")

    def __add__(self, other: SeriesMatrix) -> SeriesMatrix:
        self._check_same(other)
        return SeriesMatrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)],
            self.order,
        )

    def __sub__(self, other: SeriesMatrix) -> SeriesMatrix:
        self._check_same(other)
        return SeriesMatrix(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)],
            self.order,
        )

    def __neg__(self) -> SeriesMatrix:
        return self.map(lambda e: -e)

    def __matmul__(self, other: SeriesMatrix) -> SeriesMatrix:
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        if self.order != other.order:
            raise OrderMismatch(f"truncation orders differ: {self.order} vs {other.order}")
        ring = join(self.ring, other.ring)
        zero = TruncatedSeries.zero(self.order, ring)
        out = []
        for row in self.entries:
            new_row = []
            for c in range(other.cols):
                acc = zero
                for k, a in enumerate(row):
                    if a:
                        b = other.entries[k][c]
                        if b:
                            acc = acc + a * b
                new_row.append(acc)
            out.append(new_row)
        return SeriesMatrix(out, self.order) if out else SeriesMatrix([], self.order)

    def __mul__(self, other):
        if isinstance(other, SeriesMatrix):
            return self @ other
        # scalar (series or coefficient) acting from the right
        return self.map(lambda e: e * other)

    def __rmul__(self, other):
        return self.map(lambda e: other * e)

    def transpose(self) -> SeriesMatrix:
        return SeriesMatrix([list(col) for col in zip(*self.entries)], self.order)

    def conj(self) -> SeriesMatrix:
        """Coefficientwise conjugation (complex or quaternionic)."""
        return self.map(lambda e: e.conj())

    def shift(self, k: int) -> SeriesMatrix:
        return self.map(lambda e: e.shift(k))

    def constant_term(self) -> list[list]:
        return [[e.coeffs[0] for e in row] for row in self.entries]


def block(grid: Sequence[Sequence[SeriesMatrix]]) -> SeriesMatrix:
    """Assemble a block matrix."""
    order = grid[0][0].order
    rows = []
    for block_row in grid:
        height = block_row[0].rows
        for r in range(height):
            row = []
            for b in block_row:
                row.extend(b.entries[r])
            rows.append(row)
    return SeriesMatrix(rows, order)


def elementary(n: int, r: int, c: int, value: TruncatedSeries) -> SeriesMatrix:
    """``I_n + value * E_rc``."""
    m = SeriesMatrix.identity(n, value.order, value.ring)
    entries = [list(row) for row in m.entries]
    entries[r][c] = entries[r][c] + value
    return SeriesMatrix(entries, value.order)


def psi_t(M: SeriesMatrix) -> SeriesMatrix:
    """Embed an ``m x n`` quaternionic series matrix as a ``2m x 2n`` complex one.

    With ``M = S + j P`` the image is ``[[S, -conj(P)], [P, conj(S)]]``.
    """
    order = M.order
    M = M.astype(QUATERNION)
    S_rows, P_rows = [], []
    for row in M.entries:
        s_row, p_row = [], []
        for e in row:
            parts = [symplectic_decompose(c) for c in e.coeffs]
            s_row.append(TruncatedSeries._raw([a for a, _ in parts], order, GAUSSIAN))
            p_row.append(TruncatedSeries._raw([b for _, b in parts], order, GAUSSIAN))
        S_rows.append(s_row)
        P_rows.append(p_row)
    if not S_rows:
        return SeriesMatrix([], order)
    S = SeriesMatrix(S_rows, order)
    P = SeriesMatrix(P_rows, order)
    return block([[S, -P.conj()], [P, S.conj()]])


def psi_inverse(N: SeriesMatrix) -> SeriesMatrix:
    """Read ``M`` back from the left block column of ``psi_t(M)``."""
    m, n = N.rows // 2, N.cols // 2
    order = N.order
    N = N.astype(GAUSSIAN)
    rows = []
    for r in range(m):
        row = []
        for c in range(n):
            S = N.entries[r][c]
            P = N.entries[r + m][c]
            row.append(
                TruncatedSeries._raw(
                    [Quaternion(s.re, s.im, p.re, -p.im) for s, p in zip(S.coeffs, P.coeffs)],
                    order,
                    QUATERNION,
                )
            )
        rows.append(row)
    return SeriesMatrix(rows, order)


def symplectic_form(n: int, order: int) -> SeriesMatrix:
    """The block matrix ``[[0, -I], [I, 0]]`` characterising the image of ``psi_t``."""
    I = SeriesMatrix.identity(n, order, GAUSSIAN)
    Z = SeriesMatrix.zeros(n, n, order, GAUSSIAN)
    return block([[Z, -I], [I, Z]])


def det_cofactor(M: SeriesMatrix) -> TruncatedSeries:
    """Laplace expansion over column subsets; valid for any square matrix
    over a commutative ring, with no division."""
    n = M.rows
    if M.cols != n:
        raise ValueError("determinant needs a square matrix")
    if M.ring == QUATERNION:
        raise TypeError("ordinary determinant is undefined over quaternions")
    if n > MAX_COFACTOR_SIZE:
        raise ValueError(f"cofactor expansion limited to n <= {MAX_COFACTOR_SIZE}")
    order = M.order
    partial = {0: TruncatedSeries.one(order, M.ring)}
    for row in range(n):
        nxt: dict[int, TruncatedSeries] = {}
        for used, value in partial.items():
            if not value:
                continue
            higher = bin(used).count("1")
            for c in range(n):
                bit = 1 << c
                if used & bit:
                    higher -= 1
                    continue
                a = M.entries[row][c]
                if not a:
                    continue
                term = value * a
                key = used | bit
                if higher % 2:
                    nxt[key] = nxt[key] - term if key in nxt else -term
                else:
                    nxt[key] = nxt[key] + term if key in nxt else term
        partial = nxt
    return partial.get((1 << n) - 1, TruncatedSeries.zero(order, M.ring))


def det_t(M: SeriesMatrix) -> TruncatedSeries:
    """Ordinary determinant over the commutative ring ``Q[[t]]`` or ``Q(i)[[t]]``.

    Gaussian elimination pivoting on unit entries; falls back to cofactor
    expansion when some column has no entry with a nonzero constant term.
    """
    n = M.rows
    if M.cols != n:
        raise ValueError("determinant needs a square matrix")
    if M.ring == QUATERNION:
        raise TypeError("ordinary determinant is undefined over quaternions; use sdet_t")
    order = M.order
    if n == 0:
        return TruncatedSeries.one(order, M.ring)
    if M.ring == RATIONAL:
        re = [[list(e.coeffs) for e in row] for row in M.entries]
        out = kernels.det_real(re, n, order, ZERO, ONE)
        if out is not None:
            return TruncatedSeries._raw(out, order, RATIONAL)
    else:
        re = [[[c.re for c in e.coeffs] for e in row] for row in M.entries]
        im = [[[c.im for c in e.coeffs] for e in row] for row in M.entries]
        out = kernels.det_complex(re, im, n, order, ZERO, ONE)
        if out is not None:
            return TruncatedSeries._raw(
                [GaussianRational(a, b) for a, b in zip(*out)], order, GAUSSIAN
            )
    return det_cofactor(M)


class RealnessError(AssertionError):
    """A Study determinant came out non-real, which only a bug can cause."""


def sdet_t(M: SeriesMatrix) -> TruncatedSeries:
    """Study determinant ``det_t(psi_t(M))`` as a rational series."""
    if M.rows != M.cols:
        raise ValueError("Study determinant needs a square matrix")
    if M.rows == 0:
        return TruncatedSeries.one(M.order)
    n, order = M.rows, M.order
    re, im = psi_split(M)
    out = kernels.det_complex(re, im, 2 * n, order, ZERO, ONE)
    if out is None:
        d = det_t(psi_t(M))
        if not d.is_real():
            raise RealnessError(f"Study determinant has imaginary part: {d}")
        return d.real_part()
    real, imag = out
    if any(imag):
        raise RealnessError(f"Study determinant has imaginary part: {imag}")
    return TruncatedSeries._raw(real, order, RATIONAL)


def psi_split(M: SeriesMatrix) -> tuple[list, list]:
    """Real and imaginary coefficient arrays of ``psi_t(M)``, read straight off
    the quaternion components without building complex entries."""
    n = M.rows
    zeros = [ZERO] * (M.order + 1)
    re = [[None] * (2 * M.cols) for _ in range(2 * n)]
    im = [[None] * (2 * M.cols) for _ in range(2 * n)]
    for r, row in enumerate(M.astype(QUATERNION).entries):
        for c, e in enumerate(row):
            if not e:
                for a, b in ((r, c), (r, c + M.cols), (r + n, c), (r + n, c + M.cols)):
                    re[a][b] = im[a][b] = zeros
                continue
            x0 = [q.x0 for q in e.coeffs]
            x1 = [q.x1 for q in e.coeffs]
            x2 = [q.x2 for q in e.coeffs]
            x3 = [q.x3 for q in e.coeffs]
            neg_x1 = [-v for v in x1]
            neg_x3 = [-v for v in x3]
            # S = x0 + x1 i and P = x2 - x3 i; blocks [[S, -conj P], [P, conj S]]
            re[r][c], im[r][c] = x0, x1
            re[r][c + M.cols], im[r][c + M.cols] = [-v for v in x2], neg_x3
            re[r + n][c], im[r + n][c] = x2, neg_x3
            re[r + n][c + M.cols], im[r + n][c + M.cols] = x0, neg_x1
    return re, im


def triangular_sdet(diagonal: Sequence[TruncatedSeries]) -> TruncatedSeries:
    """``prod lambda_i lambda_i^*`` for the diagonal of a triangular matrix."""
    order = diagonal[0].order
    out = TruncatedSeries.one(order)
    for lam in diagonal:
        out = out * (lam * lam.conj()).real_part()
    return out
