"""Graphs with quaternion-weighted arcs, their edge and vertex matrices, and
the enumeration of reduced cycles indexed by Lyndon words."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from os import PathLike
from typing import Mapping, Sequence

from .lyndon import is_lyndon
from .quaternion import Q, Quaternion, as_quaternion, quaternion_from_json, quaternion_to_json
from .series import QUATERNION, TruncatedSeries
from .smatrix import SeriesMatrix


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    """A finite connected simple graph with a quaternion weight on every arc.

    Arcs are indexed ``0 .. 2m-1``.  In the default ordering arc ``k`` runs
    along edge ``k`` as declared and arc ``k + m`` is its inverse.
    """

    vertices: tuple[str, ...]
    edges: tuple[tuple[int, int], ...]
    arcs: tuple[tuple[int, int], ...]
    inverse: tuple[int, ...]
    weights: tuple[Quaternion, ...]
    out_arcs: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        out = [[] for _ in self.vertices]
        for a, (u, _) in enumerate(self.arcs):
            out[u].append(a)
        object.__setattr__(self, "out_arcs", tuple(tuple(x) for x in out))

    @classmethod
    def from_edges(
        cls,
        vertices: Sequence[str],
        edges: Sequence[tuple],
        weights: Sequence[tuple[Quaternion, Quaternion]] | None = None,
    ) -> Graph:
        """Build and validate a graph.

        ``edges`` holds vertex labels or indices; ``weights[k]`` is the pair
        ``(w(u, v), w(v, u))`` for edge ``k``, defaulting to ``(1, 1)``.
        """
        vertices = tuple(str(v) for v in vertices)
        if len(set(vertices)) != len(vertices):
            raise GraphError("duplicate vertex labels")
        index = {v: i for i, v in enumerate(vertices)}
        norm_edges = []
        seen = set()
        for e in edges:
            u, v = (x if isinstance(x, int) else _lookup(index, x) for x in e)
            if u == v:
                raise GraphError("loops not allowed")
            key = frozenset((u, v))
            if key in seen:
                raise GraphError("multiple edges not allowed")
            seen.add(key)
            norm_edges.append((u, v))
        if weights is None:
            weights = [(Quaternion.one(), Quaternion.one())] * len(norm_edges)
        if len(weights) != len(norm_edges):
            raise GraphError("one weight pair per edge required")
        m = len(norm_edges)
        arcs = tuple(norm_edges) + tuple((v, u) for u, v in norm_edges)
        inverse = tuple(list(range(m, 2 * m)) + list(range(m)))
        wts = tuple(w for w, _ in weights) + tuple(w for _, w in weights)
        g = cls(vertices, tuple(norm_edges), arcs, inverse, tuple(as_quaternion(q) for q in wts))
        g._check_connected()
        return g

    def _check_connected(self) -> None:
        n = len(self.vertices)
        if n == 0:
            raise GraphError("graph must have at least one vertex")
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for a in self.out_arcs[u]:
                v = self.arcs[a][1]
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        if len(seen) != n:
            raise GraphError("graph must be connected")

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def betti(self) -> int:
        return self.m - self.n + 1

    def origin(self, a: int) -> int:
        return self.arcs[a][0]

    def terminal(self, a: int) -> int:
        return self.arcs[a][1]

    def arc_pairs(self) -> list[tuple[int, int]]:
        """One ``(e, e^-1)`` per edge, ``e`` being the lower-indexed arc."""
        return [(a, self.inverse[a]) for a in range(len(self.arcs)) if a < self.inverse[a]]

    def with_weights(self, arc_weights: Sequence[Quaternion]) -> Graph:
        if len(arc_weights) != len(self.arcs):
            raise GraphError("one weight per arc required")
        return Graph(self.vertices, self.edges, self.arcs, self.inverse, tuple(arc_weights))

    def unit_weights(self) -> Graph:
        return self.with_weights([Quaternion.one()] * len(self.arcs))

    def relabel_arcs(self, perm: Sequence[int]) -> Graph:
        """New arc ``k`` is old arc ``perm[k]``."""
        perm = list(perm)
        if sorted(perm) != list(range(len(self.arcs))):
            raise GraphError("not a permutation of the arcs")
        where = {old: new for new, old in enumerate(perm)}
        return Graph(
            self.vertices,
            self.edges,
            tuple(self.arcs[old] for old in perm),
            tuple(where[self.inverse[old]] for old in perm),
            tuple(self.weights[old] for old in perm),
        )

    def to_document(self) -> dict:
        m = self.m
        pairs = {}
        for a in range(len(self.arcs)):
            u, v = self.arcs[a]
            pairs[(u, v)] = self.weights[a]
        return {
            "vertices": list(self.vertices),
            "edges": [
                {
                    "u": self.vertices[u],
                    "v": self.vertices[v],
                    "w_uv": quaternion_to_json(pairs[(u, v)]),
                    "w_vu": quaternion_to_json(pairs[(v, u)]),
                }
                for u, v in self.edges[:m]
            ],
        }


def _lookup(index: Mapping[str, int], label) -> int:
    try:
        return index[str(label)]
    except KeyError:
        raise GraphError(f"unknown vertex {label!r}") from None


def load_graph(document: Mapping) -> Graph:
    """Validate a graph document.

    ``{"vertices": [...], "edges": [{"u", "v", "w_uv", "w_vu"}, ...]}`` with
    quaternions as four rational strings; missing weights default to 1.
    """
    if not isinstance(document, Mapping):
        raise GraphError("graph document must be an object")
    try:
        vertices = document["vertices"]
        edges = document["edges"]
    except KeyError as exc:
        raise GraphError(f"missing field {exc.args[0]!r}") from None
    if not isinstance(vertices, list) or not isinstance(edges, list):
        raise GraphError("'vertices' and 'edges' must be arrays")
    pairs, weights = [], []
    for k, e in enumerate(edges):
        if not isinstance(e, Mapping) or "u" not in e or "v" not in e:
            raise GraphError(f"edges[{k}] needs 'u' and 'v'")
        pairs.append((str(e["u"]), str(e["v"])))
        pair = []
        for key in ("w_uv", "w_vu"):
            raw = e.get(key)
            if raw is None:
                pair.append(Quaternion.one())
                continue
            try:
                pair.append(quaternion_from_json(raw))
            except (ValueError, TypeError) as exc:
                raise GraphError(f"edges[{k}].{key}: {exc}") from None
        weights.append(tuple(pair))
    return Graph.from_edges([str(v) for v in vertices], pairs, weights)


def read_graph(path: str | PathLike) -> Graph:
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise GraphError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from None
    return load_graph(doc)


def build_edge_matrices(G: Graph) -> tuple[list[list[Quaternion]], list[list[Quaternion]]]:
    """``(B_w, J_w)``: ``B_w[e][f] = w(e)`` when ``t(e) = o(f)``, ``J_w[e][f] = w(e)``
    when ``f = e^-1``."""
    size = len(G.arcs)
    zero = Quaternion.zero()
    B = [[zero] * size for _ in range(size)]
    J = [[zero] * size for _ in range(size)]
    for e in range(size):
        w = G.weights[e]
        for f in G.out_arcs[G.terminal(e)]:
            B[e][f] = w
        J[e][G.inverse[e]] = w
    return B, J


@dataclass(frozen=True)
class VertexMatrices:
    adjacency: list[list]
    degree: list[list]
    betti: int
    w_tilde: SeriesMatrix
    d_tilde: SeriesMatrix


def pair_factor(G: Graph, e: int, order: int) -> TruncatedSeries:
    """``1 - w(e) w(e^-1) t^2`` as a quaternion series."""
    ww = G.weights[e] * G.weights[G.inverse[e]]
    return TruncatedSeries.one(order, QUATERNION) - TruncatedSeries.monomial(ww, 2, order, QUATERNION)


def build_vertex_matrices(G: Graph, order: int) -> VertexMatrices:
    """Adjacency, degree, Betti number and the weighted ``W~``, ``D~`` series
    matrices used by the vertex-sized determinant."""
    if order < 2:
        raise ValueError("vertex matrices need order >= 2")
    n = G.n
    A = [[Q(0)] * n for _ in range(n)]
    D = [[Q(0)] * n for _ in range(n)]
    zero = TruncatedSeries.zero(order, QUATERNION)
    W = [[zero] * n for _ in range(n)]
    Dt = [[zero] * n for _ in range(n)]
    for e, (u, v) in enumerate(G.arcs):
        A[u][v] = Q(1)
        D[u][u] += 1
        inv = pair_factor(G, e, order).inverse()
        W[u][v] = inv * G.weights[e]
        Dt[u][u] = Dt[u][u] + inv * (G.weights[e] * G.weights[G.inverse[e]])
    return VertexMatrices(A, D, G.betti, SeriesMatrix(W, order), SeriesMatrix(Dt, order))


@dataclass(frozen=True)
class ReducedCycle:
    """A closed backtracking-free arc sequence whose index word is Lyndon."""

    arcs: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.arcs)

    def weight(self, G: Graph) -> Quaternion:
        w = Quaternion.one()
        for a in self.arcs:
            w = w * G.weights[a]
        return w


def is_reduced_cycle(G: Graph, arcs: Sequence[int]) -> bool:
    """Chained, closed, and free of backtracking including the wrap-around."""
    r = len(arcs)
    if r == 0:
        return False
    for k in range(r):
        a, b = arcs[k], arcs[(k + 1) % r]
        if G.terminal(a) != G.origin(b) or b == G.inverse[a]:
            return False
    return True


def enumerate_reduced_lyndon_cycles(G: Graph, max_len: int) -> list[ReducedCycle]:
    """Reduced cycles of length ``<= max_len`` with Lyndon index word, in
    lexicographic order; one per rotation class of prime reduced cycles.

    A Lyndon word starts with its smallest letter, so the search fixes the
    first arc and only extends through arcs with index at least as large.
    """
    if max_len < 1:
        raise ValueError("max_len must be positive")
    out: list[tuple[int, ...]] = []
    inverse = G.inverse
    arcs = G.arcs
    out_arcs = G.out_arcs
    for first in range(len(arcs)):
        home = arcs[first][0]
        first_inv = inverse[first]
        path = [first]

        def extend(last: int) -> None:
            if arcs[last][1] == home and last != first_inv and is_lyndon(path):
                out.append(tuple(path))
            if len(path) == max_len:
                return
            back = inverse[last]
            for nxt in out_arcs[arcs[last][1]]:
                if nxt >= first and nxt != back:
                    path.append(nxt)
                    extend(nxt)
                    path.pop()

        extend(first)
    out.sort()
    return [ReducedCycle(c) for c in out]


# -- named test graphs -----------------------------------------------------


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges([str(i) for i in range(n)], [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges([str(i) for i in range(n)], [(i, i + 1) for i in range(n - 1)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(
        [str(i) for i in range(n)], [(i, j) for i in range(n) for j in range(i + 1, n)]
    )


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(
        [str(i) for i in range(a + b)], [(i, a + j) for i in range(a) for j in range(b)]
    )


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges([str(i) for i in range(10)], outer + spokes + inner)


NAMED_GRAPHS = {
    "P2": lambda: path_graph(2),
    "C3": lambda: cycle_graph(3),
    "C4": lambda: cycle_graph(4),
    "C5": lambda: cycle_graph(5),
    "C6": lambda: cycle_graph(6),
    "K4": lambda: complete_graph(4),
    "K23": lambda: complete_bipartite(2, 3),
    "Petersen": petersen_graph,
}
