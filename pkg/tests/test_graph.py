import json
import random

import pytest

from qzeta import sampling
from qzeta.graph import (
    NAMED_GRAPHS,
    Graph,
    GraphError,
    build_edge_matrices,
    build_vertex_matrices,
    complete_graph,
    cycle_graph,
    enumerate_reduced_lyndon_cycles,
    is_reduced_cycle,
    load_graph,
    pair_factor,
    path_graph,
    read_graph,
)
from qzeta.quaternion import I, J, K, Q, Quaternion
from qzeta.series import TruncatedSeries


def closed_walk_classes(G: Graph, max_len: int):
    """Rotation classes of prime reduced closed walks, from all arc sequences."""
    classes = set()

    def grow(path, r):
        if len(path) == r:
            if is_reduced_cycle(G, path):
                rots = {tuple(path[k:] + path[:k]) for k in range(r)}
                if len(rots) == r:  # a proper power repeats a rotation
                    classes.add(min(rots))
            return
        for f in range(len(G.arcs)):
            if G.origin(f) == G.terminal(path[-1]):
                grow(path + [f], r)

    for r in range(1, max_len + 1):
        for a in range(len(G.arcs)):
            grow([a], r)
    return classes


@pytest.mark.parametrize("name", sorted(NAMED_GRAPHS))
def test_enumeration_matches_brute_force(name):
    G = NAMED_GRAPHS[name]()
    L = {"K4": 6, "Petersen": 5, "K23": 8}.get(name, 8)
    got = enumerate_reduced_lyndon_cycles(G, L)
    assert [c.arcs for c in got] == sorted(closed_walk_classes(G, L))


def test_known_counts():
    assert len(enumerate_reduced_lyndon_cycles(cycle_graph(3), 3)) == 2
    K4 = complete_graph(4)
    by_len = {}
    for c in enumerate_reduced_lyndon_cycles(K4, 4):
        by_len[len(c)] = by_len.get(len(c), 0) + 1
    # 4 triangles and 3 squares, each in two orientations
    assert by_len == {3: 8, 4: 6}
    assert enumerate_reduced_lyndon_cycles(path_graph(4), 8) == []


def test_bipartite_graph_has_only_even_cycles():
    cycles = enumerate_reduced_lyndon_cycles(NAMED_GRAPHS["K23"](), 8)
    assert cycles and all(len(c) % 2 == 0 for c in cycles)


def test_enumeration_under_arc_relabelling():
    rng = random.Random(3)
    G = complete_graph(4)
    for _ in range(3):
        H = G.relabel_arcs(sampling.arc_permutation(G, rng))
        assert [c.arcs for c in enumerate_reduced_lyndon_cycles(H, 5)] == sorted(closed_walk_classes(H, 5))


def test_cycle_weight_is_rotation_invariant_in_real_part_and_norm():
    rng = random.Random(9)
    G = sampling.arc_weights(complete_graph(4), rng)
    for C in enumerate_reduced_lyndon_cycles(G, 5):
        w = C.weight(G)
        for k in range(1, len(C)):
            rot = C.arcs[k:] + C.arcs[:k]
            v = Quaternion.one()
            for a in rot:
                v = v * G.weights[a]
            assert v.real == w.real and v.norm2() == w.norm2()


def test_arc_layout():
    G = cycle_graph(3)
    assert G.n == G.m == 3 and G.betti == 1
    assert G.arcs[:3] == ((0, 1), (1, 2), (2, 0))
    assert all(G.arcs[G.inverse[a]] == G.arcs[a][::-1] for a in range(6))
    assert G.arc_pairs() == [(0, 3), (1, 4), (2, 5)]


def test_edge_matrices():
    G = cycle_graph(3).with_weights([I, J, K, -I, -J, -K])
    B, Jw = build_edge_matrices(G)
    # arc 0 = (0,1) continues with arcs leaving vertex 1: arc 1 and arc 3 (its inverse)
    assert B[0][1] == I and B[0][3] == I and B[0][2] == 0
    assert Jw[0][3] == I and Jw[4][1] == -J
    assert sum(1 for row in Jw for x in row if x) == 6


def test_vertex_matrices():
    T = 4
    G = path_graph(2).with_weights([2 * J, I])
    vm = build_vertex_matrices(G, T)
    f = pair_factor(G, 0, T)
    # w(e) w(e^-1) = 2j * i = -2k
    assert f == TruncatedSeries([1, 0, 2 * K, 0, 0], ring="quaternion")
    assert vm.w_tilde[0, 1] == f.inverse() * (2 * J)
    assert vm.d_tilde[0, 0] == f.inverse() * (-2 * K)
    assert vm.adjacency == [[0, 1], [1, 0]] and vm.degree == [[1, 0], [0, 1]] and vm.betti == 0
    with pytest.raises(ValueError):
        build_vertex_matrices(G, 1)


def test_validation_errors():
    with pytest.raises(GraphError, match="loops not allowed"):
        Graph.from_edges("ab", [("a", "a")])
    with pytest.raises(GraphError, match="multiple edges"):
        Graph.from_edges("ab", [("a", "b"), ("b", "a")])
    with pytest.raises(GraphError, match="graph must be connected"):
        Graph.from_edges("abcd", [("a", "b"), ("c", "d")])


def test_load_document_names_bad_field(tmp_path):
    doc = {"vertices": ["a", "b"], "edges": [{"u": "a", "v": "b", "w_uv": ["1", "x", "0", "0"]}]}
    with pytest.raises(GraphError, match=r"edges\[0\]\.w_uv"):
        load_graph(doc)
    with pytest.raises(GraphError, match="vertices"):
        load_graph({"edges": []})
    with pytest.raises(GraphError, match="unknown vertex|'c'"):
        load_graph({"vertices": ["a", "b"], "edges": [{"u": "a", "v": "c"}]})
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(GraphError, match="invalid JSON"):
        read_graph(bad)


def test_document_round_trip(tmp_path):
    G = sampling.arc_weights(complete_graph(4), random.Random(1))
    path = tmp_path / "g.json"
    path.write_text(json.dumps(G.to_document()))
    H = read_graph(path)
    assert H == G
    assert load_graph({"vertices": ["x", "y"], "edges": [{"u": "x", "v": "y"}]}).weights == (Q(1), Q(1))
