"""Graph builders, bipartition, slot assignment, and the file format."""

import numpy as np
import pytest

from latticeproj.errors import (
    DuplicateEdge,
    IndexOutOfRange,
    InvalidSize,
    OddCycle,
    SelfLoop,
)
from latticeproj.graph import (
    adjacency,
    assign_slots,
    bipartition,
    build_cross_chain,
    build_from_edges,
    build_lattice,
    build_line,
    detect_cross_chain,
    detect_lattice,
    detect_line,
    fixture_path,
    format_graph_text,
    load_graph,
    parse_graph_text,
)


def test_build_line():
    assert build_line(2).edges == frozenset({(0, 1)})
    assert build_line(1).edges == frozenset()
    assert len(build_line(4).edges) == 3
    with pytest.raises(InvalidSize):
        build_line(0)


def test_build_cross_chain():
    g1 = build_cross_chain(1)
    assert g1.n == 5 and len(g1.edges) == 4
    assert adjacency(g1)[4] == (0, 1, 2, 3)

    g2 = build_cross_chain(2)
    assert g2.n == 8 and len(g2.edges) == 8
    # the two centers share the middle leaf pair
    shared = set(adjacency(g2)[6]) & set(adjacency(g2)[7])
    assert shared == {2, 3}

    assert build_cross_chain(3).n == 11
    with pytest.raises(InvalidSize):
        build_cross_chain(0)


def test_build_lattice():
    assert build_lattice(1, 1).edges == build_cross_chain(1).edges
    assert build_lattice(1, 2).n == 8
    assert build_lattice(2, 2).n == 13
    for m in range(1, 7):
        for n in range(1, 7):
            g = build_lattice(m, n)
            assert g.n == (m + 1) * (n + 1) + m * n
            assert len(g.edges) == 4 * m * n
    with pytest.raises(InvalidSize):
        build_lattice(0, 3)


def test_build_from_edges_validation():
    assert build_from_edges(2, [(0, 1)]).edges == frozenset({(0, 1)})
    with pytest.raises(SelfLoop):
        build_from_edges(3, [(0, 0)])
    with pytest.raises(DuplicateEdge):
        build_from_edges(3, [(0, 1), (1, 0)])
    with pytest.raises(IndexOutOfRange):
        build_from_edges(3, [(0, 3)])


def test_family_detection():
    assert detect_line(build_line(6))
    assert not detect_line(build_cross_chain(1))
    assert detect_cross_chain(build_cross_chain(3)) == 3
    assert detect_cross_chain(build_line(5)) is None
    assert detect_lattice(build_lattice(2, 3)) == (2, 3)
    assert detect_lattice(build_line(8)) is None
    # a canonical chain is exactly the k x 1 lattice
    assert detect_lattice(build_cross_chain(2)) == (2, 1)


def test_bipartition_line3():
    b = bipartition(build_line(3))
    assert b.controls == frozenset({1})
    assert b.targets == frozenset({0, 2})


def test_bipartition_cross_and_tie():
    b = bipartition(build_cross_chain(1))
    assert b.controls == frozenset({4})
    bell = bipartition(build_line(2))
    assert bell.controls == frozenset({0})


def test_bipartition_rejects_odd_cycle():
    with pytest.raises(OddCycle):
        bipartition(build_from_edges(3, [(0, 1), (1, 2), (0, 2)]))


def test_assign_slots_bipartite_bell():
    g = build_line(2)
    a = assign_slots(g, "bipartite")
    assert a.owners == frozenset({0})
    assert a.edge_owner == {(0, 1): 0}
    assert a.slot_of == {0: 0}


def test_assign_slots_all_but_last():
    g = build_line(4)
    a = assign_slots(g, "all-but-last")
    assert a.owners == frozenset({0, 1, 2})
    for k in range(3):
        assert a.edge_owner[(k, k + 1)] == k


def test_assign_slots_single_cross():
    g = build_cross_chain(1)
    a = assign_slots(g, "bipartite")
    assert a.owners == frozenset({4})
    assert set(a.edge_owner.values()) == {4}
    assert a.slot_count == 1


def test_assign_slots_greedy_cover_on_triangle():
    g = build_from_edges(3, [(0, 1), (1, 2), (0, 2)])
    a = assign_slots(g, "greedy-cover")
    for e, owner in a.edge_owner.items():
        assert owner in e and owner in a.owners


@pytest.mark.parametrize("seed", range(5))
def test_cover_property_on_random_graphs(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(4, 12))
    pairs = {tuple(sorted(rng.choice(n, 2, replace=False))) for _ in range(2 * n)}
    g = build_from_edges(n, sorted(pairs))
    strategies = ["greedy-cover", "all-but-last"]
    try:
        bipartition(g)
        strategies.append("bipartite")
    except OddCycle:
        pass
    for strategy in strategies:
        a = assign_slots(g, strategy)
        assert sorted(a.slot_of.values()) == list(range(len(a.owners)))
        for e, owner in a.edge_owner.items():
            assert owner in e and owner in a.owners
            if e[0] in a.owners and e[1] in a.owners:
                assert owner == min(e)


def test_bipartite_slot_count_is_min_color_class():
    for g in (build_line(7), build_cross_chain(2), build_lattice(2, 2)):
        b = bipartition(g)
        a = assign_slots(g, "bipartite")
        assert a.slot_count == min(len(b.controls), len(b.targets))


def test_graph_file_round_trip():
    g = build_cross_chain(2)
    text = format_graph_text(g, header="round trip")
    assert parse_graph_text(text) == g
    assert parse_graph_text("2\n0 1  # bell").edges == frozenset({(0, 1)})
    with pytest.raises(InvalidSize):
        parse_graph_text("# only a comment\n")


def test_shipped_fixtures_load(tmp_path):
    expected = {
        "line_4.graph": 4,
        "line_10.graph": 10,
        "cross_2.graph": 8,
        "cross_3.graph": 11,
        "lattice_2x2.graph": 4,
        "lattice_3x3.graph": 9,
        "lattice_3x4.graph": 12,
        "fivecross_17.graph": 17,
        "fig10_a4.graph": 4,
        "fig10_b7.graph": 7,
        "fig10_c12.graph": 12,
    }
    for name, qubits in expected.items():
        g = load_graph(fixture_path(name))
        assert g.n == qubits, name


def test_fivecross_fixture_shape():
    g = load_graph(fixture_path("fivecross_17.graph"))
    adj = adjacency(g)
    centers = [q for q in range(g.n) if len(adj[q]) == 4]
    assert centers == [12, 13, 14, 15, 16]
    assert len(g.edges) == 20
    # middle cross shares each of its leaves with exactly one arm
    assert adj[16] == (2, 3, 4, 5)
    for leaf in (2, 3, 4, 5):
        assert len(adj[leaf]) == 3
