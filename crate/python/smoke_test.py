"""Smoke test for the strongconn Python extension.

Build and install first:
    pip install maturin
    pip install --no-build-isolation -e crates/strongconn-py
"""

import json

import strongconn

FIG8 = [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]
BITRI = [(0, 1), (1, 0), (1, 2), (2, 1), (2, 0), (0, 2)]


def test_figure_eight():
    ix = strongconn.ConnectivityIndex(5, FIG8)
    assert ix.n == 5 and ix.m == 6
    assert ix.strong_bridges() == [0, 1, 2, 3, 4, 5]
    assert ix.strong_articulation_points() == [0, 1, 2, 3, 4]
    assert ix.scc_counts_after_edges() == [3] * 6
    assert ix.scc_counts_after_vertices() == [4, 2, 2, 2, 2]
    assert ix.extreme_sizes_after_vertices() == [1, 3, 3, 3, 3]
    assert ix.sccs_after_edge(1) == [[0, 3, 4], [1], [2]]
    assert ix.separating_vertices(1, 2) == [0]
    assert ix.separating_edges(1, 2) == [0, 1, 2]
    connected, witness = ix.are_2ec(1, 2)
    assert not connected and witness[0] == "edge"


def test_triangle_blocks():
    ix = strongconn.ConnectivityIndex(3, BITRI, start=2)
    assert ix.strong_bridges() == []
    assert ix.blocks_2ec() == ix.blocks_vr() == ix.blocks_2vc() == [[0, 1, 2]]
    assert ix.are_2vc(0, 1) == (True, None)


def test_analyze_splits_components():
    n, edges = strongconn.parse_edge_list("4 5\n0 1\n1 0\n1 2\n2 3\n3 2\n")
    report = json.loads(strongconn.analyze(n, edges))
    assert report["schema"] == "1"
    assert [c["vertices"] for c in report["components"]] == [[0, 1], [2, 3]]


def test_errors_raise_value_error():
    for make in (
        lambda: strongconn.ConnectivityIndex(3, [(0, 1), (1, 2)]),
        lambda: strongconn.ConnectivityIndex(2, [(0, 5)]),
        lambda: strongconn.ConnectivityIndex(5, FIG8).separating_edges(1, 1),
        lambda: strongconn.parse_edge_list("2 1\n0\n"),
    ):
        try:
            make()
        except ValueError:
            continue
        raise AssertionError("expected ValueError")


if __name__ == "__main__":
    test_figure_eight()
    test_triangle_blocks()
    test_analyze_splits_components()
    test_errors_raise_value_error()
    print("smoke test passed")
