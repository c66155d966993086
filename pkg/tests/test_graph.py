import pytest

from errors import InvalidParameterError
from graph import (
    FamilyTag,
    from_edges,
    is_tree,
    make_clique,
    make_clique_cycle,
    make_clique_lines,
    make_cycle,
    make_cylinder,
    make_family,
    make_line,
    make_pos_gadget,
    make_random_connected,
    make_random_regular,
    make_random_tree,
    make_regular_ring_of_cliques,
    make_torus,
    rng_for,
    small_connected_graphs,
)


def test_line_and_cycle_shapes():
    line = make_line(5)
    assert line.edge_count == 4
    assert line.neighbors(0) == (1,)
    assert line.max_degree == 2
    cycle = make_cycle(5)
    assert cycle.edge_count == 5
    assert cycle.is_regular(2)
    assert cycle.neighbors(0) == (1, 4)


def test_cylinder_is_three_regular_with_row_major_ids():
    g = make_cylinder(6)
    assert g.node_count == 12
    assert g.is_regular(3)
    assert g.edge_count == 18
    # node 0 = (0, 0): right, wrap-left, below
    assert g.neighbors(0) == (1, 5, 6)
    assert g.row_width() == 6


def test_torus_is_four_regular():
    g = make_torus(10, 9)
    assert g.node_count == 90
    assert g.is_regular(4)
    assert g.edge_count == 180
    assert g.row_width() == 9
    # (1, 0) has id 9 and wraps to (1, 8) = 17
    assert set(g.neighbors(9)) == {0, 10, 17, 18}


def test_torus_rejects_narrow_or_tall_shapes():
    with pytest.raises(InvalidParameterError):
        make_torus(9, 2)
    with pytest.raises(InvalidParameterError):
        make_torus(8, 9)


def test_row_width_needs_a_grid_family():
    with pytest.raises(InvalidParameterError):
        make_line(4).row_width()


def test_from_edges_audits_input():
    with pytest.raises(InvalidParameterError, match="self-loop"):
        from_edges(3, [(0, 0), (0, 1), (1, 2)])
    with pytest.raises(InvalidParameterError, match="duplicate"):
        from_edges(3, [(0, 1), (1, 0), (1, 2)])
    with pytest.raises(InvalidParameterError, match="not connected"):
        from_edges(4, [(0, 1), (2, 3)])
    with pytest.raises(InvalidParameterError, match="out of range"):
        from_edges(3, [(0, 1), (1, 3)])


def test_role_maps_must_partition_nodes():
    with pytest.raises(InvalidParameterError, match="without a role"):
        from_edges(3, [(0, 1), (1, 2)], roles={"a": [0, 1]})
    with pytest.raises(InvalidParameterError, match="in roles"):
        from_edges(3, [(0, 1), (1, 2)], roles={"a": [0, 1], "b": [1, 2]})


def test_clique_lines_smallest_case():
    g, roles = make_clique_lines((1, 1))
    assert g.node_count == 4
    assert roles["clique"] == (0, 1)
    assert roles["line-0"] == (2,)
    assert roles["line-1"] == (3,)
    assert g.edges() == [(0, 1), (0, 2), (2, 3)]


def test_clique_lines_orders_types_largest_first():
    g, roles = make_clique_lines((1, 2, 3))
    assert g.family.tag is FamilyTag.CLIQUE_LINES
    assert g.family.parameters == (3, 2, 1)
    assert g.node_count == 12
    assert roles["line-0"] == (6, 7, 8)
    assert roles["line-1"] == (9, 10)
    assert roles["line-2"] == (11,)
    # 15 clique edges, 3 line edges, clique-to-line, and the two line joints
    assert g.edge_count == 21
    assert 9 in g.neighbors(8) and 11 in g.neighbors(10)


def test_clique_lines_joins_single_node_middle_lines():
    g, roles = make_clique_lines((4, 1, 1))
    assert roles["line-0"] == (6, 7, 8, 9)
    assert roles["line-1"] == (10,)
    assert roles["line-2"] == (11,)
    assert g.edge_count == 15 + 3 + 1 + 2
    assert g.neighbors(10) == (9, 11)
    g, roles = make_clique_lines((5, 1, 1, 1))
    assert g.node_count == 16
    assert [g.neighbors(v) for v in (13, 14, 15)] == [(12, 14), (13, 15), (14,)]


def test_clique_cycle():
    g, roles = make_clique_cycle(6, 3)
    assert g.node_count == 12
    assert g.edge_count == 15 + 6 + 1
    assert roles["cycle"] == tuple(range(6, 12))
    with pytest.raises(InvalidParameterError):
        make_clique_cycle(6, 2)  # n/k = 3 is odd


def test_regular_ring_of_cliques_is_regular():
    g, roles = make_regular_ring_of_cliques(6, 3)
    assert g.node_count == 12
    assert g.is_regular(3)
    assert roles["cycle"] == (0, 1, 2)
    assert len(roles["clique-0-attached"]) == 1
    assert len(roles["clique-0-free"]) == 2
    # v_0 joins the attached node of clique 1
    assert roles["clique-1-attached"][0] in g.neighbors(0)


def test_regular_ring_two_types_keeps_regularity():
    g, roles = make_regular_ring_of_cliques(4, 2)
    assert g.node_count == 8
    assert g.is_regular(3)
    assert len(roles["clique-0-free"]) == 1


def test_pos_gadget_edges():
    g, roles = make_pos_gadget(1)
    assert g.node_count == 5
    assert g.edge_count == 7
    g, roles = make_pos_gadget(3)
    assert g.edge_count == 3 * 3 + 4
    assert roles["p"] == (0, 1, 2)
    q, r, s, t = roles["q"][0], roles["r"][0], roles["s"][0], roles["t"][0]
    assert set(g.neighbors(q)) == {0, 1, 2, r}
    assert set(g.neighbors(r)) == {q, s, t}


def test_random_tree_is_reproducible():
    a = make_random_tree(12, seed=7)
    b = make_random_tree(12, seed=7)
    assert a == b
    assert is_tree(a)
    assert a.edge_count == 11


def test_random_connected_is_reproducible_and_connected():
    a = make_random_connected(8, 0.4, seed=3)
    assert a == make_random_connected(8, 0.4, seed=3)
    assert a.node_count == 8


def test_negative_seed_is_an_invalid_parameter():
    with pytest.raises(InvalidParameterError, match="non-negative"):
        rng_for(-1)
    with pytest.raises(InvalidParameterError, match="non-negative"):
        make_random_tree(8, seed=-3)
    with pytest.raises(InvalidParameterError, match="non-negative"):
        make_random_connected(6, 0.5, seed=-1)


def test_random_connected_rejects_bad_probability():
    with pytest.raises(InvalidParameterError):
        make_random_connected(5, 0.0, seed=1)


def test_random_regular():
    g = make_random_regular(3, 10, seed=5)
    assert g.is_regular(3)
    assert g == make_random_regular(3, 10, seed=5)
    with pytest.raises(InvalidParameterError):
        make_random_regular(3, 7, seed=5)


def test_small_connected_graphs_counts():
    # 1 graph on 2 nodes, 2 on 3 nodes, 6 on 4 nodes
    assert sum(1 for _ in small_connected_graphs(4)) == 9
    with pytest.raises(InvalidParameterError):
        list(small_connected_graphs(8))


def test_make_family():
    assert make_family("cylinder", [4]) == make_cylinder(4)
    assert make_family("clique", [4]) == make_clique(4)
    assert make_family("torus", [9, 9]).is_regular(4)
    with pytest.raises(InvalidParameterError, match="unknown family"):
        make_family("hypercube", [3])
    with pytest.raises(InvalidParameterError, match="takes 1"):
        make_family("line", [3, 4])


def test_to_networkx_round_trip():
    g = make_cylinder(5)
    nxg = g.to_networkx()
    assert nxg.number_of_nodes() == 10
    assert nxg.number_of_edges() == 15
