import math

import pytest

from maghom.errors import GraphError, ParseError
from maghom.graphs import (
    alternating,
    are_isomorphic,
    canonical_form,
    cartesian,
    cone,
    connected_graph_classes,
    digraph,
    distance_matrix,
    eccentricity_bound,
    family,
    girth,
    join,
    opposite,
    parse_graph,
    parse_graph_labeled,
    point,
    reachability_preorder,
    rho,
    transitive_tournament,
)


def test_digraph_rejects_self_loops_and_bad_edges():
    with pytest.raises(GraphError):
        digraph(2, [(0, 0)])
    with pytest.raises(GraphError):
        digraph(2, [(0, 2)])
    with pytest.raises(GraphError):
        digraph(-1, [])


def test_rho_symmetrizes():
    G = rho(3, [(0, 1), (1, 2)])
    assert G.symmetric
    assert G.m == 4
    assert G.has_edge(0, 1) and G.has_edge(1, 0)
    assert not G.has_edge(0, 2)


def test_point_and_tournament_sizes():
    assert point().n == 1 and point().m == 0
    # T_n lives on n+1 vertices; T_0 is the point
    for n in range(5):
        T = transitive_tournament(n)
        assert T.n == n + 1
        assert T.m == n * (n + 1) // 2
    assert family("tournament", 0).n == 1


def test_family_conventions():
    assert family("linear", 4).n == 4 and family("linear", 4).symmetric
    assert family("dir_linear", 4).n == 4 and family("dir_linear", 4).m == 3
    assert family("complete", 3).m == 6
    assert family("cycle", 3).n == 3 and family("cycle", 3).m == 6
    assert family("dir_cycle", 2).m == 2
    with pytest.raises(GraphError):
        family("cycle", 2)
    with pytest.raises(GraphError):
        family("nonsense", 3)
    with pytest.raises(GraphError):
        family("linear", 0)


def test_cone_adds_sink():
    G = family("dir_linear", 3)
    C = cone(G)
    assert C.n == 4
    # every original vertex points at the apex
    for v in range(3):
        assert C.has_edge(v, 3)
        assert not C.has_edge(3, v)


def test_join_edges_run_left_to_right():
    G = family("dir_linear", 2)
    H = point()
    J = join(G, H)
    assert J.n == 3
    assert J.has_edge(0, 2) and J.has_edge(1, 2)
    assert not J.has_edge(2, 0)
    # tournaments are iterated cones over the point
    assert are_isomorphic(cone(transitive_tournament(2)), transitive_tournament(3))


def test_opposite_and_alternating():
    G = family("dir_cycle", 3)
    assert sorted(opposite(G).edges) == [(0, 2), (1, 0), (2, 1)]
    A = alternating(family("cycle", 4), {0, 2})
    assert A.n == 4 and A.m == 4
    assert A.has_edge(0, 1) and A.has_edge(2, 1)
    with pytest.raises(GraphError):
        alternating(family("cycle", 3), {0})
    with pytest.raises(GraphError):
        alternating(family("dir_cycle", 3), {0})


def test_cartesian_product():
    P = cartesian(family("dir_linear", 2), family("dir_linear", 2))
    assert P.n == 4
    assert P.m == 4
    sq = cartesian(family("linear", 2), family("linear", 2))
    assert are_isomorphic(sq, family("cycle", 4))


def test_girth():
    assert girth(rho(3, [(0, 1), (1, 2)])) == math.inf
    assert girth(family("complete", 3)) == 3
    assert girth(family("cycle", 5)) == 5
    with pytest.raises(GraphError):
        girth(family("dir_cycle", 3))


def test_distance_and_eccentricity():
    G = family("dir_linear", 3)
    d = distance_matrix(G)
    assert d[0][2] == 2
    assert d[2][0] == math.inf
    assert eccentricity_bound(family("cycle", 4)) == 2


def test_reachability_preorder():
    G = family("dir_linear", 3)
    P = reachability_preorder(G)
    assert P.has_edge(0, 2)
    assert not P.has_edge(2, 0)
    # preorder of a directed cycle is complete
    C = reachability_preorder(family("dir_cycle", 4))
    assert C.m == 12


def test_parse_round_trip():
    text = "# directed\n0 1\n1 2\n"
    G = parse_graph("# directed\n# vertices 3\n0 1\n1 2\n")
    assert G.n == 3 and G.m == 2 and not G.symmetric
    H = parse_graph(text)
    assert are_isomorphic(G, H)
    U = parse_graph("# undirected\na b\nb c\n% comment line\n")
    assert U.symmetric and U.n == 3 and U.m == 4


def test_parse_labels_keep_first_appearance_order():
    g, labels = parse_graph_labeled("# directed\nx y\ny z\n")
    assert labels == ["x", "y", "z"]
    assert g.has_edge(0, 1) and g.has_edge(1, 2)


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError) as exc:
        parse_graph("# directed\n0 1\n0 1\n")
    assert exc.value.line == 3
    with pytest.raises(ParseError):
        parse_graph("0 1\n")
    with pytest.raises(ParseError):
        parse_graph("# directed\n# vertices 2\n0 5\n")
    with pytest.raises(ParseError):
        parse_graph("# directed\na a\n")
    with pytest.raises(ParseError):
        parse_graph("")
    with pytest.raises(ParseError):
        parse_graph("# undirected\n0 1\n1 0\n")


def test_canonical_form_is_relabeling_invariant():
    # unordered pair lists; relabeling 0->2, 1->0, 2->1 keeps the form
    tri = [(0, 1), (1, 2), (0, 2)]
    relabeled = [(2, 0), (0, 1), (2, 1)]
    assert canonical_form(3, tri) == canonical_form(3, relabeled)
    path = [(0, 1), (1, 2)]
    assert canonical_form(3, tri) != canonical_form(3, path)
    assert canonical_form(3, path) == canonical_form(3, [(0, 2), (2, 1)])


def test_are_isomorphic():
    assert are_isomorphic(family("cycle", 4), rho(4, [(0, 2), (2, 1), (1, 3), (3, 0)]))
    assert not are_isomorphic(family("cycle", 4), family("complete", 4))
    assert not are_isomorphic(point(), family("dir_linear", 2))


def test_connected_class_counts():
    # connected simple undirected graphs up to iso: 1, 1, 2, 6, 21
    assert [len(connected_graph_classes(n)) for n in range(1, 6)] == [1, 1, 2, 6, 21]
    for edges in connected_graph_classes(4):
        G = rho(4, edges)
        assert G.symmetric and G.n == 4


def test_connected_classes_girth_filter():
    high = [rho(5, edges) for edges in connected_graph_classes(5, min_girth=5)]
    for G in high:
        assert girth(G) >= 5
    # C_5 and the trees survive
    assert any(are_isomorphic(G, family("cycle", 5)) for G in high)
    # 3 trees on 5 vertices plus the 5-cycle
    assert len(high) == 4
