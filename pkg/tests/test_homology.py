"""Homology tables against frozen small-graph values."""

import math
import random

import pytest

from maghom.errors import GraphError
from maghom.graphs import digraph, family, opposite, rho, transitive_tournament
from maghom.homology import (
    AbelianGroupInvariant,
    homology_table,
    les_verify,
    parse_ring,
    ring_name,
    splitting_check,
)


def rank_map(table):
    return {kl: g.rank for kl, g in table.entries.items()}


def perm(n, k):
    out = 1
    for i in range(k):
        out *= n - i
    return out


def test_parse_ring():
    assert parse_ring("Z") == "Z"
    assert parse_ring("Q") == "Q"
    assert parse_ring("Fp:5") == 5
    assert ring_name("Z") == "Z" and ring_name("Q") == "Q" and ring_name(7) == "F7"
    with pytest.raises(ValueError):
        parse_ring("Fp:6")
    with pytest.raises(ValueError):
        parse_ring("Fp:1")
    with pytest.raises(ValueError):
        parse_ring("R")


def test_complete_graph_diagonal():
    for n in range(1, 6):
        t = homology_table(family("complete", n))
        assert rank_map(t) == {
            (k, k): perm(n, k + 1) for k in range(n)
        }
        for g in t.entries.values():
            assert g.torsion == ()


def test_vertex_and_edge_counts():
    rng = random.Random(3301)
    for _ in range(10):
        n = rng.randint(1, 6)
        edges = [
            (u, v)
            for u in range(n)
            for v in range(n)
            if u != v and rng.random() < 0.4
        ]
        G = digraph(n, edges)
        t = homology_table(G)
        assert t.rank(0, 0) == n
        assert t.rank(1, 1) == G.m


def test_cycle_four_full_table():
    t = homology_table(family("cycle", 4))
    assert rank_map(t) == {
        (0, 0): 4,
        (1, 1): 8,
        (2, 2): 4,
        (2, 3): 8,
        (3, 4): 8,
        (3, 5): 8,
    }
    assert t.top_bidegree() == (3, 5)
    assert t.group(3, 5) == AbelianGroupInvariant(8, ())
    assert str(t.group(2, 3)) == "Z^8"
    assert t.rank(2, 5) == 0


def test_cycle_top_bidegrees():
    # top bidegree (n-1, n^2/2 - n + 1) for even n, (n-1, (n-1)^2/2) for odd
    tops = {3: (2, 2), 4: (3, 5), 5: (4, 8), 6: (5, 13)}
    for n, top in tops.items():
        t = homology_table(family("cycle", n))
        assert t.top_bidegree() == top, n
    assert homology_table(family("cycle", 3)).rank(2, 2) == 6
    assert homology_table(family("cycle", 4)).rank(2, 2) == 4


def test_complete_minus_edge():
    # remove one edge pair from rho(K_4)
    G = rho(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
    t = homology_table(G)
    assert rank_map(t) == {
        (0, 0): 4,
        (1, 1): 10,
        (2, 2): 14,
        (3, 3): 4,
        (3, 4): 12,
    }
    assert t.rank(2, 3) == 0


def test_sphere_like_suspensions_differ():
    s1 = digraph(4, [(0, 1), (0, 2), (1, 2), (2, 1), (2, 3), (1, 3)])
    s2 = digraph(4, [(0, 1), (0, 2), (1, 2), (2, 1), (3, 1), (3, 2)])
    t1 = homology_table(s1)
    t2 = homology_table(s2)
    assert rank_map(t1) == {(0, 0): 4, (1, 1): 6, (2, 2): 5, (3, 3): 2}
    assert rank_map(t2) == {(0, 0): 4, (1, 1): 6, (2, 2): 4}
    assert t1.rank(3, 3) != t2.rank(3, 3)


def test_tournament_diagonal_binomials():
    for n in range(5):
        t = homology_table(transitive_tournament(n))
        want = {}
        for k in range(n + 1):
            want[(k, k)] = math.comb(n + 1, k + 1)
        assert rank_map(t) == want


def test_ordinary_table_needs_cutoff():
    K3 = family("complete", 3)
    with pytest.raises(ValueError):
        homology_table(K3, kind="ordinary")
    t = homology_table(K3, kind="ordinary", l_max=3)
    assert t.rank(0, 0) == 3 and t.rank(1, 1) == 6


def test_discriminant_quotient_ranks():
    # diagonal splitting on a complete graph: MH = EMH + DMH ranks levelwise
    K3 = family("complete", 3)
    l_max = 2
    mh = homology_table(K3, kind="ordinary", l_max=l_max)
    emh = homology_table(K3, kind="eulerian", l_max=l_max)
    dmh = homology_table(K3, kind="discriminant", l_max=l_max)
    assert mh.rank(2, 2) == emh.rank(2, 2) + dmh.rank(2, 2)
    assert dmh.rank(2, 2) == 6


def test_ring_variants_agree_on_torsion_free_tables():
    G = family("cycle", 4)
    tz = homology_table(G)
    tq = homology_table(G, ring="Q")
    t2 = homology_table(G, ring="Fp:2")
    assert rank_map(tz) == rank_map(tq) == rank_map(t2)


def test_reversal_invariance():
    rng = random.Random(4104)
    for _ in range(6):
        n = rng.randint(2, 5)
        edges = [
            (u, v)
            for u in range(n)
            for v in range(n)
            if u != v and rng.random() < 0.45
        ]
        G = digraph(n, edges)
        assert rank_map(homology_table(G)) == rank_map(homology_table(opposite(G)))


def test_les_rank_exactness():
    for G, l in [
        (family("complete", 3), 2),
        (family("cycle", 4), 3),
        (family("cycle", 4), 5),
        (transitive_tournament(3), 2),
    ]:
        report = les_verify(G, l)
        assert report["exact"], report["failures"]
        assert not report["failures"]


def test_les_reports_rank_arithmetic():
    report = les_verify(family("complete", 3), 2)
    e = report["eulerian"]
    m = report["ordinary"]
    d = report["discriminant"]
    # alternating sums across one weight column must cancel
    keys = set(e) | set(m) | set(d)
    total = sum(
        (-1) ** k * (e.get(k, 0) - m.get(k, 0) + d.get(k, 0)) for k in keys
    )
    assert total == 0


def test_splitting_check():
    report = splitting_check(family("complete", 3))
    assert report["splits"] and report["regularly_diagonal"]
    with pytest.raises(GraphError):
        splitting_check(family("linear", 4))


def test_table_serializations():
    t = homology_table(family("complete", 3))
    d = t.to_json_dict()
    assert d["groups"]["1,1"] == {"rank": 6, "torsion": []}
    assert d["certified"] is True and d["ring"] == "Z"
    csv = t.to_csv()
    assert csv.splitlines()[0].startswith("k,l,rank")
    md = t.to_markdown()
    assert "|" in md
    assert t.total_rank() == 3 + 6 + 6
    assert t.euler_characteristic() == 3 - 6 + 6
