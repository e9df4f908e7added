"""Spectral sequences of the length filtration."""

import pytest

from maghom.graphs import digraph, family, transitive_tournament
from maghom.homology import homology_table
from maghom.pathhom import path_homology
from maghom.spectral import (
    diagonal_convergence,
    mpss,
    mpss_report,
    page_map,
    page_one_inclusion_report,
    rmpss,
    rmpss_report,
)
from maghom.words import injective_words, word_homology

SPHERE_2 = digraph(4, [(0, 1), (0, 2), (1, 2), (2, 1), (3, 1), (3, 2)])

GRAPHS = [
    family("complete", 3),
    family("dir_linear", 4),
    family("dir_cycle", 4),
    transitive_tournament(3),
    SPHERE_2,
]


def test_first_page_is_diagonal_homology():
    for G in GRAPHS:
        ss = rmpss(G)
        emh = homology_table(G, ring="Q")
        want = {(l, k): g.rank for (k, l), g in emh.entries.items()}
        assert ss.page(1) == want, G


def test_second_page_diagonal_is_strong_path_homology():
    for G in GRAPHS:
        ss = rmpss(G)
        diag = {p: r for (p, n), r in ss.page(2).items() if p == n}
        want = path_homology(G, strong=True)
        assert diag == want, G


def test_infinity_totals_match_word_homology():
    for G in GRAPHS:
        ss = rmpss(G)
        totals = ss.total_ranks()
        want = {k: g.rank for k, g in word_homology(injective_words(G), ring="Q").items()}
        assert totals == want, G


def test_directed_cycle_jumps_to_derangements():
    ss = rmpss(family("dir_cycle", 4))
    assert ss.total_ranks() == {0: 1, 3: 9}
    # the jump needs a differential on some later page
    assert ss.page(1) != ss.infinity_page()


def test_pages_stabilize():
    for G in GRAPHS:
        ss = rmpss(G)
        r = ss.stable_r
        assert ss.page(r) == ss.page(r + 1) == ss.infinity_page()


def test_euler_characteristic_constant_across_pages():
    for G in GRAPHS:
        ss = rmpss(G)
        first = None
        for r in range(1, ss.stable_r + 1):
            chi = sum((-1) ** n * rank for (p, n), rank in ss.page(r).items())
            if first is None:
                first = chi
            assert chi == first, (G, r)


def test_differential_ranks_account_for_page_drops():
    for G in GRAPHS:
        ss = rmpss(G)
        for r in range(1, ss.stable_r):
            for (p, n), rank in ss.page(r).items():
                out = ss.differential_rank(r, p, n)
                into = ss.differential_rank(r, p + r, n + 1)
                assert ss.entry_rank(r + 1, p, n) == rank - out - into


def test_turn_consistency():
    for G in GRAPHS:
        ss = rmpss(G)
        for r in range(1, ss.stable_r + 1):
            assert ss.turn_consistent(r)


def test_truncated_sequence_and_inclusion():
    G = family("complete", 3)
    ss = mpss(G, l_max=4)
    # page 1 of the truncated sequence is ordinary magnitude homology
    mh = homology_table(G, kind="ordinary", ring="Q", l_max=4)
    want = {(l, k): g.rank for (k, l), g in mh.entries.items()}
    assert ss.page(1) == want

    report = page_one_inclusion_report(G, l_max=4)
    assert report["commutes"]
    assert report["failed_at"] is None
    assert report["checked"] > 0


def test_inclusion_needs_room_for_the_whole_word_complex():
    G = family("complete", 3)
    with pytest.raises(ValueError):
        page_one_inclusion_report(G, l_max=1)


def test_page_map_identity_commutes():
    G = family("complete", 3)
    ss = rmpss(G)
    # identity inclusion of the sequence into itself is full rank
    for (p, n), rank in ss.page(1).items():
        mat = page_map(ss, ss, 1, p, n)
        assert len(mat) == rank
        assert sum(1 for row in mat for v in row if v) >= rank


def test_reports_are_json_ready():
    rep = rmpss_report(family("complete", 3))
    assert rep["e1_matches_eulerian_homology"]
    assert rep["e2_diagonal_matches_strong_path_homology"]
    assert rep["einf_totals_match_word_homology"]
    assert rep["e1_mismatches"] == []
    assert rep["einf_totals"] == {"0": 1, "2": 2}
    # pages serialize directly
    import json

    json.dumps(rep)
    assert rep["pages"][0]["r"] == 1
    assert {"l": 1, "k": 1, "rank": 6} in rep["pages"][0]["entries"]

    trep = mpss_report(family("complete", 3), l_max=4)
    assert trep["truncated"] is True
    assert trep["l_max"] == 4
    assert trep["e1_matches_ordinary_homology"]
    assert trep["page_one_inclusion"]["commutes"]


def test_diagonal_convergence_report():
    rep = diagonal_convergence(family("complete", 3))
    assert rep["match"]
    assert rep["strong_path_ranks"] == rep["word_homology_ranks"]


def test_field_characteristic_changes_nothing_here():
    # small torsion-free cases: same ranks over Q and F2
    for G in (family("complete", 3), transitive_tournament(3)):
        assert rmpss(G, ring="Q").total_ranks() == rmpss(G, ring="Fp:2").total_ranks()
