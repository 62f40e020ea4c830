"""Cayley digraph construction, validation, and the translation embedding."""

from __future__ import annotations

import random

import numpy as np
import pytest

from posr.cayley import (
    ConnectionSets,
    Digraph,
    build_cayley,
    is_digraph_automorphism,
    out_ball,
    right_translations,
    sets_oriented,
    validate_sets,
)
from posr.errors import IndexOutOfRange, InvalidParameter
from posr.groups import group_from_token


def z7_lemma_sets():
    g = group_from_token("cyclic:7")
    return g, ConnectionSets.from_words(
        g, 2, {(0, 1): ["1", "x", "x^2"], (1, 0): ["x", "x^3", "x^4"]}
    )


def test_connection_sets_canonicalized():
    conn = ConnectionSets.from_lists(2, [[[], [2, 0, 1]], [[3, 1], []]])
    assert conn.cell(0, 1) == (0, 1, 2)
    assert conn.cell(1, 0) == (1, 3)
    assert conn.size_matrix() == [[0, 3], [2, 0]]


def test_connection_sets_reject_duplicates():
    with pytest.raises(InvalidParameter):
        ConnectionSets.from_lists(2, [[[], [0, 0]], [[], []]])


def test_connection_sets_json_roundtrip():
    g, conn = z7_lemma_sets()
    data = conn.to_json(g)
    assert data["m"] == 2
    back = ConnectionSets.from_json(data, g)
    assert back == conn


def test_vertex_convention():
    g, conn = z7_lemma_sets()
    pd = build_cayley(g, conn)
    assert pd.vertex(1, 3) == 10
    assert pd.part_of(10) == 1
    assert list(pd.part_range(0)) == list(range(7))
    # arc rule: g_i -> (t*g)_j; t = x, g = x^2 gives 2_0 -> 3_1
    assert pd.digraph.has_arc(2, 7 + 3)


def test_digraph_basic_invariants():
    d = Digraph(3, [(0, 1), (1, 2), (2, 0)])
    assert d.n_arcs == 3
    assert d.out_degrees() == [1, 1, 1] == d.in_degrees()
    assert d.is_weakly_connected()
    assert not d.has_loops
    with pytest.raises(IndexOutOfRange):
        Digraph(2, [(0, 5)])


def test_digraph_relabel_preserves_structure():
    d = Digraph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    r = d.relabel([2, 3, 0, 1])
    assert r.n_arcs == d.n_arcs
    assert r.has_arc(2, 3)


def test_validation_flags():
    g, conn = z7_lemma_sets()
    report = validate_sets(g, conn, 3)
    assert report.oriented and report.partite and report.regular and report.connected
    assert report.ok_for("POSR") and report.ok_for("PDR")
    # a digon-carrying system: PDR-grade only
    bad = ConnectionSets.from_words(g, 2, {(0, 1): ["1", "x", "x^2"], (1, 0): ["1", "x^3", "x^4"]})
    report = validate_sets(g, bad, 3)
    assert not report.oriented and report.partite and report.regular
    assert not report.ok_for("POSR") and report.ok_for("PDR")
    assert sets_oriented(g, conn) and not sets_oriented(g, bad)


def test_irregular_sets_flagged():
    g = group_from_token("cyclic:7")
    conn = ConnectionSets.from_words(g, 2, {(0, 1): ["1", "x", "x^2"], (1, 0): ["x"]})
    assert not validate_sets(g, conn, 3).regular


def test_right_translations_are_automorphisms():
    random.seed(7)
    for token in ("cyclic:7", "dihedral:8", "quaternion8", "heisenberg27"):
        g = group_from_token(token)
        m = random.choice([2, 3])
        cells = {}
        # arbitrary (not necessarily valid) connection sets: R(G) must STILL
        # be an automorphism of the built digraph
        for i in range(m):
            for j in range(m):
                if i != j:
                    cells[(i, j)] = random.sample(range(g.order), 2)
        conn = ConnectionSets.from_lists(
            m, [[cells.get((i, j), []) for j in range(m)] for i in range(m)]
        )
        pd = build_cayley(g, conn)
        for perm in right_translations(g, m):
            assert is_digraph_automorphism(pd.digraph, perm)


def test_right_translations_form_semiregular_copy():
    g = group_from_token("dihedral:8")
    perms = right_translations(g, 2)
    assert len(perms) == 8
    ident = np.arange(16)
    for p in perms[1:]:
        assert not np.any(p == ident)  # semiregular: no fixed points


def test_out_ball_levels():
    d = Digraph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    levels = out_ball(d, 0, 2)
    assert levels == [{0}, {1}, {2}]
    with pytest.raises(IndexOutOfRange):
        out_ball(d, 9, 1)
