"""Group table construction and the named groups."""

from __future__ import annotations

import numpy as np
import pytest

from posr.errors import InvalidParameter, NotTwoGenerated, UnknownGenerator
from posr.groups import (
    GroupTable,
    group_automorphisms,
    group_from_permutations,
    group_from_token,
    in_phi,
    named_group,
    parse_group_spec,
)

ALL_TOKENS = [
    "cyclic:1", "cyclic:7", "cyclic:12", "klein4", "elem_abelian_9",
    "dihedral:6", "dihedral:8", "dihedral:10", "dihedral:12",
    "quaternion8", "alternating4", "heisenberg27", "c4_semidirect_c4",
    "smallgroup:16:3", "smallgroup:32:2",
]


@pytest.mark.parametrize("token", ALL_TOKENS)
def test_table_axioms(token):
    g = group_from_token(token)
    n = g.order
    mult = g.mult
    # Latin square
    for row in mult:
        assert sorted(row) == list(range(n))
    for col in mult.T:
        assert sorted(col) == list(range(n))
    # identity and inverses
    assert all(mult[0][e] == e and mult[e][0] == e for e in range(n))
    assert all(mult[e][g.inv[e]] == 0 and mult[g.inv[e]][e] == 0 for e in range(n))
    # associativity in full (every catalog group has n <= 64)
    assert n <= 64
    a = mult[mult][:, :, :]  # (a*b)*c for all triples
    b = mult[:, mult]        # a*(b*c)
    assert np.array_equal(a, b)
    # generators generate
    assert g.generates([idx for _, idx in g.generators])


def test_bfs_numbering_deterministic():
    gens = [[1, 2, 3, 0], [0, 2, 1, 3]]
    g1 = group_from_permutations(gens, ["x", "y"])
    g2 = group_from_permutations(gens, ["x", "y"])
    assert np.array_equal(g1.mult, g2.mult)
    assert g1.words == g2.words


def test_cyclic_7_from_cycle():
    g = group_from_permutations([[(i + 1) % 7 for i in range(7)]], ["x"])
    assert g.order == 7
    assert g.element_order(g.generator("x")) == 7


def test_d8_from_permutations():
    g = group_from_permutations([[1, 2, 3, 0], [0, 3, 2, 1]], ["x", "y"])
    assert g.order == 8
    assert g.element_order(g.generator("x")) == 4
    assert g.element_order(g.generator("y")) == 2
    assert g.evaluate_word("x*y*x") == g.evaluate_word("y^-1")


NAMED_RELATIONS = {
    "dihedral:8": [("x^4", "1"), ("y^2", "1"), ("x*y*x", "y^-1")],
    "quaternion8": [("x^4", "1"), ("x^2", "y^2"), ("y^-1*x*y", "x^-1")],
    "alternating4": [("x^3", "1"), ("y^2", "1"), ("x*y*x*y*x*y", "1")],
    "heisenberg27": [
        ("x^3", "1"), ("y^3", "1"), ("z^3", "1"),
        ("x^-1*y^-1*x*y", "z"), ("x^-1*z^-1*x*z", "1"), ("y^-1*z^-1*y*z", "1"),
    ],
    "c4_semidirect_c4": [("x^4", "1"), ("y^4", "1"), ("y^-1*x*y", "x^-1")],
    "smallgroup:16:3": [
        ("x^4", "1"), ("y^4", "1"), ("x*y*x*y", "1"),
        ("x^2*y*x^2", "y"), ("y^2*x*y^2", "x"),
    ],
    "smallgroup:32:2": [
        ("x^4", "1"), ("y^4", "1"), ("x^2*y*x^2", "y"), ("y^2*x*y^2", "x"),
    ],
}

EXPECTED_ORDER = {
    "dihedral:8": 8, "quaternion8": 8, "alternating4": 12, "heisenberg27": 27,
    "c4_semidirect_c4": 16, "smallgroup:16:3": 16, "smallgroup:32:2": 32,
}


@pytest.mark.parametrize("token", sorted(NAMED_RELATIONS))
def test_named_group_presentations(token):
    g = group_from_token(token)
    assert g.order == EXPECTED_ORDER[token]
    assert g.check_relations(NAMED_RELATIONS[token])


def test_smallgroup_32_2_word_orders():
    g = group_from_token("smallgroup:32:2")
    for w in ("x", "y", "x*y", "y*x", "x^2*y"):
        assert g.element_order(g.evaluate_word(w)) == 4


def test_smallgroup_16_3_xy_order_2():
    g = group_from_token("smallgroup:16:3")
    assert g.element_order(g.evaluate_word("x*y")) == 2


def test_element_order_lagrange():
    for token in ("dihedral:12", "alternating4", "smallgroup:16:3"):
        g = group_from_token(token)
        for e in range(g.order):
            assert g.order % g.element_order(e) == 0


def test_evaluate_word_errors_and_identity():
    g = group_from_token("cyclic:5")
    assert g.evaluate_word("1") == 0
    assert g.evaluate_word("x^-1") == g.inverse(g.generator("x"))
    with pytest.raises(UnknownGenerator):
        g.evaluate_word("q")


def test_generating_pairs_klein4():
    g = group_from_token("klein4")
    pairs = g.generating_pairs()
    assert len(pairs) == 6
    assert all(a != b and a != 0 and b != 0 for a, b in pairs)


def test_generating_pairs_trivial():
    g = group_from_token("cyclic:1")
    assert g.generating_pairs() == [(0, 0)]


def test_generating_pairs_quaternion8():
    g = group_from_token("quaternion8")
    for a, b in g.generating_pairs():
        assert g.element_order(a) == 4 and g.element_order(b) == 4
        assert b not in {g.power(a, k) for k in range(4)}


@pytest.mark.parametrize("token,expected", [
    ("quaternion8", True),
    ("dihedral:8", True),
    ("c4_semidirect_c4", True),
    ("smallgroup:16:3", True),
    ("smallgroup:32:2", True),
    ("dihedral:12", False),
    ("alternating4", False),
    ("elem_abelian_9", False),
])
def test_in_phi(token, expected):
    assert in_phi(group_from_token(token)) is expected


def test_in_phi_cyclic_is_false():
    # cyclic groups are excluded from the Phi class by convention
    assert in_phi(group_from_token("cyclic:4")) is False


def test_in_phi_not_two_generated():
    g = group_from_permutations(
        [[1, 0, 2, 3, 4, 5], [0, 1, 3, 2, 4, 5], [0, 1, 2, 3, 5, 4]],
        ["x", "y", "z"],
    )  # C2^3 needs three generators
    with pytest.raises(NotTwoGenerated):
        in_phi(g)


def test_parse_group_spec_errors():
    with pytest.raises(InvalidParameter):
        parse_group_spec("dihedral:7")
    with pytest.raises(InvalidParameter):
        parse_group_spec("dihedral:2")
    with pytest.raises(InvalidParameter):
        parse_group_spec("nonsense")
    with pytest.raises(InvalidParameter):
        parse_group_spec("smallgroup:16:99")


def test_dihedral_means_order_n():
    assert group_from_token("dihedral:12").order == 12


def test_group_automorphisms_klein4():
    # Aut(Z2^2) = S3
    assert len(group_automorphisms(group_from_token("klein4"))) == 6


def test_group_automorphisms_are_homomorphisms():
    g = group_from_token("quaternion8")
    for sigma in group_automorphisms(g):
        for a in range(g.order):
            for b in range(g.order):
                assert sigma[g.mul(a, b)] == g.mul(int(sigma[a]), int(sigma[b]))
