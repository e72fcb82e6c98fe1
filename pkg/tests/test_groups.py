import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from dwcalc.groups import (
    GroupError,
    abelian,
    abelian_groups_of_order,
    cyclic,
    dihedral,
    from_table,
    parse_group_spec,
    symmetric,
)

GROUPS = [cyclic(1), cyclic(5), cyclic(6), abelian(2, 4), abelian(2, 2, 2), symmetric(3), dihedral(4), dihedral(5)]
IDS = [repr(g) for g in GROUPS]


def transpositions(G):
    return [g for g in G.elements if G.element_order(g) == 2]


def test_power_in_cyclic():
    assert cyclic(6).power(2, 3) == 0
    assert cyclic(6).power(1, -1) == 5


@pytest.mark.parametrize("G", GROUPS, ids=IDS)
def test_inverse_and_identity(G):
    for g in G.elements:
        assert G.mul(g, G.inv(g)) == G.identity
        assert G.mul(G.identity, g) == g


def test_s3_transpositions_square_to_identity():
    G = symmetric(3)
    ts = transpositions(G)
    assert len(ts) == 3
    assert all(G.power(t, 2) == 0 for t in ts)


def test_element_orders():
    assert cyclic(9).element_order(3) == 3
    assert cyclic(9).element_order(0) == 1
    G = abelian(2, 4)
    assert G.element_order(G.from_residues((1, 1))) == 4


def test_cyclic_classes_are_singletons():
    data = cyclic(5).conjugacy_data()
    assert [len(c) for c in data.classes] == [1] * 5
    assert all(len(c) == 5 for c in data.centralizers)


def test_s3_classes_and_centralizers():
    G = symmetric(3)
    data = G.conjugacy_data()
    assert sorted(len(c) for c in data.classes) == [1, 2, 3]
    for t in transpositions(G):
        assert len(G.centralizer(t)) == 2


def test_commuting_pair_counts():
    assert len(cyclic(7).commuting_pairs()) == 49
    # sum over x of |C(x)| = 6 + 3*2 + 2*3
    assert len(symmetric(3).commuting_pairs()) == 18


@pytest.mark.parametrize("G", GROUPS, ids=IDS)
def test_class_equation(G):
    data = G.conjugacy_data()
    assert sum(len(c) for c in data.classes) == G.order
    for cent in data.centralizers:
        assert G.order % len(cent) == 0
    for rep, cls, cent in zip(data.representatives, data.classes, data.centralizers):
        assert len(cls) * len(cent) == G.order
        assert rep == min(cls)


@given(st.integers(1, 20))
def test_cyclic_encodings_agree(m):
    G = cyclic(m)
    T = G.as_table_group()
    assert T.kind == "table"
    assert T.conjugacy_data() == G.conjugacy_data()
    assert T.commuting_pairs() == G.commuting_pairs()


@given(st.lists(st.integers(1, 5), min_size=1, max_size=3))
def test_abelian_residues_roundtrip(factors):
    G = abelian(*factors)
    for g in G.elements:
        assert G.from_residues(G.residues(g)) == g
    assert G.is_abelian


def test_abelian_group_census():
    counts = {n: len(abelian_groups_of_order(n)) for n in range(1, 17)}
    assert counts[8] == 3 and counts[16] == 5 and counts[12] == 2 and counts[7] == 1
    assert sum(counts.values()) == 25


def test_table_validation():
    with pytest.raises(GroupError):
        from_table([[0, 1], [1, 1]])  # not a Latin square
    with pytest.raises(GroupError):
        from_table([[1, 0], [0, 1]])  # identity not at index 0
    bad = np.array([[0, 1, 2], [1, 0, 2], [2, 2, 0]])
    with pytest.raises(GroupError):
        from_table(bad)


def test_non_associative_quasigroup_rejected():
    # Latin square with identity 0 that is not associative (order 5 loop)
    t = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(GroupError):
        from_table(t)


def test_parse_group_spec(tmp_path):
    assert parse_group_spec("cyclic:9").order == 9
    assert parse_group_spec("abelian:2,4").factors == (2, 4)
    assert parse_group_spec("symmetric:3").order == 6
    assert parse_group_spec("dihedral:4").order == 8
    path = tmp_path / "s3.json"
    path.write_text(json.dumps(symmetric(3).to_json()))
    G = parse_group_spec(str(path))
    assert G.order == 6 and not G.is_abelian
    with pytest.raises(GroupError):
        parse_group_spec("quaternion:8")
