import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from dwcalc.cocycles import trivial_cocycle
from dwcalc.groups import abelian, abelian_groups_of_order, cyclic, dihedral, symmetric
from dwcalc.homoracle import BudgetExceeded, count_homs, count_homs_naive, dw_untwisted, work_estimate
from dwcalc.seifert import SeifertData, dw_formula

SMALL = [cyclic(1), cyclic(4), abelian(2, 2), symmetric(3), dihedral(4), cyclic(6), abelian(2, 4)]
coprime_pair = st.tuples(st.integers(-4, 4), st.integers(-4, 4)).filter(lambda t: math.gcd(*t) == 1)


@st.composite
def seifert(draw, max_n=3, max_g=2):
    return SeifertData(draw(st.integers(0, max_g)), tuple(draw(st.lists(coprime_pair, max_size=max_n))))


@pytest.mark.parametrize("G", SMALL, ids=repr)
def test_three_sphere_count(G):
    assert count_homs(G, SeifertData(0, ((1, 1),))) == 1
    assert dw_untwisted(G, SeifertData(0, ((1, 1),))).value == Fraction(1, G.order)


@given(st.integers(1, 8), st.integers(0, 3))
def test_product_count(m, g):
    assert count_homs(cyclic(m), SeifertData(g)) == m ** (2 * g + 1)
    assert dw_untwisted(cyclic(m), SeifertData(g)).value == Fraction(m) ** (2 * g)


@given(st.integers(1, 12), coprime_pair)
def test_single_fiber_count(m, ab):
    a, b = ab
    assert count_homs(cyclic(m), SeifertData(0, ((a, b),))) == math.gcd(b, m)


@given(st.sampled_from(SMALL), seifert(max_n=2, max_g=1))
def test_matches_naive_enumeration(G, M):
    if G.order ** (M.n + 2 * M.genus + 1) > 40000:
        M = SeifertData(0, M.fibers)
    assert count_homs(G, M) == count_homs_naive(G, M)


@given(st.sampled_from(SMALL), seifert())
def test_symmetries(G, M):
    n = count_homs(G, M)
    assert count_homs(G, SeifertData(M.genus, tuple((a, -b) for a, b in M.fibers))) == n
    assert count_homs(G, SeifertData(M.genus, tuple((-a, -b) for a, b in M.fibers))) == n
    assert count_homs(G, SeifertData(M.genus, tuple(reversed(M.fibers)))) == n


@given(st.integers(1, 16).flatmap(lambda n: st.sampled_from(abelian_groups_of_order(n))), seifert())
def test_agrees_with_untwisted_formula(factors, M):
    G = abelian(*factors)
    assert dw_untwisted(G, M).value == dw_formula(G, trivial_cocycle(G), M).value


def test_budget():
    G = symmetric(4)
    M = SeifertData(2, ((2, 1),))
    assert work_estimate(G, M) > 100
    with pytest.raises(BudgetExceeded):
        count_homs(G, M, budget=100)
    assert count_homs(G, M, budget=None) > 0


def test_large_counts_are_exact():
    G = abelian(4, 4)
    M = SeifertData(8)
    assert count_homs(G, M) == 16 ** 17
