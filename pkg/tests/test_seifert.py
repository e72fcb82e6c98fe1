import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from dwcalc.cocycles import omega_l, trivial_cocycle
from dwcalc.cyclotomic import Cyclotomic, from_root
from dwcalc.groups import cyclic
from dwcalc.seifert import (
    DWResult,
    SeifertData,
    SeifertError,
    dw_formula,
    dw_prime_closed_form,
    eta,
    eta_cyclic,
    eta_cyclic_decomposed,
    gauss_sum,
    gauss_sum_via_legendre,
    legendre,
    parse_seifert,
    quadratic_gauss_g1,
)
from dwcalc.tqd import chi_cyclic

coprime_pair = st.tuples(st.integers(-6, 6), st.integers(-6, 6)).filter(lambda t: math.gcd(*t) == 1)


@st.composite
def seifert(draw, max_n=3, max_g=2):
    return SeifertData(draw(st.integers(0, max_g)), tuple(draw(st.lists(coprime_pair, max_size=max_n))))


# -- parsing ------------------------------------------------------------------


def test_parse_examples():
    M = parse_seifert("g=1;(2,1),(3,-1)")
    assert M.genus == 1 and M.fibers == ((2, 1), (3, -1))
    assert parse_seifert("g=2;").fibers == ()
    assert parse_seifert(" g = 0 ; ( 1 , 1 ) ").fibers == ((1, 1),)


@pytest.mark.parametrize("text", ["g=0;(2,4)", "g=-1;", "0;(1,1)", "g=0;(1,1),junk", "g=0;(1,1"])
def test_parse_rejects(text):
    with pytest.raises(SeifertError):
        parse_seifert(text)


@given(seifert())
def test_parse_roundtrip(M):
    assert parse_seifert(str(M)) == M


def test_zero_fiber_allowed():
    assert SeifertData(0, ((0, 1),)).n == 1
    with pytest.raises(SeifertError):
        SeifertData(0, ((0, 2),))


# -- fiber weights ------------------------------------------------------------


def test_eta_worked_example():
    w = omega_l(3, 0)
    rho = chi_cyclic(3, 0, 1, 1, w)
    assert eta(w.group, w, rho, 1, 1) == from_root(3, 2)
    assert eta_cyclic(3, 0, 1, 1, 1, 1) == from_root(3, 2)


def test_decomposed_vanishes_off_domain():
    assert eta_cyclic_decomposed(6, 1, 1, 0, 2, 1) == 0
    assert eta_cyclic(6, 1, 1, 0, 2, 1) == 0


@st.composite
def eta_args(draw):
    m = draw(st.integers(1, 10))
    return (
        m,
        draw(st.integers(0, m - 1)),
        draw(st.integers(0, m - 1)),
        draw(st.integers(0, m - 1)),
        *draw(coprime_pair),
    )


@given(eta_args())
def test_eta_forms_agree(args):
    m, l, h, s, a, b = args
    w = omega_l(m, l)
    rho = chi_cyclic(m, l, h, s, w)
    direct = eta(w.group, w, rho, a, b)
    assert direct == eta_cyclic(m, l, h, s, a, b) == eta_cyclic_decomposed(m, l, h, s, a, b)


# -- invariant ----------------------------------------------------------------


@given(st.integers(1, 8))
def test_three_sphere(m):
    w = trivial_cocycle(cyclic(m))
    assert dw_formula(w.group, w, SeifertData(0, ((1, 1),))).value == Fraction(1, m)


@given(st.integers(1, 6), st.integers(0, 3))
def test_circle_bundle_without_twist(m, g):
    w = trivial_cocycle(cyclic(m))
    assert dw_formula(w.group, w, SeifertData(g)).value == Fraction(m) ** (2 * g)


@given(st.integers(2, 7).flatmap(lambda m: st.tuples(st.just(m), st.integers(0, m - 1))), seifert(), st.randoms())
def test_fiber_order_irrelevant(ml, M, rnd):
    w = omega_l(*ml)
    fibers = list(M.fibers)
    rnd.shuffle(fibers)
    assert dw_formula(w.group, w, M).value == dw_formula(w.group, w, SeifertData(M.genus, tuple(fibers))).value


def test_twisted_z3_example():
    w = omega_l(3, 1)
    z = dw_formula(w.group, w, SeifertData(0, ((1, 1), (1, 2)))).value
    assert z == (1 + 2 * from_root(3, 2)).scale(Fraction(1, 3))
    assert dw_prime_closed_form(3, 1, SeifertData(0, ((1, 1), (1, 2)))).value == z


def test_result_json():
    r = DWResult(from_root(3, 1).scale(Fraction(1, 2)), "formula")
    d = r.to_json()
    assert Cyclotomic.from_json(d["value"]) == r.value
    assert d["method"] == "formula"
    assert abs(complex(d["approx"]["re"], d["approx"]["im"]) - r.value.to_complex()) < 1e-12


# -- Legendre symbols and Gauss sums -----------------------------------------


def test_legendre_examples():
    assert legendre(1, 3) == 1
    assert legendre(2, 3) == -1
    assert legendre(6, 3) == 0


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_legendre_counts_squares(p):
    squares = {k * k % p for k in range(1, p)}
    for a in range(1, p):
        assert legendre(a, p) == (1 if a in squares else -1)


def test_gauss_sum_examples():
    assert gauss_sum(5, 0) == 5
    assert gauss_sum(3, 1) == 1 + 2 * from_root(3, 1)
    assert abs(gauss_sum(3, 1).to_complex() - 1j * math.sqrt(3)) < 1e-12


@given(st.sampled_from([3, 5, 7, 11, 13, 17, 19, 23]), st.integers(-50, 50))
def test_gauss_sum_identities(p, a):
    s = gauss_sum(p, a)
    assert s == gauss_sum_via_legendre(p, a)
    if a % p:
        assert s * s.conjugate() == p


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_half_sum_variant_is_not_the_gauss_sum(p):
    # 1/2 (1 + (a/p) g_1) is an idempotent-style expression, not S_p(a)
    g1 = quadratic_gauss_g1(p)
    for a in range(1, p):
        variant = (1 + g1.scale(legendre(a, p))).scale(Fraction(1, 2))
        assert variant != gauss_sum(p, a)


# -- prime closed form --------------------------------------------------------


def _random_case(rng, p):
    pool = list(range(-9, 10)) + [p * p, -p * p]
    fibers = []
    for _ in range(rng.randint(0, 4)):
        while True:
            a, b = rng.choice(pool), rng.randint(-9, 9)
            if math.gcd(a, b) == 1:
                fibers.append((a, b))
                break
    return SeifertData(rng.randint(0, 2), tuple(fibers))


@pytest.mark.parametrize("p", [3, 5, 7])
def test_prime_closed_form_matches_formula(p):
    rng = random.Random(p)
    for _ in range(60):
        M = _random_case(rng, p)
        l = rng.randrange(p)
        w = omega_l(p, l)
        assert dw_prime_closed_form(p, l, M).value == dw_formula(w.group, w, M).value, (l, M)


def test_unit_branch_with_nonzero_residue_is_not_zero():
    # sum of b_j / a_j is 2 mod 3, yet the invariant is the rational 1/3
    M = SeifertData(0, ((1, 1), (1, 1)))
    w = omega_l(3, 1)
    assert dw_formula(w.group, w, M).value == Fraction(1, 3)
    assert dw_prime_closed_form(3, 1, M).value == Fraction(1, 3)


def test_unit_branch_sign_of_gauss_argument():
    M = SeifertData(0, ((1, 1), (1, 2)))
    w = omega_l(3, 1)
    z = dw_formula(w.group, w, M).value
    assert z == gauss_sum(3, -1).scale(Fraction(1, 3))
    assert z != gauss_sum(3, 1).scale(Fraction(1, 3))


def test_prime_closed_form_rejects_bad_input():
    with pytest.raises(ValueError):
        dw_prime_closed_form(9, 1, SeifertData(0))
    with pytest.raises(ValueError):
        dw_prime_closed_form(5, 5, SeifertData(0))
