import math

import numpy as np
from hypothesis import given, strategies as st

from dwcalc.cocycles import coboundary, omega_l, trivial_cocycle
from dwcalc.cyclotomic import RootOfUnity
from dwcalc.groups import abelian
from dwcalc.kappa import KappaQuery, kappa, kappa_class, kappa_oracle, remainder_sequence

coeff = st.integers(-12, 12)


@st.composite
def queries(draw, max_m=10):
    m = draw(st.integers(2, max_m))
    l = draw(st.integers(0, m - 1))
    z = draw(st.integers(0, m - 1))
    return KappaQuery(draw(coeff), draw(coeff), z, omega_l(m, l))


def test_identity_and_trivial():
    w = omega_l(5, 3)
    assert kappa(KappaQuery(3, 4, 0, w)).is_one()
    t = trivial_cocycle(abelian(2, 3))
    assert all(kappa(KappaQuery(a, b, z, t)).is_one() for a in range(-3, 4) for b in range(-3, 4) for z in range(6))


def test_worked_value():
    assert kappa(KappaQuery(4, 1, 1, omega_l(3, 1))) == RootOfUnity(3, -1)


def test_diagonal_is_one():
    for m in range(2, 8):
        for l in range(m):
            for z in range(m):
                q = KappaQuery(1, 1, z, omega_l(m, l))
                assert kappa(q).is_one() and kappa_oracle(q).is_one()


def test_z5_small_cases():
    for l in range(5):
        w = omega_l(5, l)
        for z in range(5):
            assert kappa(KappaQuery(2, 3, z, w)) == kappa_oracle(KappaQuery(2, 3, z, w))
        assert kappa(KappaQuery(2, -3, 1, w)) == kappa_oracle(KappaQuery(2, -3, 1, w))


@given(queries())
def test_closed_form_matches_oracle(q):
    assert kappa(q) == kappa_oracle(q)


@given(queries())
def test_antisymmetry(q):
    swapped = KappaQuery(q.b, q.a, q.z, q.omega)
    assert (kappa(q) * kappa(swapped)).is_one()


@given(queries())
def test_class_form_agrees_at_canonical_generator(q):
    q = KappaQuery(q.a, q.b, 1, q.omega)
    assert kappa_class(q) == kappa(q)


@given(queries(8), st.integers(0, 2**32 - 1))
def test_class_form_is_coboundary_invariant(q, seed):
    w = q.omega
    m = w.group.order
    beta = np.random.default_rng(seed).integers(0, 2 * m, size=(m, m))
    beta[0, :] = beta[:, 0] = 0
    pert = w * coboundary(w.group, 2 * m, beta)
    assert kappa_class(q) == kappa_class(KappaQuery(q.a, q.b, q.z, pert))


@given(st.integers(1, 200), st.integers(1, 200), st.sampled_from([1, -1]))
def test_remainder_sequence(r1, r0, sign):
    steps = remainder_sequence(sign * r1, sign * r0)
    assert steps[-1][1] == sign * math.gcd(r1, r0)
    prev, cur = sign * r1, sign * r0
    for i, (k, a, b) in enumerate(steps):
        assert (a, b) == (cur, prev)
        assert k >= (0 if i == 0 else 1)
        prev, cur = cur, prev - k * cur
        assert abs(cur) < abs(a)
    assert cur == 0
