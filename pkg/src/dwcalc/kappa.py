"""The torus phase kappa_{a,b}(z) and its Euclidean-product oracle.

``kappa`` evaluates the closed form zeta_{m^2}^(l (b*(a mod m) - a*(b mod m)))
with m the order of z and l the restricted level.  ``kappa_oracle`` multiplies
cocycle values along the remainder sequence of (b, a), which is how the phase
arises from cutting a degenerate torus 2-chain; agreement of the two is the
point of the check.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cocycles import ThreeCocycle, restriction_level
from .cyclotomic import RootOfUnity

__all__ = ["KappaQuery", "kappa", "kappa_class", "kappa_oracle", "remainder_sequence"]


@dataclass(frozen=True)
class KappaQuery:
    a: int
    b: int
    z: int
    omega: ThreeCocycle


def kappa_class(q: KappaQuery) -> RootOfUnity:
    """zeta_{m^2}^(l (b*(a mod m) - a*(b mod m))), m = ord z, l = restricted level.

    Depends only on the cohomology class; it equals the torus phase when the
    restriction of omega to <z> is the standard level-l cocycle in the
    coordinate z^k -> k.
    """
    G = q.omega.group
    m = G.element_order(q.z)
    if m == 1:
        return RootOfUnity.one()
    level = restriction_level(q.omega, q.z)
    return RootOfUnity(m * m, level * (q.b * (q.a % m) - q.a * (q.b % m)))


def kappa(q: KappaQuery) -> RootOfUnity:
    """The torus phase kappa_{a,b}(z).

    For omega_l on Z/m this is zeta_{m^2}^(l z (b*(az mod m) - a*(bz mod m))),
    exact for that representative and every z.  Other cocycles use
    :func:`kappa_class`.
    """
    omega = q.omega
    G = omega.group
    if omega.is_trivial or q.z == 0:
        return RootOfUnity.one()
    if G.kind == "cyclic" and omega.level is not None:
        m = G.order
        z = q.z
        return RootOfUnity(
            m * m, omega.level * z * (q.b * ((q.a * z) % m) - q.a * ((q.b * z) % m))
        )
    return kappa_class(q)


def remainder_sequence(r_prev: int, r0: int) -> list[tuple[int, int, int]]:
    """Steps (k_i, r_{i-1}, r_{i-2}) of r_{i-2} = k_i r_{i-1} + r_i down to r_nu = 0.

    Both inputs must be non-zero with the same sign; quotients are taken on
    absolute values so every remainder keeps that sign (k_1 may be 0).
    """
    steps = []
    a, b = r_prev, r0
    while b:
        k = abs(a) // abs(b)
        steps.append((k, b, a))
        a, b = b, a - k * b
    return steps


def _euclid_product(omega: ThreeCocycle, z: int, r_prev: int, r0: int, sign: int) -> RootOfUnity:
    G = omega.group
    e = omega.exps
    total = 0
    for i, (k, r1, r2) in enumerate(remainder_sequence(r_prev, r0), start=1):
        zr = G.power(z, r1)
        part = sum(int(e[zr, G.power(z, r2 - j * r1), zr]) for j in range(1, k + 1))
        total += part if (i % 2 == 1) == (sign > 0) else -part
    return RootOfUnity(omega.root_order, total)


def kappa_oracle(q: KappaQuery) -> RootOfUnity:
    """Product of cocycle values over the Euclidean remainder sequence.

    For ab > 0 the sequence starts r_{-1} = b, r_0 = a and the i-th block
    enters with sign (-1)^(i-1).  For ab < 0 it starts r_{-1} = b, r_0 = -a,
    blocks enter with sign (-1)^i, and a three-term correction is multiplied in.
    """
    a, b, z, omega = q.a, q.b, q.z, q.omega
    if a == 0 or b == 0:
        return RootOfUnity.one()
    if a * b > 0:
        return _euclid_product(omega, z, b, a, +1)
    G = omega.group
    p = lambda n: G.power(z, n)  # noqa: E731
    correction = omega(p(-a), p(a), p(b - a)) * omega(p(b + a), p(-a), p(a)) / omega(p(a), p(b), p(-a))
    return correction * _euclid_product(omega, z, b, -a, -1)
