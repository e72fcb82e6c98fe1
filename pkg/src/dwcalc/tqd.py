"""The torus space E and the twisted-quantum-double characters living in it.

Vectors are sparse: a dict from commuting pairs (x, h) to values, missing
keys meaning zero.  Values are either :class:`RootOfUnity` (pure phases, the
common case for characters) or :class:`Cyclotomic`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Hashable, Iterable, Mapping

from .cocycles import ThreeCocycle, gamma, omega_l, trivial_cocycle
from .cyclotomic import Cyclotomic, RootOfUnity, csum
from .groups import FiniteGroup
from .kappa import KappaQuery, kappa

__all__ = [
    "EVector",
    "TQDCharacter",
    "UnsupportedError",
    "inner",
    "chi_cyclic",
    "chi_abelian_untwisted",
    "character_family",
    "s_inverse",
    "mul",
    "solid_torus_vector",
    "glued_solid_torus_vector",
    "expand_in_s_basis",
    "reconstruct",
    "membership_defects",
]

Value = "RootOfUnity | Cyclotomic"


class UnsupportedError(ValueError):
    """No character family is available for this (group, cocycle) pair."""


def _mul(a, b):
    if isinstance(a, RootOfUnity) and isinstance(b, RootOfUnity):
        return a * b
    return _cyc(a) * _cyc(b)


def _cyc(a) -> Cyclotomic:
    return a.to_cyclotomic() if isinstance(a, RootOfUnity) else a


def _conj(a):
    return a.inverse() if isinstance(a, RootOfUnity) else a.conjugate()


class EVector:
    """Function on commuting pairs of a group, tied to a cocycle."""

    __slots__ = ("group", "omega", "values")

    def __init__(self, group: FiniteGroup, omega: ThreeCocycle, values: Mapping | None = None):
        self.group = group
        self.omega = omega
        vals = {}
        for (x, h), v in (values or {}).items():
            if not group.commutes(x, h):
                raise KeyError(f"({x}, {h}) is not a commuting pair")
            if isinstance(v, (int, Fraction)):
                v = Cyclotomic.rational(v)
            if isinstance(v, RootOfUnity) or v:
                vals[(x, h)] = v
        self.values = vals

    def __getitem__(self, key: tuple[int, int]) -> Cyclotomic:
        v = self.values.get(key)
        if v is None:
            if not self.group.commutes(*key):
                raise KeyError(f"{key} is not a commuting pair")
            return Cyclotomic.zero()
        return _cyc(v)

    def raw(self, key):
        """Stored value (RootOfUnity or Cyclotomic) or None for zero."""
        return self.values.get(key)

    def _check(self, other: "EVector") -> None:
        if other.group is not self.group or other.omega is not self.omega:
            raise ValueError("EVectors belong to different (group, cocycle) pairs")

    def __add__(self, other: "EVector") -> "EVector":
        self._check(other)
        out = dict(self.values)
        for k, v in other.values.items():
            out[k] = _cyc(out[k]) + _cyc(v) if k in out else v
        return EVector(self.group, self.omega, out)

    def __neg__(self) -> "EVector":
        return self.scale(-1)

    def __sub__(self, other: "EVector") -> "EVector":
        return self + (-other)

    def scale(self, c) -> "EVector":
        if isinstance(c, RootOfUnity):
            return EVector(self.group, self.omega, {k: _mul(c, v) for k, v in self.values.items()})
        c = c if isinstance(c, Cyclotomic) else Cyclotomic.rational(c)
        if not c:
            return EVector(self.group, self.omega)
        return EVector(self.group, self.omega, {k: c * _cyc(v) for k, v in self.values.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, EVector):
            return NotImplemented
        if other.group is not self.group:
            return False
        keys = set(self.values) | set(other.values)
        return all(self[k] == other[k] for k in keys)

    __hash__ = None

    def support(self) -> set[tuple[int, int]]:
        return set(self.values)

    def __repr__(self) -> str:
        return f"EVector({self.group!r}, {len(self.values)} non-zero values)"


def inner(u: EVector, v: EVector) -> Cyclotomic:
    """(u, v) = (1/#G) sum_{xh=hx} u(x,h) conj(v(x,h))."""
    u._check(v)
    small, big = (u, v) if len(u.values) <= len(v.values) else (v, u)
    terms = []
    for k in small.values:
        if k in big.values:
            terms.append(_mul(u.values[k], _conj(v.values[k])))
    return csum(terms).scale(Fraction(1, u.group.order))


def membership_defects(v: EVector) -> list[tuple[int, int, int]]:
    """Triples (x, h, h') violating v(h'xh'^-1, h'hh'^-1) = gamma_h'(x,h)/gamma_h'(h,x) v(x,h)."""
    G, w = v.group, v.omega
    bad = []
    for x, h in G.commuting_pairs():
        for hp in G.elements:
            lhs = v[(G.conj(hp, x), G.conj(hp, h))]
            factor = gamma(w, hp, x, h) / gamma(w, hp, h, x)
            if lhs != factor.to_cyclotomic() * v[(x, h)]:
                bad.append((x, h, hp))
    return bad


@dataclass(frozen=True, eq=False)
class TQDCharacter:
    label: Hashable
    values: EVector
    conj_class: tuple[int, ...]

    @property
    def dim(self) -> Cyclotomic:
        """sum over x in the supporting class of chi(x, e)"""
        return csum(self.values.raw((x, 0)) or 0 for x in self.conj_class)

    def __call__(self, x: int, h: int) -> Cyclotomic:
        return self.values[(x, h)]

    def __repr__(self) -> str:
        return f"TQDCharacter({self.label!r})"


def chi_cyclic(
    m: int, l: int, h: int, s: int, omega: ThreeCocycle | None = None
) -> TQDCharacter:
    """chi^l_{h,s}(x, y) = delta_{h,x} zeta_{m^2}^(l h y + m s y)."""
    omega = omega if omega is not None else _standard_omega(m, l)
    G = omega.group
    if G.kind != "cyclic" or G.order != m or omega.level != l:
        raise UnsupportedError("chi_cyclic needs omega_l on Z/m")
    if not 0 <= s < m:
        raise ValueError(f"s must satisfy 0 <= s < {m}")
    h %= m
    vals = {(h, y): RootOfUnity(m * m, l * h * y + m * s * y) for y in range(m)}
    return TQDCharacter((h, s), EVector(G, omega, vals), (h,))


@lru_cache(maxsize=None)
def _standard_omega(m: int, l: int) -> ThreeCocycle:
    return omega_l(m, l)


def chi_abelian_untwisted(
    group: FiniteGroup, c: int, psi: Iterable[int], omega: ThreeCocycle | None = None
) -> TQDCharacter:
    """chi(x, h) = delta_{c,x} psi(h) with psi(h) = prod_i zeta_{m_i}^(psi_i h_i)."""
    omega = omega if omega is not None else _trivial_for(group)
    if not group.is_abelian or group.kind == "table":
        raise UnsupportedError("untwisted abelian characters need a cyclic or abelian-product group")
    if not omega.is_trivial:
        raise UnsupportedError("chi_abelian_untwisted needs the trivial cocycle")
    psi = tuple(int(k) % m for k, m in zip(psi, group.factors))
    if len(psi) != len(group.factors):
        raise ValueError("character index tuple has the wrong length")
    n = group.exponent
    vals = {}
    for h in group.elements:
        res = group.residues(h)
        e = sum(k * r * (n // m) for k, r, m in zip(psi, res, group.factors))
        vals[(c, h)] = RootOfUnity(n, e)
    return TQDCharacter((c, psi), EVector(group, omega, vals), (c,))


_TRIVIAL: dict[int, ThreeCocycle] = {}


def _trivial_for(group: FiniteGroup) -> ThreeCocycle:
    key = id(group)
    if key not in _TRIVIAL or _TRIVIAL[key].group is not group:
        _TRIVIAL[key] = trivial_cocycle(group)
    return _TRIVIAL[key]


def character_family(group: FiniteGroup, omega: ThreeCocycle) -> list[TQDCharacter]:
    """All irreducible characters chi_rho for the supported (group, cocycle) pairs."""
    cache = omega._cache
    if "family" in cache:
        return cache["family"]
    if omega.group is not group:
        raise ValueError("cocycle is defined on a different group")
    if group.kind == "cyclic" and omega.level is not None:
        m, l = group.order, omega.level
        fam = [chi_cyclic(m, l, h, s, omega) for h in range(m) for s in range(m)]
    elif omega.is_trivial and group.kind in ("cyclic", "abelian"):
        fam = [
            chi_abelian_untwisted(group, c, psi, omega)
            for c in group.elements
            for psi in product(*(range(m) for m in group.factors))
        ]
    else:
        raise UnsupportedError(
            f"no character family for {group!r} with this cocycle "
            "(supported: omega_l on cyclic groups, trivial cocycle on abelian groups)"
        )
    cache["family"] = fam
    return fam


def s_inverse(v: EVector) -> EVector:
    """(S^-1 v)(x, h) = gamma_h(x, x^-1)^-1 v(h, x^-1)."""
    G, w = v.group, v.omega
    out = {}
    for (y, xinv), val in v.values.items():
        # v(h, x^-1) is stored under key (h, x^-1) = (y, xinv)
        h, x = y, G.inv(xinv)
        out[(x, h)] = _mul(gamma(w, h, x, xinv).inverse(), val)
    return EVector(G, w, out)


def mul(u: EVector, v: EVector) -> EVector:
    """Pair-of-pants product: sum_{x1 x2 = x} gamma_h(x1,x2) u(x1,h) v(x2,h).

    Only summands with both (x1,h) and (x2,h) commuting pairs contribute.
    """
    u._check(v)
    G, w = u.group, u.omega
    by_h: dict[int, list] = {}
    for (x2, h), val in v.values.items():
        by_h.setdefault(h, []).append((x2, val))
    acc: dict[tuple[int, int], list] = {}
    for (x1, h), a in u.values.items():
        for x2, b in by_h.get(h, ()):
            term = _mul(gamma(w, h, x1, x2), _mul(a, b))
            acc.setdefault((G.mul(x1, x2), h), []).append(term)
    return EVector(G, w, {k: csum(ts) for k, ts in acc.items()})


def solid_torus_vector(group: FiniteGroup, omega: ThreeCocycle) -> EVector:
    """(x, h) -> delta_{x,e}"""
    return EVector(group, omega, {(0, h): RootOfUnity.one() for h in group.elements})


def glued_solid_torus_vector(
    group: FiniteGroup, omega: ThreeCocycle, matrix: tuple[tuple[int, int], tuple[int, int]]
) -> EVector:
    """Solid-torus vector pushed through the torus map ((a, b), (a', b')).

    Value at (x, h) is kappa_{a,-b}(x^a' h^b') when x^a h^b = e, else 0.
    """
    (a, b), (a2, b2) = matrix
    if a * b2 - b * a2 != 1:
        raise ValueError(f"gluing matrix {matrix} does not have determinant 1")
    G = group
    vals = {}
    for x, h in G.commuting_pairs():
        if G.mul(G.power(x, a), G.power(h, b)) != 0:
            continue
        z = G.mul(G.power(x, a2), G.power(h, b2))
        vals[(x, h)] = kappa(KappaQuery(a, -b, z, omega))
    return EVector(G, omega, vals)


def _s_basis(group: FiniteGroup, omega: ThreeCocycle) -> list[tuple[Hashable, EVector]]:
    cache = omega._cache
    if "s_basis" not in cache:
        cache["s_basis"] = [(chi.label, s_inverse(chi.values)) for chi in character_family(group, omega)]
    return cache["s_basis"]


def expand_in_s_basis(v: EVector) -> dict[Hashable, Cyclotomic]:
    """Coefficients c_rho = (v, S^-1 chi_rho)."""
    return {label: inner(v, b) for label, b in _s_basis(v.group, v.omega)}


def reconstruct(group: FiniteGroup, omega: ThreeCocycle, coeffs: Mapping) -> EVector:
    """sum_rho c_rho S^-1 chi_rho"""
    out = EVector(group, omega)
    for label, b in _s_basis(group, omega):
        c = coeffs.get(label)
        if c is not None and c != 0:
            out = out + b.scale(c)
    return out
