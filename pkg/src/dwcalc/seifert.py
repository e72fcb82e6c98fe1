"""Seifert data, fiber weights eta, and the Dijkgraaf-Witten evaluators.

``dw_formula`` sums the character formula directly and is the reference.
``dw_prime_closed_form`` evaluates the Z/p closed forms through Gauss sums.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .cocycles import ThreeCocycle
from .cyclotomic import Cyclotomic, RootOfUnity, csum
from .groups import FiniteGroup
from .kappa import KappaQuery, kappa
from .tqd import TQDCharacter, character_family

__all__ = [
    "SeifertData",
    "SeifertError",
    "DWResult",
    "parse_seifert",
    "eta",
    "eta_cyclic",
    "eta_cyclic_decomposed",
    "dw_formula",
    "legendre",
    "is_odd_prime",
    "gauss_sum",
    "gauss_sum_via_legendre",
    "quadratic_gauss_g1",
    "dw_prime_closed_form",
]


class SeifertError(ValueError):
    pass


@dataclass(frozen=True)
class SeifertData:
    """M_O(genus; (a_1, b_1), ..., (a_n, b_n)) over an orientable base."""

    genus: int
    fibers: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "fibers", tuple((int(a), int(b)) for a, b in self.fibers))
        if self.genus < 0:
            raise SeifertError(f"genus must be non-negative, got {self.genus}")
        for a, b in self.fibers:
            if math.gcd(a, b) != 1:
                raise SeifertError(f"fiber ({a},{b}) has gcd {math.gcd(a, b)} != 1")

    @property
    def n(self) -> int:
        return len(self.fibers)

    def __str__(self) -> str:
        return f"g={self.genus};" + ",".join(f"({a},{b})" for a, b in self.fibers)


_SEIFERT_RE = re.compile(r"^\s*g\s*=\s*(\d+)\s*;\s*(.*?)\s*$")
_FIBER_RE = re.compile(r"\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)")


def parse_seifert(text: str) -> SeifertData:
    """Parse ``g=<int>;(<a>,<b>),(<a>,<b>),...`` (fiber list may be empty)."""
    m = _SEIFERT_RE.match(text)
    if not m:
        raise SeifertError(f"cannot parse Seifert data {text!r}; expected 'g=<int>;(a,b),...'")
    genus, rest = int(m.group(1)), m.group(2)
    fibers = [(int(a), int(b)) for a, b in _FIBER_RE.findall(rest)]
    if _FIBER_RE.sub("", rest).replace(",", "").strip():
        raise SeifertError(f"malformed fiber list {rest!r}")
    return SeifertData(genus, tuple(fibers))


@dataclass(frozen=True)
class DWResult:
    value: Cyclotomic
    method: str
    approx: complex = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "approx", self.value.to_complex())

    def to_json(self) -> dict:
        return {
            "value": self.value.to_json(),
            "approx": {"re": self.approx.real, "im": self.approx.imag},
            "method": self.method,
        }


# ---------------------------------------------------------------------------
# fiber weights


def _root_exponent(r: RootOfUnity, n: int) -> int:
    return r.exponent * (n // r.order)


class _FormulaContext:
    """Shared state for evaluating eta over a whole character family.

    Works in a fixed order N where every kappa * chi value is an N-th root, so
    eta is an exponent-count dict and products are sparse cyclic convolutions.
    """

    def __init__(self, group: FiniteGroup, omega: ThreeCocycle, family: list[TQDCharacter]):
        self.group = group
        self.omega = omega
        self.family = family
        n = group.exponent ** 2
        for chi in family:
            for v in chi.values.values.values():
                if not isinstance(v, RootOfUnity):
                    raise TypeError("fast eta path needs root-of-unity character values")
                n = math.lcm(n, v.order)
        self.N = n
        self._terms: dict[tuple[int, int], list] = {}

    def terms(self, a: int, b: int) -> list[tuple[tuple[int, int], int]]:
        """[((z^a, z^-b), exponent of kappa_{a,-b}(z))] over all z."""
        key = (a, b)
        if key not in self._terms:
            G = self.group
            out = []
            for z in G.elements:
                k = kappa(KappaQuery(a, -b, z, self.omega))
                out.append(((G.power(z, a), G.power(z, -b)), _root_exponent(k, self.N)))
            self._terms[key] = out
        return self._terms[key]

    def eta_raw(self, chi: TQDCharacter, a: int, b: int) -> dict[int, int]:
        N = self.N
        vals = chi.values.values
        raw: dict[int, int] = {}
        for key, ke in self.terms(a, b):
            v = vals.get(key)
            if v is not None:
                e = (ke + _root_exponent(v, N)) % N
                raw[e] = raw.get(e, 0) + 1
        return raw

    def convolve(self, p: dict, q: dict) -> dict:
        N = self.N
        out: dict[int, int] = {}
        for i, c in p.items():
            for j, d in q.items():
                k = (i + j) % N
                out[k] = out.get(k, 0) + c * d
        return {k: c for k, c in out.items() if c}


def _context(group: FiniteGroup, omega: ThreeCocycle) -> _FormulaContext:
    cache = omega._cache
    if "formula_ctx" not in cache:
        cache["formula_ctx"] = _FormulaContext(group, omega, character_family(group, omega))
    return cache["formula_ctx"]


def eta(group: FiniteGroup, omega: ThreeCocycle, rho: TQDCharacter, a: int, b: int) -> Cyclotomic:
    """eta_rho(a, b) = sum_z kappa_{a,-b}(z) chi_rho(z^a, z^-b)."""
    terms = []
    for z in group.elements:
        key = (group.power(z, a), group.power(z, -b))
        v = rho.values.raw(key)
        if v is not None:
            k = kappa(KappaQuery(a, -b, z, omega))
            terms.append(k * v if isinstance(v, RootOfUnity) else k.to_cyclotomic() * v)
    return csum(terms)


def eta_cyclic(m: int, l: int, h: int, s: int, a: int, b: int) -> Cyclotomic:
    """sum over z with a z = h (mod m) of zeta_{m^2}^(l a b z^2 - (2 l h + m s) b z)."""
    h %= m
    counts: dict[int, int] = {}
    for z in range(m):
        if (a * z - h) % m == 0:
            e = l * a * b * z * z - (2 * l * h + m * s) * b * z
            counts[e] = counts.get(e, 0) + 1
    return Cyclotomic.from_exponents(m * m, counts)


def eta_cyclic_decomposed(m: int, l: int, h: int, s: int, a: int, b: int) -> Cyclotomic:
    """eta_cyclic through the solutions z = k m/d + c h/d of a z = h, d = gcd(a, m).

    Equals zeta_{m m'}^(-b l c h'^2) zeta_m^(b (l t h' - s) c h')
    * sum_{k<d} zeta_d^(b (l a' k^2 + (2 l h' t - s) k)), where m' = m/d,
    a' = a/d, h' = h/d, a' c = 1 + t m'.  Returns 0 when d does not divide h.
    """
    h %= m
    d = math.gcd(a, m)
    if h % d:
        return Cyclotomic.zero()
    mj, aj, hj = m // d, a // d, h // d
    c = pow(aj, -1, mj) if mj > 1 else 0
    t = (aj * c - 1) // mj
    prefactor = RootOfUnity(m * mj, -b * l * c * hj * hj) * RootOfUnity(m, b * (l * t * hj - s) * c * hj)
    inner = Cyclotomic.from_exponents(
        d, _count(b * (l * aj * k * k + (2 * l * hj * t - s) * k) for k in range(d))
    )
    return prefactor.to_cyclotomic() * inner


def _count(exps) -> dict[int, int]:
    out: dict[int, int] = {}
    for e in exps:
        out[e] = out.get(e, 0) + 1
    return out


# ---------------------------------------------------------------------------
# main formula


def dw_formula(group: FiniteGroup, omega: ThreeCocycle, seifert: SeifertData) -> DWResult:
    """sum_rho (#G)^(2g-2) / dim(rho)^(n+2g-2) * prod_j eta_rho(a_j, b_j)."""
    ctx = _context(group, omega)
    g, n = seifert.genus, seifert.n
    order = Fraction(group.order)
    base = order ** (2 * g - 2)
    total: dict[int, Fraction] = {}
    for chi in ctx.family:
        prod = {0: 1}
        for a, b in seifert.fibers:
            e = ctx.eta_raw(chi, a, b)
            if not e:
                prod = {}
                break
            prod = ctx.convolve(prod, e)
        if not prod:
            continue
        weight = base / chi.dim.as_fraction() ** (n + 2 * g - 2)
        for k, c in prod.items():
            total[k] = total.get(k, 0) + weight * c
    return DWResult(Cyclotomic.from_exponents(ctx.N, total), "formula")


# ---------------------------------------------------------------------------
# primes, Legendre symbols, Gauss sums


def is_odd_prime(p: int) -> bool:
    if p < 3 or p % 2 == 0:
        return False
    return all(p % d for d in range(3, math.isqrt(p) + 1, 2))


def _require_odd_prime(p: int) -> None:
    if not is_odd_prime(p):
        raise ValueError(f"{p} is not an odd prime")


def legendre(a: int, p: int) -> int:
    _require_odd_prime(p)
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def gauss_sum(p: int, a: int) -> Cyclotomic:
    """S_p(a) = sum_{k=0}^{p-1} zeta_p^(a k^2), by direct summation."""
    _require_odd_prime(p)
    return Cyclotomic.from_exponents(p, _count(a * k * k for k in range(p)))


def quadratic_gauss_g1(p: int) -> Cyclotomic:
    """g_1 = sum_{k=1}^{p-1} (k/p) zeta_p^k."""
    _require_odd_prime(p)
    return Cyclotomic.from_exponents(p, {k: legendre(k, p) for k in range(1, p)})


def gauss_sum_via_legendre(p: int, a: int) -> Cyclotomic:
    """(a/p) g_1 for p not dividing a, p otherwise."""
    if a % p == 0:
        return Cyclotomic.rational(p)
    return quadratic_gauss_g1(p).scale(legendre(a, p))


def dw_prime_closed_form(p: int, l: int, seifert: SeifertData) -> DWResult:
    """Closed-form invariant for Z/p, p an odd prime, with cocycle omega_l.

    Fibers split into p not dividing a_j (n_0 = 0 case uses c_j = a_j^-1 mod p^2),
    p || a_j, and p^2 | a_j.
    """
    _require_odd_prime(p)
    if not 0 <= l < p:
        raise ValueError(f"level must satisfy 0 <= l < {p}")
    g = seifert.genus
    unit, once, twice = [], [], []
    for a, b in seifert.fibers:
        if a % p:
            unit.append((a, b))
        elif a % (p * p):
            once.append((a // p, b))
        else:
            twice.append((a // p, b))
    n0 = len(once) + len(twice)
    P = Fraction(p)

    if n0 == 0:
        B = sum(b * pow(a, -1, p * p) for a, b in unit) % (p * p)
        if B % p:
            value = Cyclotomic.rational(P ** (2 * g - 1))
        else:
            value = gauss_sum(p, -l * (B // p)).scale(P ** (2 * g - 1))
        return DWResult(value, "prime")

    if l == 0:
        return DWResult(Cyclotomic.rational(P ** (2 * g - 2 + n0)), "prime")

    prod = Cyclotomic.one()
    for a1, b in once:
        prod = prod * gauss_sum(p, l * a1 * b)
    if twice:
        value = prod.scale(P ** (2 * g - 2 + len(twice)))
    else:
        q = sum(b * pow(4 * l * a1, -1, p) for a1, b in once)
        value = (gauss_sum(p, -q) * prod).scale(P ** (2 * g - 2))
    return DWResult(value, "prime")
