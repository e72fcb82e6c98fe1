"""Exact arithmetic in cyclotomic fields Q(zeta_N).

An element is stored as rational coefficients on the power basis
1, zeta_N, ..., zeta_N^(phi(N)-1), i.e. reduced modulo the N-th cyclotomic
polynomial.  Mixed-order arithmetic embeds both operands into the lcm order.

Hot loops should not build elements one product at a time; collect integer
exponent counts and call :meth:`Cyclotomic.from_exponents` once.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Mapping, Union

__all__ = [
    "Cyclotomic",
    "RootOfUnity",
    "from_root",
    "cyclotomic_polynomial",
    "csum",
]

Scalar = Union[int, Fraction]


# ---------------------------------------------------------------------------
# Number-theoretic helpers


@lru_cache(maxsize=None)
def _factor(n: int) -> tuple[tuple[int, int], ...]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def euler_phi(n: int) -> int:
    result = n
    for p, _ in _factor(n):
        result -= result // p
    return result


def mobius(n: int) -> int:
    fac = _factor(n)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def _lcm(a: int, b: int) -> int:
    return a // math.gcd(a, b) * b


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    # Phi_n = prod_{d | n} (x^d - 1)^mu(n/d); numerator / denominator by exact division.
    num = [1]
    den = [1]
    for d in range(1, n + 1):
        if n % d:
            continue
        mu = mobius(n // d)
        if mu == 0:
            continue
        factor = [-1] + [0] * (d - 1) + [1]
        if mu == 1:
            num = _polymul(num, factor)
        else:
            den = _polymul(den, factor)
    q = _polydiv_exact(num, den)
    return tuple(q)


def _polymul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _polydiv_exact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    dn = len(den) - 1
    lead = den[-1]
    q = [0] * (len(num) - dn)
    for k in range(len(num) - 1, dn - 1, -1):
        c = num[k] // lead
        q[k - dn] = c
        if c:
            for i, y in enumerate(den):
                num[k - dn + i] -= c * y
    assert not any(num), "inexact cyclotomic division"
    return q


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Entry k is the reduced form of zeta_n^k (0 <= k < n) as sparse (index, coeff) pairs."""
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    table = []
    cur = [0] * deg
    cur[0] = 1
    for _ in range(n):
        table.append(tuple((i, c) for i, c in enumerate(cur) if c))
        # multiply by x, then eliminate x^deg using the monic Phi_n
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(deg):
                cur[i] -= top * phi[i]
    return tuple(table)


@lru_cache(maxsize=None)
def _normalized_trace_of_power(n: int, k: int) -> Fraction:
    # Tr(zeta_n^k)/phi(n) depends only on the exact order o of the root: mu(o)/phi(o).
    o = n // math.gcd(k % n, n)
    return Fraction(mobius(o), euler_phi(o))


# ---------------------------------------------------------------------------
# Roots of unity


@dataclass(frozen=True, init=False)
class RootOfUnity:
    """The value zeta_order^exponent, kept in lowest terms."""

    order: int
    exponent: int

    def __init__(self, order: int, exponent: int = 1):
        if order < 1:
            raise ValueError(f"root order must be positive, got {order}")
        k = exponent % order
        g = math.gcd(k, order)
        object.__setattr__(self, "order", order // g)
        object.__setattr__(self, "exponent", k // g)

    @classmethod
    def one(cls) -> "RootOfUnity":
        return cls(1, 0)

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        if not isinstance(other, RootOfUnity):
            return NotImplemented
        n = _lcm(self.order, other.order)
        return RootOfUnity(
            n, self.exponent * (n // self.order) + other.exponent * (n // other.order)
        )

    def __truediv__(self, other: "RootOfUnity") -> "RootOfUnity":
        if not isinstance(other, RootOfUnity):
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, k: int) -> "RootOfUnity":
        return RootOfUnity(self.order, self.exponent * k)

    def inverse(self) -> "RootOfUnity":
        return RootOfUnity(self.order, -self.exponent)

    conjugate = inverse

    def is_one(self) -> bool:
        return self.order == 1

    def exponent_mod(self, n: int) -> int:
        """Exponent e with self == zeta_n^e; requires order | n."""
        if n % self.order:
            raise ValueError(f"zeta_{self.order}^{self.exponent} is not an {n}-th root of unity")
        return self.exponent * (n // self.order)

    def to_cyclotomic(self) -> "Cyclotomic":
        return from_root(self.order, self.exponent)

    def to_complex(self) -> complex:
        return cmath.exp(2j * math.pi * self.exponent / self.order)

    def __repr__(self) -> str:
        return f"RootOfUnity({self.order}, {self.exponent})"


# ---------------------------------------------------------------------------
# Field elements


def _as_fraction(x: Scalar) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"not a rational scalar: {x!r}")


class Cyclotomic:
    """Immutable element of Q(zeta_order)."""

    __slots__ = ("order", "_coeffs", "_hash")

    def __init__(self, order: int, coeffs: Iterable[Scalar] = ()):
        """Build from a power-basis coefficient list; longer lists are reduced."""
        if order < 1:
            raise ValueError(f"order must be positive, got {order}")
        raw: dict[int, Fraction] = {}
        for i, c in enumerate(coeffs):
            c = _as_fraction(c)
            if c:
                raw[i % order] = raw.get(i % order, 0) + c
        self._set(order, _reduce(order, raw))

    def _set(self, order: int, coeffs: dict[int, Fraction]) -> None:
        self.order = order
        self._coeffs = coeffs
        self._hash = None

    @classmethod
    def _make(cls, order: int, coeffs: dict[int, Fraction]) -> "Cyclotomic":
        obj = cls.__new__(cls)
        obj._set(order, coeffs)
        return obj

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_exponents(cls, order: int, counts: Mapping[int, Scalar]) -> "Cyclotomic":
        """sum_k counts[k] * zeta_order^k with arbitrary integer exponents k."""
        raw: dict[int, Fraction] = {}
        for k, c in counts.items():
            if c:
                k %= order
                raw[k] = raw.get(k, 0) + c
        return cls._make(order, _reduce(order, raw))

    @classmethod
    def rational(cls, x: Scalar) -> "Cyclotomic":
        x = _as_fraction(x)
        return cls._make(1, {0: x} if x else {})

    @classmethod
    def zero(cls) -> "Cyclotomic":
        return cls._make(1, {})

    @classmethod
    def one(cls) -> "Cyclotomic":
        return cls._make(1, {0: Fraction(1)})

    # -- structure ----------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(cyclotomic_polynomial(self.order)) - 1

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        out = [Fraction(0)] * self.degree
        for i, c in self._coeffs.items():
            out[i] = Fraction(c)
        return tuple(out)

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_rational(self) -> bool:
        # the power basis starts with 1, so rationals are exactly the constants
        return set(self._coeffs) <= {0}

    def as_fraction(self) -> Fraction:
        """The rational value; raises ValueError if the element is irrational."""
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self._coeffs.get(0, 0))

    def embed(self, order: int) -> "Cyclotomic | None":
        """Re-express in Q(zeta_order); None if the element does not lie there."""
        if order == self.order:
            return self
        if order % self.order == 0:
            step = order // self.order
            return Cyclotomic.from_exponents(order, {i * step: c for i, c in self._coeffs.items()})
        if set(self._coeffs) <= {0}:
            return Cyclotomic._make(order, dict(self._coeffs))
        return _embed_down(self, order)

    def minimal(self) -> "Cyclotomic":
        """Same element written over the smallest Q(zeta_d), d | order."""
        for d in sorted(d for d in range(1, self.order + 1) if self.order % d == 0):
            y = self.embed(d)
            if y is not None:
                return y
        return self

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "Cyclotomic":
        if isinstance(other, Cyclotomic):
            return other
        if isinstance(other, RootOfUnity):
            return other.to_cyclotomic()
        if isinstance(other, (int, Fraction)):
            return Cyclotomic.rational(other)
        return NotImplemented

    @staticmethod
    def _unify(x: "Cyclotomic", y: "Cyclotomic") -> tuple[int, dict, dict]:
        if x.order == y.order:
            return x.order, x._coeffs, y._coeffs
        n = _lcm(x.order, y.order)
        return n, x.embed(n)._coeffs, y.embed(n)._coeffs

    def __add__(self, other) -> "Cyclotomic":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n, a, b = self._unify(self, other)
        out = dict(a)
        for i, c in b.items():
            v = out.get(i, 0) + c
            if v:
                out[i] = v
            else:
                out.pop(i, None)
        return Cyclotomic._make(n, out)

    __radd__ = __add__

    def __neg__(self) -> "Cyclotomic":
        return Cyclotomic._make(self.order, {i: -c for i, c in self._coeffs.items()})

    def __sub__(self, other) -> "Cyclotomic":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Cyclotomic":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other) -> "Cyclotomic":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n, a, b = self._unify(self, other)
        raw: dict[int, Fraction] = {}
        for i, c in a.items():
            for j, d in b.items():
                k = (i + j) % n
                raw[k] = raw.get(k, 0) + c * d
        return Cyclotomic._make(n, _reduce(n, raw))

    __rmul__ = __mul__

    def scale(self, r: Scalar) -> "Cyclotomic":
        r = _as_fraction(r)
        if not r:
            return Cyclotomic._make(self.order, {})
        return Cyclotomic._make(self.order, {i: c * r for i, c in self._coeffs.items()})

    def __truediv__(self, other) -> "Cyclotomic":
        if isinstance(other, Cyclotomic):
            if other.is_zero():
                raise ZeroDivisionError("division by zero cyclotomic")
            root = other.as_root()
            if root is not None:
                return self * root.inverse()
            return self * other.inverse()
        if isinstance(other, RootOfUnity):
            return self * other.inverse()
        r = _as_fraction(other)
        if not r:
            raise ZeroDivisionError("division by zero")
        return self.scale(1 / r)

    def __pow__(self, k: int) -> "Cyclotomic":
        if k < 0:
            root = self.as_root()
            if root is not None:
                return (root ** k).to_cyclotomic()
            return self.inverse() ** -k
        result = Cyclotomic.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def galois(self, k: int) -> "Cyclotomic":
        """Field automorphism zeta -> zeta^k, gcd(k, order) = 1."""
        if math.gcd(k, self.order) != 1:
            raise ValueError(f"{k} is not a unit mod {self.order}")
        return Cyclotomic.from_exponents(self.order, {i * k: c for i, c in self._coeffs.items()})

    def inverse(self) -> "Cyclotomic":
        """1/x as prod_{sigma != id} sigma(x) / N(x)."""
        if self.is_zero():
            raise ZeroDivisionError("division by zero cyclotomic")
        if self.is_rational():
            return Cyclotomic.rational(1 / self.as_fraction())
        n = self.order
        rest = Cyclotomic.one()
        for k in range(2, n):
            if math.gcd(k, n) == 1:
                rest = rest * self.galois(k)
        return rest.scale(1 / (self * rest).as_fraction())

    def conjugate(self) -> "Cyclotomic":
        """Galois map zeta -> zeta^-1 (complex conjugation)."""
        n = self.order
        return Cyclotomic.from_exponents(n, {-i: c for i, c in self._coeffs.items()})

    def as_root(self) -> RootOfUnity | None:
        """The root of unity equal to self, if self is one."""
        n = self.order
        m = n if n % 2 == 0 else 2 * n
        x = self.embed(m)
        # every root of unity in Q(zeta_n) is a 2n-th root; compare against its reduced form
        z = x.to_complex()
        if abs(abs(z) - 1) > 1e-6:
            return None
        k = round(cmath.phase(z) / (2 * math.pi) * m) % m
        return RootOfUnity(m, k) if from_root(m, k) == x else None

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        _, a, b = self._unify(self, other)
        return a == b

    def __hash__(self) -> int:
        if self._hash is None:
            n = self.order
            tr = sum(
                (c * _normalized_trace_of_power(n, i) for i, c in self._coeffs.items()),
                Fraction(0),
            )
            self._hash = hash(tr)
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    # -- numerics / io ------------------------------------------------------

    def to_complex(self) -> complex:
        n = self.order
        return sum(
            (float(c) * cmath.exp(2j * math.pi * i / n) for i, c in self._coeffs.items()),
            0j,
        )

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: Mapping) -> "Cyclotomic":
        return cls(int(data["order"]), [Fraction(c) for c in data["coeffs"]])

    def __repr__(self) -> str:
        return f"Cyclotomic({self.order}, [{', '.join(str(c) for c in self.coeffs)}])"

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for i in sorted(self._coeffs):
            c = self._coeffs[i]
            if i == 0:
                parts.append(str(c))
                continue
            z = f"z{self.order}" + (f"^{i}" if i > 1 else "")
            if c == 1:
                parts.append(z)
            elif c == -1:
                parts.append("-" + z)
            else:
                sign, a = ("-", -c) if c < 0 else ("", c)
                parts.append(f"{sign}{a}*{z}" if a.denominator == 1 else f"{sign}({a})*{z}")
        return " + ".join(parts).replace("+ -", "- ")


def _reduce(n: int, raw: Mapping[int, Scalar]) -> dict[int, Fraction]:
    table = _power_table(n)
    out: dict[int, Fraction] = {}
    for k, c in raw.items():
        if not c:
            continue
        for i, t in table[k]:
            out[i] = out.get(i, 0) + c * t
    return {i: Fraction(c) for i, c in out.items() if c}


def _embed_down(x: Cyclotomic, order: int) -> Cyclotomic | None:
    # Solve sum_i y_i zeta_order^i == x inside Q(zeta_lcm) by exact elimination.
    big = _lcm(order, x.order)
    target = x.embed(big)._coeffs
    deg_small = len(cyclotomic_polynomial(order)) - 1
    deg_big = len(cyclotomic_polynomial(big)) - 1
    cols = [from_root(order, i).embed(big)._coeffs for i in range(deg_small)]
    rows = [
        [Fraction(col.get(r, 0)) for col in cols] + [Fraction(target.get(r, 0))]
        for r in range(deg_big)
    ]
    pivots = []
    row = 0
    for col in range(deg_small):
        piv = next((r for r in range(row, len(rows)) if rows[r][col]), None)
        if piv is None:
            continue
        rows[row], rows[piv] = rows[piv], rows[row]
        inv = 1 / rows[row][col]
        rows[row] = [v * inv for v in rows[row]]
        for r in range(len(rows)):
            if r != row and rows[r][col]:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[row])]
        pivots.append(col)
        row += 1
    if any(r[-1] for r in rows[row:]):
        return None
    y = [Fraction(0)] * deg_small
    for r, col in enumerate(pivots):
        y[col] = rows[r][-1]
    return Cyclotomic(order, y)


@lru_cache(maxsize=4096)
def from_root(n: int, k: int = 1) -> Cyclotomic:
    """Canonical form of zeta_n^k."""
    if n < 1:
        raise ValueError(f"order must be positive, got {n}")
    return Cyclotomic.from_exponents(n, {k: 1})


def csum(values: Iterable) -> Cyclotomic:
    """Exact sum of cyclotomics, roots of unity and rationals.

    Roots of unity are tallied as exponent counts and reduced once.
    """
    counts: dict[int, dict[int, int]] = {}
    total = Cyclotomic.zero()
    for v in values:
        if isinstance(v, RootOfUnity):
            bucket = counts.setdefault(v.order, {})
            bucket[v.exponent] = bucket.get(v.exponent, 0) + 1
        elif v:
            total = total + v
    if counts:
        n = 1
        for o in counts:
            n = _lcm(n, o)
        merged: dict[int, int] = {}
        for o, bucket in counts.items():
            step = n // o
            for e, c in bucket.items():
                merged[e * step] = merged.get(e * step, 0) + c
        total = total + Cyclotomic.from_exponents(n, merged)
    return total
