"""Finite groups on dense integer indices.

Every group carries its full Cayley table as a numpy array; element 0 is the
identity.  Cyclic and abelian-product groups additionally remember their
factor orders so the character machinery can read off residues.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np

__all__ = [
    "FiniteGroup",
    "ConjugacyData",
    "GroupError",
    "cyclic",
    "abelian",
    "from_table",
    "symmetric",
    "dihedral",
    "abelian_groups_of_order",
    "parse_group_spec",
    "load_group",
]

VALIDATE_LIMIT = 64


class GroupError(ValueError):
    pass


@dataclass(frozen=True)
class ConjugacyData:
    classes: tuple[tuple[int, ...], ...]
    representatives: tuple[int, ...]
    centralizers: tuple[tuple[int, ...], ...]


@dataclass(eq=False)
class FiniteGroup:
    """A finite group given by its multiplication table.

    ``kind`` is ``"cyclic"``, ``"abelian"`` or ``"table"``; for the first two
    ``factors`` holds the cyclic factor orders and elements are mixed-radix
    encodings of residue tuples (first factor most significant).
    """

    table: np.ndarray
    kind: str = "table"
    factors: tuple[int, ...] = ()
    name: str = ""
    _inverse: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        t = self.table
        k = t.shape[0]
        self._inverse = np.empty(k, dtype=np.int64)
        rows, cols = np.nonzero(t == 0)
        self._inverse[rows] = cols

    # -- basic operations ---------------------------------------------------

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def __len__(self) -> int:
        return self.order

    @property
    def elements(self) -> range:
        return range(self.order)

    @property
    def identity(self) -> int:
        return 0

    def _check(self, g: int) -> int:
        if not 0 <= g < self.order:
            raise IndexError(f"element {g} out of range for group of order {self.order}")
        return g

    def mul(self, g: int, h: int) -> int:
        return int(self.table[self._check(g), self._check(h)])

    def inv(self, g: int) -> int:
        return int(self._inverse[self._check(g)])

    def power(self, g: int, n: int) -> int:
        self._check(g)
        if n < 0:
            g, n = int(self._inverse[g]), -n
        n %= self.element_order(g)
        result = 0
        base = g
        while n:
            if n & 1:
                result = int(self.table[result, base])
            base = int(self.table[base, base])
            n >>= 1
        return result

    def conj(self, h: int, x: int) -> int:
        """h x h^-1"""
        return int(self.table[self.table[h, x], self._inverse[h]])

    def commutator(self, u: int, v: int) -> int:
        """u v u^-1 v^-1"""
        t, inv = self.table, self._inverse
        return int(t[t[t[u, v], inv[u]], inv[v]])

    def element_order(self, g: int) -> int:
        return int(self._orders[self._check(g)])

    @cached_property
    def _orders(self) -> np.ndarray:
        k = self.order
        orders = np.zeros(k, dtype=np.int64)
        cur = np.arange(k)
        col = np.arange(k)
        for n in range(1, k + 1):
            hit = (cur == 0) & (orders == 0)
            orders[hit] = n
            if orders.all():
                break
            cur = self.table[cur, col]
        return orders

    @cached_property
    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    @property
    def exponent(self) -> int:
        return math.lcm(*(int(o) for o in self._orders))

    # -- residues for cyclic / abelian encodings ----------------------------

    def residues(self, g: int) -> tuple[int, ...]:
        """Residue tuple of g in a cyclic or abelian-product group."""
        if self.kind == "table":
            raise GroupError("residue coordinates need a cyclic or abelian-product group")
        out = []
        for m in reversed(self.factors):
            g, r = divmod(g, m)
            out.append(r)
        return tuple(reversed(out))

    def from_residues(self, res) -> int:
        idx = 0
        for r, m in zip(res, self.factors):
            idx = idx * m + (r % m)
        return idx

    # -- structure queries --------------------------------------------------

    def commutes(self, x: int, h: int) -> bool:
        return self.table[x, h] == self.table[h, x]

    @cached_property
    def _commute_matrix(self) -> np.ndarray:
        return self.table == self.table.T

    def centralizer(self, g: int) -> tuple[int, ...]:
        return tuple(int(x) for x in np.nonzero(self._commute_matrix[g])[0])

    def conjugacy_data(self) -> ConjugacyData:
        return self._conjugacy

    @cached_property
    def _conjugacy(self) -> ConjugacyData:
        seen = np.zeros(self.order, dtype=bool)
        classes, reps, cents = [], [], []
        t, inv = self.table, self._inverse
        all_h = np.arange(self.order)
        for x in range(self.order):
            if seen[x]:
                continue
            orbit = np.unique(t[t[all_h, x], inv[all_h]])
            seen[orbit] = True
            classes.append(tuple(int(y) for y in orbit))
            reps.append(x)  # least index: x is the first unseen element
            cents.append(self.centralizer(x))
        return ConjugacyData(tuple(classes), tuple(reps), tuple(cents))

    def commuting_pairs(self) -> list[tuple[int, int]]:
        xs, hs = np.nonzero(self._commute_matrix)
        return [(int(x), int(h)) for x, h in zip(xs, hs)]

    # -- io -----------------------------------------------------------------

    def to_json(self) -> dict:
        if self.kind == "cyclic":
            return {"type": "cyclic", "m": self.factors[0]}
        if self.kind == "abelian":
            return {"type": "abelian", "factors": list(self.factors)}
        return {"type": "table", "order": self.order, "table": self.table.tolist()}

    def as_table_group(self) -> "FiniteGroup":
        """Same group, forgetting the cyclic/abelian encoding."""
        return FiniteGroup(self.table.copy(), name=self.name)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or self.kind}, order={self.order})"


def _validate_table(t: np.ndarray, check_assoc: bool) -> None:
    k = t.shape[0]
    if t.shape != (k, k) or k == 0:
        raise GroupError(f"table must be square and non-empty, got shape {t.shape}")
    if t.min() < 0 or t.max() >= k:
        raise GroupError("table entries must be element indices 0..k-1")
    ar = np.arange(k)
    if not ((t[0] == ar).all() and (t[:, 0] == ar).all()):
        raise GroupError("element 0 must be the identity")
    for row in t:
        if len(np.unique(row)) != k:
            raise GroupError("table is not a Latin square (missing inverses)")
    for col in t.T:
        if len(np.unique(col)) != k:
            raise GroupError("table is not a Latin square (missing inverses)")
    if check_assoc:
        # (xy)z == x(yz) for all triples
        left = t[t[:, :, None], ar[None, None, :]]
        right = t[ar[:, None, None], t[None, :, :]]
        if not (left == right).all():
            raise GroupError("table is not associative")


def from_table(table, name: str = "", validate: bool | None = None) -> FiniteGroup:
    """Group from an explicit Cayley table; identity must be index 0.

    Associativity is checked in O(k^3) by default only for k <= 64;
    pass ``validate=True`` to force it.
    """
    t = np.asarray(table, dtype=np.int64)
    check = validate if validate is not None else t.shape[0] <= VALIDATE_LIMIT
    _validate_table(t, check_assoc=check)
    return FiniteGroup(t, name=name)


def abelian(*factors: int) -> FiniteGroup:
    if not factors or any(m < 1 for m in factors):
        raise GroupError(f"abelian factors must be positive, got {factors}")
    shape = tuple(factors)
    k = math.prod(shape)
    res = np.array(np.unravel_index(np.arange(k), shape)).T  # (k, r)
    summed = (res[:, None, :] + res[None, :, :]) % np.array(shape)
    table = np.ravel_multi_index(tuple(np.moveaxis(summed, -1, 0)), shape)
    kind = "cyclic" if len(shape) == 1 else "abelian"
    name = f"Z/{shape[0]}" if kind == "cyclic" else "x".join(f"Z/{m}" for m in shape)
    return FiniteGroup(np.asarray(table, dtype=np.int64), kind=kind, factors=shape, name=name)


def cyclic(m: int) -> FiniteGroup:
    return abelian(m)


def symmetric(n: int) -> FiniteGroup:
    """S_n on permutations in lexicographic order (identity first); (p*q)(i) = p(q(i))."""
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[q[i]] for i in range(n))] for q in perms] for p in perms]
    return FiniteGroup(np.array(table, dtype=np.int64), name=f"S{n}")


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order 2n; element r^i s^j encoded as i + n*j."""
    k = 2 * n
    table = np.empty((k, k), dtype=np.int64)
    for a in range(k):
        i, j = a % n, a // n
        for b in range(k):
            i2, j2 = b % n, b // n
            # r^i s^j r^i2 s^j2 = r^(i + (-1)^j i2) s^(j+j2)
            ii = (i + (i2 if j == 0 else -i2)) % n
            table[a, b] = ii + n * ((j + j2) % 2)
    return FiniteGroup(table, name=f"D{n}")


def _partitions(n: int, largest: int | None = None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def abelian_groups_of_order(n: int) -> list[tuple[int, ...]]:
    """Invariant factor lists of all abelian groups of order n, up to isomorphism."""
    prime_parts = []
    m = n
    p = 2
    while m > 1:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            prime_parts.append([tuple(p**k for k in lam) for lam in _partitions(e)])
        p += 1
    if not prime_parts:
        return [(1,)]
    out = []
    for combo in itertools.product(*prime_parts):
        width = max(len(c) for c in combo)
        inv = [1] * width
        for c in combo:
            for i, q in enumerate(c):
                inv[i] *= q
        out.append(tuple(sorted(inv)))
    return sorted(out)


def _from_dict(data: dict) -> FiniteGroup:
    kind = data.get("type")
    if kind == "cyclic":
        return cyclic(int(data["m"]))
    if kind == "abelian":
        return abelian(*(int(f) for f in data["factors"]))
    if kind == "table":
        t = data["table"]
        if "order" in data and int(data["order"]) != len(t):
            raise GroupError(f"declared order {data['order']} but table has {len(t)} rows")
        return from_table(t)
    raise GroupError(f"unknown group type {kind!r}")


def load_group(path: str | Path) -> FiniteGroup:
    with open(path) as fh:
        return _from_dict(json.load(fh))


def parse_group_spec(spec: str) -> FiniteGroup:
    """``cyclic:9``, ``abelian:2,4``, ``symmetric:3``, ``dihedral:4`` or a JSON file path."""
    if ":" in spec:
        kind, _, arg = spec.partition(":")
        try:
            nums = [int(a) for a in arg.split(",") if a.strip()]
        except ValueError:
            nums = None
        if kind in ("table", "file"):
            return load_group(arg)
        if nums:
            if kind == "cyclic" and len(nums) == 1:
                return cyclic(nums[0])
            if kind == "abelian":
                return abelian(*nums)
            if kind == "symmetric" and len(nums) == 1:
                return symmetric(nums[0])
            if kind == "dihedral" and len(nums) == 1:
                return dihedral(nums[0])
    elif spec.endswith(".json"):
        return load_group(spec)
    raise GroupError(f"cannot parse group spec {spec!r}")
