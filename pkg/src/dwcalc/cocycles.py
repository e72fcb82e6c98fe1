"""Normalized U(1)-valued 3-cocycles and the 2-cochains derived from them.

A cocycle is stored as an integer table ``exps[x, y, z]`` of exponents, with
value zeta_N^exps for a fixed ``root_order`` N.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .cyclotomic import RootOfUnity
from .groups import FiniteGroup, cyclic

__all__ = [
    "ThreeCocycle",
    "CocycleError",
    "trivial_cocycle",
    "omega_l",
    "coboundary",
    "gamma",
    "theta",
    "alpha_l",
    "restriction_level",
    "load_cocycle",
    "cocycle_from_dict",
    "detect_level",
]


class CocycleError(ValueError):
    pass


@dataclass(eq=False)
class ThreeCocycle:
    group: FiniteGroup
    root_order: int
    exps: np.ndarray
    level: int | None = None  # set when the table is exactly omega_l on a cyclic group
    _cache: dict = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        k = self.group.order
        self.exps = np.asarray(self.exps, dtype=np.int64) % self.root_order
        if self.exps.shape != (k, k, k):
            raise CocycleError(f"cocycle table must have shape {(k, k, k)}, got {self.exps.shape}")

    def __call__(self, x: int, y: int, z: int) -> RootOfUnity:
        return RootOfUnity(self.root_order, int(self.exps[x, y, z]))

    def exponent(self, x: int, y: int, z: int) -> int:
        return int(self.exps[x, y, z])

    @property
    def is_trivial(self) -> bool:
        return not self.exps.any()

    def is_normalized(self) -> bool:
        e = self.exps
        return not (e[0].any() or e[:, 0].any() or e[:, :, 0].any())

    def cocycle_defect(self) -> np.ndarray:
        """Exponent of w(y,z,w) w(x,yz,w) w(x,y,z) / (w(xy,z,w) w(x,y,zw)) over all quadruples."""
        t, e = self.group.table, self.exps
        k = self.group.order
        x = np.arange(k)[:, None, None, None]
        y = np.arange(k)[None, :, None, None]
        z = np.arange(k)[None, None, :, None]
        w = np.arange(k)[None, None, None, :]
        d = e[y, z, w] + e[x, t[y, z], w] + e[x, y, z] - e[t[x, y], z, w] - e[x, y, t[z, w]]
        return d % self.root_order

    def is_cocycle(self) -> bool:
        return not self.cocycle_defect().any()

    def validate(self) -> None:
        if not self.is_normalized():
            raise CocycleError("cocycle is not normalized")
        if not self.is_cocycle():
            raise CocycleError("table violates the 3-cocycle identity")

    def __mul__(self, other: "ThreeCocycle") -> "ThreeCocycle":
        n = math.lcm(self.root_order, other.root_order)
        e = self.exps * (n // self.root_order) + other.exps * (n // other.root_order)
        return ThreeCocycle(self.group, n, e)

    def to_json(self) -> dict:
        return {"root_order": self.root_order, "values": self.exps.tolist()}


def trivial_cocycle(group: FiniteGroup) -> ThreeCocycle:
    k = group.order
    return ThreeCocycle(group, 1, np.zeros((k, k, k), dtype=np.int64), level=0)


def omega_l(m: int, l: int, group: FiniteGroup | None = None) -> ThreeCocycle:
    """omega_l(x, y, z) = zeta_m^(l x floor((y + z)/m)) on Z/m."""
    if not 0 <= l < m:
        raise CocycleError(f"level must satisfy 0 <= l < {m}, got {l}")
    group = group if group is not None else cyclic(m)
    if group.kind != "cyclic" or group.order != m:
        raise CocycleError("omega_l needs the cyclic group Z/m")
    r = np.arange(m)
    carry = (r[:, None] + r[None, :]) // m
    exps = l * r[:, None, None] * carry[None, :, :]
    return ThreeCocycle(group, m, exps, level=l)


def coboundary(group: FiniteGroup, root_order: int, beta: np.ndarray) -> ThreeCocycle:
    """delta(beta)(x,y,z) = beta(y,z) beta(x,yz) / (beta(xy,z) beta(x,y)) for a 2-cochain table."""
    t = group.table
    k = group.order
    b = np.asarray(beta, dtype=np.int64)
    x = np.arange(k)[:, None, None]
    y = np.arange(k)[None, :, None]
    z = np.arange(k)[None, None, :]
    exps = b[y, z] + b[x, t[y, z]] - b[t[x, y], z] - b[x, y]
    return ThreeCocycle(group, root_order, exps)


def gamma(omega: ThreeCocycle, h: int, x1: int, x2: int) -> RootOfUnity:
    """gamma_h(x1,x2) = w(h,x1,x2) w(h x1 h^-1, h x2 h^-1, h) / w(h x1 h^-1, h, x2)."""
    G = omega.group
    y1, y2 = G.conj(h, x1), G.conj(h, x2)
    e = omega.exps
    return RootOfUnity(omega.root_order, int(e[h, x1, x2] + e[y1, y2, h] - e[y1, h, x2]))


def theta(omega: ThreeCocycle, x: int, h1: int, h2: int) -> RootOfUnity:
    """theta_x(h1,h2) = w(x,h1,h2) w(h1,h2,(h1h2) x (h1h2)^-1) / w(h1, h1 x h1^-1, h2)."""
    G = omega.group
    e = omega.exps
    c12 = G.conj(G.mul(h1, h2), x)
    c1 = G.conj(h1, x)
    return RootOfUnity(omega.root_order, int(e[x, h1, h2] + e[h1, h2, c12] - e[h1, c1, h2]))


def alpha_l(m: int, l: int, h: int, x: int) -> RootOfUnity:
    """alpha^l_h(x) = zeta_{m^2}^(l h x), residues taken in 0..m-1."""
    return RootOfUnity(m * m, l * (h % m) * (x % m))


def restriction_level(omega: ThreeCocycle, z: int) -> int:
    """Level of omega restricted to <z>, read off prod_j w(z, z^j, z) = zeta_{ord z}^level."""
    cache = omega._cache.setdefault("restriction", {})
    if z in cache:
        return cache[z]
    G = omega.group
    m = G.element_order(z)
    total = 0
    p = 0
    for _ in range(m):
        total += int(omega.exps[z, p, z])
        p = G.mul(p, z)
    n = omega.root_order
    # total/n must be a multiple of 1/m
    if (total * m) % n:
        raise CocycleError(
            f"restriction product at z={z} is not an order-{m} root of unity; input is not a cocycle"
        )
    level = (total * m // n) % m
    cache[z] = level
    return level


def detect_level(omega: ThreeCocycle) -> int | None:
    """l if the table equals omega_l exactly on a cyclic group, else None."""
    G = omega.group
    if G.kind != "cyclic":
        return None
    if omega.is_trivial:
        return 0
    m, n = G.order, omega.root_order
    if n % m:
        return None
    for l in range(1, m):
        if np.array_equal(omega_l(m, l, G).exps * (n // m) % n, omega.exps):
            return l
    return None


def cocycle_from_dict(group: FiniteGroup, data: dict, validate: bool = True) -> ThreeCocycle:
    omega = ThreeCocycle(group, int(data["root_order"]), np.array(data["values"]))
    if validate:
        omega.validate()
    omega.level = detect_level(omega)
    return omega


def load_cocycle(group: FiniteGroup, path: str | Path) -> ThreeCocycle:
    with open(path) as fh:
        return cocycle_from_dict(group, json.load(fh))
