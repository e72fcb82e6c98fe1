"""Untwisted invariant by counting homomorphisms pi_1(M) -> G.

The fundamental group of M_O(g; (a_1,b_1), ..., (a_n,b_n)) is presented as

    < u_i, v_i, x_j, h | h central, x_j^a_j h^b_j = 1,
                         x_1 ... x_n [u_1,v_1] ... [u_g,v_g] = 1 >.

Every generator must land in the centralizer C(h) of the image of h, so for
each h the count is a group-algebra convolution over C(h) evaluated at e.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np

from .cyclotomic import Cyclotomic
from .groups import FiniteGroup
from .seifert import DWResult, SeifertData

__all__ = [
    "BudgetExceeded",
    "DEFAULT_BUDGET",
    "work_estimate",
    "count_homs",
    "count_homs_naive",
    "dw_untwisted",
]

DEFAULT_BUDGET = 10**8


class BudgetExceeded(RuntimeError):
    pass


def work_estimate(group: FiniteGroup, seifert: SeifertData) -> int:
    """sum over h of |C(h)|^2 (n + g)"""
    sizes = group._commute_matrix.sum(axis=1)
    return int((sizes.astype(object) ** 2).sum()) * max(1, seifert.n + seifert.genus)


def _power_array(group: FiniteGroup, n: int) -> np.ndarray:
    t = group.table
    base = np.arange(group.order)
    if n < 0:
        base = group._inverse.copy()
        n = -n
    result = np.zeros(group.order, dtype=np.int64)
    while n:
        if n & 1:
            result = t[result, base]
        base = t[base, base]
        n >>= 1
    return result


def count_homs(group: FiniteGroup, seifert: SeifertData, budget: int | None = DEFAULT_BUDGET) -> int:
    """#Hom(pi_1(M), G) by per-h convolution counting."""
    if budget is not None:
        est = work_estimate(group, seifert)
        if est > budget:
            raise BudgetExceeded(f"work estimate {est} exceeds budget {budget}")
    G = group
    k = G.order
    big = k ** (seifert.n + 2 * seifert.genus + 1) >= 2**62
    dtype = object if big else np.int64
    powers = {}
    for a, b in seifert.fibers:
        for e in (a, b):
            if e not in powers:
                powers[e] = _power_array(G, e)
    total = 0
    for h in G.elements:
        C = np.array(G.centralizer(h))
        c = len(C)
        pos = np.full(k, -1)
        pos[C] = np.arange(c)
        T = pos[G.table[np.ix_(C, C)]]  # local multiplication table
        inv = pos[G._inverse[C]]

        f = np.zeros(c, dtype=dtype)
        f[0] = 1  # C[0] is the identity
        for a, b in seifert.fibers:
            hb = powers[b][h]
            sol = G.table[powers[a][C], hb] == 0
            f = _convolve(T, f, sol.astype(dtype))
            if not f.any():
                break
        if not f.any():
            continue
        if seifert.genus:
            U, V = np.meshgrid(np.arange(c), np.arange(c), indexing="ij")
            comm = T[T[T[U, V], inv[U]], inv[V]]  # u v u^-1 v^-1
            cc = np.bincount(comm.ravel(), minlength=c).astype(dtype)
            for _ in range(seifert.genus):
                f = _convolve(T, f, cc)
        total += int(f[0])
    return total


def _convolve(T: np.ndarray, f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """(f * g)(y) = sum_{ab = y} f(a) g(b) on a group with local table T."""
    out = np.zeros_like(f)
    for a in np.nonzero(f)[0]:
        # row T[a] is a permutation, so the scatter has no collisions
        out[T[a]] += f[a] * g
    return out


def count_homs_naive(group: FiniteGroup, seifert: SeifertData) -> int:
    """Full enumeration over all generator images; tiny instances only."""
    G = group
    g, n = seifert.genus, seifert.n
    count = 0
    for imgs in itertools.product(G.elements, repeat=2 * g + n + 1):
        h = imgs[-1]
        xs = imgs[2 * g : 2 * g + n]
        if not all(G.commutes(y, h) for y in imgs[:-1]):
            continue
        if any(G.mul(G.power(x, a), G.power(h, b)) != 0 for x, (a, b) in zip(xs, seifert.fibers)):
            continue
        word = 0
        for x in xs:
            word = G.mul(word, x)
        for i in range(g):
            word = G.mul(word, G.commutator(imgs[2 * i], imgs[2 * i + 1]))
        count += word == 0
    return count


def dw_untwisted(group: FiniteGroup, seifert: SeifertData, budget: int | None = DEFAULT_BUDGET) -> DWResult:
    """Z(M) = #Hom(pi_1(M), G) / #G for the trivial cocycle."""
    n = count_homs(group, seifert, budget)
    return DWResult(Cyclotomic.rational(Fraction(n, group.order)), "oracle")
