"""Invariant suites behind ``dwcalc verify``.

Each suite returns a :class:`SuiteResult`; on failure ``witness`` holds the
first failing case, found by scanning in increasing size so it is minimal in
that ordering.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from . import kappa as _kappa
from .cocycles import coboundary, omega_l, restriction_level, trivial_cocycle
from .groups import abelian, abelian_groups_of_order
from .homoracle import dw_untwisted
from .seifert import (
    SeifertData,
    dw_formula,
    dw_prime_closed_form,
    eta,
    gauss_sum,
    is_odd_prime,
    legendre,
)
from .tqd import (
    EVector,
    character_family,
    expand_in_s_basis,
    glued_solid_torus_vector,
    inner,
    mul,
    s_inverse,
)

__all__ = ["SuiteResult", "SUITES", "run_suite", "seifert_suite", "prime_branch_suite"]


@dataclass
class SuiteResult:
    name: str
    passed: bool
    checked: int
    seconds: float
    witness: str = ""


class _Fail(Exception):
    pass


def _require(cond: bool, witness: str) -> None:
    if not cond:
        raise _Fail(witness)


# ---------------------------------------------------------------------------
# case generators


def _random_fiber(rng: random.Random, amax: int, bmax: int) -> tuple[int, int]:
    while True:
        a, b = rng.randint(-amax, amax), rng.randint(-bmax, bmax)
        if math.gcd(a, b) == 1:
            return a, b


def seifert_suite(
    count: int, genus_max: int = 2, n_max: int = 3, coeff_max: int = 4, seed: int = 0
) -> list[SeifertData]:
    """Deterministic list of distinct Seifert data with gcd(a_j, b_j) = 1."""
    rng = random.Random(seed)
    seen, out = set(), []
    while len(out) < count:
        g = rng.randint(0, genus_max)
        n = rng.randint(0, n_max)
        M = SeifertData(g, tuple(_random_fiber(rng, coeff_max, coeff_max) for _ in range(n)))
        if M not in seen:
            seen.add(M)
            out.append(M)
    return out


def prime_branch(p: int, M: SeifertData) -> str:
    """'unit' (no p | a_j), 'simple' (p || a_j only) or 'square' (some p^2 | a_j)."""
    if all(a % p for a, _ in M.fibers):
        return "unit"
    if any(a % (p * p) == 0 for a, _ in M.fibers):
        return "square"
    return "simple"


def prime_branch_suite(p: int, branch: str, count: int, seed: int = 0) -> list[SeifertData]:
    rng = random.Random(f"{p}-{branch}-{seed}")
    bmax = 9
    units = [a for a in range(-9, 10) if a % p]
    simple = [a for a in range(-2 * p * p, 2 * p * p + 1) if a % p == 0 and a % (p * p)]
    square = [0, p * p, -p * p]
    out: list[SeifertData] = []
    seen = set()
    while len(out) < count:
        g = rng.randint(0, 2)
        n = rng.randint(1, 4)
        pools = [units] * n
        if branch == "simple":
            pools = [simple] + [rng.choice([units, simple]) for _ in range(n - 1)]
        elif branch == "square":
            pools = [square] + [rng.choice([units, simple, square]) for _ in range(n - 1)]
        fibers = []
        for pool in pools:
            while True:
                a, b = rng.choice(pool), rng.randint(-bmax, bmax)
                if math.gcd(a, b) == 1:
                    fibers.append((a, b))
                    break
        rng.shuffle(fibers)
        M = SeifertData(g, tuple(fibers))
        if M not in seen and prime_branch(p, M) == branch:
            seen.add(M)
            out.append(M)
    return out


# ---------------------------------------------------------------------------
# suites; each returns the number of checks performed


def suite_cocycle(max_order: int) -> int:
    n = 0
    for m in range(1, max_order + 1):
        for l in range(m):
            w = omega_l(m, l)
            _require(w.is_normalized(), f"omega_{l} on Z/{m} not normalized")
            _require(w.is_cocycle(), f"omega_{l} on Z/{m} fails the cocycle identity")
            n += 1
    return n


def suite_kappa(max_order: int, coeff_max: int = 12) -> int:
    n = 0
    rng = range(-coeff_max, coeff_max + 1)
    for m in range(2, max_order + 1):
        for l in range(m):
            w = omega_l(m, l)
            for z in range(m):
                for a in rng:
                    for b in rng:
                        q = _kappa.KappaQuery(a, b, z, w)
                        k1, k2 = _kappa.kappa(q), _kappa.kappa_oracle(q)
                        _require(k1 == k2, f"m={m} l={l} a={a} b={b} z={z}: kappa={k1} oracle={k2}")
                        n += 1
    return n


def suite_orthonormality(max_order: int) -> int:
    n = 0
    for m in range(1, max_order + 1):
        for l in range(m):
            w = omega_l(m, l)
            fam = character_family(w.group, w)
            for c1 in fam:
                for c2 in fam:
                    expect = 1 if c1.label == c2.label else 0
                    v = inner(c1.values, c2.values)
                    _require(v == expect, f"m={m} l={l} <{c1.label},{c2.label}> = {v}")
                    n += 1
    return n


def suite_fusion(max_order: int) -> int:
    n = 0
    for m in range(1, min(max_order, 8) + 1):
        for l in range(m):
            w = omega_l(m, l)
            G = w.group
            basis = [s_inverse(c.values) for c in character_family(G, w)]
            for i, u in enumerate(basis):
                for j, v in enumerate(basis):
                    expect = u.scale(m) if i == j else EVector(G, w)
                    _require(mul(u, v) == expect, f"m={m} l={l} rho={i} rho'={j}")
                    n += 1
    return n


def suite_formula_vs_oracle(max_order: int, count: int = 100) -> int:
    cases = seifert_suite(count, genus_max=2, n_max=3, coeff_max=4)
    n = 0
    for order in range(1, min(max_order, 16) + 1):
        for factors in abelian_groups_of_order(order):
            G = abelian(*factors)
            w = trivial_cocycle(G)
            for M in cases:
                z1 = dw_formula(G, w, M).value
                z2 = dw_untwisted(G, M).value
                _require(z1 == z2, f"group={G.name} M={M}: formula={z1} oracle={z2}")
                n += 1
    return n


def suite_prime_vs_formula(max_order: int, per_branch: int = 50) -> int:
    n = 0
    for p in range(3, max_order + 1):
        if not is_odd_prime(p):
            continue
        for branch in ("unit", "simple", "square"):
            cases = prime_branch_suite(p, branch, per_branch)
            for l in range(p):
                w = omega_l(p, l)
                for M in cases:
                    z1 = dw_prime_closed_form(p, l, M).value
                    z2 = dw_formula(w.group, w, M).value
                    _require(z1 == z2, f"p={p} l={l} M={M}: closed={z1} formula={z2}")
                    n += 1
    return n


def suite_gluing(max_order: int, coeff_max: int = 5) -> int:
    n = 0
    for m in range(1, min(max_order, 8) + 1):
        for l in range(m):
            w = omega_l(m, l)
            G = w.group
            fam = character_family(G, w)
            for a in range(-coeff_max, coeff_max + 1):
                for b in range(-coeff_max, coeff_max + 1):
                    if math.gcd(a, b) != 1:
                        continue
                    c1 = expand_in_s_basis(glued_solid_torus_vector(G, w, _completion(a, b, 0)))
                    c2 = expand_in_s_basis(glued_solid_torus_vector(G, w, _completion(a, b, 1)))
                    for chi in fam:
                        expect = eta(G, w, chi, a, b).scale(Fraction(1, m))
                        _require(
                            c1[chi.label] == expect and c2[chi.label] == expect,
                            f"m={m} l={l} (a,b)=({a},{b}) rho={chi.label}",
                        )
                        n += 1
    return n


def _completion(a: int, b: int, shift: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """((a, b), (a', b')) with a b' - b a' = 1, shifted by `shift` copies of (a, b)."""
    g, x, y = _ext_gcd(a, b)
    assert g == 1
    # a x + b y = 1  ->  b' = x, a' = -y
    a2, b2 = -y + shift * a, x + shift * b
    return (a, b), (a2, b2)


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (abs(a), 1 if a >= 0 else -1, 0)
    g, x, y = _ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


def suite_restriction(max_order: int, perturbations: int = 500) -> int:
    n = 0
    for m in range(2, max_order + 1):
        for l in range(m):
            lv = restriction_level(omega_l(m, l), 1)
            _require(lv == l, f"m={m} l={l}: restriction level {lv}")
            n += 1
    rng = np.random.default_rng(0)
    for i in range(perturbations):
        m = int(rng.integers(2, min(max_order, 8) + 1))
        l = int(rng.integers(0, m))
        w = omega_l(m, l)
        G = w.group
        N = m * int(rng.integers(1, 4))
        beta = rng.integers(0, N, size=(m, m))
        beta[0, :] = 0
        beta[:, 0] = 0
        pert = w * coboundary(G, N, beta)
        for z in G.elements:
            a, b = restriction_level(w, z), restriction_level(pert, z)
            _require(a == b, f"perturbation {i}: m={m} l={l} z={z}: {a} != {b}")
            n += 1
    return n


def suite_gauss(max_order: int) -> int:
    n = 0
    for p in range(3, max(max_order, 3) + 1):
        if not is_odd_prime(p):
            continue
        s1 = gauss_sum(p, 1)
        for a in range(-2, p + 2):
            s = gauss_sum(p, a)
            if a % p == 0:
                _require(s == p, f"S_{p}({a}) = {s} != {p}")
            else:
                _require(s * s.conjugate() == p, f"|S_{p}({a})|^2 != {p}")
                _require(s == s1.scale(legendre(a, p)), f"S_{p}({a}) != ({a}/{p}) S_{p}(1)")
            n += 1
    return n


SUITES: dict[str, Callable[[int], int]] = {
    "cocycle": suite_cocycle,
    "kappa": suite_kappa,
    "orthonormality": suite_orthonormality,
    "fusion": suite_fusion,
    "formula-vs-oracle": suite_formula_vs_oracle,
    "prime-vs-formula": suite_prime_vs_formula,
    "gluing": suite_gluing,
    "restriction": suite_restriction,
    "gauss": suite_gauss,
}


def run_suite(name: str, max_order: int) -> SuiteResult:
    t0 = time.perf_counter()
    try:
        checked = SUITES[name](max_order)
    except _Fail as exc:
        return SuiteResult(name, False, 0, time.perf_counter() - t0, str(exc))
    return SuiteResult(name, True, checked, time.perf_counter() - t0)
