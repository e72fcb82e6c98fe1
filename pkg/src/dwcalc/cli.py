"""``dwcalc`` command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from . import kappa as _kappa
from . import verify
from .cocycles import CocycleError, ThreeCocycle, load_cocycle, omega_l, trivial_cocycle
from .cyclotomic import Cyclotomic, RootOfUnity
from .groups import FiniteGroup, GroupError, parse_group_spec
from .homoracle import DEFAULT_BUDGET, BudgetExceeded, dw_untwisted
from .seifert import (
    DWResult,
    SeifertData,
    SeifertError,
    dw_formula,
    dw_prime_closed_form,
    gauss_sum,
    is_odd_prime,
    legendre,
    parse_seifert,
)
from .tqd import UnsupportedError, character_family, inner

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
METHODS = ("auto", "formula", "prime", "oracle")
SUITE_NAMES = tuple(verify.SUITES)


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    group: FiniteGroup | None = None
    group_spec: str = ""
    omega: ThreeCocycle | None = None
    level: int | None = None
    seifert: SeifertData | None = None
    method: str = "auto"
    format: str = "text"
    budget: int = DEFAULT_BUDGET
    suites: tuple[str, ...] = ()
    max_order: int = 6
    a: int = 0
    b: int = 0
    z: int = 0
    p: int = 0
    oracle: bool = False
    extra: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# argument parsing


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dwcalc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def group_args(p: argparse.ArgumentParser, cocycle: bool = True) -> None:
        p.add_argument("--group", required=True, help="cyclic:m, abelian:a,b,..., symmetric:n, dihedral:n or a JSON file")
        if cocycle:
            g = p.add_mutually_exclusive_group()
            g.add_argument("--level", type=int, help="use omega_l on a cyclic group")
            g.add_argument("--cocycle", help="JSON cocycle file")

    def fmt(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("compute", help="evaluate the invariant of a Seifert manifold")
    group_args(p)
    p.add_argument("--seifert", required=True, help="'g=<int>;(a,b),...'")
    p.add_argument("--method", choices=METHODS, default="auto")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="work cap for the oracle")
    fmt(p)

    p = sub.add_parser("verify", help="run invariant suites")
    p.add_argument("--suite", action="append", choices=SUITE_NAMES + ("all",), help="repeatable; default all")
    p.add_argument("--max-order", type=int, default=6)
    fmt(p)

    p = sub.add_parser("characters", help="print the character family and its Gram matrix")
    group_args(p)
    fmt(p)

    p = sub.add_parser("kappa", help="evaluate the torus phase kappa_{a,b}(z)")
    group_args(p)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--z", type=int, required=True)
    p.add_argument("--oracle", action="store_true", help="also evaluate the Euclidean product")
    fmt(p)

    p = sub.add_parser("gauss", help="quadratic Gauss sum S_p(a)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    fmt(p)
    return parser


def _resolve_cocycle(ns: argparse.Namespace, group: FiniteGroup) -> tuple[ThreeCocycle, int | None]:
    level = getattr(ns, "level", None)
    path = getattr(ns, "cocycle", None)
    if level is not None:
        if group.kind != "cyclic":
            raise UsageError(f"--level needs a cyclic group, got {ns.group!r}")
        if not 0 <= level < group.order:
            raise UsageError(f"--level {level} out of range [0, {group.order})")
        return omega_l(group.order, level, group), level
    if path:
        try:
            omega = load_cocycle(group, path)
        except (OSError, ValueError, KeyError, CocycleError) as exc:
            raise UsageError(f"--cocycle {path}: {exc}") from exc
        return omega, omega.level
    return trivial_cocycle(group), 0


def parse_args(argv: Sequence[str] | None = None) -> RunConfig:
    """Validated configuration; raises SystemExit(2) on malformed input."""
    parser = _build_parser()
    ns = parser.parse_args(argv)
    try:
        return _config(ns)
    except UsageError as exc:
        parser.error(str(exc))


def _config(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(ns.subcommand, format=ns.format)
    if hasattr(ns, "group"):
        try:
            cfg.group = parse_group_spec(ns.group)
        except (GroupError, OSError, ValueError) as exc:
            raise UsageError(f"--group {ns.group}: {exc}") from exc
        cfg.group_spec = ns.group
        cfg.omega, cfg.level = _resolve_cocycle(ns, cfg.group)
    if cfg.subcommand == "compute":
        try:
            cfg.seifert = parse_seifert(ns.seifert)
        except SeifertError as exc:
            raise UsageError(f"--seifert: {exc}") from exc
        cfg.method = ns.method
        if ns.budget <= 0:
            raise UsageError("--budget must be positive")
        cfg.budget = ns.budget
    elif cfg.subcommand == "verify":
        chosen = ns.suite or ["all"]
        cfg.suites = SUITE_NAMES if "all" in chosen else tuple(sorted(set(chosen), key=SUITE_NAMES.index))
        if ns.max_order < 1:
            raise UsageError("--max-order must be at least 1")
        cfg.max_order = ns.max_order
    elif cfg.subcommand == "kappa":
        cfg.a, cfg.b, cfg.oracle = ns.a, ns.b, ns.oracle
        if not 0 <= ns.z < cfg.group.order:
            raise UsageError(f"--z {ns.z} is not an element index of {cfg.group_spec}")
        cfg.z = ns.z
    elif cfg.subcommand == "gauss":
        if not is_odd_prime(ns.p):
            raise UsageError(f"--p {ns.p} is not an odd prime")
        cfg.p, cfg.a = ns.p, ns.a
    return cfg


# ---------------------------------------------------------------------------
# output helpers


def _value_json(x: Cyclotomic) -> dict:
    x = x.minimal()
    z = x.to_complex()
    return {"value": x.to_json(), "text": str(x), "approx": {"re": z.real, "im": z.imag}}


def _root_text(r: RootOfUnity) -> str:
    return "1" if r.is_one() else f"zeta_{r.order}^{r.exponent}"


def _emit(cfg: RunConfig, payload: dict, lines: list[str]) -> None:
    if cfg.format == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print("\n".join(lines))


# ---------------------------------------------------------------------------
# subcommands


def _pick_method(cfg: RunConfig) -> str:
    G, w = cfg.group, cfg.omega
    if cfg.method != "auto":
        return cfg.method
    if G.kind == "cyclic" and is_odd_prime(G.order) and cfg.level is not None:
        return "prime"
    try:
        character_family(G, w)
        return "formula"
    except UnsupportedError:
        pass
    if w.is_trivial:
        return "oracle"
    raise UsageError("no evaluator supports this group and cocycle")


def run_compute(cfg: RunConfig) -> int:
    G, w, M = cfg.group, cfg.omega, cfg.seifert
    method = _pick_method(cfg)
    if method == "prime":
        if not (G.kind == "cyclic" and is_odd_prime(G.order) and cfg.level is not None):
            raise UsageError("--method prime needs cyclic:p with p an odd prime and --level")
        result = dw_prime_closed_form(G.order, cfg.level, M)
    elif method == "formula":
        try:
            result = dw_formula(G, w, M)
        except UnsupportedError as exc:
            raise UsageError(f"--method formula: {exc}") from exc
    else:
        if not w.is_trivial:
            raise UsageError("--method oracle only evaluates the trivial cocycle")
        result = dw_untwisted(G, M, cfg.budget)
    return _print_result(cfg, result)


def _print_result(cfg: RunConfig, result: DWResult) -> int:
    data = _value_json(result.value)
    payload = {
        "group": cfg.group_spec,
        "level": cfg.level,
        "seifert": str(cfg.seifert),
        "method": result.method,
        **data,
    }
    approx = complex(data["approx"]["re"], data["approx"]["im"])
    _emit(
        cfg,
        payload,
        [
            f"Z = {data['text']}",
            f"approx = {approx.real:.12g} {'+' if approx.imag >= 0 else '-'} {abs(approx.imag):.12g}i",
            f"method = {result.method}",
        ],
    )
    return EXIT_OK


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("DWCALC_THREADS", "1")))
    except ValueError:
        return 1


def run_verify(cfg: RunConfig) -> int:
    """Run the selected suites; exit 0 iff all pass."""
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        results = list(pool.map(lambda s: verify.run_suite(s, cfg.max_order), cfg.suites))
    results.sort(key=lambda r: r.name)
    ok = all(r.passed for r in results)
    payload = {
        "max_order": cfg.max_order,
        "passed": ok,
        "suites": [
            {"name": r.name, "passed": r.passed, "checked": r.checked, "witness": r.witness}
            for r in results
        ],
    }
    width = max(len(r.name) for r in results)
    lines = [f"{'suite':<{width}}  result  checked"]
    for r in results:
        lines.append(f"{r.name:<{width}}  {'PASS' if r.passed else 'FAIL':<6}  {r.checked}")
        if not r.passed:
            lines.append(f"  witness: {r.witness}")
    _emit(cfg, payload, lines)
    return EXIT_OK if ok else EXIT_VERIFY


def run_characters(cfg: RunConfig) -> int:
    try:
        fam = character_family(cfg.group, cfg.omega)
    except UnsupportedError as exc:
        raise UsageError(str(exc)) from exc
    entries, lines = [], []
    for chi in fam:
        vals = {f"{x},{h}": str(chi.values[(x, h)].minimal()) for x, h in sorted(chi.values.support())}
        entries.append({"label": list(_flatten(chi.label)), "dim": str(chi.dim.minimal()), "values": vals})
        lines.append(f"rho={chi.label} dim={chi.dim.minimal()}")
        lines.extend(f"  chi({k}) = {v}" for k, v in vals.items())
    gram = [[str(inner(u.values, v.values).minimal()) for v in fam] for u in fam]
    lines.append("gram:")
    lines.extend("  " + " ".join(row) for row in gram)
    _emit(cfg, {"group": cfg.group_spec, "level": cfg.level, "characters": entries, "gram": gram}, lines)
    return EXIT_OK


def _flatten(label) -> list:
    out = []
    for part in label if isinstance(label, tuple) else (label,):
        out.extend(_flatten(part) if isinstance(part, tuple) else [part])
    return out


def run_kappa(cfg: RunConfig) -> int:
    q = _kappa.KappaQuery(cfg.a, cfg.b, cfg.z, cfg.omega)
    k = _kappa.kappa(q)
    payload = {"a": cfg.a, "b": cfg.b, "z": cfg.z, "kappa": {"order": k.order, "exponent": k.exponent}}
    lines = [f"kappa = {_root_text(k)}"]
    if cfg.oracle:
        o = _kappa.kappa_oracle(q)
        payload["oracle"] = {"order": o.order, "exponent": o.exponent}
        payload["agree"] = o == k
        lines += [f"oracle = {_root_text(o)}", f"agree = {o == k}"]
    _emit(cfg, payload, lines)
    return EXIT_OK if not cfg.oracle or payload["agree"] else EXIT_VERIFY


def run_gauss(cfg: RunConfig) -> int:
    s = gauss_sum(cfg.p, cfg.a)
    sym = legendre(cfg.a, cfg.p)
    norm = (s * s.conjugate()).as_fraction()
    payload = {"p": cfg.p, "a": cfg.a, "legendre": sym, "norm": str(norm), **_value_json(s)}
    _emit(cfg, payload, [f"S_{cfg.p}({cfg.a}) = {s}", f"legendre = {sym}", f"|S|^2 = {norm}"])
    return EXIT_OK


RUNNERS = {
    "compute": run_compute,
    "verify": run_verify,
    "characters": run_characters,
    "kappa": run_kappa,
    "gauss": run_gauss,
}


def main(argv: Sequence[str] | None = None) -> int:
    cfg = parse_args(argv)
    try:
        return RUNNERS[cfg.subcommand](cfg)
    except UsageError as exc:
        print(f"dwcalc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"dwcalc: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
