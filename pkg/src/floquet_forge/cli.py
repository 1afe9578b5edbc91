"""floquet-forge command line.

Exit codes: 0 success, 1 a check failed, 2 bad configuration, 3 computation error.
JSON output is deterministic (sorted keys, canonical term order) and carries
"schema": "1".  Diagnostics go to standard error only.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

from .errors import FloquetForgeError

SCHEMA = "1"
EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_COMPUTE = 0, 1, 2, 3


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    equation: str
    region: str
    form: str
    order: Optional[int]
    fmt: str
    tol: float
    jobs: int
    routes: bool = False
    oracle: bool = False
    mirror: bool = False
    nu: Optional[float] = None
    h: Optional[float] = None
    mu: Optional[float] = None
    n: Optional[float] = None
    k: Optional[float] = None


def max_order() -> int:
    raw = os.environ.get("FLOQUET_FORGE_MAX_ORDER", "12")
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"FLOQUET_FORGE_MAX_ORDER={raw!r} is not an integer")


def _parser() -> argparse.ArgumentParser:
    from .spectra import REGION_ALIASES, REGIONS

    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--eq", choices=("mathieu", "lame"), default="mathieu")
    shared.add_argument("--region", choices=REGIONS + tuple(REGION_ALIASES), default="electric")
    shared.add_argument("--form", choices=("A", "B", "lambda"))
    shared.add_argument("--order", type=int)
    shared.add_argument("--format", dest="fmt", choices=("json", "text", "latex"), default="json")
    shared.add_argument("--tol", type=float, default=1e-6)
    shared.add_argument("--jobs", type=int, default=1)

    p = argparse.ArgumentParser(prog="floquet-forge",
                                description="Mathieu and Lamé eigenvalue asymptotics")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("expand", parents=[shared], help="print an eigenvalue expansion")
    v = sub.add_parser("verify", parents=[shared], help="route, mirror and oracle checks")
    v.add_argument("--routes", action="store_true")
    v.add_argument("--oracle", action="store_true")
    v.add_argument("--mirror", action="store_true")
    for name in ("nu", "h", "mu", "n", "k"):
        v.add_argument(f"--{name}", type=float)
    sub.add_parser("limits", parents=[shared], help="Lamé to Mathieu decoupling checks")
    return p


def _config(argv) -> RunConfig:
    from .spectra import canonical_region

    ns = _parser().parse_args(argv)
    form = ns.form or ("lambda" if ns.eq == "mathieu" else "A")
    if ns.eq == "mathieu" and form != "lambda":
        raise ConfigError("the Mathieu expansions have form lambda")
    if ns.eq == "lame" and form == "lambda":
        raise ConfigError("the Lamé expansions have form A or B")
    if ns.order is not None:
        if ns.order < 1 and not (ns.command == "expand" and form == "B"):
            raise ConfigError("--order must be at least 1")
        if ns.order > max_order():
            raise ConfigError(f"--order {ns.order} exceeds FLOQUET_FORGE_MAX_ORDER={max_order()}")
    if ns.tol <= 0:
        raise ConfigError("--tol must be positive")
    if ns.jobs < 1:
        raise ConfigError("--jobs must be at least 1")
    extra = {k: getattr(ns, k) for k in ("routes", "oracle", "mirror", "nu", "h", "mu", "n", "k")
             if hasattr(ns, k)}
    return RunConfig(ns.command, ns.eq, canonical_region(ns.region), form, ns.order, ns.fmt,
                     ns.tol, ns.jobs, **extra)


def _dump(payload: dict) -> str:
    return json.dumps({"schema": SCHEMA, **payload}, sort_keys=True, indent=2)


# ---------------------------------------------------------------------------
# expand

def _expansion(cfg: RunConfig):
    from .spectra import lame_A_expansion, lame_B_electric, mathieu_expansion

    if cfg.equation == "mathieu":
        default = 4 if cfg.region == "electric" else 1
        return mathieu_expansion(cfg.region, cfg.order if cfg.order is not None else default)
    if cfg.form == "B":
        if cfg.region != "electric":
            raise ConfigError("the B form exists only in the electric region")
        return lame_B_electric(cfg.order if cfg.order is not None else 2)
    return lame_A_expansion(cfg.region, cfg.order)


def cmd_expand(cfg: RunConfig) -> tuple[int, str]:
    exp = _expansion(cfg)
    if cfg.fmt == "json":
        return EXIT_OK, _dump(exp.to_dict())
    if cfg.fmt == "latex":
        return EXIT_OK, exp.series.to_latex()
    head = f"{exp.equation} {exp.region} {exp.form} [{exp.route}]"
    if exp.inner:
        head += f" (coefficients through {exp.inner[0]}^{int(exp.inner[1]) - 1})"
    return EXIT_OK, head + "\n" + exp.series.to_text()


# ---------------------------------------------------------------------------
# verify

def _route_checks(cfg: RunConfig) -> list[dict]:
    from .spectra import decoupling_limit, lame_B_electric, mathieu_expansion, route_agreement

    if cfg.equation == "lame":
        if cfg.region == "magnetic":
            return [{"name": "routes lame magnetic", "passed": False,
                     "detail": "the magnetic region has a single route"}]
        order = cfg.order
        if cfg.region == "electric" and order is not None:
            order = 2 * order + 1  # q^L fixes A through k^(4L+2)
        r = route_agreement(cfg.region, order)
        return [{"name": f"routes lame {cfg.region}", "passed": r["agree"],
                 "detail": ", ".join(r["mismatched_exponents"]) or "identical"}]
    if cfg.region != "electric":
        from .spectra import lame_A_expansion

        order = cfg.order or 1
        lim = decoupling_limit(lame_A_expansion(cfg.region, order)).series
        ref = mathieu_expansion(cfg.region, order).series
        return [{"name": f"routes mathieu {cfg.region}", "passed": lim == ref,
                 "detail": "Mathieu WKB vs Lamé WKB in the decoupling limit"}]
    levels = cfg.order // 2 if cfg.order else 2
    lim = decoupling_limit(lame_B_electric(levels)).series
    ref = mathieu_expansion("electric", 2 * levels).series
    return [{"name": "routes mathieu electric", "passed": lim == ref,
             "detail": "pure instanton vs decoupled Lamé instanton"}]


def _mirror_checks(cfg: RunConfig) -> list[dict]:
    from .wkb import minimal_operator, mirror_operator

    top = cfg.order or 4
    out = []
    for two_l in range(2, top + 1, 2):
        ok = mirror_operator(minimal_operator(two_l, "omega")) == minimal_operator(two_l, "omega_tilde")
        out.append({"name": f"mirror D{two_l}", "passed": ok, "detail": "mirror(D) vs direct D~"})
    return out


def _oracle_checks(cfg: RunConfig) -> list[dict]:
    from .oracle import verify_expansion

    if cfg.equation == "mathieu":
        if cfg.nu is None or cfg.h is None:
            raise ConfigError("--oracle for mathieu needs --nu and --h")
        params = {"nu": cfg.nu, "h": cfg.h}
        orders = list(range(0, (cfg.order or 4) + 1, 2))
    else:
        if cfg.mu is None or cfg.n is None or cfg.k is None:
            raise ConfigError("--oracle for lame needs --mu, --n and --k")
        params = {"mu": cfg.mu, "n": cfg.n, "k": cfg.k}
        orders = list(range(0, (cfg.order or 2) + 1))
    if cfg.region != "electric":
        raise ConfigError("the oracle works on the real electric slice only")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        rep = verify_expansion(cfg.equation, cfg.region, params, orders)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    passed = rep.residuals[-1] < cfg.tol and rep.decreasing and rep.wronskian_drift < 1e-9
    return [{"name": f"oracle {cfg.equation} {cfg.region}", "passed": passed,
             "detail": rep.to_dict()}]


def cmd_verify(cfg: RunConfig) -> tuple[int, str]:
    tasks = []
    if cfg.routes:
        tasks.append(_route_checks)
    if cfg.mirror:
        tasks.append(_mirror_checks)
    if cfg.oracle:
        tasks.append(_oracle_checks)
    if not tasks:
        raise ConfigError("choose at least one of --routes, --mirror, --oracle")
    with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
        results = list(pool.map(lambda f: f(cfg), tasks))
    checks = [c for group in results for c in group]
    ok = all(c["passed"] for c in checks)
    return (EXIT_OK if ok else EXIT_FAIL), _report(cfg, "verify", checks, ok)


# ---------------------------------------------------------------------------
# limits

def _first_mismatch(a, b) -> str:
    from .ratfunc import ZERO

    for e in sorted(set(a.terms) | set(b.terms)):
        if a.terms.get(e, ZERO) != b.terms.get(e, ZERO):
            return f"{a.var}^{e}: {a.terms.get(e, ZERO)} != {b.terms.get(e, ZERO)}"
    return "truncation orders differ"


def cmd_limits(cfg: RunConfig) -> tuple[int, str]:
    from .spectra import decoupling_limit, lame_A_expansion, lame_B_electric, mathieu_expansion

    cases = [
        ("electric", lambda: decoupling_limit(lame_B_electric(2)).series,
         lambda: mathieu_expansion("electric", 4).series),
        ("magnetic", lambda: decoupling_limit(lame_A_expansion("magnetic", 1)).series,
         lambda: mathieu_expansion("magnetic", 1).series),
        ("dyonic", lambda: decoupling_limit(lame_A_expansion("dyonic", 1)).series,
         lambda: mathieu_expansion("dyonic", 1).series),
    ]
    checks = []
    for name, lim, ref in cases:
        a, b = lim(), ref()
        ok = a == b
        checks.append({"name": f"limit {name}", "passed": ok,
                       "detail": "term-by-term equal" if ok else _first_mismatch(a, b)})
        if not ok:
            break
    ok = all(c["passed"] for c in checks)
    return (EXIT_OK if ok else EXIT_FAIL), _report(cfg, "limits", checks, ok)


def _report(cfg: RunConfig, command: str, checks: list[dict], ok: bool) -> str:
    if cfg.fmt == "json":
        return _dump({"command": command, "passed": ok, "checks": checks})
    lines = [f"{'PASS' if c['passed'] else 'FAIL'}  {c['name']}: {c['detail']}" for c in checks]
    return "\n".join(lines)


COMMANDS = {"expand": cmd_expand, "verify": cmd_verify, "limits": cmd_limits}


def main(argv=None) -> int:
    try:
        cfg = _config(argv)
    except SystemExit as exc:  # argparse
        return EXIT_OK if exc.code == 0 else EXIT_CONFIG
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        code, text = COMMANDS[cfg.command](cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (FloquetForgeError, ValueError, ArithmeticError) as exc:
        print(f"computation error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
