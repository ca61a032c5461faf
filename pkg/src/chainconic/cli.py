"""Command line: ``generate``, ``verify``, ``sweep`` and ``render``.

Exit codes: 0 success, 1 a check failed, 2 bad usage, 3 the generator
ran out of retries, 4 the configuration is degenerate.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from .chain import ChainConfiguration
from .errors import ChainConicError, ConfigurationError, ExhaustedRetries, UnknownScenario
from .generator import SCENARIO_NAMES, CarrierSeparation, GeneratorProfile, random_config, scenario
from .kernel import DEFAULT_TOL
from .render import render_svg
from .report import (
    BACKENDS,
    EXIT_CHECK_FAILED,
    EXIT_DEGENERATE,
    EXIT_OK,
    EXIT_RETRIES,
    EXIT_USAGE,
    verify_config,
)
from .serialize import dumps_config, loads_config

TOL_ENV = "CHAIN_CONIC_TOL"
PROFILES = tuple(p.value for p in CarrierSeparation)


class UsageError(Exception):
    pass


def default_tolerance() -> float:
    raw = os.environ.get(TOL_ENV)
    if not raw:
        return DEFAULT_TOL
    try:
        value = float(raw)
    except ValueError:
        raise UsageError(f"{TOL_ENV} must be a number, got {raw!r}") from None
    if not value > 0:
        raise UsageError(f"{TOL_ENV} must be positive")
    return value


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _load_config(args) -> ChainConfiguration:
    if args.scenario:
        if args.config:
            raise UsageError("give either a configuration file or --scenario, not both")
        return scenario(args.scenario)
    if not args.config:
        raise UsageError("a configuration file (or '-' for stdin) or --scenario is required")
    if args.config == "-":
        text = sys.stdin.read()
    else:
        try:
            text = Path(args.config).read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot read {args.config}: {exc}") from exc
    return loads_config(text)


def _pretty(report: Dict) -> str:
    rows = [("backend", report["backend"]["name"])]
    if report["error"]:
        rows.append(("error", f'{report["error"]["type"]}: {report["error"]["message"]}'))
    if report["closure"]:
        rows.append(("closure residual", str(report["closure"]["residual"])))
        rows.append(("closure", "pass" if report["closure"]["pass"] else "FAIL"))
    conic = report["conic"]
    if conic:
        if conic["pass"]:
            rows.append(("conic kind", conic["kind"]))
            if "rSq" in conic:
                rows.append(("r^2", str(conic["rSq"])))
            rows.append(("max relative spread", str(conic["maxRelativeSpread"])))
        rows.append(("inscribed conic", "pass" if conic["pass"] else f'FAIL at side {conic["worstSide"]}'))
    if report["proofStep"]:
        rows.append(("bisector coincidence", "pass" if report["proofStep"]["pass"] else "FAIL"))
    if report["brianchon"]:
        rows.append(("brianchon determinant", str(report["brianchon"]["determinant"])))
        rows.append(("brianchon", "pass" if report["brianchon"]["pass"] else "FAIL"))
    if report["remark"]:
        rows.append(("kind from K position", report["remark"]["predicted"]))
    rows.append(("overall", "PASS" if report["pass"] else "FAIL"))
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows) + "\n"


def cmd_generate(args) -> int:
    if args.scenario:
        config = scenario(args.scenario)
    else:
        if args.n is None:
            raise UsageError("--n is required (or use --scenario)")
        if args.n < 3:
            raise UsageError("n must be greater than 2")
        profile = GeneratorProfile(CarrierSeparation(args.profile), args.seed)
        try:
            config = random_config(args.n, profile)
        except ExhaustedRetries as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_RETRIES
    _emit(dumps_config(config), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    config = _load_config(args)
    result = verify_config(config, args.backend, args.tol)
    text = _pretty(result.report) if args.pretty else json.dumps(result.report, indent=2) + "\n"
    _emit(text, args.out)
    return result.exit_code


def _parse_n_list(text: str) -> List[int]:
    try:
        values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise UsageError(f"--n-list must be comma-separated integers, got {text!r}") from None
    if not values or any(n < 3 for n in values):
        raise UsageError("--n-list entries must all be greater than 2")
    return values


def _parse_profiles(text: str) -> List[str]:
    values = [part.strip() for part in text.split(",") if part.strip()]
    bad = [v for v in values if v not in PROFILES]
    if not values or bad:
        raise UsageError(f"--profile must be a comma-separated subset of {', '.join(PROFILES)}")
    return values


def _trial(job):
    profile_name, n, seed, backend, tol = job
    stats: Counter = Counter()
    try:
        config = random_config(n, GeneratorProfile(CarrierSeparation(profile_name), seed), stats)
    except ExhaustedRetries:
        return {"exhausted": True, "rejections": dict(stats)}
    report = verify_config(config, backend, tol).report
    closure = report["closure"]
    return {
        "exhausted": False,
        "rejections": dict(stats),
        "degenerate": report["error"] is not None,
        "closure": bool(closure and closure["pass"]),
        "residual": abs(float(_num(closure["residual"]))) if closure else None,
        "conic": bool(report["conic"] and report["conic"]["pass"]),
        "spread": abs(float(_num(report["conic"]["maxRelativeSpread"])))
        if report["conic"] and report["conic"]["pass"]
        else None,
        "kind": report["conic"]["kind"] if report["conic"] and report["conic"]["pass"] else None,
        "proof": bool(report["proofStep"] and report["proofStep"]["pass"]),
        "brianchon": None if report["brianchon"] is None else report["brianchon"]["pass"],
        "pass": report["pass"],
    }


def _num(value):
    return Fraction(value) if isinstance(value, str) else value


def run_sweep(
    n_list: Sequence[int],
    trials: int,
    seed0: int = 0,
    backend: str = "exact",
    tol: float = DEFAULT_TOL,
    profiles: Sequence[str] = ("k-inside",),
    odd_threshold: float = 0.99,
    jobs: int = 1,
) -> Dict:
    """Run ``trials`` verifications per (profile, n); trial ``i`` uses seed ``seed0 + i``."""
    plan = [(p, n, seed0 + i, backend, tol) for p in profiles for n in n_list for i in range(trials)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_trial, plan, chunksize=8))
    else:
        outcomes = [_trial(job) for job in plan]

    groups = []
    overall = True
    exhausted = False
    for gi, (p, n) in enumerate((p, n) for p in profiles for n in n_list):
        chunk = outcomes[gi * trials:(gi + 1) * trials]
        rejections: Counter = Counter()
        for o in chunk:
            rejections.update(o["rejections"])
        done = [o for o in chunk if not o["exhausted"]]
        exhausted = exhausted or len(done) < len(chunk)
        residuals = [o["residual"] for o in done if o["residual"] is not None]
        spreads = [o["spread"] for o in done if o["spread"] is not None]
        group = {
            "profile": p,
            "n": n,
            "trials": len(chunk),
            "exhausted": len(chunk) - len(done),
            "degenerate": sum(o["degenerate"] for o in done),
            "closurePass": sum(o["closure"] for o in done),
            "maxClosureResidual": max(residuals, default=None),
            "rejections": dict(sorted(rejections.items())),
        }
        if n % 2 == 0:
            group.update(
                conicPass=sum(o["conic"] for o in done),
                proofStepPass=sum(o["proof"] for o in done),
                maxRelativeSpread=max(spreads, default=None),
                kinds=dict(sorted(Counter(o["kind"] for o in done if o["kind"]).items())),
                allPass=sum(o["pass"] for o in done),
            )
            if n == 6:
                group["brianchonPass"] = sum(bool(o["brianchon"]) for o in done)
            ok = group["allPass"] == len(chunk)
        else:
            failures = len(done) - group["closurePass"]
            rate = failures / len(chunk) if chunk else 0.0
            group["closureFailureRate"] = rate
            ok = rate >= odd_threshold
        group["pass"] = ok
        overall = overall and ok
        groups.append(group)
    return {
        "backend": backend,
        "tolerance": None if backend == "exact" else tol,
        "trials": trials,
        "seed0": seed0,
        "oddThreshold": odd_threshold,
        "groups": groups,
        "exhausted": exhausted,
        "pass": overall,
    }


def cmd_sweep(args) -> int:
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    summary = run_sweep(
        _parse_n_list(args.n_list),
        args.trials,
        args.seed0,
        args.backend,
        args.tol,
        _parse_profiles(args.profile),
        args.odd_threshold,
        args.jobs,
    )
    _emit(json.dumps(summary, indent=2) + "\n", args.out)
    if summary["exhausted"]:
        return EXIT_RETRIES
    return EXIT_OK if summary["pass"] else EXIT_CHECK_FAILED


def cmd_render(args) -> int:
    config = _load_config(args)
    result = verify_config(config, args.backend, args.tol)
    if not result.passed and not args.force:
        print(f"error: verification failed (exit {result.exit_code}); use --force to render anyway", file=sys.stderr)
        return result.exit_code
    if result.chain is None:
        print("error: the chain could not be built, nothing to render", file=sys.stderr)
        return EXIT_DEGENERATE
    _emit(render_svg(result.chain, result.polygon, result.conic), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chain-conic", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_tol(p):
        p.add_argument("--backend", choices=BACKENDS, default="exact")
        p.add_argument("--tol", type=float, default=None, help=f"float tolerance (default 1e-9 or ${TOL_ENV})")

    def add_input(p):
        p.add_argument("config", nargs="?", help="configuration JSON file, '-' for stdin")
        p.add_argument("--scenario", choices=SCENARIO_NAMES)

    g = sub.add_parser("generate", help="write a random or canned configuration")
    g.add_argument("--n", type=int)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--profile", choices=PROFILES, default="k-inside")
    g.add_argument("--scenario", choices=SCENARIO_NAMES)
    g.add_argument("--out")
    g.set_defaults(func=cmd_generate)

    v = sub.add_parser("verify", help="check closure, the inscribed conic and Brianchon")
    add_input(v)
    add_tol(v)
    v.add_argument("--pretty", action="store_true")
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep", help="verify many random configurations")
    s.add_argument("--n-list", default="4,6,8")
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--seed0", type=int, default=0)
    s.add_argument("--profile", default="k-inside", help=f"comma-separated subset of {', '.join(PROFILES)}")
    s.add_argument("--odd-threshold", type=float, default=0.99)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--out")
    add_tol(s)
    s.set_defaults(func=cmd_sweep)

    r = sub.add_parser("render", help="draw the chain and its conic as SVG")
    add_input(r)
    add_tol(r)
    r.add_argument("--force", action="store_true")
    r.add_argument("--out")
    r.set_defaults(func=cmd_render)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if getattr(args, "tol", None) is None and hasattr(args, "tol"):
            args.tol = default_tolerance()
        elif getattr(args, "tol", None) is not None and not args.tol > 0:
            raise UsageError("--tol must be positive")
        return args.func(args)
    except (UsageError, ConfigurationError, UnknownScenario) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ChainConicError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE


if __name__ == "__main__":
    sys.exit(main())
