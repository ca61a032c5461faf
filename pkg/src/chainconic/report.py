"""End-to-end verification of one configuration, as a JSON-ready report."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Any, Dict, Optional

from .chain import CenterPolygon, Chain, ChainConfiguration, center_polygon, closure_residual, propagate
from .conic import (
    ConicKind,
    FocalConic,
    bisector_coincidence_check,
    brianchon_residual,
    guaranteed_kind,
    polygon_sides,
    relative_spread,
    remark_kind,
    tangency_residual,
    verify_inscribed_conic,
)
from .errors import DegeneracyError, DegenerateStep, NotInscribed
from .kernel import DEFAULT_TOL, is_zero
from .serialize import config_to_dict, encode_line, encode_point, encode_scalar

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_RETRIES = 3
EXIT_DEGENERATE = 4

BACKENDS = ("exact", "float")


@dataclass
class Verification:
    """Everything computed while checking a configuration."""

    report: Dict[str, Any]
    exit_code: int
    chain: Optional[Chain] = None
    polygon: Optional[CenterPolygon] = None
    conic: Optional[FocalConic] = None

    @property
    def passed(self) -> bool:
        return self.exit_code == EXIT_OK


def _error_block(exc: DegeneracyError) -> Dict[str, Any]:
    root = exc.cause if isinstance(exc, DegenerateStep) else exc
    block = {"type": type(root).__name__, "message": str(exc)}
    if hasattr(exc, "index"):
        block["index"] = exc.index
    if root is not exc:
        block["wrapper"] = type(exc).__name__
    return block


def _conic_block(conic: FocalConic, certs, sides) -> Dict[str, Any]:
    block: Dict[str, Any] = {"kind": conic.kind.value}
    if conic.kind is ConicKind.PARABOLA:
        block["directrix"] = encode_line(conic.directrix)
        spread = max(abs(tangency_residual(conic, s)) for s in sides)
    else:
        block["rSq"] = encode_scalar(conic.r_sq)
        spread = relative_spread([c.dist_sq_to_l for c in certs])[0]
    block["certificates"] = [
        {
            "side": i + 1,
            "line": encode_line(c.side),
            "reflectedFocus": encode_point(c.reflected_focus),
            "distSqToL": None if c.dist_sq_to_l is None else encode_scalar(c.dist_sq_to_l),
        }
        for i, c in enumerate(certs)
    ]
    block["maxRelativeSpread"] = encode_scalar(spread)
    return block


def verify_config(config: ChainConfiguration, backend: str = "exact", tol: Optional[float] = None) -> Verification:
    """Propagate, check closure, certify the inscribed conic and (n = 6) Brianchon.

    The exit code follows the command-line contract: 0 all checks pass,
    1 a check failed, 4 the configuration is degenerate.
    """
    if backend not in BACKENDS:
        raise ValueError(f"backend must be one of {BACKENDS}")
    if tol is None:
        tol = DEFAULT_TOL
    start = time.perf_counter()
    exact = backend == "exact"
    cfg = config if exact else config.to_float()
    report: Dict[str, Any] = {
        "config": config_to_dict(config),
        "backend": {"name": backend, "tolerance": None if exact else tol},
        "closure": None,
        "conic": None,
        "proofStep": None,
        "brianchon": None,
        "remark": None,
        "error": None,
        "pass": False,
    }
    result = Verification(report, EXIT_CHECK_FAILED)
    try:
        result.chain = chain = propagate(cfg, tol)
        residual = closure_residual(chain)
        closed = is_zero(residual, 1, tol)
        report["closure"] = {"residual": encode_scalar(residual), "pass": closed}
        if closed:
            _verify_closed(result, cfg, tol)
    except DegeneracyError as exc:
        report["error"] = _error_block(exc)
        result.exit_code = EXIT_DEGENERATE
    report["timingMs"] = round((time.perf_counter() - start) * 1000, 3)
    return result


def _verify_closed(result: Verification, cfg: ChainConfiguration, tol: float) -> None:
    report = result.report
    chain = result.chain
    result.polygon = polygon = center_polygon(chain, tol)
    K = cfg.carrier_k.center
    try:
        conic, certs = verify_inscribed_conic(K, cfg.carrier_l, polygon, tol)
    except NotInscribed as exc:
        report["conic"] = {"pass": False, "worstSide": exc.index, "residual": encode_scalar(exc.residual)}
        return
    result.conic = conic
    block = _conic_block(conic, certs, polygon_sides(polygon))
    block["pass"] = True
    report["conic"] = block

    proof = [bisector_coincidence_check(chain, i, tol) for i in range(1, chain.n + 1)]
    report["proofStep"] = {"checked": len(proof), "pass": all(proof)}

    predicted = remark_kind(K, cfg.carrier_l, tol)
    forced = guaranteed_kind(cfg.carrier_k, cfg.carrier_l)
    report["remark"] = {
        "predicted": predicted.value,
        "forcedByCarriers": None if forced is None else forced.value,
        "agrees": predicted is conic.kind
        or (conic.kind is ConicKind.CIRCLE and predicted is ConicKind.ELLIPSE),
    }

    ok = all(proof)
    if chain.n == 6:
        det = brianchon_residual(polygon)
        concurrent = is_zero(det, 1, tol)
        report["brianchon"] = {"determinant": encode_scalar(det), "pass": concurrent}
        ok = ok and concurrent
    report["pass"] = ok
    result.exit_code = EXIT_OK if ok else EXIT_CHECK_FAILED
