"""Chains of circles between two carriers and the conic their centres circumscribe."""

from .chain import (
    CenterPolygon,
    Chain,
    ChainConfiguration,
    center_polygon,
    closure_residual,
    propagate,
    verify_closure,
)
from .conic import (
    ConicKind,
    FocalConic,
    TangencyCertificate,
    bisector_coincidence_check,
    brianchon_check,
    classify,
    conic_from_focus_tangent,
    is_tangent,
    verify_inscribed_conic,
)
from .generator import CarrierSeparation, GeneratorProfile, random_config, scenario
from .kernel import Line, Point, ProperCircle, StraightLine

__version__ = "0.1.0"

__all__ = [
    "CarrierSeparation",
    "CenterPolygon",
    "Chain",
    "ChainConfiguration",
    "ConicKind",
    "FocalConic",
    "GeneratorProfile",
    "Line",
    "Point",
    "ProperCircle",
    "StraightLine",
    "TangencyCertificate",
    "bisector_coincidence_check",
    "brianchon_check",
    "center_polygon",
    "classify",
    "closure_residual",
    "conic_from_focus_tangent",
    "is_tangent",
    "propagate",
    "random_config",
    "scenario",
    "verify_closure",
    "verify_inscribed_conic",
]
