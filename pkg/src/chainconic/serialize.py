"""JSON encoding of configurations and report values.

Rationals travel as ``"p/q"`` strings so nothing is lost in transit.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Dict

from .chain import ChainConfiguration
from .errors import ConfigurationError
from .kernel import Line, Point, ProperCircle, StraightLine

FORMAT_VERSION = 1


def encode_rational(value) -> str:
    if isinstance(value, float):
        raise TypeError("floats cannot be stored in a configuration document")
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def decode_rational(text) -> Fraction:
    if isinstance(text, bool) or isinstance(text, float):
        raise ConfigurationError(f"expected a rational string, got {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ConfigurationError(f"expected a rational string, got {text!r}")
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigurationError(f"bad rational {text!r}") from exc


def encode_scalar(value):
    """Report encoding: exact values as strings, floats as JSON numbers."""
    if isinstance(value, float):
        return value
    return encode_rational(value)


def encode_point(p: Point):
    return [encode_scalar(p.x), encode_scalar(p.y)]


def encode_line(line: Line) -> Dict[str, Any]:
    return {"a": encode_scalar(line.a), "b": encode_scalar(line.b), "c": encode_scalar(line.c)}


def config_to_dict(config: ChainConfiguration) -> Dict[str, Any]:
    k = config.carrier_k
    doc: Dict[str, Any] = {
        "version": FORMAT_VERSION,
        "n": config.n,
        "carrierK": {
            "cx": encode_rational(k.center.x),
            "cy": encode_rational(k.center.y),
            "r": encode_rational(k.radius),
        },
    }
    cl = config.carrier_l
    if isinstance(cl, StraightLine):
        doc["carrierL"] = {"line": {key: encode_rational(getattr(cl.line, key)) for key in "abc"}}
    else:
        doc["carrierL"] = {
            "cx": encode_rational(cl.center.x),
            "cy": encode_rational(cl.center.y),
            "r": encode_rational(cl.radius),
        }
    doc["pParams"] = [encode_rational(t) for t in config.p_params]
    doc["qStart"] = encode_rational(config.q_start)
    return doc


def _circle(doc, name: str) -> ProperCircle:
    try:
        center = Point(decode_rational(doc["cx"]), decode_rational(doc["cy"]))
        r = decode_rational(doc["r"])
    except (KeyError, TypeError) as exc:
        raise ConfigurationError(f"{name} needs cx, cy and r") from exc
    if r <= 0:
        raise ConfigurationError(f"{name} radius must be positive")
    return ProperCircle.from_radius(center, r)


def config_from_dict(doc: Dict[str, Any]) -> ChainConfiguration:
    if not isinstance(doc, dict):
        raise ConfigurationError("configuration must be a JSON object")
    version = doc.get("version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise ConfigurationError(f"unsupported configuration version {version!r}")
    missing = {"n", "carrierK", "carrierL", "pParams", "qStart"} - set(doc)
    if missing:
        raise ConfigurationError(f"missing keys: {', '.join(sorted(missing))}")
    carrier_k = _circle(doc["carrierK"], "carrierK")
    cl = doc["carrierL"]
    if isinstance(cl, dict) and "line" in cl:
        try:
            line = Line(*(decode_rational(cl["line"][key]) for key in "abc"))
        except (KeyError, TypeError) as exc:
            raise ConfigurationError("carrierL.line needs a, b and c") from exc
        except ValueError as exc:
            raise ConfigurationError(str(exc)) from exc
        carrier_l = StraightLine(line)
    else:
        carrier_l = _circle(cl, "carrierL")
    if not isinstance(doc["pParams"], list):
        raise ConfigurationError("pParams must be a list")
    return ChainConfiguration(
        carrier_k,
        carrier_l,
        doc["n"],
        tuple(decode_rational(t) for t in doc["pParams"]),
        decode_rational(doc["qStart"]),
    )


def dumps_config(config: ChainConfiguration) -> str:
    return json.dumps(config_to_dict(config), indent=2) + "\n"


def loads_config(text: str) -> ChainConfiguration:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"invalid JSON: {exc}") from exc
    return config_from_dict(doc)
