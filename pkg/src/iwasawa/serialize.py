"""JSON wire formats. Every number is a decimal integer."""

from __future__ import annotations

import json
from typing import Any

from .gamma import GammaElement, GammaSeries
from .logstalk import LogStalkElement
from .measures import FiniteMeasure
from .moments import PowerSeriesTrunc


class MalformedInput(ValueError):
    pass


def _int(v, what: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise MalformedInput(f"{what} must be an integer, got {v!r}")
    return v


def measure_from_json(data: Any) -> FiniteMeasure:
    try:
        p, r, d = (_int(data[key], key) for key in ("p", "r", "d"))
        entries = data["entries"]
        if not isinstance(entries, list):
            raise MalformedInput("entries must be a list")
        coeffs: dict[tuple[int, ...], int] = {}
        for e in entries:
            x = tuple(_int(v, "coordinate") for v in e["x"])
            if len(x) != d:
                raise MalformedInput(f"point {list(x)} does not have {d} coordinates")
            coeffs[x] = coeffs.get(x, 0) + _int(e["c"], "coefficient")
    except (KeyError, TypeError) as exc:
        raise MalformedInput(f"malformed measure: {exc}") from exc
    try:
        return FiniteMeasure(p, r, d, coeffs)
    except ValueError as exc:
        raise MalformedInput(str(exc)) from exc


def measure_to_json(mu: FiniteMeasure) -> dict:
    return {
        "p": mu.p,
        "r": mu.r,
        "d": mu.d,
        "entries": [{"x": list(x), "c": c} for x, c in mu.items()],
    }


def gamma_to_json(g: GammaElement | LogStalkElement) -> dict:
    return {"k": g.k, "terms": [{"i": list(i), "c": c} for i, c in g.items()]}


def gamma_from_json(data: Any, p: int, r: int, d: int) -> GammaElement:
    try:
        k = _int(data["k"], "k")
        return GammaElement(p, r, d, k, {tuple(t["i"]): _int(t["c"], "coefficient") for t in data["terms"]})
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInput(f"malformed divided-power element: {exc}") from exc


def gamma_series_to_json(s: GammaSeries) -> dict:
    return {
        "p": s.p,
        "r": s.r,
        "d": s.d,
        "K": s.K,
        "components": [gamma_to_json(g) for g in s.components],
    }


def series_to_json(s: PowerSeriesTrunc) -> dict:
    return {"p": s.p, "r": s.r, "coeffs": list(s.coeffs)}


def series_from_json(data: Any) -> PowerSeriesTrunc:
    try:
        return PowerSeriesTrunc(_int(data["p"], "p"), _int(data["r"], "r"), tuple(_int(c, "coefficient") for c in data["coeffs"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInput(f"malformed series: {exc}") from exc


def dumps(obj: Any) -> str:
    """Canonical text: fixed key order as built, no floats, trailing newline."""
    return json.dumps(obj, ensure_ascii=True) + "\n"
