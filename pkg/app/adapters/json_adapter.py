#!/usr/bin/env python
"""
app/adapters/json_adapter.py
────────────────────────────────────────────────────────────────────────
Machine-readable payloads.  Coefficients are always decimal strings
("3", "-1/2"), never floats.

    {"algebra": "qsymm", "ring": "Z",
     "terms": [{"key": [4, 2], "coeff": "1"}, ...]}

Symm keys are exponent vectors over ``generators``; tensor keys are lists
of per-factor keys.
"""
from __future__ import annotations

import json
from typing import Any, Dict, List

from pydantic import BaseModel
from sympy.polys.rings import PolyElement

from app.algebra.core import CoefficientRing, _SparseElement


def _key(key: Any) -> Any:
    if isinstance(key, tuple):
        return [_key(k) for k in key]
    return int(key)


def element_payload(algebra: str, ring: CoefficientRing, value: Any) -> Dict[str, Any]:
    payload: Dict[str, Any] = {"algebra": algebra, "ring": str(ring)}
    terms: List[Dict[str, Any]] = []
    if algebra == "scalar":
        if value:
            terms.append({"key": [], "coeff": ring.render(value)})
    elif isinstance(value, _SparseElement):
        terms = [{"key": _key(k), "coeff": value.ring.render(c)} for k, c in value.items()]
    elif isinstance(value, PolyElement):
        payload["generators"] = [str(s) for s in value.ring.symbols]
        for monom, c in sorted(value.items(), key=lambda kv: (sum(kv[0]), kv[0])):
            terms.append({"key": list(monom), "coeff": ring.render(c)})
    else:
        raise TypeError(f"no JSON form for {type(value).__name__}")
    payload["terms"] = terms
    return payload


def dumps(obj: Any) -> str:
    """Stable JSON text for payload dicts and pydantic reports alike."""
    if isinstance(obj, BaseModel):
        return obj.model_dump_json(indent=2)
    return json.dumps(obj, indent=2, ensure_ascii=False, default=str)
