#!/usr/bin/env python
"""
app/adapters/text_adapter.py
────────────────────────────────────────────────────────────────────────
Human-readable rendering of algebra elements and report tables.

    QSymm     [1,5] + [4,2] + [1,2,3]
    NSymm     -Z2 + Z1*Z1
    Symm      c1^2 - 2*c2
    tensors   Z1 ⊗ 1 + 1 ⊗ Z1
    A_* ⊗ H   xi1 ⊗ 1 + 1 ⊗ z1

Coefficient 1 is omitted, -1 becomes a leading "-", zero renders as "0".
Terms come in canonical order (degree, then length, then lexicographic).
"""
from __future__ import annotations

from typing import Any, Dict, Iterable, List, Sequence, Tuple

import pandas as pd
from sympy.polys.rings import PolyElement

from app.algebra.core import AlgebraElement, CoefficientRing, Composition, TensorElement, render_composition

TENSOR = " ⊗ "


# ───────────────────────────── term assembly ───────────────────────────────
def _term(coeff: str, body: str) -> str:
    if body == "1":
        return coeff
    if coeff == "1":
        return body
    if coeff == "-1":
        return "-" + body
    return f"{coeff}*{body}"


def join_terms(terms: Iterable[Tuple[str, str]]) -> str:
    """[(rendered coefficient, rendered monomial)] -> "a + b - c"."""
    out: List[str] = []
    for coeff, body in terms:
        text = _term(coeff, body)
        if not out:
            out.append(text)
        elif text.startswith("-"):
            out.append(" - " + text[1:])
        else:
            out.append(" + " + text)
    return "".join(out) or "0"


# ───────────────────────────── monomials ───────────────────────────────────
def qsymm_key(key: Composition) -> str:
    return render_composition(key) if key else "1"


def nsymm_key(key: Composition) -> str:
    return "*".join(f"Z{a}" for a in key) if key else "1"


def _power(name: str, e: int) -> str:
    return name if e == 1 else f"{name}^{e}"


def poly_monomial(names: Sequence[str], monom: Sequence[int]) -> str:
    parts = [_power(n, e) for n, e in zip(names, monom) if e]
    return "*".join(parts) if parts else "1"


def _poly_weight(names: Sequence[str], monom: Sequence[int]) -> int:
    total = 0
    for name, e in zip(names, monom):
        digits = "".join(ch for ch in name.split("_")[0] if ch.isdigit())
        total += int(digits or 1) * e
    return total


def render_poly(x: PolyElement, ring: CoefficientRing) -> str:
    """Symm (or a Symm tensor power when symbols carry a ``_factor`` suffix)."""
    names = [str(s) for s in x.ring.symbols]
    tensor = "_" in names[0]
    terms = sorted(x.items(), key=lambda kv: (_poly_weight(names, kv[0]), tuple(-e for e in kv[0])))
    rendered = []
    for monom, c in terms:
        coeff = ring.render(c)
        if tensor:
            factors = int(names[-1].rsplit("_", 1)[1]) + 1
            N = len(names) // factors
            bases = [n.rsplit("_", 1)[0] for n in names[:N]]
            body = TENSOR.join(poly_monomial(bases, monom[f * N:(f + 1) * N]) for f in range(factors))
        else:
            body = poly_monomial(names, monom)
        rendered.append((coeff, body))
    return join_terms(rendered)


def render_algebra(x: AlgebraElement, algebra: str) -> str:
    key = qsymm_key if algebra == "qsymm" else nsymm_key
    return join_terms((x.ring.render(c), key(k)) for k, c in x.items())


def render_tensor(x: TensorElement, kind: str) -> str:
    key = qsymm_key if kind == "qsymm" else nsymm_key
    return join_terms((x.ring.render(c), TENSOR.join(key(part) for part in k)) for k, c in x.items())


def render_mxi(x) -> str:
    """A_*^{⊗r} ⊗ H elements as ``xi1^2 ⊗ z1*z2``."""
    out = []
    for (a_part, word), c in x.items():
        factors = [poly_monomial([f"xi{k}" for k in range(1, len(e) + 1)], e) for e in a_part]
        word_text = "*".join(f"z{a}" for a in word) if word else "1"
        body = TENSOR.join(factors + [word_text]) if a_part else word_text
        out.append((x.ring.render(c), body))
    return join_terms(out)


def render_value(algebra: str, ring: CoefficientRing, value: Any) -> str:
    if algebra == "scalar":
        return ring.render(value)
    if algebra in ("qsymm", "nsymm"):
        return render_algebra(value, algebra)
    if isinstance(value, TensorElement):
        return render_tensor(value, algebra.split(":", 1)[1])
    if isinstance(value, PolyElement):
        return render_poly(value, ring)
    return str(value)


# ───────────────────────────── tables ──────────────────────────────────────
def render_table(rows: Sequence[Dict[str, Any]]) -> str:
    if not rows:
        return "(no rows)"
    return pd.DataFrame(list(rows)).to_string(index=False)
