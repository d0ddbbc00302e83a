#!/usr/bin/env python
"""
app/algebra/nsymm.py
────────────────────────────────────────────────────────────────────────
NSymm = Z<Z_1, Z_2, ...>, the free associative graded algebra, as a Hopf
algebra.  A composition key (a1,...,an) stands for Z_{a1}...Z_{an}; the
empty key is the unit Z_0 = 1.

• product    : concatenation of keys
• coproduct  : Δ(Z_n) = Σ_{p+q=n} Z_p ⊗ Z_q, extended multiplicatively
• antipode   : χ(Z_n) = Σ_{a1+...+am=n} (-1)^m Z_{a1}...Z_{am}, reversed on words
• Newton     : Q_n (left recursion), Q'_n (right recursion)

Structure constants are integers and cached per key; elements of any
coefficient ring reuse them.

Public API
──────────
    z(n, ring), word(parts, ring)
    concat_product(x, y), power(x, k)
    coproduct(x), reduced_coproduct(x), iterated_reduced_coproduct(x, m)
    antipode(x), convolution_antipode(x), reverse_words(x)
    newton_Q(n, side, ring), newton_Q_via_chi(n, side, ring)
    is_primitive(x), primitive_space_basis(degree2n, ring)
"""
from __future__ import annotations

import logging
from functools import lru_cache
from typing import Dict, List, Tuple

from app.algebra.core import (
    AlgebraElement,
    CoefficientRing,
    Composition,
    TensorElement,
    TensorKey,
    compositions,
    nullspace,
    validate_composition,
)

logger = logging.getLogger("qsymm.nsymm")

LEFT, RIGHT = "left", "right"


# ───────────────────────────── constructors ────────────────────────────────
def z(n: int, ring: CoefficientRing) -> AlgebraElement:
    """The generator Z_n (Z_0 is the unit)."""
    if n < 0:
        raise ValueError("Z_n needs n >= 0")
    return AlgebraElement.monomial(ring, (n,) if n else ())


def word(parts, ring: CoefficientRing) -> AlgebraElement:
    return AlgebraElement.monomial(ring, validate_composition(parts))


# ───────────────────────────── product ─────────────────────────────────────
def _concat(a: Composition, b: Composition) -> Dict[Composition, int]:
    return {a + b: 1}


def concat_product(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return x.bilinear(y, _concat)


def power(x: AlgebraElement, k: int) -> AlgebraElement:
    result = AlgebraElement.one(x.ring)
    for _ in range(k):
        result = concat_product(result, x)
    return result


# ───────────────────────────── coproducts ──────────────────────────────────
def _weak_splits(a: int, m: int) -> List[Tuple[int, ...]]:
    """All (p_1,...,p_m) with p_i >= 0 summing to a."""
    if m == 1:
        return [(a,)]
    return [(p,) + rest for p in range(a + 1) for rest in _weak_splits(a - p, m - 1)]


@lru_cache(maxsize=None)
def _coproduct_key(key: Composition, m: int = 2) -> Dict[TensorKey, int]:
    """(m-1)-fold iterated coproduct of the monomial ``key``."""
    acc: Dict[TensorKey, int] = {tuple(() for _ in range(m)): 1}
    for a in key:
        step: Dict[TensorKey, int] = {}
        for split in _weak_splits(a, m):
            for k, c in acc.items():
                new = tuple(part + ((s,) if s else ()) for part, s in zip(k, split))
                step[new] = step.get(new, 0) + c
        acc = step
    return acc


def coproduct(x: AlgebraElement) -> TensorElement:
    return x.linear_map(_coproduct_key, TensorElement)


def counit(x: AlgebraElement):
    return x.counit()


def reduced_coproduct(x: AlgebraElement) -> TensorElement:
    """Δ(x) with the x⊗1 and 1⊗x type terms removed (both factors nonempty)."""
    return iterated_reduced_coproduct(x, 2)


def iterated_reduced_coproduct(x: AlgebraElement, m: int) -> TensorElement:
    """The m-fold reduced coproduct: terms of Δ^(m-1) with no empty factor."""
    if m < 2:
        raise ValueError("iterated coproduct needs m >= 2")

    def image(key: Composition) -> Dict[TensorKey, int]:
        return {k: c for k, c in _coproduct_key(key, m).items() if all(k)}

    return x.linear_map(image, TensorElement)


def is_primitive(x: AlgebraElement) -> bool:
    return not x.counit() and reduced_coproduct(x).is_zero


# ───────────────────────────── antipode ────────────────────────────────────
@lru_cache(maxsize=None)
def _chi_generator(n: int) -> Dict[Composition, int]:
    return {c: (-1) ** len(c) for c in compositions(n)}


@lru_cache(maxsize=None)
def _antipode_key(key: Composition) -> Dict[Composition, int]:
    acc: Dict[Composition, int] = {(): 1}
    for a in reversed(key):
        step: Dict[Composition, int] = {}
        for k, c in acc.items():
            for g, s in _chi_generator(a).items():
                step[k + g] = step.get(k + g, 0) + c * s
        acc = {k: c for k, c in step.items() if c}
    return acc


def antipode(x: AlgebraElement) -> AlgebraElement:
    """χ by the closed composition sum, reversed across the word."""
    return x.linear_map(_antipode_key)


@lru_cache(maxsize=None)
def _convolution_antipode_key(key: Composition) -> Dict[Composition, int]:
    # m(S ⊗ id)Δ = uε  ⇒  S(key) = -Σ_{r ≠ ()} S(l)·r
    if not key:
        return {(): 1}
    acc: Dict[Composition, int] = {}
    for (left, right), c in _coproduct_key(key).items():
        if not right:
            continue
        for k, s in _convolution_antipode_key(left).items():
            acc[k + right] = acc.get(k + right, 0) - c * s
    return {k: c for k, c in acc.items() if c}


def convolution_antipode(x: AlgebraElement) -> AlgebraElement:
    """Antipode as the convolution inverse of the identity (test oracle)."""
    return x.linear_map(_convolution_antipode_key)


def reverse_words(x: AlgebraElement) -> AlgebraElement:
    return x.linear_map(lambda key: {key[::-1]: 1})


# ───────────────────────────── Newton primitives ───────────────────────────
def _check_side(side: str) -> None:
    if side not in (LEFT, RIGHT):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")


@lru_cache(maxsize=None)
def _newton_int(n: int, side: str) -> Dict[Composition, int]:
    # Q_n  = Σ_{i<n} (-1)^(i-1) Z_i Q_{n-i}  + (-1)^(n-1) n Z_n
    # Q'_n = Σ_{i<n} (-1)^(i-1) Q'_{n-i} Z_i + (-1)^(n-1) n Z_n
    acc: Dict[Composition, int] = {(n,): (-1) ** (n - 1) * n}
    for i in range(1, n):
        sign = (-1) ** (i - 1)
        for k, c in _newton_int(n - i, side).items():
            key = (i,) + k if side == LEFT else k + (i,)
            acc[key] = acc.get(key, 0) + sign * c
    return {k: c for k, c in acc.items() if c}


def newton_Q(n: int, side: str, ring: CoefficientRing) -> AlgebraElement:
    """Q_n (side='left') or Q'_n (side='right') from the Newton recursions."""
    if n < 1:
        raise ValueError("Newton primitives are indexed by n >= 1")
    _check_side(side)
    return AlgebraElement(ring, _newton_int(n, side))


def newton_Q_via_chi(n: int, side: str, ring: CoefficientRing) -> AlgebraElement:
    """Q_n = (-1)^(n-1) Σ_j j χ(Z_{n-j}) Z_j, mirrored for Q'_n."""
    if n < 1:
        raise ValueError("Newton primitives are indexed by n >= 1")
    _check_side(side)
    total = AlgebraElement.zero(ring)
    for j in range(1, n + 1):
        chi = antipode(z(n - j, ring))
        term = concat_product(chi, z(j, ring)) if side == LEFT else concat_product(z(j, ring), chi)
        total = total + term.scale(j)
    return total.scale((-1) ** (n - 1))


# ───────────────────────────── primitives ──────────────────────────────────
def primitive_space_basis(degree2n: int, ring: CoefficientRing) -> List[AlgebraElement]:
    """Basis of the primitives in topological degree ``degree2n`` (kernel of Δ̄)."""
    if degree2n % 2:
        raise ValueError(f"primitives live in even degrees, got {degree2n}")
    if not ring.is_field:
        raise ValueError(f"primitive_space_basis needs a field, got {ring}")
    n = degree2n // 2
    if n < 1:
        raise ValueError("degree must be positive")

    columns = compositions(n)
    images = [
        {k: c for k, c in _coproduct_key(col).items() if all(k)}
        for col in columns
    ]
    row_keys = sorted({k for img in images for k in img})
    rows = [[img.get(rk, 0) for img in images] for rk in row_keys]

    basis = []
    for vector in nullspace(rows, len(columns), ring):
        basis.append(AlgebraElement(ring, dict(zip(columns, vector))))
    logger.debug("primitives in degree %d over %s: dim %d", degree2n, ring, len(basis))
    return basis
