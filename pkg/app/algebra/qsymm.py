#!/usr/bin/env python
"""
app/algebra/qsymm.py
────────────────────────────────────────────────────────────────────────
QSymm, the graded dual of NSymm, in the monomial basis [a1,...,an].

• product    : overlapping shuffle ⊙ (head recursion, memoised per key pair)
• coproduct  : deconcatenation
• antipode   : convolution recursion over the reduced coproduct
• pairing    : ⟨[α], Z^β⟩ = δ_{αβ}

Public API
──────────
    bracket(parts, ring)
    overlapping_shuffle(x, y), power(x, k), shuffle_enumeration(a, b)
    deconcat_coproduct(x), qsymm_antipode(x), pairing(q, m)
    from_symm(partition, ring), is_symmetric(x)
    decomposable_rows(n), indecomposables_dimension(n, ring)
"""
from __future__ import annotations

import logging
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Sequence, Tuple

from sympy.utilities.iterables import multiset_permutations

from app.algebra.core import (
    AlgebraElement,
    CoefficientRing,
    Composition,
    TensorElement,
    TensorKey,
    compositions,
    matrix_rank,
    validate_composition,
)

logger = logging.getLogger("qsymm.qsymm")


def bracket(parts: Sequence[int], ring: CoefficientRing) -> AlgebraElement:
    """The monomial quasisymmetric function [a1,...,an]."""
    return AlgebraElement.monomial(ring, validate_composition(parts))


# ───────────────────────────── product ─────────────────────────────────────
@lru_cache(maxsize=None)
def shuffle_keys(a: Composition, b: Composition) -> Dict[Composition, int]:
    """[a] ⊙ [b] on keys: a·(a'⊙b) + b·(a⊙b') + (a+b)·(a'⊙b')."""
    if not a:
        return {b: 1}
    if not b:
        return {a: 1}
    acc: Dict[Composition, int] = {}
    for head, rest in (
        (a[0], shuffle_keys(a[1:], b)),
        (b[0], shuffle_keys(a, b[1:])),
        (a[0] + b[0], shuffle_keys(a[1:], b[1:])),
    ):
        for k, c in rest.items():
            key = (head,) + k
            acc[key] = acc.get(key, 0) + c
    return acc


def overlapping_shuffle(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return x.bilinear(y, shuffle_keys)


def power(x: AlgebraElement, k: int) -> AlgebraElement:
    result = AlgebraElement.one(x.ring)
    for _ in range(k):
        result = overlapping_shuffle(result, x)
    return result


def shuffle_enumeration(a: Composition, b: Composition) -> Dict[Composition, int]:
    """Enumerate overlapping shuffles globally: place a and b on L slots that they cover."""
    m, n = len(a), len(b)
    acc: Dict[Composition, int] = {}
    for length in range(max(m, n), m + n + 1):
        for pos_a in combinations(range(length), m):
            for pos_b in combinations(range(length), n):
                if len(set(pos_a) | set(pos_b)) != length:
                    continue
                slots = [0] * length
                for part, pos in zip(a, pos_a):
                    slots[pos] += part
                for part, pos in zip(b, pos_b):
                    slots[pos] += part
                key = tuple(slots)
                acc[key] = acc.get(key, 0) + 1
    return acc


# ───────────────────────────── coproduct / antipode ────────────────────────
@lru_cache(maxsize=None)
def _deconcat_key(key: Composition) -> Dict[TensorKey, int]:
    return {(key[:i], key[i:]): 1 for i in range(len(key) + 1)}


def deconcat_coproduct(x: AlgebraElement) -> TensorElement:
    return x.linear_map(_deconcat_key, TensorElement)


@lru_cache(maxsize=None)
def _antipode_key(key: Composition) -> Dict[Composition, int]:
    # S(x) = -x - Σ S(x')⊙x'' over the reduced coproduct
    if not key:
        return {(): 1}
    acc: Dict[Composition, int] = {key: -1}
    for i in range(1, len(key)):
        left, right = key[:i], key[i:]
        for k, c in _antipode_key(left).items():
            for m, s in shuffle_keys(k, right).items():
                acc[m] = acc.get(m, 0) - c * s
    return {k: c for k, c in acc.items() if c}


def qsymm_antipode(x: AlgebraElement) -> AlgebraElement:
    return x.linear_map(_antipode_key)


def pairing(q: AlgebraElement, m: AlgebraElement):
    """⟨q, m⟩ with the monomial bases of QSymm and NSymm dual to each other."""
    q._same_ring(m)
    total = q.ring.zero
    for key, c in q.terms.items():
        total += c * m.coefficient(key)
    return total


# ───────────────────────────── Symm inside QSymm ───────────────────────────
def from_symm(partition: Sequence[int], ring: CoefficientRing) -> AlgebraElement:
    """m_λ ↦ sum of the distinct rearrangements of λ."""
    parts = validate_composition(partition)
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise ValueError(f"{list(parts)} is not a partition (weakly decreasing)")
    return AlgebraElement(ring, {tuple(p): 1 for p in multiset_permutations(list(parts))})


def is_symmetric(x: AlgebraElement) -> bool:
    """True iff rearranging a key never changes its coefficient."""
    for key, c in x.terms.items():
        for p in multiset_permutations(list(key)):
            if x.coefficient(tuple(p)) != c:
                return False
    return True


# ───────────────────────────── indecomposables ─────────────────────────────
@lru_cache(maxsize=None)
def decomposable_rows(n: int) -> Tuple[Tuple[int, ...], ...]:
    """Integer rows spanning products of positive-degree keys in degree n.

    Columns follow ``compositions(n)``; unordered pairs only, ⊙ being commutative.
    """
    columns = {c: i for i, c in enumerate(compositions(n))}
    rows: List[Tuple[int, ...]] = []
    for d in range(1, n // 2 + 1):
        lower, upper = compositions(d), compositions(n - d)
        for i, a in enumerate(lower):
            for j, b in enumerate(upper):
                if d == n - d and j < i:
                    continue
                row = [0] * len(columns)
                for k, c in shuffle_keys(a, b).items():
                    row[columns[k]] += c
                rows.append(tuple(row))
    return tuple(rows)


def indecomposables_dimension(n: int, ring: CoefficientRing) -> int:
    """dim of degree-n indecomposables of QSymm over a field."""
    if n < 1:
        raise ValueError("degree must be >= 1")
    if not ring.is_field:
        raise ValueError(f"indecomposables_dimension needs a field, got {ring}")
    ncols = len(compositions(n))
    rank = matrix_rank(decomposable_rows(n), ncols, ring)
    logger.debug("degree %d over %s: %d compositions, decomposable rank %d", n, ring, ncols, rank)
    return ncols - rank
