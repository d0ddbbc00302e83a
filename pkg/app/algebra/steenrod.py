#!/usr/bin/env python
"""
app/algebra/steenrod.py
────────────────────────────────────────────────────────────────────────
Reduced powers P^k on QSymm(F_p).

A single part transforms as P^k[n] = C(n,k)[n + k(p-1)]; a key is treated
as the concatenation of its parts and P^k is spread over them by the
Cartan formula.  For p = 2, P^k stands for Sq^{2k}.  Degrees are the
composition degrees; topological degrees are twice these and never stored.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List

from app.algebra.core import (
    AlgebraElement,
    CoefficientRing,
    Composition,
    RingMismatchError,
    binomial_mod_p,
    validate_composition,
)
from app.algebra.qsymm import power


@dataclass(frozen=True)
class SteenrodContext:
    p: int

    def __post_init__(self) -> None:
        CoefficientRing.prime_field(self.p)

    @property
    def ring(self) -> CoefficientRing:
        return CoefficientRing.prime_field(self.p)

    @property
    def uses_squares(self) -> bool:
        """For p = 2 the operation P^i is Sq^{2i}."""
        return self.p == 2

    def name(self, k: int) -> str:
        return f"Sq^{2 * k}" if self.uses_squares else f"P^{k}"


def _require_ring(x: AlgebraElement, ctx: SteenrodContext) -> None:
    if x.ring != ctx.ring:
        raise RingMismatchError(f"Steenrod operations at p={ctx.p} act on {ctx.ring}, got {x.ring}")


def P_single(k: int, n: int, ctx: SteenrodContext) -> AlgebraElement:
    if k < 0 or n < 1:
        raise ValueError("P^k[n] needs k >= 0 and n >= 1")
    c = binomial_mod_p(n, k, ctx.p)
    return AlgebraElement(ctx.ring, {(n + k * (ctx.p - 1),): c})


def _cartan_key(k: int, key: Composition, p: int) -> Dict[Composition, int]:
    if not key:
        return {(): 1} if k == 0 else {}
    acc: Dict[Composition, int] = {}
    head, rest = key[0], key[1:]
    for k0 in range(min(k, head) + 1):
        c = binomial_mod_p(head, k0, p)
        if not c:
            continue
        for tail, t in _cartan_key(k - k0, rest, p).items():
            new = (head + k0 * (p - 1),) + tail
            acc[new] = (acc.get(new, 0) + c * t) % p
    return {m: c for m, c in acc.items() if c}


def P(k: int, x: AlgebraElement, ctx: SteenrodContext) -> AlgebraElement:
    """P^k(x), linear in x, Cartan formula over the parts of each key."""
    if k < 0:
        raise ValueError("P^k needs k >= 0")
    _require_ring(x, ctx)
    if k == 0:
        return x
    return x.linear_map(lambda key: _cartan_key(k, key, ctx.p))


def bockstein(x: AlgebraElement, ctx: SteenrodContext) -> AlgebraElement:
    """β vanishes: everything lives in even degrees."""
    _require_ring(x, ctx)
    return AlgebraElement.zero(ctx.ring)


def total_power(x: AlgebraElement, ctx: SteenrodContext) -> AlgebraElement:
    """Σ_k P^k(x); P^k kills a key once k exceeds its degree."""
    _require_ring(x, ctx)
    top = max(x.degrees(), default=0)
    total = AlgebraElement.zero(ctx.ring)
    for k in range(top + 1):
        total = total + P(k, x, ctx)
    return total


def verify_pth_power(alpha: Composition, ctx: SteenrodContext) -> bool:
    """α^{⊙p} = [pa_1,...,pa_r] = P^{deg α}(α) in QSymm(F_p)."""
    key = validate_composition(alpha)
    x = AlgebraElement.monomial(ctx.ring, key)
    target = AlgebraElement.monomial(ctx.ring, tuple(ctx.p * a for a in key))
    return power(x, ctx.p) == target and P(sum(key), x, ctx) == target


def cartan_terms(i: int, x: AlgebraElement, y: AlgebraElement, ctx: SteenrodContext) -> List[tuple]:
    """The pairs (P^k x, P^l y) with k + l = i, for the ⊙-Cartan comparison."""
    return [(P(k, x, ctx), P(i - k, y, ctx)) for k in range(i + 1)]
