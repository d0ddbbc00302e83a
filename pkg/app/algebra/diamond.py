#!/usr/bin/env python
"""
app/algebra/diamond.py
────────────────────────────────────────────────────────────────────────
The diamond product ◇ on NSymm, quasi-Witt vectors and abelianization.

On generators

    Z_i ◇ Z_j = Σ_{r<=i, s<=j} C(r+s, r) χ(Z_{j-s}) Z_{r+s} χ(Z_{i-r}),

the (s^i t^j)-coefficient of Z(t)^{-1} Z(s+t) Z(s)^{-1}.  Monomials are
reduced right factor first:

    x ◇ (Z_{b1}...Z_{bm})  = Σ Π_k (x_(k) ◇ Z_{bk})   over the m-fold reduced coproduct of x
    (Z_{a1}...Z_{al}) ◇ Z_i = Σ Π_k (Z_{ak} ◇ Z_{rk})  over compositions (r1..rl) of i

and the unit annihilates on both sides.  ``diamond_extended`` adds
1 ◇̂ 1 = 1, which is what the dual (quasi-Witt) multiplication needs.

Quasi-Witt vectors are truncated ring maps QSymm -> R stored by their
values on every composition of degree <= N.

Public API
──────────
    diamond_gen(i, j, ring), diamond(x, y), diamond_extended(x, y)
    diamond_power_Z1(n, ring), abelianize(x, N=None)
    right_distributivity_report(trunc)
    QuasiWittVector (.from_values / .from_points / .from_lyndon_values / .counit)
    quasi_witt_add, quasi_witt_neg, quasi_witt_mul, find_nonassociativity_witness(trunc)
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from app.algebra.core import (
    AlgebraElement,
    AlgebraError,
    CoefficientRing,
    Composition,
    IntegralityError,
    RingKind,
    RingMismatchError,
    TruncationError,
    binomial,
    compositions,
    compositions_up_to,
    render_composition,
)
from app.algebra.lyndon import is_lyndon, lyndon_factorization
from app.algebra.nsymm import _antipode_key, _coproduct_key
from app.algebra.qsymm import _antipode_key as _qsymm_antipode_key
from app.algebra.qsymm import shuffle_keys
from app.algebra.witt import symm_ring

logger = logging.getLogger("qsymm.diamond")

_Z = CoefficientRing.integers()


# ───────────────────────────── integer structure constants ─────────────────
def _concat_dicts(*parts: Mapping[Composition, int]) -> Dict[Composition, int]:
    acc: Dict[Composition, int] = {(): 1}
    for part in parts:
        step: Dict[Composition, int] = {}
        for k, c in acc.items():
            for m, d in part.items():
                step[k + m] = step.get(k + m, 0) + c * d
        acc = step
    return {k: c for k, c in acc.items() if c}


def _chi(n: int) -> Dict[Composition, int]:
    return _antipode_key((n,) if n else ())


@lru_cache(maxsize=None)
def _gen_key(i: int, j: int) -> Dict[Composition, int]:
    acc: Dict[Composition, int] = {}
    for r in range(i + 1):
        for s in range(j + 1):
            mid = {(r + s,): 1} if r + s else {(): 1}
            for k, c in _concat_dicts(_chi(j - s), mid, _chi(i - r)).items():
                acc[k] = acc.get(k, 0) + binomial(r + s, r) * c
    return {k: c for k, c in acc.items() if c}


def _positive_compositions(i: int, parts: int) -> List[Tuple[int, ...]]:
    """Compositions of i into exactly ``parts`` positive parts."""
    return [c for c in compositions(i) if len(c) == parts]


@lru_cache(maxsize=None)
def _diamond_key(u: Composition, v: Composition) -> Dict[Composition, int]:
    if not u or not v:
        return {}
    if len(v) >= 2:
        acc: Dict[Composition, int] = {}
        for pieces, c in _coproduct_key(u, len(v)).items():
            if not all(pieces):
                continue
            factors = [_diamond_key(piece, (b,)) for piece, b in zip(pieces, v)]
            for k, d in _concat_dicts(*factors).items():
                acc[k] = acc.get(k, 0) + c * d
        return {k: c for k, c in acc.items() if c}
    i = v[0]
    if len(u) == 1:
        return _gen_key(u[0], i)
    acc = {}
    for split in _positive_compositions(i, len(u)):
        factors = [_gen_key(a, r) for a, r in zip(u, split)]
        for k, d in _concat_dicts(*factors).items():
            acc[k] = acc.get(k, 0) + d
    return {k: c for k, c in acc.items() if c}


def _diamond_hat_key(u: Composition, v: Composition) -> Dict[Composition, int]:
    if not u and not v:
        return {(): 1}
    return _diamond_key(u, v)


# ───────────────────────────── ◇ on elements ───────────────────────────────
def diamond_gen(i: int, j: int, ring: CoefficientRing) -> AlgebraElement:
    if i < 1 or j < 1:
        raise ValueError("Z_i ◇ Z_j needs i, j >= 1")
    return AlgebraElement(ring, _gen_key(i, j))


def diamond(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """x ◇ y, bilinear; the unit annihilates on either side."""
    return x.bilinear(y, _diamond_key)


def diamond_extended(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """◇̂: as ◇ but with 1 ◇̂ 1 = 1."""
    return x.bilinear(y, _diamond_hat_key)


def diamond_power_Z1(n: int, ring: CoefficientRing) -> AlgebraElement:
    """Z_1 ◇ (Z_1 ◇ (... ◇ Z_1)), n factors."""
    if n < 1:
        raise ValueError("diamond power needs n >= 1")
    z1 = AlgebraElement.monomial(ring, (1,))
    result = z1
    for _ in range(n - 1):
        result = diamond(z1, result)
    return result


def abelianize(x: AlgebraElement, N: Optional[int] = None):
    """Z_i ↦ c_i into Symm; ``N`` is the number of c's (default: largest part)."""
    top = max((max(k) for k in x.terms if k), default=1)
    if N is None:
        N = top
    if top > N:
        raise TruncationError(f"Z_{top} does not fit in c_1..c_{N}")
    R = symm_ring(N, x.ring)
    total = R.zero
    for key, coeff in x.terms.items():
        term = R.ground_new(coeff)
        for a in key:
            term *= R.gens[a - 1]
        total += term
    return total


def right_distributivity_report(trunc: int) -> Dict[str, Any]:
    """Test (xy) ◇ v = Σ (x ◇̂ v')(y ◇̂ v'') on monomials, for right factors v of length >= 2."""
    checked, failures = 0, []
    for total in range(4, trunc + 1):
        for v_deg in range(2, total - 1):
            right_factors = [v for v in compositions(v_deg) if len(v) >= 2]
            for v in right_factors:
                for xy in compositions(total - v_deg):
                    for cut in range(1, len(xy)):
                        x, y = xy[:cut], xy[cut:]
                        rhs: Dict[Composition, int] = {}
                        for (v1, v2), c in _coproduct_key(v).items():
                            for k, d in _concat_dicts(_diamond_hat_key(x, v1), _diamond_hat_key(y, v2)).items():
                                rhs[k] = rhs.get(k, 0) + c * d
                        checked += 1
                        if _diamond_key(xy, v) != {k: c for k, c in rhs.items() if c}:
                            failures.append({"x": list(x), "y": list(y), "v": list(v)})
    logger.info("right distributivity: %d cases, %d failures", checked, len(failures))
    return {"trunc": trunc, "checked": checked, "holds": checked - len(failures), "failures": failures}


# ───────────────────────────── quasi-Witt vectors ──────────────────────────
@lru_cache(maxsize=None)
def _index(trunc: int) -> Dict[Composition, int]:
    return {c: i for i, c in enumerate(compositions_up_to(trunc))}


@dataclass(frozen=True)
class QuasiWittVector:
    ring: CoefficientRing
    trunc: int
    values: Tuple[Any, ...]

    def __post_init__(self) -> None:
        keys = compositions_up_to(self.trunc)
        if len(self.values) != len(keys):
            raise TruncationError(f"expected {len(keys)} values for truncation {self.trunc}")
        if self.values[0] != self.ring.one:
            raise AlgebraError("a quasi-Witt vector takes the value 1 on the empty composition")
        bad = self._multiplicativity_violation()
        if bad is not None:
            a, b = bad
            raise AlgebraError(
                f"values are not multiplicative on {render_composition(a)} ⊙ {render_composition(b)}"
            )

    def __call__(self, alpha: Sequence[int]):
        key = tuple(alpha)
        if sum(key) > self.trunc:
            raise TruncationError(f"{render_composition(key)} exceeds truncation {self.trunc}")
        return self.values[_index(self.trunc)[key]]

    def _multiplicativity_violation(self) -> Optional[Tuple[Composition, Composition]]:
        keys = compositions_up_to(self.trunc)
        for a in keys:
            if not a:
                continue
            for b in keys:
                if not b or b < a or sum(a) + sum(b) > self.trunc:
                    continue
                rhs = self.ring.zero
                for k, c in shuffle_keys(a, b).items():
                    rhs += c * self(k)
                if self(a) * self(b) != rhs:
                    return a, b
        return None

    def as_dict(self) -> Dict[Composition, Any]:
        return dict(zip(compositions_up_to(self.trunc), self.values))

    # constructors -----------------------------------------------------------
    @classmethod
    def from_values(cls, values: Mapping[Sequence[int], Any], trunc: int, ring: CoefficientRing) -> "QuasiWittVector":
        """Explicit table; compositions not listed are 0 (the empty one is 1)."""
        table = {tuple(k): ring.convert(v) for k, v in values.items()}
        table[()] = ring.one
        return cls(ring, trunc, tuple(table.get(c, ring.zero) for c in compositions_up_to(trunc)))

    @classmethod
    def counit(cls, trunc: int, ring: CoefficientRing) -> "QuasiWittVector":
        return cls.from_values({}, trunc, ring)

    @classmethod
    def from_points(cls, points: Sequence[Any], trunc: int, ring: CoefficientRing) -> "QuasiWittVector":
        """Evaluation at x_1..x_k: M_α = Σ_{i1<...<in} Π x_{ij}^{aj}."""
        xs = [ring.convert(x) for x in points]
        values = []
        for alpha in compositions_up_to(trunc):
            total = ring.zero
            for idx in combinations(range(len(xs)), len(alpha)):
                term = ring.one
                for i, a in zip(idx, alpha):
                    term *= xs[i] ** a
                total += term
            values.append(total)
        return cls(ring, trunc, tuple(values))

    @classmethod
    def from_lyndon_values(cls, values: Mapping[Sequence[int], Any], trunc: int, ring: CoefficientRing) -> "QuasiWittVector":
        """Extend values on Lyndon compositions multiplicatively (unlisted Lyndon words are 0).

        A non-Lyndon α with Lyndon factorization l1 >= ... >= lk is the top term
        of [l1]⊙...⊙[lk]; every other term comes earlier in canonical order.
        """
        given = {tuple(k): ring.convert(v) for k, v in values.items()}
        for k in given:
            if not is_lyndon(k):
                raise ValueError(f"{render_composition(k)} is not a Lyndon word")
        table: Dict[Composition, Any] = {(): ring.one}
        for alpha in compositions_up_to(trunc):
            if not alpha:
                continue
            if is_lyndon(alpha):
                table[alpha] = given.get(alpha, ring.zero)
                continue
            product: Dict[Composition, int] = {(): 1}
            value = ring.one
            for factor in lyndon_factorization(alpha):
                value *= table[factor]
                step: Dict[Composition, int] = {}
                for k, c in product.items():
                    for m, d in shuffle_keys(k, factor).items():
                        step[m] = step.get(m, 0) + c * d
                product = step
            lead = product.pop(alpha)
            for k, c in product.items():
                value -= c * table[k]
            table[alpha] = _divide(value, lead, ring)
        return cls(ring, trunc, tuple(table[c] for c in compositions_up_to(trunc)))


def _divide(value, lead: int, ring: CoefficientRing):
    if ring.kind is RingKind.INTEGERS:
        if int(value) % lead:
            raise IntegralityError(f"{value} is not divisible by {lead}")
        return ring.convert(int(value) // lead)
    c = ring.convert(lead)
    if not c:
        raise AlgebraError(f"leading coefficient {lead} vanishes in {ring}")
    return ring.check(value * ring.inverse(c))


def _check_pair(f: QuasiWittVector, g: QuasiWittVector) -> None:
    if f.ring != g.ring:
        raise RingMismatchError(f"ring mismatch: {f.ring} vs {g.ring}")
    if f.trunc != g.trunc:
        raise TruncationError(f"truncation mismatch: {f.trunc} vs {g.trunc}")


def quasi_witt_add(f: QuasiWittVector, g: QuasiWittVector) -> QuasiWittVector:
    """(f ⋆ g)(α) = Σ f(prefix) g(suffix) over the deconcatenations of α."""
    _check_pair(f, g)
    values = []
    for alpha in compositions_up_to(f.trunc):
        total = f.ring.zero
        for i in range(len(alpha) + 1):
            total += f(alpha[:i]) * g(alpha[i:])
        values.append(total)
    return QuasiWittVector(f.ring, f.trunc, tuple(values))


def quasi_witt_neg(f: QuasiWittVector) -> QuasiWittVector:
    """The ⋆-inverse f ∘ S."""
    values = []
    for alpha in compositions_up_to(f.trunc):
        total = f.ring.zero
        for k, c in _qsymm_antipode_key(alpha).items():
            total += c * f(k)
        values.append(total)
    return QuasiWittVector(f.ring, f.trunc, tuple(values))


@lru_cache(maxsize=None)
def _diamond_transpose(n: int) -> Dict[Composition, Tuple[Tuple[Composition, Composition, int], ...]]:
    """For each α of degree n, the (β, γ, ⟨α, Z^β ◇̂ Z^γ⟩) with nonzero pairing."""
    acc: Dict[Composition, List[Tuple[Composition, Composition, int]]] = {}
    if n == 0:
        return {(): (((), (), 1),)}
    for d in range(1, n):
        for beta in compositions(d):
            for gamma in compositions(n - d):
                for alpha, c in _diamond_key(beta, gamma).items():
                    acc.setdefault(alpha, []).append((beta, gamma, c))
    logger.debug("◇ transpose built in degree %d (%d rows)", n, len(acc))
    return {alpha: tuple(rows) for alpha, rows in acc.items()}


def quasi_witt_mul(f: QuasiWittVector, g: QuasiWittVector) -> QuasiWittVector:
    """(f ◇ g)(α) = Σ ⟨α, Z^β ◇̂ Z^γ⟩ f(β) g(γ)."""
    _check_pair(f, g)
    values = []
    for alpha in compositions_up_to(f.trunc):
        total = f.ring.zero
        for beta, gamma, c in _diamond_transpose(sum(alpha)).get(alpha, ()):
            total += c * f(beta) * g(gamma)
        values.append(total)
    return QuasiWittVector(f.ring, f.trunc, tuple(values))


def find_nonassociativity_witness(trunc: int, ring: CoefficientRing = _Z) -> Optional[Dict[str, Any]]:
    """First (f, g, h, α) with ((f◇g)◇h)(α) != (f◇(g◇h))(α) among point evaluations."""
    candidates = [(1,), (2,), (1, 1), (1, 2), (-1, 1)]
    for pf in candidates:
        for pg in candidates:
            for ph in candidates:
                f, g, h = (QuasiWittVector.from_points(p, trunc, ring) for p in (pf, pg, ph))
                left = quasi_witt_mul(quasi_witt_mul(f, g), h)
                right = quasi_witt_mul(f, quasi_witt_mul(g, h))
                for alpha in compositions_up_to(trunc):
                    if left(alpha) != right(alpha):
                        return {
                            "points": [list(pf), list(pg), list(ph)],
                            "composition": list(alpha),
                            "left": ring.render(left(alpha)),
                            "right": ring.render(right(alpha)),
                        }
    return None
