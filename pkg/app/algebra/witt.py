#!/usr/bin/env python
"""
app/algebra/witt.py
────────────────────────────────────────────────────────────────────────
Symm as a Hopf algebra, its Witt-vector coordinates, and big Witt vectors.

Symm elements are sympy ``PolyElement`` values in c_1..c_N (weight c_i = i).
The homology generators b_i are identified with c_i, so one polynomial ring
serves both.  Other coordinate systems live in their own rings:

    v_1..v_N   Witt coordinates        Π(1 - v_k t^k) = Σ c_n (-t)^n
    q_1..q_N   Newton primitives       q_n = Σ_{kl=n} k v_k^l  (s_n is q_n)

Tensor powers are polynomial rings in one copy of the generators per
factor (``c3_1`` is c_3 in the second factor).

Witt-vector arithmetic uses the universal sum/product/negation polynomials,
solved once per truncation over Q from the ghost map and checked to be
integral before evaluation in any coefficient ring.

Public API
──────────
    symm_ring(N, coeff), v_ring(N, coeff), q_ring(N, coeff), tensor_ring(N, coeff, factors, letter)
    cartan_coproduct(x), cartan_coproduct_on_factor(t, factor), symm_antipode(x), symm_counit(x)
    contract(t, left, right), newton_q(n, R), witt_generator_v(n, R), c_in_v(n, V)
    to_v_basis(x), from_v_basis(y), to_q_basis(x), from_q_basis(y), v_coproduct(y)
    p_typical_v(n, r, p)
    frobenius(d, y), verschiebung(d, y), hopf_frobenius(d, x), hopf_verschiebung(d, x)
    frobenius_report(max_degree)
    psi_otimes(x), psi_otimes_on_factor(t, factor), compare_psi_report(trunc)
    WittVector, LambdaSeries, universal_polynomials(N)
    witt_add, witt_sub, witt_neg, witt_mul, ghost, exponential, from_lambda
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Callable, Dict, List, Sequence, Tuple

from sympy.polys.domains import QQ, ZZ
from sympy.polys.rings import PolyElement, PolyRing, ring as poly_ring

from app.algebra.core import (
    CoefficientRing,
    IntegralityError,
    RingMismatchError,
    TruncationError,
    binomial,
    compositions,
    divisors,
)

logger = logging.getLogger("qsymm.witt")

SymmElement = PolyElement


# ───────────────────────────── rings ───────────────────────────────────────
@lru_cache(maxsize=None)
def _named_ring(names: Tuple[str, ...], domain) -> PolyRing:
    return poly_ring(list(names), domain)[0]


def symm_ring(N: int, coeff: CoefficientRing) -> PolyRing:
    """Z[c_1..c_N] ⊗ R (the domain of Z_(p) is Q; integrality is checked on results)."""
    if N < 1:
        raise ValueError("truncation must be >= 1")
    return _named_ring(tuple(f"c{i}" for i in range(1, N + 1)), coeff.domain)


def v_ring(N: int, coeff: CoefficientRing) -> PolyRing:
    return _named_ring(tuple(f"v{i}" for i in range(1, N + 1)), coeff.domain)


def q_ring(N: int, coeff: CoefficientRing) -> PolyRing:
    return _named_ring(tuple(f"q{i}" for i in range(1, N + 1)), coeff.domain)


def tensor_ring(N: int, coeff_domain, factors: int = 2, letter: str = "c") -> PolyRing:
    names = tuple(f"{letter}{i}_{f}" for f in range(factors) for i in range(1, N + 1))
    return _named_ring(names, coeff_domain)


def _letter(R: PolyRing) -> str:
    return str(R.symbols[0])[0]


def _tensor_shape(R: PolyRing) -> Tuple[int, int]:
    """(N, factors) of a tensor ring."""
    factors = int(str(R.symbols[-1]).rsplit("_", 1)[1]) + 1
    return R.ngens // factors, factors


def _tgen(T: PolyRing, i: int, factor: int) -> PolyElement:
    if i == 0:
        return T.one
    N, _ = _tensor_shape(T)
    if i > N:
        raise TruncationError(f"generator {i} exceeds truncation {N}")
    return T.gens[factor * N + i - 1]


def substitute(x: PolyElement, images: Sequence[PolyElement], target: PolyRing) -> PolyElement:
    """Ring homomorphism sending the k-th generator of x.ring to images[k]."""
    src_domain = x.ring.domain
    result = target.zero
    for monom, coeff in x.items():
        term = target.ground_new(target.domain.convert(coeff, src_domain))
        for img, e in zip(images, monom):
            if e:
                term = term * img ** e
        result += term
    return result


def _rational_to(c, src_domain, domain):
    """One coefficient moved into ``domain``; Q values must make sense there."""
    if src_domain != QQ or domain == QQ:
        return domain.convert(c, src_domain)
    num, den = int(QQ.numer(c)), int(QQ.denom(c))
    if domain == ZZ:
        if den != 1:
            raise IntegralityError(f"{num}/{den} is not an integer")
        return ZZ(num)
    if den % domain.characteristic() == 0:
        raise IntegralityError(f"{num}/{den} has no value mod {domain.characteristic()}")
    return domain.quo(domain.convert(num), domain.convert(den))


def change_domain(x: PolyElement, coeff: CoefficientRing) -> PolyElement:
    """Move x into the same generators over ``coeff``; raises on non-integral values."""
    target = _named_ring(tuple(str(s) for s in x.ring.symbols), coeff.domain)
    terms = {m: coeff.check(_rational_to(c, x.ring.domain, coeff.domain)) for m, c in x.items()}
    return target.from_dict({m: c for m, c in terms.items() if c})


def check_p_local(x: PolyElement, p: int) -> PolyElement:
    for _, c in x.items():
        if int(QQ.denom(c)) % p == 0:
            raise IntegralityError(f"{x} is not {p}-integral")
    return x


# ───────────────────────────── Hopf structure (ψ_⊕) ────────────────────────
def embed(x: PolyElement, factor: int, T: PolyRing) -> PolyElement:
    """x placed in tensor factor ``factor`` of T."""
    return substitute(x, [_tgen(T, i, factor) for i in range(1, x.ring.ngens + 1)], T)


def cartan_coproduct(x: PolyElement) -> PolyElement:
    """Δ(c_n) = Σ_{p+q=n} c_p ⊗ c_q, extended multiplicatively."""
    N = x.ring.ngens
    T = tensor_ring(N, x.ring.domain, 2, _letter(x.ring))
    images = [
        sum((_tgen(T, p, 0) * _tgen(T, n - p, 1) for p in range(n + 1)), T.zero)
        for n in range(1, N + 1)
    ]
    return substitute(x, images, T)


def cartan_coproduct_on_factor(t: PolyElement, factor: int) -> PolyElement:
    """Apply Δ to one factor of a tensor, raising its arity by one."""
    N, factors = _tensor_shape(t.ring)
    letter = _letter(t.ring)
    T = tensor_ring(N, t.ring.domain, factors + 1, letter)
    images = []
    for f in range(factors):
        for n in range(1, N + 1):
            if f < factor:
                images.append(_tgen(T, n, f))
            elif f > factor:
                images.append(_tgen(T, n, f + 1))
            else:
                images.append(sum((_tgen(T, p, f) * _tgen(T, n - p, f + 1) for p in range(n + 1)), T.zero))
    return substitute(t, images, T)


@lru_cache(maxsize=None)
def _chi_images(N: int, domain) -> Tuple[PolyElement, ...]:
    R = _named_ring(tuple(f"c{i}" for i in range(1, N + 1)), domain)
    images = []
    for n in range(1, N + 1):
        total = R.zero
        for comp in compositions(n):
            term = R.one
            for a in comp:
                term *= R.gens[a - 1]
            total += (-1) ** len(comp) * term
        images.append(total)
    return tuple(images)


def symm_antipode(x: PolyElement) -> PolyElement:
    """χ(c_n) = Σ_{i1+...+im=n} (-1)^m c_{i1}...c_{im}, a ring map (Symm is commutative)."""
    images = _chi_images(x.ring.ngens, x.ring.domain)
    renamed = [substitute(img, list(x.ring.gens), x.ring) for img in images]
    return substitute(x, renamed, x.ring)


def symm_counit(x: PolyElement):
    return x.get(x.ring.zero_monom, x.ring.domain.zero)


def contract(t: PolyElement, left: Callable[[PolyElement], PolyElement] | None = None,
             right: Callable[[PolyElement], PolyElement] | None = None) -> PolyElement:
    """m ∘ (left ⊗ right) on a 2-tensor, for ring maps left/right (default identity)."""
    N, factors = _tensor_shape(t.ring)
    if factors != 2:
        raise ValueError("contract needs a 2-fold tensor")
    R = _named_ring(tuple(f"{_letter(t.ring)}{i}" for i in range(1, N + 1)), t.ring.domain)
    images = []
    for fn in (left, right):
        for g in R.gens:
            images.append(fn(g) if fn else g)
    return substitute(t, images, R)


# ───────────────────────────── Newton and Witt generators ──────────────────
def newton_q(n: int, R: PolyRing) -> PolyElement:
    """q_n = Σ_{i<n} (-1)^(i-1) c_i q_{n-i} + (-1)^(n-1) n c_n, with q_1 = c_1."""
    if n < 1:
        raise ValueError("q_n is indexed by n >= 1")
    if n > R.ngens:
        raise TruncationError(f"q_{n} exceeds truncation {R.ngens}")
    return _newton_q_table(R.ngens, R.domain)[n - 1]


@lru_cache(maxsize=None)
def _newton_q_table(N: int, domain) -> Tuple[PolyElement, ...]:
    R = _named_ring(tuple(f"c{i}" for i in range(1, N + 1)), domain)
    qs: List[PolyElement] = []
    for n in range(1, N + 1):
        q = (-1) ** (n - 1) * n * R.gens[n - 1]
        for i in range(1, n):
            q += (-1) ** (i - 1) * R.gens[i - 1] * qs[n - i - 1]
        qs.append(q)
    return tuple(qs)


def _series_product(factors: Sequence[Sequence[PolyElement]], N: int, zero: PolyElement, one: PolyElement) -> List[PolyElement]:
    """Product of truncated commutative series given as coefficient lists."""
    acc = [one] + [zero] * N
    for f in factors:
        nxt = [zero] * (N + 1)
        for i, a in enumerate(acc):
            if not a:
                continue
            for j, b in enumerate(f[: N + 1 - i]):
                if b:
                    nxt[i + j] += a * b
        acc = nxt
    return acc


@lru_cache(maxsize=None)
def _v_in_c(N: int, domain) -> Tuple[PolyElement, ...]:
    # Π_k (1 - v_k t^k) = Σ c_n (-t)^n, solved one degree at a time:
    # v_n = [Π_{k<n}(1 - v_k t^k)]_n - (-1)^n c_n
    R = _named_ring(tuple(f"c{i}" for i in range(1, N + 1)), domain)
    vs: List[PolyElement] = []
    for n in range(1, N + 1):
        factors = [[R.one] + [R.zero] * (k - 1) + [-vs[k - 1]] for k in range(1, n)]
        prefix = _series_product(factors, n, R.zero, R.one)
        vs.append(prefix[n] - (-1) ** n * R.gens[n - 1])
    return tuple(vs)


@lru_cache(maxsize=None)
def _c_in_v(N: int, domain) -> Tuple[PolyElement, ...]:
    V = _named_ring(tuple(f"v{i}" for i in range(1, N + 1)), domain)
    factors = [[V.one] + [V.zero] * (k - 1) + [-V.gens[k - 1]] for k in range(1, N + 1)]
    series = _series_product(factors, N, V.zero, V.one)
    return tuple((-1) ** n * series[n] for n in range(1, N + 1))


def witt_generator_v(n: int, R: PolyRing) -> PolyElement:
    """v_n as a polynomial in the c's of R."""
    if not 1 <= n <= R.ngens:
        raise TruncationError(f"v_{n} needs 1 <= n <= {R.ngens}")
    return _v_in_c(R.ngens, R.domain)[n - 1]


def c_in_v(n: int, V: PolyRing) -> PolyElement:
    if not 1 <= n <= V.ngens:
        raise TruncationError(f"c_{n} needs 1 <= n <= {V.ngens}")
    return _c_in_v(V.ngens, V.domain)[n - 1]


def to_v_basis(x: PolyElement) -> PolyElement:
    """Rewrite a polynomial in the c's as a polynomial in the v's."""
    N = x.ring.ngens
    V = _named_ring(tuple(f"v{i}" for i in range(1, N + 1)), x.ring.domain)
    return substitute(x, list(_c_in_v(N, x.ring.domain)), V)


def from_v_basis(y: PolyElement) -> PolyElement:
    N = y.ring.ngens
    R = _named_ring(tuple(f"c{i}" for i in range(1, N + 1)), y.ring.domain)
    return substitute(y, list(_v_in_c(N, y.ring.domain)), R)


@lru_cache(maxsize=None)
def _c_in_q(N: int) -> Tuple[PolyElement, ...]:
    # Newton's identity solved for c_n over Q:
    # c_n = (-1)^(n-1) (q_n - Σ_{i<n} (-1)^(i-1) c_i q_{n-i}) / n
    Qr = _named_ring(tuple(f"q{i}" for i in range(1, N + 1)), QQ)
    cs: List[PolyElement] = []
    for n in range(1, N + 1):
        acc = Qr.gens[n - 1]
        for i in range(1, n):
            acc -= (-1) ** (i - 1) * cs[i - 1] * Qr.gens[n - i - 1]
        cs.append(acc.quo_ground(QQ((-1) ** (n - 1) * n)))
    return tuple(cs)


def to_q_basis(x: PolyElement) -> PolyElement:
    """Rewrite a rational polynomial in the c's in terms of the Newton primitives."""
    if x.ring.domain != QQ:
        raise ValueError("the q's generate Symm only over Q")
    N = x.ring.ngens
    return substitute(x, list(_c_in_q(N)), _named_ring(tuple(f"q{i}" for i in range(1, N + 1)), QQ))


def from_q_basis(y: PolyElement) -> PolyElement:
    N = y.ring.ngens
    R = _named_ring(tuple(f"c{i}" for i in range(1, N + 1)), y.ring.domain)
    return substitute(y, list(_newton_q_table(N, y.ring.domain)), R)


def v_coproduct(y: PolyElement) -> PolyElement:
    """ψ_⊕ in Witt coordinates: through the c's and back, factor by factor."""
    N = y.ring.ngens
    t = cartan_coproduct(from_v_basis(y))
    TV = tensor_ring(N, y.ring.domain, 2, "v")
    c_v = _c_in_v(N, y.ring.domain)
    images = [embed(c_v[i - 1], f, TV) for f in range(2) for i in range(1, N + 1)]
    return substitute(t, images, TV)


# ───────────────────────────── p-typical generators ────────────────────────
@lru_cache(maxsize=None)
def p_typical_v(n: int, r: int, p: int) -> PolyElement:
    """v_{n,r} from q_{np^r} = Σ_{i<=r} p^i v_{n,i}^(p^(r-i)), over Z_(p)."""
    ring = CoefficientRing.p_local(p)
    if n < 1 or r < 0:
        raise ValueError("p-typical generators need n >= 1 and r >= 0")
    if n % p == 0:
        raise ValueError(f"p={p} divides n={n}")
    R = symm_ring(n * p ** r, ring)
    if r == 0:
        return newton_q(n, R)
    acc = newton_q(n * p ** r, R)
    for i in range(r):
        lower = substitute(p_typical_v(n, i, p), list(R.gens[: n * p ** i]), R)
        acc -= p ** i * lower ** (p ** (r - i))
    return check_p_local(acc.quo_ground(QQ(p ** r)), p)


# ───────────────────────────── Frobenius / Verschiebung ────────────────────
def frobenius(d: int, y: PolyElement) -> PolyElement:
    """Ring map v_n ↦ v_{nd} on a v-basis element; lands in truncation N·d."""
    if d < 1:
        raise ValueError("d must be >= 1")
    N = y.ring.ngens
    target = _named_ring(tuple(f"v{i}" for i in range(1, N * d + 1)), y.ring.domain)
    return substitute(y, [target.gens[n * d - 1] for n in range(1, N + 1)], target)


def verschiebung(d: int, y: PolyElement) -> PolyElement:
    """Ring map v_n ↦ d·v_{n/d} if d | n, else 0, on a v-basis element."""
    if d < 1:
        raise ValueError("d must be >= 1")
    V = y.ring
    images = [d * V.gens[n // d - 1] if n % d == 0 else V.zero for n in range(1, V.ngens + 1)]
    return substitute(y, images, V)


def _hopf_endomorphism(x: PolyElement, q_image: Callable[[int, PolyRing], PolyElement], N_out: int) -> PolyElement:
    """Ring map fixed by the images of the q's, applied to x in the c's."""
    N = x.ring.ngens
    big = _named_ring(tuple(f"c{i}" for i in range(1, N_out + 1)), QQ)
    c_images: List[PolyElement] = []
    for n in range(1, N + 1):
        acc = q_image(n, big)
        for i in range(1, n):
            acc -= (-1) ** (i - 1) * c_images[i - 1] * q_image(n - i, big)
        c_images.append(acc.quo_ground(QQ((-1) ** (n - 1) * n)))
    target = _named_ring(tuple(f"c{i}" for i in range(1, N_out + 1)), x.ring.domain)
    converted = [_to_domain(img, target) for img in c_images]
    return substitute(x, converted, target)


def _to_domain(x: PolyElement, target: PolyRing) -> PolyElement:
    terms = {m: _rational_to(c, x.ring.domain, target.domain) for m, c in x.items()}
    return target.from_dict({m: c for m, c in terms.items() if c})


def hopf_frobenius(d: int, x: PolyElement) -> PolyElement:
    """The Hopf endomorphism q_n ↦ q_{nd} (c-basis in, c-basis of truncation N·d out)."""
    N = x.ring.ngens
    return _hopf_endomorphism(x, lambda n, big: newton_q(n * d, big), N * d)


def hopf_verschiebung(d: int, x: PolyElement) -> PolyElement:
    """The Hopf endomorphism q_n ↦ d·q_{n/d} (0 unless d | n); equals v_n ↦ v_{n/d}."""
    N = x.ring.ngens
    return _hopf_endomorphism(
        x, lambda n, big: d * newton_q(n // d, big) if n % d == 0 else big.zero, N
    )


def _v_tensor_apply(t: PolyElement, fn: Callable[[PolyElement], PolyElement], N_out: int) -> PolyElement:
    """(fn ⊗ fn) on a v-coordinate 2-tensor; fn is a ring map on v-polynomials."""
    N, factors = _tensor_shape(t.ring)
    V = _named_ring(tuple(f"v{i}" for i in range(1, N + 1)), t.ring.domain)
    T_out = tensor_ring(N_out, t.ring.domain, factors, "v")
    images = []
    for f in range(factors):
        for g in V.gens:
            img = fn(g)
            images.append(embed(img, f, T_out))
    return substitute(t, images, T_out)


def frobenius_report(max_degree: int, coeff: CoefficientRing | None = None) -> List[Dict[str, Any]]:
    """Which (d, n) with n·d <= max_degree satisfy Δ∘F(v_n) = (F⊗F)∘Δ(v_n)."""
    coeff = coeff or CoefficientRing.integers()
    rows = []
    for d in range(2, max_degree + 1):
        for n in range(1, max_degree // d + 1):
            N = n
            V = v_ring(N, coeff)
            vn = V.gens[n - 1]
            delta = v_coproduct(vn)
            lit_f = v_coproduct(frobenius(d, vn)) == _v_tensor_apply(delta, lambda g: frobenius(d, g), N * d)
            Vd = v_ring(n * d, coeff)
            vnd = Vd.gens[n * d - 1]
            lit_v = v_coproduct(verschiebung(d, vnd)) == _v_tensor_apply(v_coproduct(vnd), lambda g: verschiebung(d, g), n * d)

            def hf(g, d=d):
                return to_v_basis(hopf_frobenius(d, from_v_basis(g)))

            def hv(g, d=d):
                return to_v_basis(hopf_verschiebung(d, from_v_basis(g)))

            hopf_f = v_coproduct(hf(vn)) == _v_tensor_apply(delta, hf, N * d)
            hopf_v = v_coproduct(hv(vnd)) == _v_tensor_apply(v_coproduct(vnd), hv, n * d)
            rows.append({
                "d": d, "n": n,
                "frobenius_rule": lit_f, "verschiebung_rule": lit_v,
                "hopf_frobenius": hopf_f, "hopf_verschiebung": hopf_v,
            })
    return rows


# ───────────────────────────── ψ_⊗ ─────────────────────────────────────────
def psi_otimes(x: PolyElement) -> PolyElement:
    """ψ_⊗(s_n) = Σ_{0<=i<=n} C(n,i) s_i ⊗ s_{n-i} (s_0 = 1) on a q-basis element over Q."""
    if x.ring.domain != QQ:
        raise ValueError("ψ_⊗ is defined over the rationals")
    if _letter(x.ring) != "q":
        raise ValueError("ψ_⊗ expects an element written in the q-basis (see to_q_basis)")
    N = x.ring.ngens
    T = tensor_ring(N, QQ, 2, "q")
    images = [
        sum((binomial(n, i) * _tgen(T, i, 0) * _tgen(T, n - i, 1) for i in range(n + 1)), T.zero)
        for n in range(1, N + 1)
    ]
    return substitute(x, images, T)


def psi_otimes_on_factor(t: PolyElement, factor: int) -> PolyElement:
    N, factors = _tensor_shape(t.ring)
    T = tensor_ring(N, QQ, factors + 1, "q")
    images = []
    for f in range(factors):
        for n in range(1, N + 1):
            if f < factor:
                images.append(_tgen(T, n, f))
            elif f > factor:
                images.append(_tgen(T, n, f + 1))
            else:
                images.append(sum((binomial(n, i) * _tgen(T, i, f) * _tgen(T, n - i, f + 1) for i in range(n + 1)), T.zero))
    return substitute(t, images, T)


def multiplicative_coproduct(x: PolyElement) -> PolyElement:
    """The coproduct dual to Witt multiplication: q_n ↦ q_n ⊗ q_n."""
    N = x.ring.ngens
    T = tensor_ring(N, QQ, 2, "q")
    return substitute(x, [_tgen(T, n, 0) * _tgen(T, n, 1) for n in range(1, N + 1)], T)


def compare_psi_report(trunc: int) -> List[Dict[str, Any]]:
    """ψ_⊗ next to the multiplicative coproduct on q_1..q_trunc."""
    Qr = q_ring(trunc, CoefficientRing.rationals())
    rows = []
    for n in range(1, trunc + 1):
        a, b = psi_otimes(Qr.gens[n - 1]), multiplicative_coproduct(Qr.gens[n - 1])
        rows.append({"n": n, "psi_otimes": str(a.as_expr()), "multiplicative": str(b.as_expr()), "equal": a == b})
    return rows


# ───────────────────────────── Witt vectors ────────────────────────────────
@dataclass(frozen=True)
class WittVector:
    coords: Tuple[Any, ...]
    ring: CoefficientRing

    @classmethod
    def from_values(cls, values: Sequence[Any], ring: CoefficientRing) -> "WittVector":
        return cls(tuple(ring.convert(v) for v in values), ring)

    @classmethod
    def zero(cls, ring: CoefficientRing, N: int) -> "WittVector":
        return cls((ring.zero,) * N, ring)

    @classmethod
    def one(cls, ring: CoefficientRing, N: int) -> "WittVector":
        return cls((ring.one,) + (ring.zero,) * (N - 1), ring)

    @property
    def trunc(self) -> int:
        return len(self.coords)

    def render(self) -> List[str]:
        return [self.ring.render(c) for c in self.coords]


@dataclass(frozen=True)
class LambdaSeries:
    """1 + a_1 t + ... + a_N t^N; ``coeffs`` holds a_1..a_N."""

    coeffs: Tuple[Any, ...]
    ring: CoefficientRing

    @classmethod
    def from_values(cls, values: Sequence[Any], ring: CoefficientRing) -> "LambdaSeries":
        return cls(tuple(ring.convert(v) for v in values), ring)

    @property
    def trunc(self) -> int:
        return len(self.coeffs)

    def __mul__(self, other: "LambdaSeries") -> "LambdaSeries":
        _check_compatible(self, other)
        a = (self.ring.one,) + self.coeffs
        b = (other.ring.one,) + other.coeffs
        N = self.trunc
        return LambdaSeries(
            tuple(sum((a[i] * b[n - i] for i in range(n + 1)), self.ring.zero) for n in range(1, N + 1)),
            self.ring,
        )


def _check_compatible(a, b) -> None:
    if a.ring != b.ring:
        raise RingMismatchError(f"ring mismatch: {a.ring} vs {b.ring}")
    if a.trunc != b.trunc:
        raise TruncationError(f"truncation mismatch: {a.trunc} vs {b.trunc}")


@lru_cache(maxsize=None)
def universal_polynomials(N: int) -> Dict[str, Tuple[PolyElement, ...]]:
    """Integral sum, product and negation polynomials S_n, P_n, M_n in x_1..x_N, y_1..y_N."""
    names = tuple(f"x{i}" for i in range(1, N + 1)) + tuple(f"y{i}" for i in range(1, N + 1))
    U = _named_ring(names, QQ)
    xs, ys = U.gens[:N], U.gens[N:]

    def gh(vec, n):
        return sum((d * vec[d - 1] ** (n // d) for d in divisors(n)), U.zero)

    def solve(target: Callable[[int], PolyElement]) -> Tuple[PolyElement, ...]:
        out: List[PolyElement] = []
        for n in range(1, N + 1):
            acc = target(n)
            for d in divisors(n)[:-1]:
                acc -= d * out[d - 1] ** (n // d)
            out.append(acc.quo_ground(QQ(n)))
        return tuple(out)

    polys = {
        "add": solve(lambda n: gh(xs, n) + gh(ys, n)),
        "mul": solve(lambda n: gh(xs, n) * gh(ys, n)),
        "neg": solve(lambda n: -gh(xs, n)),
    }
    Z = _named_ring(names, ZZ)
    integral = {}
    for name, seq in polys.items():
        converted = []
        for poly in seq:
            for _, c in poly.items():
                if int(QQ.denom(c)) != 1:
                    raise IntegralityError(f"universal {name} polynomial is not integral: {poly}")
            converted.append(Z.from_dict({m: ZZ(int(QQ.numer(c))) for m, c in poly.items()}))
        integral[name] = tuple(converted)
    logger.debug("universal Witt polynomials built for N=%d", N)
    return integral


def _evaluate(poly: PolyElement, values: Sequence[Any], ring: CoefficientRing):
    total = ring.zero
    for monom, c in poly.items():
        term = ring.convert(int(c))
        for v, e in zip(values, monom):
            if e:
                term = term * v ** e
        total += term
    return ring.check(total)


def _apply(name: str, a: WittVector, b: WittVector | None = None) -> WittVector:
    N = a.trunc
    polys = universal_polynomials(N)[name]
    values = a.coords + (b.coords if b is not None else (a.ring.zero,) * N)
    return WittVector(tuple(_evaluate(p, values, a.ring) for p in polys), a.ring)


def witt_add(a: WittVector, b: WittVector) -> WittVector:
    _check_compatible(a, b)
    return _apply("add", a, b)


def witt_mul(a: WittVector, b: WittVector) -> WittVector:
    _check_compatible(a, b)
    return _apply("mul", a, b)


def witt_neg(a: WittVector) -> WittVector:
    return _apply("neg", a)


def witt_sub(a: WittVector, b: WittVector) -> WittVector:
    return witt_add(a, witt_neg(b))


def ghost(a: WittVector) -> Tuple[Any, ...]:
    """gh_n(a) = Σ_{d|n} d·a_d^(n/d)."""
    return tuple(
        sum((d * a.coords[d - 1] ** (n // d) for d in divisors(n)), a.ring.zero)
        for n in range(1, a.trunc + 1)
    )


def exponential(a: WittVector) -> LambdaSeries:
    """E(a) = Π (1 - a_i t^i), truncated."""
    series = [a.ring.one] + [a.ring.zero] * a.trunc
    for i, ai in enumerate(a.coords, start=1):
        if not ai:
            continue
        series = [series[n] - (ai * series[n - i] if n >= i else a.ring.zero) for n in range(a.trunc + 1)]
    return LambdaSeries(tuple(series[1:]), a.ring)


def from_lambda(s: LambdaSeries) -> WittVector:
    """Inverse of E: x_n = [Π_{k<n}(1 - x_k t^k)]_n - a_n."""
    xs: List[Any] = []
    for n in range(1, s.trunc + 1):
        prefix = exponential(WittVector(tuple(xs) + (s.ring.zero,) * (s.trunc - len(xs)), s.ring))
        xs.append(prefix.coeffs[n - 1] - s.coeffs[n - 1])
    return WittVector(tuple(xs), s.ring)
