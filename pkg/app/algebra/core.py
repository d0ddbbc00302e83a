#!/usr/bin/env python
"""
app/algebra/core.py
────────────────────────────────────────────────────────────────────────
Exact coefficient rings, compositions and sparse graded elements.

Every algebra in the package (Symm, NSymm, QSymm and their tensor powers)
keeps its elements as finite maps from basis keys to *nonzero*
coefficients of one CoefficientRing.  Coefficients are sympy domain
elements, so Z, Q and F_p arithmetic is arbitrary precision.

Public API
──────────
    CoefficientRing.integers() / rationals() / prime_field(p) / p_local(p)
    CoefficientRing.parse("Z" | "Q" | "Fp:<p>" | "Zp:<p>")
    AlgebraElement, TensorElement
    compositions(n), compositions_up_to(n), composition_sort_key(c)
    binomial(n, k), binomial_mod_p(n, k, p), moebius(n), divisors(n)
    poincare_series(counts, N)
    matrix_rank(rows, ncols, ring), nullspace(rows, ncols, ring),
    integer_invariant_factors(rows, ncols)
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple

from sympy import divisors, factorint, isprime
from sympy.polys.domains import GF, QQ, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors

Composition = Tuple[int, ...]
TensorKey = Tuple[Composition, ...]


# ───────────────────────────── errors ──────────────────────────────────────
class AlgebraError(ValueError):
    """Base class for every error raised by the algebra kernel."""


class RingMismatchError(AlgebraError):
    pass


class IntegralityError(AlgebraError):
    """A value left Z, Z_(p) or the integers where it had to stay."""


class TruncationError(AlgebraError):
    pass


class BasicProductError(AlgebraError):
    pass


class VerificationFailure(AlgebraError):
    """An internal cross-check disagreed; carries the offending payload."""

    def __init__(self, message: str, payload: Any = None):
        super().__init__(message)
        self.payload = payload


# ───────────────────────────── rings ───────────────────────────────────────
class RingKind(str, Enum):
    INTEGERS = "Z"
    RATIONALS = "Q"
    PRIME_FIELD = "Fp"
    P_LOCAL = "Zp"


@lru_cache(maxsize=None)
def _sympy_domain(kind: RingKind, p: int | None):
    if kind is RingKind.INTEGERS:
        return ZZ
    if kind is RingKind.PRIME_FIELD:
        return GF(p, symmetric=False)
    return QQ


@dataclass(frozen=True)
class CoefficientRing:
    """Z, Q, F_p or Z_(p) (rationals with denominators prime to p)."""

    kind: RingKind
    p: int | None = None

    def __post_init__(self) -> None:
        if self.kind in (RingKind.PRIME_FIELD, RingKind.P_LOCAL):
            if self.p is None or not isprime(self.p):
                raise ValueError(f"{self.p!r} is not a prime")
        elif self.p is not None:
            raise ValueError(f"ring {self.kind.value} takes no prime")

    # constructors -----------------------------------------------------------
    @classmethod
    def integers(cls) -> "CoefficientRing":
        return cls(RingKind.INTEGERS)

    @classmethod
    def rationals(cls) -> "CoefficientRing":
        return cls(RingKind.RATIONALS)

    @classmethod
    def prime_field(cls, p: int) -> "CoefficientRing":
        return cls(RingKind.PRIME_FIELD, p)

    @classmethod
    def p_local(cls, p: int) -> "CoefficientRing":
        return cls(RingKind.P_LOCAL, p)

    @classmethod
    def parse(cls, text: str) -> "CoefficientRing":
        """Parse the CLI notation ``Z``, ``Q``, ``Fp:<p>`` or ``Zp:<p>``."""
        spec = text.strip()
        if spec in ("Z", "ZZ"):
            return cls.integers()
        if spec in ("Q", "QQ"):
            return cls.rationals()
        head, _, tail = spec.partition(":")
        if head in ("Fp", "Zp") and tail.strip().isdigit():
            kind = RingKind.PRIME_FIELD if head == "Fp" else RingKind.P_LOCAL
            return cls(kind, int(tail))
        raise ValueError(f"unknown ring {text!r} (expected Z, Q, Fp:<p> or Zp:<p>)")

    # properties -------------------------------------------------------------
    @property
    def domain(self):
        return _sympy_domain(self.kind, self.p)

    @property
    def is_field(self) -> bool:
        return self.kind in (RingKind.RATIONALS, RingKind.PRIME_FIELD)

    @property
    def characteristic(self) -> int:
        return self.p if self.kind is RingKind.PRIME_FIELD else 0

    @property
    def zero(self):
        return self.domain.zero

    @property
    def one(self):
        return self.domain.one

    def __str__(self) -> str:
        return self.kind.value if self.p is None else f"{self.kind.value}:{self.p}"

    # arithmetic -------------------------------------------------------------
    def convert(self, value: Any):
        """Coerce ``value`` (int, Fraction, "a/b", domain element) into the ring."""
        dom = self.domain
        if isinstance(value, bool):
            raise TypeError("booleans are not ring elements")
        if dom.of_type(value):
            return self.check(value)
        if isinstance(value, int):
            return self.check(dom.convert(value))
        if isinstance(value, str):
            value = Fraction(value.strip())
        if hasattr(value, "numerator") and hasattr(value, "denominator"):
            num, den = int(value.numerator), int(value.denominator)
            return self._from_fraction(num, den)
        return self.check(dom.convert(value))

    def _from_fraction(self, num: int, den: int):
        if den < 0:
            num, den = -num, -den
        g = math.gcd(num, den)
        if g > 1:
            num, den = num // g, den // g
        if self.kind is RingKind.INTEGERS:
            if den != 1:
                raise IntegralityError(f"{num}/{den} is not an integer")
            return ZZ(num)
        if self.kind is RingKind.PRIME_FIELD:
            if den % self.p == 0:
                raise IntegralityError(f"{num}/{den} has no value mod {self.p}")
            dom = self.domain
            return dom.quo(dom.convert(num), dom.convert(den))
        return self.check(QQ(num, den))

    def check(self, value):
        """Re-check the Z_(p) denominator invariant; identity elsewhere."""
        if self.kind is RingKind.P_LOCAL and int(QQ.denom(value)) % self.p == 0:
            raise IntegralityError(f"{value} is not {self.p}-integral")
        return value

    def inverse(self, value):
        if not value:
            raise ZeroDivisionError("zero has no inverse")
        if self.kind is RingKind.INTEGERS:
            if value not in (1, -1):
                raise IntegralityError(f"{value} is not a unit of Z")
            return value
        return self.check(self.domain.quo(self.one, value))

    def to_fraction(self, value) -> Fraction:
        if self.kind is RingKind.PRIME_FIELD:
            return Fraction(int(value))
        if self.kind is RingKind.INTEGERS:
            return Fraction(int(value))
        return Fraction(int(QQ.numer(value)), int(QQ.denom(value)))

    def render(self, value) -> str:
        """Decimal string; rationals as ``p/q``, F_p values in 0..p-1."""
        frac = self.to_fraction(value)
        return str(frac.numerator) if frac.denominator == 1 else f"{frac.numerator}/{frac.denominator}"


# ───────────────────────────── compositions ────────────────────────────────
def validate_composition(parts: Iterable[int]) -> Composition:
    key = tuple(int(a) for a in parts)
    if any(a < 1 for a in key):
        raise ValueError(f"composition parts must be >= 1, got {list(key)}")
    return key


def composition_sort_key(key: Composition) -> Tuple[int, int, Composition]:
    """Canonical order: degree, then length, then lexicographic."""
    return (sum(key), len(key), key)


def _raw_compositions(n: int) -> Iterator[Composition]:
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in _raw_compositions(n - first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def compositions(n: int) -> Tuple[Composition, ...]:
    """All compositions of ``n`` in canonical order."""
    if n < 0:
        raise ValueError("degree must be >= 0")
    return tuple(sorted(_raw_compositions(n), key=composition_sort_key))


def compositions_up_to(n: int) -> Tuple[Composition, ...]:
    return tuple(c for d in range(n + 1) for c in compositions(d))


def render_composition(key: Composition) -> str:
    return "[" + ",".join(str(a) for a in key) + "]"


# ───────────────────────────── number theory ───────────────────────────────
def binomial(n: int, k: int) -> int:
    """Exact C(n, k) with C(n, k) = 0 for k > n."""
    if n < 0 or k < 0:
        raise ValueError("binomial arguments must be >= 0")
    return math.comb(n, k)


def binomial_mod_p(n: int, k: int, p: int) -> int:
    """C(n, k) mod p as a residue in 0..p-1, by Lucas' digit product."""
    if not isprime(p):
        raise ValueError(f"{p} is not a prime")
    if n < 0 or k < 0:
        raise ValueError("binomial arguments must be >= 0")
    result = 1
    while n or k:
        n, n_digit = divmod(n, p)
        k, k_digit = divmod(k, p)
        if k_digit > n_digit:
            return 0
        result = result * math.comb(n_digit, k_digit) % p
    return result


def moebius(n: int) -> int:
    if n < 1:
        raise ValueError("moebius is defined for n >= 1")
    exponents = factorint(n).values()
    if any(e > 1 for e in exponents):
        return 0
    return -1 if len(exponents) % 2 else 1


def poincare_series(counts: Mapping[int, int], N: int) -> List[int]:
    """Coefficients of Π_m (1 - t^m)^(-counts[m]) modulo t^(N+1)."""
    series = [1] + [0] * N
    for m, g in sorted(counts.items()):
        if g == 0 or m > N:
            continue
        factor = [0] * (N + 1)
        for j in range(N // m + 1):
            factor[m * j] = math.comb(g + j - 1, j)
        series = [
            sum(series[i] * factor[d - i] for i in range(d + 1))
            for d in range(N + 1)
        ]
    return series


# ───────────────────────────── sparse elements ─────────────────────────────
class _SparseElement:
    """Shared machinery: a finite map key -> nonzero ring coefficient."""

    __slots__ = ("ring", "_terms")

    def __init__(self, ring: CoefficientRing, terms: Mapping[Any, Any] | Iterable[Tuple[Any, Any]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: Dict[Any, Any] = {}
        zero = ring.zero
        for key, value in items:
            value = ring.convert(value)
            if key in acc:
                value = acc[key] + value
            acc[key] = value
        self.ring = ring
        self._terms = {k: ring.check(v) for k, v in acc.items() if v != zero}

    # key semantics ----------------------------------------------------------
    @staticmethod
    def key_degree(key) -> int:
        raise NotImplementedError

    @staticmethod
    def key_order(key):
        raise NotImplementedError

    # construction helpers ---------------------------------------------------
    @classmethod
    def zero(cls, ring: CoefficientRing):
        return cls(ring)

    @classmethod
    def monomial(cls, ring: CoefficientRing, key, coeff: Any = 1):
        return cls(ring, {key: coeff})

    def _new(self, terms):
        return type(self)(self.ring, terms)

    def _same_ring(self, other: "_SparseElement") -> None:
        if not isinstance(other, _SparseElement):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.ring != self.ring:
            raise RingMismatchError(f"ring mismatch: {self.ring} vs {other.ring}")

    # mapping view -----------------------------------------------------------
    @property
    def terms(self) -> Dict[Any, Any]:
        return dict(self._terms)

    def items(self) -> List[Tuple[Any, Any]]:
        """Terms in canonical key order."""
        return sorted(self._terms.items(), key=lambda kv: self.key_order(kv[0]))

    def keys(self) -> List[Any]:
        return [k for k, _ in self.items()]

    def coefficient(self, key):
        return self._terms.get(key, self.ring.zero)

    def __iter__(self):
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    # module structure -------------------------------------------------------
    def __add__(self, other):
        self._same_ring(other)
        acc = dict(self._terms)
        for k, v in other._terms.items():
            acc[k] = acc[k] + v if k in acc else v
        return self._new(acc)

    def __neg__(self):
        return self._new({k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: Any):
        c = self.ring.convert(c)
        return self._new({k: c * v for k, v in self._terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, type(self)):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.ring, frozenset((k, self.ring.render(v)) for k, v in self._terms.items())))

    # grading ----------------------------------------------------------------
    def homogeneous(self, degree: int):
        return self._new({k: v for k, v in self._terms.items() if self.key_degree(k) == degree})

    def degrees(self) -> List[int]:
        return sorted({self.key_degree(k) for k in self._terms})

    @property
    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def linear_map(self, image: Callable[[Any], Mapping[Any, Any] | "_SparseElement"], target: type | None = None):
        """Extend ``image(key)`` linearly; images are elements or key->int maps."""
        target = target or type(self)
        acc: Dict[Any, Any] = {}
        for key, coeff in self._terms.items():
            img = image(key)
            pairs = img._terms.items() if isinstance(img, _SparseElement) else img.items()
            for k, v in pairs:
                acc[k] = acc.get(k, 0) + coeff * v
        return target(self.ring, acc)

    def __repr__(self) -> str:
        body = ", ".join(f"{k!r}: {self.ring.render(v)}" for k, v in self.items())
        return f"{type(self).__name__}({self.ring}, {{{body}}})"


class AlgebraElement(_SparseElement):
    """Linear combination of compositions; read as QSymm, NSymm or word keys."""

    __slots__ = ()

    @staticmethod
    def key_degree(key: Composition) -> int:
        return sum(key)

    @staticmethod
    def key_order(key: Composition):
        return composition_sort_key(key)

    @classmethod
    def one(cls, ring: CoefficientRing) -> "AlgebraElement":
        return cls(ring, {(): 1})

    @classmethod
    def from_compositions(cls, ring: CoefficientRing, terms: Mapping[Sequence[int], Any]) -> "AlgebraElement":
        return cls(ring, {validate_composition(k): v for k, v in terms.items()})

    def counit(self):
        return self.coefficient(())

    def bilinear(self, other: "AlgebraElement", product: Callable[[Composition, Composition], Mapping[Composition, int]]) -> "AlgebraElement":
        """Extend a key-level product with integer structure constants."""
        self._same_ring(other)
        acc: Dict[Composition, Any] = {}
        for kx, cx in self._terms.items():
            for ky, cy in other._terms.items():
                c = cx * cy
                for k, n in product(kx, ky).items():
                    acc[k] = acc[k] + c * n if k in acc else c * n
        return AlgebraElement(self.ring, acc)


class TensorElement(_SparseElement):
    """Linear combination of tuples of compositions (pairs or triples)."""

    __slots__ = ()

    @staticmethod
    def key_degree(key: TensorKey) -> int:
        return sum(sum(part) for part in key)

    @staticmethod
    def key_order(key: TensorKey):
        return (sum(sum(part) for part in key), tuple(composition_sort_key(part) for part in key))

    @property
    def arity(self) -> int:
        return len(next(iter(self._terms))) if self._terms else 0

    @classmethod
    def tensor(cls, *factors: AlgebraElement) -> "TensorElement":
        """Outer product x1 ⊗ x2 ⊗ ... of algebra elements."""
        ring = factors[0].ring
        for f in factors[1:]:
            factors[0]._same_ring(f)
        acc: Dict[TensorKey, Any] = {(): ring.one}
        for f in factors:
            acc = {k + (kf,): c * cf for k, c in acc.items() for kf, cf in f._terms.items()}
        return cls(ring, acc)

    def bidegree(self, key: TensorKey) -> Tuple[int, ...]:
        return tuple(sum(part) for part in key)

    def factorwise_product(self, other: "TensorElement", product: Callable[[Composition, Composition], Mapping[Composition, int]]) -> "TensorElement":
        """(a⊗b)(c⊗d) = ac ⊗ bd with the same key product in every factor."""
        self._same_ring(other)
        acc: Dict[TensorKey, Any] = {}
        for kx, cx in self._terms.items():
            for ky, cy in other._terms.items():
                partials: Dict[TensorKey, int] = {(): 1}
                for a, b in zip(kx, ky):
                    step = product(a, b)
                    partials = {k + (m,): n * s for k, n in partials.items() for m, s in step.items()}
                c = cx * cy
                for k, n in partials.items():
                    acc[k] = acc[k] + c * n if k in acc else c * n
        return TensorElement(self.ring, acc)

    def apply_factorwise(self, maps: Sequence[Callable[[AlgebraElement], AlgebraElement]]) -> "TensorElement":
        """Apply one linear map per tensor factor."""
        total = TensorElement.zero(self.ring)
        for key, coeff in self._terms.items():
            images = [f(AlgebraElement.monomial(self.ring, part)) for f, part in zip(maps, key)]
            total = total + TensorElement.tensor(*images).scale(coeff)
        return total

    def contract(self, product: Callable[[AlgebraElement, AlgebraElement], AlgebraElement]) -> AlgebraElement:
        """m(x ⊗ y): multiply the two factors of every pair."""
        total = AlgebraElement.zero(self.ring)
        for (a, b), coeff in self._terms.items():
            total = total + product(AlgebraElement.monomial(self.ring, a), AlgebraElement.monomial(self.ring, b)).scale(coeff)
        return total


# ───────────────────────────── exact linear algebra ────────────────────────
def _domain_matrix(rows: Sequence[Sequence[Any]], ncols: int, ring: CoefficientRing) -> DomainMatrix:
    dom = ring.domain
    data = [[ring.convert(v) for v in row] for row in rows]
    return DomainMatrix(data, (len(data), ncols), dom)


def matrix_rank(rows: Sequence[Sequence[Any]], ncols: int, ring: CoefficientRing) -> int:
    """Rank over the fraction field of ``ring`` (Q for Z and Z_(p))."""
    if not rows or ncols == 0:
        return 0
    field = ring if ring.is_field else CoefficientRing.rationals()
    return _domain_matrix(rows, ncols, field).rank()


def nullspace(rows: Sequence[Sequence[Any]], ncols: int, ring: CoefficientRing) -> List[List[Any]]:
    """Basis of {v : M v = 0} for the matrix with the given rows, over a field."""
    if not ring.is_field:
        raise ValueError(f"nullspace needs field coefficients, got {ring}")
    if ncols == 0:
        return []
    if not rows:
        return [[ring.one if i == j else ring.zero for j in range(ncols)] for i in range(ncols)]
    null = _domain_matrix(rows, ncols, ring).nullspace()
    return [list(r) for r in null.to_list() if any(r)]


def integer_invariant_factors(rows: Sequence[Sequence[int]], ncols: int) -> Tuple[int, ...]:
    """Nonzero Smith-normal-form invariant factors over Z (absolute values)."""
    if not rows or ncols == 0:
        return ()
    matrix = _domain_matrix(rows, ncols, CoefficientRing.integers())
    return tuple(abs(int(d)) for d in invariant_factors(matrix) if d)
