#!/usr/bin/env python
"""
app/algebra/lyndon.py
────────────────────────────────────────────────────────────────────────
Lyndon words, Whitehead basic products and the tree-flattening bijection.

Words are tuples of positive integers compared lexicographically with a
proper prefix smaller than the longer word (Python tuple order).

Basic products are built stratum by stratum.  Letters get serials 1..k;
products get serials in generation order (length first).  A pair w1w2 is
admissible when w2 precedes w1 and rank(w1) <= serial(w2); passing
``strict=True`` uses rank(w1) < serial(w2) instead.

Public API
──────────
    is_lyndon(w), lyndon_factorization(w)
    lyndon_by_length(k, n), lyndon_brute_force(k, n), necklace_count(k, n)
    lyndon_by_degree(n)
    BasicProductTree, basic_products(k, n, strict=False), basic_to_lyndon(t)
    strict_rank_report(kmax, nmax)
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product as cartesian
from typing import Dict, List, Optional, Tuple

from app.algebra.core import BasicProductError, compositions, divisors, moebius

Word = Tuple[int, ...]


# ───────────────────────────── Lyndon words ────────────────────────────────
def is_lyndon(w: Word) -> bool:
    """True iff ``w`` is strictly smaller than each of its proper right factors."""
    w = tuple(w)
    if not w:
        raise ValueError("the empty word is not a Lyndon candidate")
    return all(w < w[i:] for i in range(1, len(w)))


def lyndon_factorization(w: Word) -> List[Word]:
    """Chen–Fox–Lyndon factorization w = l1 l2 ... lk with l1 >= ... >= lk (Duval)."""
    w = tuple(w)
    factors: List[Word] = []
    i, n = 0, len(w)
    while i < n:
        j, k = i + 1, i
        while j < n and w[k] <= w[j]:
            k = i if w[k] < w[j] else k + 1
            j += 1
        while i <= k:
            factors.append(w[i:i + j - k])
            i += j - k
    return factors


def necklace_count(k: int, n: int) -> int:
    """(1/n) Σ_{d|n} μ(d) k^(n/d)."""
    return sum(moebius(d) * k ** (n // d) for d in divisors(n)) // n


@lru_cache(maxsize=None)
def lyndon_by_length(k: int, n: int) -> Tuple[Word, ...]:
    """Lyndon words of length n over {1..k}, sorted, by Duval's generation algorithm."""
    if k < 1 or n < 1:
        raise ValueError("alphabet size and length must be >= 1")
    found: List[Word] = []
    w = [-1]
    while w:
        w[-1] += 1
        m = len(w)
        if m == n:
            found.append(tuple(a + 1 for a in w))
        while len(w) < n:
            w.append(w[len(w) - m])
        while w and w[-1] == k - 1:
            w.pop()
    return tuple(found)


def lyndon_brute_force(k: int, n: int) -> Tuple[Word, ...]:
    return tuple(w for w in cartesian(range(1, k + 1), repeat=n) if is_lyndon(w))


@lru_cache(maxsize=None)
def lyndon_by_degree(n: int) -> Tuple[Word, ...]:
    """Lyndon words over the positive integers with letter sum n."""
    if n < 1:
        raise ValueError("degree must be >= 1")
    return tuple(c for c in compositions(n) if is_lyndon(c))


def render_word(w: Word) -> str:
    if all(a <= 9 for a in w):
        return "".join(str(a) for a in w)
    return ",".join(str(a) for a in w)


# ───────────────────────────── basic products ──────────────────────────────
@dataclass(frozen=True)
class BasicProductTree:
    serial: int
    rank: int
    length: int
    letter: Optional[int] = None
    left: Optional["BasicProductTree"] = None
    right: Optional["BasicProductTree"] = None

    @property
    def is_leaf(self) -> bool:
        return self.letter is not None

    @classmethod
    def leaf(cls, letter: int) -> "BasicProductTree":
        return cls(serial=letter, rank=0, length=1, letter=letter)

    @classmethod
    def combine(cls, w1: "BasicProductTree", w2: "BasicProductTree", serial: int, strict: bool = False) -> "BasicProductTree":
        if not w2.serial < w1.serial:
            raise BasicProductError(f"{w2.render()} does not precede {w1.render()}")
        ok = w1.rank < w2.serial if strict else w1.rank <= w2.serial
        if not ok:
            raise BasicProductError(f"rank({w1.render()})={w1.rank} too large for serial {w2.serial}")
        return cls(serial=serial, rank=w2.serial, length=w1.length + w2.length, left=w1, right=w2)

    def render(self) -> str:
        if self.is_leaf:
            return str(self.letter)
        return f"({self.left.render()}·{self.right.render()})"

    def to_nested(self):
        return self.letter if self.is_leaf else [self.left.to_nested(), self.right.to_nested()]


def _admissible(w1: BasicProductTree, w2: BasicProductTree, strict: bool) -> bool:
    if not w2.serial < w1.serial:
        return False
    return w1.rank < w2.serial if strict else w1.rank <= w2.serial


@lru_cache(maxsize=None)
def _strata(k: int, n: int, strict: bool) -> Tuple[Tuple[BasicProductTree, ...], ...]:
    if n == 1:
        return ((), tuple(BasicProductTree.leaf(a) for a in range(1, k + 1)))
    shorter = _strata(k, n - 1, strict)
    in_serial_order = [t for stratum in shorter for t in stratum]
    serial = in_serial_order[-1].serial if in_serial_order else k
    new: List[BasicProductTree] = []
    for w1 in in_serial_order:
        if w1.length >= n:
            continue
        for w2 in shorter[n - w1.length]:
            if _admissible(w1, w2, strict):
                serial += 1
                new.append(BasicProductTree.combine(w1, w2, serial, strict))
    return shorter + (tuple(new),)


def basic_products(k: int, n: int, strict: bool = False) -> Tuple[BasicProductTree, ...]:
    """Basic products of length n over {1..k}, in serial (generation) order."""
    if k < 1 or n < 1:
        raise ValueError("alphabet size and length must be >= 1")
    return _strata(k, n, strict)[n]


def basic_to_lyndon(tree: BasicProductTree) -> Word:
    """Flatten bottom-up: each node concatenates its two labels, smaller first."""
    if tree.is_leaf:
        return (tree.letter,)
    left, right = basic_to_lyndon(tree.left), basic_to_lyndon(tree.right)
    if left == right:
        raise BasicProductError(f"equal labels {render_word(left)} at node {tree.render()}")
    return min(left, right) + max(left, right)


def strict_rank_report(kmax: int, nmax: int) -> List[Dict[str, int]]:
    """Counts of the <= and strict < admissibility variants next to the necklace count."""
    rows = []
    for k in range(1, kmax + 1):
        for n in range(1, nmax + 1):
            rows.append({
                "k": k,
                "n": n,
                "necklace": necklace_count(k, n),
                "leq": len(basic_products(k, n)),
                "strict": len(basic_products(k, n, strict=True)),
            })
    return rows
