#!/usr/bin/env python
"""
app/services/hochschild_service.py
────────────────────────────────────────────────────────────────────────
Ranks of Hochschild homology of NSymm = T(Z_1, Z_2, ...) in internal
degree 2n.  For a tensor algebra HH_0 is the cyclic coinvariants and HH_1
the cyclic invariants of each tensor power; both are free with one
generator per rotation orbit, so the rank is the number of compositions
of n up to rotation.

Public API
──────────
    rotation_orbits(n) -> list of orbits (each a sorted tuple of compositions)
    hh_ranks(n) -> dict (hh0, hh1, orbits, by_length)
    hh_oracle(n) -> dict (hh0, hh1, torsion) by linear algebra on 1 - τ
    hh_table(nmax) -> rows for the CLI / API
"""
from __future__ import annotations

import logging
from collections import Counter
from functools import lru_cache
from typing import Any, Dict, List, Tuple

from app.algebra.core import CoefficientRing, Composition, compositions, integer_invariant_factors, matrix_rank

logger = logging.getLogger("qsymm.hochschild")


def _rotate(c: Composition) -> Composition:
    return c[-1:] + c[:-1]


@lru_cache(maxsize=None)
def rotation_orbits(n: int) -> Tuple[Tuple[Composition, ...], ...]:
    if n < 1:
        raise ValueError("n must be >= 1")
    seen = set()
    orbits = []
    for c in compositions(n):
        if c in seen:
            continue
        orbit = {c}
        r = _rotate(c)
        while r != c:
            orbit.add(r)
            r = _rotate(r)
        seen |= orbit
        orbits.append(tuple(sorted(orbit)))
    return tuple(orbits)


def hh_ranks(n: int) -> Dict[str, Any]:
    orbits = rotation_orbits(n)
    by_length = Counter(len(o[0]) for o in orbits)
    return {
        "n": n,
        "hh0": len(orbits),
        "hh1": len(orbits),
        "by_length": {m: by_length[m] for m in sorted(by_length)},
    }


def hh_oracle(n: int) -> Dict[str, Any]:
    """Coinvariants = coker(1 - τ), invariants = ker(1 - τ), length by length."""
    hh0 = hh1 = 0
    torsion: List[int] = []
    by_length: Dict[int, List[Composition]] = {}
    for c in compositions(n):
        by_length.setdefault(len(c), []).append(c)
    for m, words in sorted(by_length.items()):
        index = {w: i for i, w in enumerate(words)}
        rows = []
        for w in words:
            row = [0] * len(words)
            row[index[w]] += 1
            row[index[_rotate(w)]] -= 1
            rows.append(row)
        rank = matrix_rank(rows, len(words), CoefficientRing.integers())
        hh0 += len(words) - rank
        hh1 += len(words) - rank
        torsion += [f for f in integer_invariant_factors(rows, len(words)) if f > 1]
        logger.debug("n=%d length=%d: %d words, rank(1 - tau) = %d", n, m, len(words), rank)
    return {"n": n, "hh0": hh0, "hh1": hh1, "torsion": torsion}


def hh_table(nmax: int, with_oracle: bool = True) -> List[Dict[str, Any]]:
    rows = []
    for n in range(1, nmax + 1):
        ranks = hh_ranks(n)
        row = {"n": n, "hh0": ranks["hh0"], "hh1": ranks["hh1"]}
        if with_oracle:
            oracle = hh_oracle(n)
            row["oracle_hh0"] = oracle["hh0"]
            row["oracle_hh1"] = oracle["hh1"]
            row["agrees"] = (oracle["hh0"], oracle["hh1"]) == (ranks["hh0"], ranks["hh1"]) and not oracle["torsion"]
        row["by_length"] = " ".join(f"{m}:{k}" for m, k in ranks["by_length"].items())
        rows.append(row)
    return rows
