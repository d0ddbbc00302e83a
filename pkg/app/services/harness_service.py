#!/usr/bin/env python
"""
app/services/harness_service.py
────────────────────────────────────────────────────────────────────────
Verification harness for the polynomial structure of QSymm.

For every degree n ≤ N the harness computes π_p(n), the dimension of the
degree-n indecomposables over F_p (p = 0 meaning Q), and checks

  • π_p(n) is the same for every characteristic requested,
  • it equals the number of Lyndon words of degree n,
  • Π_m (1 - t^m)^(-π(m)) ≡ Σ 2^(n-1) t^n  (mod t^(N+1)),
  • the Z-span of decomposables is a direct summand (every Smith invariant
    factor is 1) for n ≤ DITTERS_SNF_MAX_DEGREE.

Each (degree, characteristic) rank and each SNF is an independent pure
task.  With HARNESS_WORKERS = 1 they run on the default thread executor,
otherwise on a process pool; results are merged by key, so the report is
identical across runs apart from ``wall_time_s``.

Public API
──────────
    VerificationReport                      (pydantic model)
    async ditters_verify(max_degree, primes, progress=False) -> VerificationReport
    run_ditters_verify(...)                 (blocking wrapper for the CLI)
"""
from __future__ import annotations

import asyncio
import logging
import time
from concurrent.futures import Executor, ProcessPoolExecutor
from typing import Any, Dict, List, Literal, Optional, Sequence, Tuple

from pydantic import BaseModel, Field
from sympy import isprime
from tqdm import tqdm

from app import config
from app.algebra.core import CoefficientRing, compositions, integer_invariant_factors, poincare_series
from app.algebra.lyndon import lyndon_by_degree
from app.algebra.qsymm import decomposable_rows, indecomposables_dimension

logger = logging.getLogger("qsymm.harness")

DEFAULT_PRIMES: Tuple[int, ...] = (2, 3, 5)


class VerificationReport(BaseModel):
    schema_version: str = Field(default_factory=lambda: config.REPORT_SCHEMA_VERSION)
    check: str
    parameters: Dict[str, Any]
    verdict: Literal["PASS", "FAIL"]
    details: List[Dict[str, Any]] = Field(default_factory=list)
    counterexample: Optional[Dict[str, Any]] = None
    wall_time_s: float = 0.0

    @property
    def passed(self) -> bool:
        return self.verdict == "PASS"


# ───────────────────────────── tasks (picklable) ───────────────────────────
def _ring_for(p: int) -> CoefficientRing:
    return CoefficientRing.rationals() if p == 0 else CoefficientRing.prime_field(p)


def rank_task(n: int, p: int) -> Tuple[str, int, int, int]:
    pi = indecomposables_dimension(n, _ring_for(p))
    logger.debug("pi_%d(%d) = %d", p, n, pi)
    return ("rank", n, p, pi)


def snf_task(n: int) -> Tuple[str, int, int, Tuple[int, ...]]:
    factors = integer_invariant_factors(decomposable_rows(n), len(compositions(n)))
    return ("snf", n, 0, tuple(f for f in factors if f > 1))


def _run(job: Tuple) -> Tuple:
    kind, n, p = job
    return rank_task(n, p) if kind == "rank" else snf_task(n)


# ───────────────────────────── orchestration ───────────────────────────────
def _validate(max_degree: int, primes: Sequence[int]) -> None:
    if max_degree < 1:
        raise ValueError("max_degree must be >= 1")
    if max_degree > config.DITTERS_MAX_DEGREE:
        raise ValueError(
            f"max_degree {max_degree} exceeds the configured bound "
            f"DITTERS_MAX_DEGREE={config.DITTERS_MAX_DEGREE}"
        )
    for p in primes:
        if not isprime(p):
            raise ValueError(f"{p} is not a prime")


async def _gather(jobs: List[Tuple], executor: Optional[Executor], progress: bool) -> Dict[Tuple, Any]:
    loop = asyncio.get_running_loop()
    futures = [loop.run_in_executor(executor, _run, job) for job in jobs]
    results: Dict[Tuple, Any] = {}
    with tqdm(total=len(futures), desc="ditters-verify", unit="task", disable=not progress) as bar:
        for fut in asyncio.as_completed(futures):
            kind, n, p, value = await fut
            results[(kind, n, p)] = value
            if kind == "rank":
                logger.info("degree %d, characteristic %d: pi = %d", n, p, value)
            bar.update(1)
    return results


def _degree_rows(N: int, primes: Sequence[int], snf_max: int, results: Dict[Tuple, Any]) -> List[Dict[str, Any]]:
    pi0 = {n: results[("rank", n, 0)] for n in range(1, N + 1)}
    series = poincare_series(pi0, N)
    rows: List[Dict[str, Any]] = []
    for n in range(1, N + 1):
        row: Dict[str, Any] = {"n": n, "compositions": 2 ** (n - 1), "lyndon": len(lyndon_by_degree(n))}
        for p in (0, *primes):
            row[f"pi_{p}"] = results[("rank", n, p)]
        row["poincare"] = series[n]
        torsion = results.get(("snf", n, 0))
        row["torsion"] = "skipped" if n > snf_max else list(torsion)
        row["ok"] = (
            all(row[f"pi_{p}"] == row["lyndon"] for p in (0, *primes))
            and series[n] == row["compositions"]
            and (n > snf_max or not torsion)
        )
        rows.append(row)
    return rows


async def ditters_verify(
    max_degree: Optional[int] = None,
    primes: Sequence[int] = DEFAULT_PRIMES,
    progress: bool = False,
) -> VerificationReport:
    """π_p(n) for n ≤ max_degree and p ∈ {0} ∪ primes, with the four checks."""
    N = max_degree or config.DITTERS_MAX_DEGREE
    primes = tuple(sorted(set(primes)))
    _validate(N, primes)
    snf_max = min(N, config.DITTERS_SNF_MAX_DEGREE)

    jobs = [("rank", n, p) for n in range(1, N + 1) for p in (0, *primes)]
    jobs += [("snf", n, 0) for n in range(1, snf_max + 1)]

    started = time.perf_counter()
    if config.HARNESS_WORKERS > 1:
        with ProcessPoolExecutor(max_workers=config.HARNESS_WORKERS) as pool:
            results = await _gather(jobs, pool, progress)
    else:
        results = await _gather(jobs, None, progress)
    rows = _degree_rows(N, primes, snf_max, results)
    elapsed = time.perf_counter() - started

    failed = next((r for r in rows if not r["ok"]), None)
    report = VerificationReport(
        check="ditters",
        parameters={"max_degree": N, "primes": list(primes), "snf_max_degree": snf_max},
        verdict="FAIL" if failed else "PASS",
        details=rows,
        counterexample=failed,
        wall_time_s=round(elapsed, 3),
    )
    logger.info("ditters-verify N=%d primes=%s: %s in %.2fs", N, list(primes), report.verdict, elapsed)
    return report


def run_ditters_verify(max_degree: Optional[int] = None, primes: Sequence[int] = DEFAULT_PRIMES,
                       progress: bool = False) -> VerificationReport:
    return asyncio.run(ditters_verify(max_degree, primes, progress))
