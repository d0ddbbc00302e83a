#!/usr/bin/env python
"""
app/cli.py
────────────────────────────────────────────────────────────────────────
Command-line entry point (``python -m app``).

    eval "[3]*[1,2]"                      exact evaluation
    lyndon 5 [--alphabet K] [--strict-report]
    basic-products K N [--strict]
    bijection [--kmax 3] [--nmax 5]
    steenrod --p 2 --k 1 "[1]" [--total]
    witt add|mul|sub|neg|ghost|exp "1,2,0" ["0,1,1"]
    witt v N | p-typical N R P | compare-psi | frobenius-report
    qwitt add|mul|neg '{"points": [1, 2]}' ['{"lyndon": {"1": 3}}']
    qwitt witness
    diamond "Z1" "Z1*Z2" | diamond --report right-distributivity
    mxi coaction --p 2 [--abelianized] | mxi solve-w
    ditters-verify [--max-degree 8] [--primes 2,3,5]
    thh-ranks 6

Global flags (before or after the subcommand): --ring, --trunc, --format.
Exit codes: 0 success / PASS, 1 verification FAIL, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Any, Dict, List, Optional, Sequence, Tuple

from app import config
from app.adapters import json_adapter, text_adapter
from app.algebra import diamond as diamond_mod
from app.algebra import lyndon, ncps, witt
from app.algebra.core import AlgebraError, CoefficientRing, render_composition
from app.algebra.steenrod import P, SteenrodContext, total_power
from app.services.evaluation_service import evaluate
from app.services.expression_service import NSYMM, QSYMM, ExpressionSyntaxError, ExpressionTypeError, parse
from app.services.harness_service import VerificationReport, run_ditters_verify
from app.services.hochschild_service import hh_table

logger = logging.getLogger("qsymm.cli")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

Outcome = Tuple[str, Any, int]  # (text, json payload, exit code)


# ───────────────────────────── helpers ─────────────────────────────────────
def _ring(args) -> CoefficientRing:
    return CoefficientRing.parse(args.ring or config.DEFAULT_RING)


def _trunc(args) -> int:
    return args.trunc or config.DEFAULT_TRUNC


def _parse_list(text: str) -> List[str]:
    return [t.strip() for t in text.strip().strip("[]").split(",") if t.strip()]


def _parse_key(text: str) -> Tuple[int, ...]:
    return tuple(int(t) for t in _parse_list(text))


def _report_outcome(report: VerificationReport, table: List[Dict[str, Any]]) -> Outcome:
    text = text_adapter.render_table(table) + f"\n\nverdict: {report.verdict} ({report.wall_time_s}s)"
    return text, report, EXIT_OK if report.passed else EXIT_FAIL


def _typed(text: str, algebra: str, ring: CoefficientRing, trunc: int):
    parsed = parse(text)
    if parsed.algebra != algebra:
        raise ExpressionTypeError(f"expected a {algebra} element, got {parsed.algebra}")
    return evaluate(parsed, ring, trunc)


# ───────────────────────────── commands ────────────────────────────────────
def cmd_eval(args) -> Outcome:
    result = evaluate(parse(args.expression), _ring(args) if args.ring else None, _trunc(args))
    return result.render(), result.payload(), EXIT_OK


def cmd_lyndon(args) -> Outcome:
    if args.strict_report:
        rows = lyndon.strict_rank_report(args.alphabet or 3, args.n)
        return text_adapter.render_table(rows), rows, EXIT_OK
    if args.alphabet:
        words = lyndon.lyndon_by_length(args.alphabet, args.n)
        header = f"Lyndon words of length {args.n} over 1..{args.alphabet}: {len(words)}"
    else:
        words = lyndon.lyndon_by_degree(args.n)
        header = f"Lyndon compositions of {args.n}: {len(words)}"
    rendered = [lyndon.render_word(w) for w in words]
    return "\n".join([header, *rendered]), {"n": args.n, "count": len(words), "words": [list(w) for w in words]}, EXIT_OK


def cmd_basic_products(args) -> Outcome:
    rows = []
    for tree in lyndon.basic_products(args.k, args.n, strict=args.strict):
        rows.append({"serial": tree.serial, "tree": tree.render(), "lyndon": lyndon.render_word(lyndon.basic_to_lyndon(tree))})
    return text_adapter.render_table(rows), rows, EXIT_OK


def cmd_bijection(args) -> Outcome:
    rows = []
    for k in range(1, args.kmax + 1):
        for n in range(1, args.nmax + 1):
            images = [lyndon.basic_to_lyndon(t) for t in lyndon.basic_products(k, n)]
            rows.append({
                "k": k,
                "n": n,
                "necklace": lyndon.necklace_count(k, n),
                "basic": len(images),
                "all_lyndon": all(lyndon.is_lyndon(w) for w in images),
                "injective": len(set(images)) == len(images),
                "onto": set(images) == set(lyndon.lyndon_by_length(k, n)),
            })
    ok = all(r["necklace"] == r["basic"] and r["all_lyndon"] and r["injective"] and r["onto"] for r in rows)
    text = text_adapter.render_table(rows) + f"\n\nverdict: {'PASS' if ok else 'FAIL'}"
    return text, {"verdict": "PASS" if ok else "FAIL", "rows": rows}, EXIT_OK if ok else EXIT_FAIL


def cmd_steenrod(args) -> Outcome:
    ctx = SteenrodContext(args.p)
    x = _typed(args.element, QSYMM, ctx.ring, _trunc(args)).value
    y = total_power(x, ctx) if args.total else P(args.k, x, ctx)
    name = "total power" if args.total else ctx.name(args.k)
    text = f"{name}({text_adapter.render_algebra(x, QSYMM)}) = {text_adapter.render_algebra(y, QSYMM)}"
    return text, json_adapter.element_payload(QSYMM, ctx.ring, y), EXIT_OK


def _witt_vector(text: str, ring: CoefficientRing, trunc: Optional[int]) -> witt.WittVector:
    values = _parse_list(text)
    if trunc:
        if len(values) > trunc:
            raise AlgebraError(f"vector has {len(values)} coordinates, truncation is {trunc}")
        values += ["0"] * (trunc - len(values))
    return witt.WittVector.from_values(values, ring)


def cmd_witt(args) -> Outcome:
    ring = _ring(args)
    op, rest = args.op, args.args
    if op in ("add", "mul", "sub"):
        if len(rest) != 2:
            raise ValueError(f"witt {op} takes two vectors")
        a, b = (_witt_vector(v, ring, args.trunc) for v in rest)
        out = {"add": witt.witt_add, "mul": witt.witt_mul, "sub": witt.witt_sub}[op](a, b)
        rendered = out.render()
        return ", ".join(rendered), {"op": op, "ring": str(ring), "coords": rendered}, EXIT_OK
    if op in ("neg", "ghost", "exp"):
        if len(rest) != 1:
            raise ValueError(f"witt {op} takes one vector")
        a = _witt_vector(rest[0], ring, args.trunc)
        if op == "neg":
            rendered = witt.witt_neg(a).render()
        elif op == "ghost":
            rendered = [ring.render(g) for g in witt.ghost(a)]
        else:
            rendered = [ring.render(c) for c in witt.exponential(a).coeffs]
        return ", ".join(rendered), {"op": op, "ring": str(ring), "coords": rendered}, EXIT_OK
    if op == "v":
        if len(rest) != 1:
            raise ValueError("witt v takes the index n")
        n = int(rest[0])
        v = witt.witt_generator_v(n, witt.symm_ring(n, ring))
        return f"v{n} = {text_adapter.render_poly(v, ring)}", json_adapter.element_payload("symm", ring, v), EXIT_OK
    if op == "p-typical":
        if len(rest) != 3:
            raise ValueError("witt p-typical takes n, r and p")
        n, r, p = (int(t) for t in rest)
        v = witt.p_typical_v(n, r, p)
        zp = CoefficientRing.p_local(p)
        return f"v{n},{r} = {text_adapter.render_poly(v, zp)}", json_adapter.element_payload("symm", zp, v), EXIT_OK
    if op == "compare-psi":
        rows = witt.compare_psi_report(_trunc(args))
        return text_adapter.render_table(rows), rows, EXIT_OK
    if op == "frobenius-report":
        rows = witt.frobenius_report(_trunc(args), ring)
        return text_adapter.render_table(rows), rows, EXIT_OK
    raise ValueError(f"unknown witt operation {op!r}")


def _functional(spec: str, trunc: int, ring: CoefficientRing) -> diamond_mod.QuasiWittVector:
    """JSON: {"points": [...]}, {"lyndon": {"1,2": v}} or {"values": {"1,2": v}}."""
    data = json.loads(spec)
    if not isinstance(data, dict) or len(data) != 1:
        raise ValueError("functional spec must be a JSON object with one of points, lyndon, values")
    (kind, body), = data.items()
    if kind == "points":
        return diamond_mod.QuasiWittVector.from_points([str(x) for x in body], trunc, ring)
    table = {_parse_key(k): str(v) for k, v in body.items()}
    if kind == "lyndon":
        return diamond_mod.QuasiWittVector.from_lyndon_values(table, trunc, ring)
    if kind == "values":
        return diamond_mod.QuasiWittVector.from_values(table, trunc, ring)
    raise ValueError(f"unknown functional kind {kind!r}")


def cmd_qwitt(args) -> Outcome:
    ring, trunc = _ring(args), _trunc(args)
    if args.op == "witness":
        found = diamond_mod.find_nonassociativity_witness(trunc, ring)
        if found is None:
            return "no witness found", None, EXIT_OK
        return json_adapter.dumps(found), found, EXIT_OK
    specs = [_functional(s, trunc, ring) for s in args.specs]
    arity = 1 if args.op == "neg" else 2
    if len(specs) != arity:
        raise ValueError(f"qwitt {args.op} takes {arity} functional spec(s)")
    if args.op == "neg":
        out = diamond_mod.quasi_witt_neg(specs[0])
    elif args.op == "add":
        out = diamond_mod.quasi_witt_add(*specs)
    else:
        out = diamond_mod.quasi_witt_mul(*specs)
    rows = [{"composition": render_composition(k), "value": ring.render(v)} for k, v in out.as_dict().items() if k]
    return text_adapter.render_table(rows), {"op": args.op, "ring": str(ring), "trunc": trunc, "values": rows}, EXIT_OK


def cmd_diamond(args) -> Outcome:
    trunc = _trunc(args)
    if args.report == "right-distributivity":
        report = diamond_mod.right_distributivity_report(min(trunc, 4))
        text = f"right distributivity through degree {report['trunc']}: {report['holds']} of {report['checked']} cases hold"
        return text, report, EXIT_OK
    if len(args.elements) != 2:
        raise ValueError("diamond takes two nsymm elements")
    ring = _ring(args)
    x, y = (_typed(e, NSYMM, ring, trunc).value for e in args.elements)
    out = diamond_mod.diamond(x, y)
    return text_adapter.render_algebra(out, NSYMM), json_adapter.element_payload(NSYMM, ring, out), EXIT_OK


def cmd_mxi(args) -> Outcome:
    N = _trunc(args)
    if args.action == "solve-w":
        ws = ncps.solve_w(N, CoefficientRing.integers())
        rows = [{"n": n, "w": text_adapter.render_mxi(w)} for n, w in enumerate(ws, start=1)]
        return text_adapter.render_table(rows), rows, EXIT_OK
    model = ncps.DualSteenrodModel.for_truncation(args.p, N)
    report = ncps.verify_coaction_w(N, model)
    details = [
        {"n": n, "psi_w": text_adapter.render_mxi(x), "homogeneous": h}
        for n, (x, h) in enumerate(zip(report.psi_w, report.homogeneous))
    ]
    checks = {
        "closed_form": report.multiplicative_matches_closed_form,
        "tilde": report.tilde_matches,
        "homogeneous": all(report.homogeneous),
    }
    if args.abelianized:
        checks["abelianized"] = all(row["holds"] for row in report.abelianized)
        details += [{"abelianized": row} for row in report.abelianized]
    verification = VerificationReport(
        check="mxi-coaction",
        parameters={"p": args.p, "trunc": N, "K": report.K, **checks},
        verdict="PASS" if report.ok else "FAIL",
        details=details,
        counterexample=None if report.ok else checks,
    )
    table = [{"n": d["n"], "psi_w": d["psi_w"]} for d in details if "n" in d]
    text, _, code = _report_outcome(verification, table)
    return text, verification, code


def cmd_ditters(args) -> Outcome:
    primes = [int(p) for p in _parse_list(args.primes)]
    report = run_ditters_verify(args.max_degree, primes, progress=args.format == "text")
    return _report_outcome(report, report.details)


def cmd_thh(args) -> Outcome:
    rows = hh_table(args.n, with_oracle=not args.no_oracle)
    ok = all(r.get("agrees", True) for r in rows)
    return text_adapter.render_table(rows), rows, EXIT_OK if ok else EXIT_FAIL


# ───────────────────────────── parser ──────────────────────────────────────
def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    default = argparse.SUPPRESS if suppress else None
    common.add_argument("--ring", default=default, help="Z | Q | Fp:<p> | Zp:<p>")
    common.add_argument("--trunc", type=int, default=default, help="truncation / degree bound")
    common.add_argument("--format", choices=["text", "json"], default=argparse.SUPPRESS if suppress else "text")
    return common


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qsymm", description="Exact computations in QSymm, NSymm and friends.",
                                 parents=[_global_flags(False)])
    sub = ap.add_subparsers(dest="command", required=True)
    common = _global_flags(True)

    def add(name: str, fn, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=fn)
        return p

    p = add("eval", cmd_eval, "evaluate an expression")
    p.add_argument("expression")

    p = add("lyndon", cmd_lyndon, "list Lyndon words")
    p.add_argument("n", type=int)
    p.add_argument("--alphabet", type=int, default=None)
    p.add_argument("--strict-report", action="store_true")

    p = add("basic-products", cmd_basic_products, "list basic products and their Lyndon images")
    p.add_argument("k", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--strict", action="store_true")

    p = add("bijection", cmd_bijection, "check basic products against Lyndon words")
    p.add_argument("--kmax", type=int, default=3)
    p.add_argument("--nmax", type=int, default=5)

    p = add("steenrod", cmd_steenrod, "apply P^k to a qsymm element")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--total", action="store_true")
    p.add_argument("element")

    p = add("witt", cmd_witt, "Witt vector arithmetic and the Witt Hopf algebra")
    p.add_argument("op", choices=["add", "mul", "sub", "neg", "ghost", "exp", "v", "p-typical",
                                  "compare-psi", "frobenius-report"])
    p.add_argument("args", nargs="*")

    p = add("qwitt", cmd_qwitt, "quasi-Witt vector arithmetic")
    p.add_argument("op", choices=["add", "mul", "neg", "witness"])
    p.add_argument("specs", nargs="*")

    p = add("diamond", cmd_diamond, "diamond product of two nsymm elements")
    p.add_argument("elements", nargs="*")
    p.add_argument("--report", choices=["right-distributivity"], default=None)

    p = add("mxi", cmd_mxi, "coaction of the dual Steenrod model on NSymm")
    p.add_argument("action", choices=["coaction", "solve-w"])
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--abelianized", action="store_true")

    p = add("ditters-verify", cmd_ditters, "polynomial-structure checks for QSymm")
    p.add_argument("--max-degree", type=int, default=None)
    p.add_argument("--primes", default="2,3,5")

    p = add("thh-ranks", cmd_thh, "Hochschild homology ranks of NSymm")
    p.add_argument("n", type=int)
    p.add_argument("--no-oracle", action="store_true")
    return ap


def _emit(args, text: str, payload: Any) -> None:
    if args.format == "json":
        print(json_adapter.dumps(payload))
    else:
        print(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    config.configure_logging()
    args = build_parser().parse_args(argv)
    try:
        text, payload, code = args.func(args)
    except ExpressionSyntaxError as e:
        print(f"error: {e}\n{e.caret()}", file=sys.stderr)
        return EXIT_USAGE
    except (AlgebraError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    _emit(args, text, payload)
    return code
