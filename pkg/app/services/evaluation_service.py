#!/usr/bin/env python
"""
app/services/evaluation_service.py
────────────────────────────────────────────────────────────────────────
Exact evaluation of parsed expressions.

QSymm and NSymm values are ``AlgebraElement``s, Symm values are sympy
polynomials in c_1..c_N (N = truncation), coproducts are ``TensorElement``s
or tensor-ring polynomials, and scalars are ring elements.

Public API
──────────
    evaluate(parsed, ring=None, trunc=None) -> EvalResult
    evaluate_text(text, ring=None, trunc=None) -> EvalResult
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Dict

from app import config
from app.adapters import json_adapter, text_adapter
from app.algebra import diamond as diamond_mod
from app.algebra import nsymm, qsymm, witt
from app.algebra.core import AlgebraElement, CoefficientRing, RingKind, TensorElement, TruncationError
from app.algebra.steenrod import P, SteenrodContext
from app.services.expression_service import (
    NSYMM,
    QSYMM,
    SCALAR,
    SYMM,
    TENSOR_PREFIX,
    BinOp,
    Bracket,
    Call,
    ExpressionTypeError,
    Gen,
    Int,
    Neg,
    Node,
    ParsedExpression,
    parse,
)

logger = logging.getLogger("qsymm.eval")


@dataclass
class EvalResult:
    algebra: str
    ring: CoefficientRing
    value: Any

    def render(self) -> str:
        return text_adapter.render_value(self.algebra, self.ring, self.value)

    def payload(self) -> Dict[str, Any]:
        return json_adapter.element_payload(self.algebra, self.ring, self.value)


class _Evaluator:
    def __init__(self, ring: CoefficientRing, trunc: int):
        self.ring = ring
        self.trunc = trunc

    @property
    def symm(self):
        return witt.symm_ring(self.trunc, self.ring)

    # ── unit / scalar promotion ──────────────────────────────────────────
    def _unit(self, algebra: str, c):
        if algebra in (QSYMM, NSYMM):
            return AlgebraElement.monomial(self.ring, (), c)
        if algebra == SYMM:
            return self.symm.ground_new(c)
        if algebra == SCALAR:
            return c
        raise ExpressionTypeError(f"no unit to promote a scalar into {algebra}")

    def _promote(self, node: Node, value, algebra: str):
        if node.algebra == SCALAR and algebra != SCALAR:
            return self._unit(algebra, value)
        return value

    # ── products ─────────────────────────────────────────────────────────
    def _product(self, algebra: str, a, b):
        if algebra == SCALAR:
            return a * b
        if algebra == QSYMM:
            return qsymm.overlapping_shuffle(a, b)
        if algebra == NSYMM:
            return nsymm.concat_product(a, b)
        if algebra == SYMM:
            return a * b
        kind = algebra[len(TENSOR_PREFIX):]
        if kind == QSYMM:
            return a.factorwise_product(b, qsymm.shuffle_keys)
        if kind == NSYMM:
            return a.factorwise_product(b, lambda x, y: {x + y: 1})
        return a * b

    def _scale(self, algebra: str, c, x):
        if isinstance(x, (AlgebraElement, TensorElement)):
            return x.scale(c)
        if algebra == SCALAR:
            return c * x
        return x.mul_ground(c)

    # ── node dispatch ────────────────────────────────────────────────────
    def eval(self, node: Node):
        if isinstance(node, Int):
            return self.ring.convert(node.value)
        if isinstance(node, Bracket):
            return qsymm.bracket(node.parts, self.ring)
        if isinstance(node, Gen):
            return self._generator(node)
        if isinstance(node, Neg):
            return -self.eval(node.operand)
        if isinstance(node, BinOp):
            return self._binop(node)
        if isinstance(node, Call):
            return self._call(node)
        raise ExpressionTypeError(f"cannot evaluate {node!r}")

    def _generator(self, node: Gen):
        n = node.index
        if node.letter == "Z":
            return nsymm.z(n, self.ring)
        if node.letter in ("Q", "Q'"):
            return nsymm.newton_Q(n, nsymm.LEFT if node.letter == "Q" else nsymm.RIGHT, self.ring)
        if n > self.trunc:
            raise TruncationError(f"{node.letter}{n} exceeds truncation {self.trunc}")
        R = self.symm
        if node.letter == "c":
            return R.gens[n - 1]
        if node.letter == "v":
            return witt.witt_generator_v(n, R)
        return witt.newton_q(n, R)

    def _binop(self, node: BinOp):
        a, b = self.eval(node.left), self.eval(node.right)
        if node.op == "<>":
            return diamond_mod.diamond(a, b)
        algebra = node.algebra
        if node.op == "*":
            if node.left.algebra == SCALAR and algebra != SCALAR:
                return self._scale(algebra, a, b)
            if node.right.algebra == SCALAR and algebra != SCALAR:
                return self._scale(algebra, b, a)
            return self._product(algebra, a, b)
        a = self._promote(node.left, a, algebra)
        b = self._promote(node.right, b, algebra)
        return a + b if node.op == "+" else a - b

    def _call(self, node: Call):
        if node.name == "steenrod":
            k = node.args[0].value
            if self.ring.kind is not RingKind.PRIME_FIELD:
                raise ExpressionTypeError(f"steenrod needs a ring Fp:<p>, got {self.ring}")
            return P(k, self.eval(node.args[1]), SteenrodContext(self.ring.p))
        args = [self.eval(a) for a in node.args]
        kind = node.args[0].algebra
        if node.name == "pair":
            return qsymm.pairing(args[0], args[1])
        if node.name == "abelianize":
            return diamond_mod.abelianize(args[0], self.trunc)
        if node.name == "antipode":
            if kind == QSYMM:
                return qsymm.qsymm_antipode(args[0])
            if kind == NSYMM:
                return nsymm.antipode(args[0])
            return witt.symm_antipode(args[0])
        if node.name == "coproduct":
            if kind == QSYMM:
                return qsymm.deconcat_coproduct(args[0])
            if kind == NSYMM:
                return nsymm.coproduct(args[0])
            return witt.cartan_coproduct(args[0])
        raise ExpressionTypeError(f"unknown function {node.name}")


def evaluate(parsed: ParsedExpression, ring: CoefficientRing | None = None, trunc: int | None = None) -> EvalResult:
    """Evaluate; an ``@ring`` annotation in the text wins over ``ring``."""
    if parsed.ring:
        ring = CoefficientRing.parse(parsed.ring)
    ring = ring or CoefficientRing.parse(config.DEFAULT_RING)
    trunc = trunc or config.DEFAULT_TRUNC
    value = _Evaluator(ring, trunc).eval(parsed.node)
    logger.debug("evaluated %s over %s", parsed.algebra, ring)
    return EvalResult(parsed.algebra, ring, value)


def evaluate_text(text: str, ring: CoefficientRing | None = None, trunc: int | None = None) -> EvalResult:
    return evaluate(parse(text), ring, trunc)
