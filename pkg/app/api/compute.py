"""
HTTP surface for exact evaluation and the small enumerations.

    POST /eval            {"expression": "[3]*[1,2]", "ring": "Z", "trunc": 8}
    GET  /hh-ranks/{n}
    GET  /lyndon/{n}
"""
from __future__ import annotations

from typing import Optional

from fastapi import APIRouter, HTTPException, Path
from pydantic import BaseModel, Field

from app import config
from app.algebra.core import AlgebraError, CoefficientRing
from app.algebra.lyndon import lyndon_by_degree, render_word
from app.services.evaluation_service import evaluate
from app.services.expression_service import ExpressionSyntaxError, parse, to_text
from app.services.hochschild_service import hh_ranks

router = APIRouter(tags=["compute"])


class EvalRequest(BaseModel):
    expression: str = Field(min_length=1)
    ring: Optional[str] = None
    trunc: Optional[int] = Field(default=None, ge=1)


@router.post("/eval")
async def eval_endpoint(req: EvalRequest):
    trunc = req.trunc or config.DEFAULT_TRUNC
    if trunc > config.API_MAX_TRUNC:
        raise HTTPException(status_code=400, detail=f"trunc is capped at {config.API_MAX_TRUNC}")
    try:
        parsed = parse(req.expression)
        ring = CoefficientRing.parse(req.ring) if req.ring else None
        result = evaluate(parsed, ring, trunc)
    except ExpressionSyntaxError as e:
        raise HTTPException(status_code=400, detail={"error": str(e), "position": e.position})
    except (AlgebraError, ValueError) as e:
        raise HTTPException(status_code=400, detail=str(e))
    payload = result.payload()
    payload["expression"] = to_text(parsed)
    payload["text"] = result.render()
    return payload


@router.get("/hh-ranks/{n}")
async def hh_ranks_endpoint(n: int = Path(..., ge=1, le=12)):
    ranks = hh_ranks(n)
    ranks["by_length"] = {str(m): k for m, k in ranks["by_length"].items()}
    return ranks


@router.get("/lyndon/{n}")
async def lyndon_endpoint(n: int = Path(..., ge=1, le=12)):
    words = lyndon_by_degree(n)
    return {"n": n, "count": len(words), "words": [render_word(w) for w in words]}
