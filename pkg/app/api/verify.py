from fastapi import APIRouter, HTTPException, Query

from app import config
from app.services.harness_service import DEFAULT_PRIMES, VerificationReport, ditters_verify

router = APIRouter(prefix="/verify", tags=["verify"])


@router.get("/ditters", response_model=VerificationReport)
async def ditters_endpoint(
    max_degree: int = Query(4, ge=1),
    primes: str = Query(",".join(str(p) for p in DEFAULT_PRIMES)),
):
    """
    Runs the polynomial-structure checks for QSymm up to ``max_degree``
    (bounded by DITTERS_MAX_DEGREE); ``primes`` is comma separated.
    """
    try:
        plist = [int(p) for p in primes.split(",") if p.strip()]
        return await ditters_verify(max_degree, plist)
    except ValueError as e:
        raise HTTPException(status_code=400, detail=f"{e} (bound {config.DITTERS_MAX_DEGREE})")
