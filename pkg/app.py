"""FastAPI service for checking and expanding blocked factorial plans."""

import logging
import time
from typing import Dict, Any, List, Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from src.algebra.gfvec import parse_subspace
from src.analysis.claims import verify_claims
from src.analysis.linmodel import estimable_pencils
from src.config import configure_logging, get_config
from src.design.catalog import catalog_entry, catalog_names
from src.design.effects import effect_parse, model_from_flag
from src.design.expansion import expand
from src.design.plan import parse_plan, serialize_plan
from src.design.relations import pair_relation
from src.errors import DesignError, UnknownNameError

logger = logging.getLogger(__name__)

# Initialize FastAPI app
app = FastAPI(
    title="Blocked Plan API",
    description="Orthogonality, expansion and estimability checks for blocked s-level plans",
    version="1.0.0"
)


class CheckRequest(BaseModel):
    """Request model for the pairwise relation endpoint."""
    plan: str
    effect_a: str
    effect_b: str


class CheckResponse(BaseModel):
    """Response model for the pairwise relation endpoint."""
    effect_a: str
    effect_b: str
    flags: List[str]
    note: Optional[str] = None
    execution_time: float


class ExpandRequest(BaseModel):
    """Request model for plan expansion."""
    plan: str
    subspace: str


class EstimabilityRequest(BaseModel):
    """Request model for the estimability report."""
    plan: str
    model: Optional[str] = None


@app.on_event("startup")
async def startup_event():
    """Configure logging when the app starts."""
    configure_logging()
    logger.info("Blocked plan API ready with %d catalog plans", len(catalog_names()))


@app.get("/")
async def root():
    """Root endpoint with API information."""
    return {
        "message": "Blocked Plan API",
        "version": "1.0.0",
        "endpoints": {
            "/check": "POST - Relation between two effects on a plan",
            "/expand": "POST - Expand a plan along a subspace",
            "/estimability": "POST - Per-effect estimability under the full model",
            "/catalog/{name}": "GET - Built-in plan text and expansion subspace",
            "/verify": "GET - Evaluate every catalog claim",
            "/health": "GET - Check API health status"
        },
        "catalog": catalog_names()
    }


@app.get("/health")
async def health_check():
    """Health check endpoint."""
    config = get_config()
    return {
        "status": "healthy",
        "default_model": config.default_model,
        "max_expansion_dim": config.max_expansion_dim
    }


@app.get("/catalog/{name}")
async def get_catalog(name: str) -> Dict[str, Any]:
    """Built-in plan in file format, with the subspace it is expanded along."""
    try:
        entry = catalog_entry(name)
    except UnknownNameError as e:
        raise HTTPException(status_code=404, detail=str(e))
    return {
        "name": entry.name,
        "description": entry.description,
        "plan": serialize_plan(entry.plan()),
        "subspace": entry.subspace,
        "claims": [
            {"id": c.claim_id, "anchor": c.anchor, "claimed": c.claimed} for c in entry.claims()
        ]
    }


@app.post("/check", response_model=CheckResponse)
async def check(request: CheckRequest):
    """Relation flags for one pair of effects."""
    start = time.perf_counter()
    try:
        plan = parse_plan(request.plan)
        a = effect_parse(request.effect_a, plan.m, plan.field)
        b = effect_parse(request.effect_b, plan.m, plan.field)
        relation = pair_relation(plan, a, b)
    except (DesignError, ValueError) as e:
        raise HTTPException(status_code=400, detail=str(e))
    return CheckResponse(
        effect_a=relation.a,
        effect_b=relation.b,
        flags=[f.value for f in relation.flags],
        note=relation.note,
        execution_time=time.perf_counter() - start
    )


@app.post("/expand")
async def expand_plan(request: ExpandRequest):
    """Expanded plan in file format."""
    try:
        plan = parse_plan(request.plan)
        V = parse_subspace(request.subspace, plan.field, plan.m)
        expanded = expand(plan, V)
    except DesignError as e:
        raise HTTPException(status_code=400, detail=str(e))
    return {"plan": serialize_plan(expanded), "blocks": expanded.b, "runs": expanded.n}


@app.post("/estimability")
async def estimability(request: EstimabilityRequest):
    """Estimability report for mains or mains+2fi."""
    try:
        plan = parse_plan(request.plan)
        model = model_from_flag(request.model or get_config().default_model, plan.m, plan.field)
    except (DesignError, ValueError) as e:
        raise HTTPException(status_code=400, detail=str(e))
    return estimable_pencils(plan, model).to_dict()


@app.get("/verify")
async def verify():
    """Every catalog claim with its computed value and status."""
    return verify_claims().to_dict()


if __name__ == "__main__":
    import uvicorn
    uvicorn.run(app, host="0.0.0.0", port=8000)
