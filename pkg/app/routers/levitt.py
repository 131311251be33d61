from __future__ import annotations

from typing import Any, Dict, Optional

from fastapi import APIRouter, HTTPException
from pydantic import BaseModel, Field

from app.services.torus_bundle import PRESETS, analyze_monodromy
from app.services.zn_order import levitt_check
from app.utils.grammar import parse_matrix

router = APIRouter(tags=["lattice"])


class LevittRequest(BaseModel):
    matrix: str = Field(..., min_length=3, examples=["2,1;1,1"])


class LevittOut(BaseModel):
    verdict: str
    trace: int
    det: int
    discriminant: int
    classification: str
    order: Optional[str] = None
    period: Optional[int] = None


@router.post("/levitt", response_model=LevittOut)
def levitt(payload: LevittRequest):
    return levitt_check(parse_matrix(payload.matrix)).to_dict()


@router.get("/monodromy/{preset}")
def monodromy(preset: str) -> Dict[str, Any]:
    if preset not in PRESETS:
        raise HTTPException(status_code=404, detail=f"Unknown preset; choose from {sorted(PRESETS)}")
    spec = PRESETS[preset]()
    report = analyze_monodromy(spec)
    return {"name": spec.name, "matrix": str(spec.matrix), "note": spec.note, **report.to_dict()}
