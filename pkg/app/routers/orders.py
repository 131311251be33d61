from __future__ import annotations

from functools import cmp_to_key
from typing import Any, Dict, List, Optional

from fastapi import APIRouter
from pydantic import BaseModel, Field, field_validator

from app.core.config import settings
from app.services.contexts import GroupContext, build_context
from app.services.fuzz import ALL_LAWS, Law, run_fuzz
from app.utils.grammar import parse_matrix

router = APIRouter(prefix="/orders", tags=["orders"])


class GroupRequest(BaseModel):
    group: str = Field(..., min_length=1, examples=["surf3p2"])
    matrix: Optional[str] = Field(None, examples=["2,1;1,1"])
    monodromy: Optional[List[str]] = None  # phi(a), phi(b), phi^-1(a), phi^-1(b)

    @field_validator("monodromy")
    @classmethod
    def four_words(cls, v):  # type: ignore[override]
        if v is not None and len(v) != 4:
            raise ValueError("monodromy needs exactly four words")
        return v

    def context(self) -> GroupContext:
        matrix = parse_matrix(self.matrix) if self.matrix else None
        return build_context(self.group, matrix=matrix, monodromy=self.monodromy)


class CompareRequest(GroupRequest):
    left: str
    right: str


class CompareOut(BaseModel):
    verdict: str
    stage: str
    details: Dict[str, Any]


class SortRequest(GroupRequest):
    elements: List[str]


class SortOut(BaseModel):
    elements: List[str]


class FuzzRequest(GroupRequest):
    samples: int = Field(settings.FUZZ_SAMPLES, ge=1, le=10_000)
    seed: int = settings.FUZZ_SEED
    laws: List[Law] = Field(default_factory=lambda: list(ALL_LAWS))


@router.post("/compare", response_model=CompareOut)
def compare(payload: CompareRequest):
    ctx = payload.context()
    u, v = ctx.parse(payload.left), ctx.parse(payload.right)
    decision = ctx.explain(u, v)
    return {"verdict": ctx.compare(u, v).name, "stage": decision.stage, "details": decision.details}


@router.post("/sort", response_model=SortOut)
def sort_elements(payload: SortRequest):
    ctx = payload.context()
    parsed = [(text, ctx.parse(text, line=number)) for number, text in enumerate(payload.elements, start=1)]
    parsed.sort(key=cmp_to_key(lambda p, q: int(ctx.compare(p[1], q[1]))))
    return {"elements": [text for text, _ in parsed]}


@router.post("/fuzz")
def fuzz(payload: FuzzRequest) -> Dict[str, Any]:
    ctx = payload.context()
    return run_fuzz(ctx, payload.laws, samples=payload.samples, seed=payload.seed).to_dict()
