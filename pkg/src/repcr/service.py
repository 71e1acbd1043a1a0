"""HTTP service over the core; the payload functions double as the in-process API."""

from __future__ import annotations

from typing import Literal

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import crtools, suites
from .charbox import weyl_character
from .jantzen import UndeterminedError, weyl_comp_factors
from .rootsys import RootDatum, format_weight, is_dominant, parse_type, parse_weight
from .steinberg import steinberg_simple_char


class CharRequest(BaseModel):
    type: str = Field(..., examples=["G2"])
    weight: str = Field(..., examples=["1,0", "ω1+2ω3"])
    mode: Literal["weyl", "simple"] = "weyl"
    p: int | None = Field(None, ge=2)


class CharResponse(BaseModel):
    type: str
    weight: str
    mode: str
    p: int | None
    dim: int
    dominant: list[tuple[str, int]]


class CRRequest(BaseModel):
    type: str = Field(..., examples=["A9"])
    p: int = Field(..., ge=2)
    lam: str = Field(..., alias="lambda", examples=["ω2"])
    mu: str = Field(..., examples=["ω9"])
    oracle: bool = False
    dim_cap: int = Field(400, ge=1)
    jobs: int = Field(1, ge=1)

    model_config = {"populate_by_name": True}


class JantzenRequest(BaseModel):
    type: str
    weight: str
    p: int = Field(..., ge=2)


class ReproduceRequest(BaseModel):
    jobs: int = Field(1, ge=1)
    dry_run: bool = False


class UsageError(ValueError):
    """Bad input: unparseable type, weight or prime."""


def _datum(text: str) -> RootDatum:
    try:
        return parse_type(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _weight(datum: RootDatum, text: str) -> tuple[int, ...]:
    try:
        w = parse_weight(text, datum.rank)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if not is_dominant(w):
        raise UsageError(f"weight {text!r} is not dominant")
    return w


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


def _prime(p: int | None) -> int:
    if p is None or not _is_prime(p):
        raise UsageError(f"--p must be a prime, got {p}")
    return p


def char_payload(req: CharRequest) -> dict:
    datum = _datum(req.type)
    lam = _weight(datum, req.weight)
    if req.mode == "weyl":
        ch = weyl_character(datum, lam)
    else:
        ch = steinberg_simple_char(datum, lam, _prime(req.p))
    dom = [(w, m) for w, m in ch.to_json(datum) if is_dominant(parse_weight(w, datum.rank))]
    return CharResponse(type=datum.name, weight=format_weight(lam), mode=req.mode, p=req.p, dim=ch.mass(), dominant=dom).model_dump()


def cr_payload(req: CRRequest) -> dict:
    datum = _datum(req.type)
    p = _prime(req.p)
    lam, mu = _weight(datum, req.lam), _weight(datum, req.mu)
    cfg = crtools.DeciderConfig(oracle=req.oracle, dim_cap=req.dim_cap, jobs=req.jobs)
    v = crtools.decide_cr(datum, lam, mu, p, cfg)
    out = {"type": datum.name, "p": p, **v.to_json()}
    if req.oracle:
        oracle = crtools.oracle_check(datum, lam, mu, p, req.dim_cap)
        out["oracle"] = oracle
        out["agree"] = None if crtools.UNKNOWN in (oracle, v.verdict) else oracle == v.verdict
    return out


def jantzen_payload(req: JantzenRequest) -> dict:
    datum = _datum(req.type)
    lam = _weight(datum, req.weight)
    return {"type": datum.name, **weyl_comp_factors(datum, lam, _prime(req.p)).to_json(datum)}


def reproduce_payload(suite: str, req: ReproduceRequest) -> dict:
    if suite not in suites.suite_names():
        raise UsageError(f"unknown suite {suite!r}; choose from {', '.join(suites.suite_names())}")
    if req.dry_run:
        return {"suite": suite, "checks": [{"id": c.id, "expected": suites.plain(c.expected), "provenance": c.provenance}
                                           for c in suites.checks_for(suite)]}
    return suites.run_suite(suite, jobs=req.jobs).to_json()


app = FastAPI(title="repcr", version="0.1.0")


def _guard(fn, *args):
    try:
        return fn(*args)
    except UsageError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from None
    except UndeterminedError as exc:
        raise HTTPException(status_code=409, detail=f"undetermined: {exc}") from None


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.post("/char", response_model=CharResponse)
def char(req: CharRequest):
    return _guard(char_payload, req)


@app.post("/cr")
def cr(req: CRRequest) -> dict:
    return _guard(cr_payload, req)


@app.post("/jantzen")
def jantzen(req: JantzenRequest) -> dict:
    return _guard(jantzen_payload, req)


@app.post("/reproduce/{suite}")
def reproduce(suite: str, req: ReproduceRequest | None = None) -> dict:
    return _guard(reproduce_payload, suite, req or ReproduceRequest())
