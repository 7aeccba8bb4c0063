"""HTTP service over the core modules.

Every command is a POST endpoint taking a JSON document.  Domain errors
answer 400 with ``{"error": {kind, message, details}}``; documents that do not
parse answer 422 with the same envelope and kind ``MalformedInput``.
"""

from __future__ import annotations

from fractions import Fraction

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from . import linalg
from .cech import MonodromyRep, random_rep
from .checks import grid_angles, run_all
from .divisor_config import formal_decomposition, stalk_dim, validate
from .errors import StokesDirectionHit, StokesError
from .example_stokes import compute_n_pi, compute_n_zero, stokes_data, total_monodromy, validate_stokes_datum
from .exponent_order import Angle, ExponentialFactor, stokes_directions, total_order
from .fiber import b_set, h1c_dimension
from .resolution import GoodKind, TwistExpression, format_gaussian, pullback, resolve, t, y
from .schemas import (DecomposeRequest, DimsRequest, DirectionsRequest, FiberRequest, OrderRequest,
                      RepDoc, ResolveRequest, StokesRequest, VerifyRequest)

app = FastAPI(title="stokesdata", version="0.1.0")


def _error(status: int, kind: str, message: str, details=None) -> JSONResponse:
    return JSONResponse(status_code=status,
                        content={"error": {"kind": kind, "message": message, "details": details or {}}})


@app.exception_handler(StokesError)
async def _domain_error(request: Request, exc: StokesError):
    return _error(400, exc.kind, exc.message, _jsonable(exc.details))


@app.exception_handler(ValueError)
async def _value_error(request: Request, exc: ValueError):
    return _error(400, "ValidationError", str(exc))


@app.exception_handler(RequestValidationError)
async def _malformed(request: Request, exc: RequestValidationError):
    errors = [{"loc": [str(x) for x in e.get("loc", ())], "msg": e.get("msg", "")} for e in exc.errors()]
    return _error(422, "MalformedInput", "request document does not match the schema", {"errors": errors})


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (int, float, str, bool)) or x is None:
        return x
    return str(x)


# --- rendering --------------------------------------------------------------


def rational(x) -> str:
    return str(Fraction(x))


def ring_matrix(rows) -> list[list[str]]:
    return [[str(x) for x in row] for row in rows]


def block_matrix(blocks, r: int) -> list[list[str]]:
    return [[rational(x) for x in row] for row in linalg.to_rows(linalg.blocks(blocks, r))]


def form_doc(form) -> dict:
    doc = {"kind": form.kind.value}
    if form.kind is GoodKind.GOOD:
        doc.update(m=form.m, n=form.n, beta0=format_gaussian(form.beta0))
        try:
            doc["beta0_argument"] = str(form.beta0_argument())
        except StokesError:
            doc["beta0_argument"] = None
    return doc


def _point(p) -> list[str]:
    return [format_gaussian(x) for x in p]


# --- endpoints --------------------------------------------------------------


@app.post("/directions")
def directions(req: DirectionsRequest):
    a, b = (ExponentialFactor.parse(f) for f in req.factors)
    return {"factors": [str(a), str(b)], "directions": [str(x) for x in stokes_directions(a, b)]}


@app.post("/order")
def order(req: OrderRequest):
    theta = Angle.parse(req.theta)
    factors = [ExponentialFactor.parse(f) for f in req.factors]
    return {"theta": str(theta), "order": [str(f) for f in total_order(factors, theta)]}


@app.post("/decompose")
def decompose(req: DecomposeRequest):
    config = req.config.to_domain()
    return [{"factor": str(f), "rank": d} for f, d in formal_decomposition(config)]


@app.post("/dims")
def dims(req: DimsRequest):
    config = req.config.to_domain()
    validate(config)
    if req.psis is None:
        psis = [ExponentialFactor.zero()] + [c.factor for c in config.at_infinity]
    else:
        psis = [ExponentialFactor.parse(p) for p in req.psis]
    rows = []
    for theta in grid_angles(req.grid):
        entry = {"theta": str(theta), "stokes": False, "dims": {}}
        for psi in psis:
            try:
                d = stalk_dim(config, psi, theta)
                h = h1c_dimension(b_set(config, psi, theta), config.rank)
                entry["dims"][str(psi)] = {"stalk": d, "h1c": h}
            except StokesDirectionHit:
                entry["stokes"] = True
                entry["dims"][str(psi)] = None
        rows.append(entry)
    return {"rank": config.rank, "grid": req.grid, "psis": [str(p) for p in psis], "rows": rows}


@app.post("/resolve")
def resolve_endpoint(req: ResolveRequest):
    config = req.config.to_domain()
    twist = TwistExpression(ExponentialFactor.parse(req.psi))
    res = resolve(twist, config)
    charts = []
    for ch in res.charts:
        sub = ch.substitution()
        charts.append({"label": ch.label, "t": str(sub[t]), "y": str(sub[y]),
                       "pullback": str(pullback(twist, ch)), "form": form_doc(res.chart_forms[ch.label])})
    inter = [{"component": idx, "chart": label, "point": _point(p), "form": form_doc(f)}
             for idx, label, p, f in res.intersections]
    trans = None
    if res.translation is not None:
        trans = {"chart": res.translation[0], "point": _point(res.translation[1])}
    return {"psi": str(res.psi), "g": str(twist.expression()), "charts": charts,
            "intersections": inter, "translation": trans, "total": res.total}


@app.post("/fiber")
def fiber(req: FiberRequest):
    config = req.config.to_domain()
    bs = b_set(config, ExponentialFactor.parse(req.psi), Angle.parse(req.theta))
    return {"psi": str(bs.psi), "theta": str(bs.theta),
            "punctures": [{"label": p.label, "component": p.component, "kind": p.kind.value,
                           "phi_dim": p.phi_dim} for p in bs.punctures],
            "arc": [str(bs.arc[0]), str(bs.arc[1])],
            "h1c_dim": h1c_dimension(bs, config.rank)}


def rep_from_doc(doc: RepDoc | None, rank: int, seed: int) -> MonodromyRep:
    if doc is None or doc.backend == "symbolic" and not doc.matrices:
        return random_rep(rank, seed)
    if not doc.matrices:
        raise ValueError("matrix backend needs matrices")
    return MonodromyRep("matrix", {g: [[Fraction(x) for x in row] for row in rows]
                                   for g, rows in doc.matrices.items()})


@app.post("/stokes")
def stokes(req: StokesRequest):
    if req.symbolic and (req.rep is None or req.rep.backend == "symbolic"):
        sd = stokes_data()
        return {"backend": "symbolic",
                "N_pi": ring_matrix(compute_n_pi()), "N_0": ring_matrix(compute_n_zero()),
                "S_0^1": ring_matrix(sd.S), "S_1^0": ring_matrix(sd.Sprime),
                "total_monodromy": ring_matrix(total_monodromy(sd))}
    rep = rep_from_doc(req.rep, req.rank, req.seed)
    r = rep.rank
    sd = stokes_data(rep)
    check = validate_stokes_datum(sd, rep)
    return {"backend": "matrix", "rank": r,
            "rep": {g: [[rational(x) for x in row] for row in linalg.to_rows(rep.generator(g))]
                    for g in ("S", "T", "U")},
            "N_pi": block_matrix(compute_n_pi(rep), r), "N_0": block_matrix(compute_n_zero(rep), r),
            "S_0^1": block_matrix(sd.S, r), "S_1^0": block_matrix(sd.Sprime, r),
            "total_monodromy": block_matrix(total_monodromy(sd), r),
            "valid": check.ok, "violations": check.violations}


@app.post("/verify")
def verify(req: VerifyRequest):
    checks = run_all(seed=req.seed, trials=req.trials, grid=req.grid)
    return {"ok": all(c.ok for c in checks),
            "checks": [{"name": c.name, "ok": c.ok, "detail": c.detail, "seconds": round(c.seconds, 3)}
                       for c in checks]}
