"""Invariant suite behind the ``verify`` command."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction

import sympy

from . import linalg
from .cech import d0_matrix, h1, is_complex, random_rep
from .divisor_config import (DivisorComponent, DivisorConfig, Kind, example_config, formal_decomposition,
                             stalk_dim)
from .example_stokes import (TARGET_N_PI, TARGET_N_ZERO, bundle, compute_n_pi, compute_n_zero,
                             stokes_data, target, validate_stokes_datum)
from .exponent_order import Angle, ExponentialFactor, compare_at, stokes_directions, total_order
from .fiber import b_set, h1c_dimension
from .ring import RingElement
from .resolution import GoodKind, TwistExpression, pullback, resolve, u, v


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""
    seconds: float = 0.0


def _ring_eq(a, b) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def _evaluate(blocks, rep):
    return [[rep.evaluate(x) for x in row] for row in blocks]


def _blocks_eq(a, b) -> bool:
    return all(linalg.equal(x, y) for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def grid_angles(n: int) -> list[Angle]:
    """n angles (2k+1)/n · π, offset from the multiples of 2π/n."""
    return [Angle(Fraction(2 * k + 1, n)) for k in range(n)]


def check_matrices() -> Check:
    sd = stokes_data()
    rot = RingElement.parse("U")
    s10 = [[rot * x for x in row] for row in target(TARGET_N_ZERO)]
    ok = (_ring_eq(compute_n_pi(), target(TARGET_N_PI)) and _ring_eq(compute_n_zero(), target(TARGET_N_ZERO))
          and _ring_eq(sd.S, target(TARGET_N_PI)) and _ring_eq(sd.Sprime, s10))
    return Check("matrix reproduction", ok)


def check_backends(trials: int, seed: int, ranks=(1, 2, 3)) -> list[Check]:
    sym = [compute_n_pi(), compute_n_zero()]
    agree = valid = True
    bad = []
    for r in ranks:
        for k in range(trials):
            rep = random_rep(r, seed * 1000 + 31 * r + k)
            num = [compute_n_pi(rep), compute_n_zero(rep)]
            if not all(_blocks_eq(_evaluate(s, rep), n) for s, n in zip(sym, num)):
                agree = False
                bad.append((r, k))
            sd = stokes_data(rep)
            if not validate_stokes_datum(sd, rep).ok:
                valid = False
    rep = random_rep(2, seed)
    sd = stokes_data(rep)
    sd.S[1][0] = linalg.eye(2)
    mutated = not validate_stokes_datum(sd, rep).ok
    return [Check("backend agreement", agree, f"failures at {bad[:3]}" if bad else ""),
            Check("Stokes datum shape", valid and mutated,
                  "" if mutated else "mutated datum was accepted")]


def check_complex(seed: int) -> Check:
    fine = bundle().fine
    ok = is_complex(fine)
    for r in (1, 2, 3):
        rep = random_rep(r, seed + r)
        ok = ok and h1(fine, rep).dim == 2 * r and linalg.rank(d0_matrix(fine, rep)) == 5 * r
        ok = ok and h1(fine.with_flipped_signs(), rep).dim == 2 * r
    return Check("Čech complex of the fine covering", ok)


def check_dimensions(grid: int = 24) -> Check:
    psis = [ExponentialFactor.zero(), ExponentialFactor.polar(1)]
    ok = True
    for r in (1, 2, 3):
        config = example_config(r)
        for theta in grid_angles(grid):
            for psi in psis:
                ok = ok and h1c_dimension(b_set(config, psi, theta), r) == stalk_dim(config, psi, theta)
    config = example_config(2)
    ok = ok and [stalk_dim(config, p, Angle(0)) for p in psis] == [2, 4]
    ok = ok and [stalk_dim(config, p, Angle(1)) for p in psis] == [4, 2]
    return Check("stalk dimensions", ok)


def check_resolution() -> Check:
    ok = True
    for n in range(1, 6):
        config = DivisorConfig(1, (DivisorComponent(Kind.AT_INFINITY, ExponentialFactor.polar(n)),))
        twist = TwistExpression(ExponentialFactor.zero())
        res = resolve(twist, config)
        ok = ok and res.total
        for k in range(1, n + 1):
            ok = ok and sympy.simplify(pullback(twist, res.chart(str(k))) - u ** (1 - k) * v ** (-k)) == 0
        ok = ok and all(pt == (0, 1) for _, _, pt, _ in res.intersections)
    res = resolve(TwistExpression(ExponentialFactor.polar(1)), example_config(1))
    ok = ok and res.total and all(f.kind is not GoodKind.BAD for f in res.chart_forms.values())
    return Check("resolution totality", ok)


def check_directions(seed: int) -> Check:
    zero, one = ExponentialFactor.zero(), ExponentialFactor.polar(1)
    ok = stokes_directions(zero, one) == [Angle("1/2"), Angle("3/2")]
    rng = random.Random(seed)
    count = 0
    while count < 10:
        theta = Angle(Fraction(rng.randint(0, 1999), 1000))
        if compare_at(zero, one, theta).value == "Stokes":
            continue
        a = total_order([zero, one], theta)
        b = total_order([zero, one], theta + Angle(1))
        ok = ok and a == list(reversed(b))
        count += 1
    return Check("Stokes directions", ok)


def check_decomposition() -> Check:
    ok = all(formal_decomposition(example_config(r)) == [(ExponentialFactor.zero(), r),
                                                         (ExponentialFactor.polar(1), r)]
             for r in (1, 2, 3))
    return Check("formal decomposition", ok)


def run_all(seed: int = 0, trials: int = 25, grid: int = 24) -> list[Check]:
    out = []
    steps = [check_matrices, lambda: check_backends(trials, seed), lambda: check_complex(seed),
             lambda: check_dimensions(grid), check_resolution, lambda: check_directions(seed),
             check_decomposition]
    for step in steps:
        start = time.perf_counter()
        try:
            res = step()
        except Exception as exc:  # a crash is a failed check, reported rather than raised
            res = Check(getattr(step, "__name__", "check"), False, f"{type(exc).__name__}: {exc}")
        for c in res if isinstance(res, list) else [res]:
            c.seconds = time.perf_counter() - start
            out.append(c)
    return out
