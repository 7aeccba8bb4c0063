"""Combinatorial model of the fiber over a direction: a disc with punctures and a boundary arc."""

from __future__ import annotations

from dataclasses import dataclass

from .divisor_config import DivisorConfig, Kind, validate
from .exponent_order import Angle, ExponentialFactor, leq_at
from .resolution import GoodForm, GoodKind

_LO = Angle("1/2")
_HI = Angle("3/2")


@dataclass(frozen=True)
class Puncture:
    label: str
    component: int
    kind: Kind
    phi_dim: int | None = None


@dataclass(frozen=True)
class BSet:
    psi: ExponentialFactor
    theta: Angle
    punctures: tuple
    arc: tuple  # open arc (lo, hi) on the boundary circle

    @property
    def labels(self) -> list[str]:
        return [p.label for p in self.punctures]


def boundary_arc(n: int, theta: Angle) -> tuple[Angle, Angle]:
    if n < 1:
        raise ValueError("n must be positive")
    shift = theta.times(n)
    return _LO - shift, _HI - shift


def moderate_point(m: int, n: int, beta0_arg: Angle, theta_u: Angle, theta_v: Angle) -> bool:
    """Moderate growth of exp(g) at a boundary point of a good chart."""
    value = beta0_arg - theta_u.times(m) - theta_v.times(n)
    return value.in_open_interval(_LO, _HI)


def moderate(form: GoodForm, theta_u: Angle, theta_v: Angle) -> bool:
    if form.kind is GoodKind.HOLOMORPHIC:
        return True
    if form.kind is GoodKind.BAD:
        raise ValueError("moderate growth is only decided for good forms")
    return moderate_point(form.m, form.n, form.beta0_argument(), theta_u, theta_v)


def punctures(config: DivisorConfig) -> list[Puncture]:
    out = []
    ni = nj = 0
    for idx, c in enumerate(config.components):
        if c.kind is Kind.AT_INFINITY:
            ni += 1
            out.append(Puncture(f"P{ni}", idx, c.kind, config.phi(c)))
        else:
            nj += 1
            out.append(Puncture(f"P~{nj}", idx, c.kind, config.phi(c)))
    return out


def b_set(config: DivisorConfig, psi: ExponentialFactor, theta: Angle) -> BSet:
    validate(config)
    zero = ExponentialFactor.zero()
    with_tilde = psi.is_zero or leq_at(zero, psi, theta)
    chosen = []
    for p in punctures(config):
        comp = config.components[p.component]
        if p.kind is Kind.AT_INFINITY:
            if leq_at(comp.factor, psi, theta):
                chosen.append(p)
        elif with_tilde:
            chosen.append(p)
    return BSet(psi, theta, tuple(chosen), boundary_arc(max(config.max_q, 1), theta))


def h1c_dimension(bset: BSet, r: int = 1) -> int:
    return sum(r if p.phi_dim is None else p.phi_dim for p in bset.punctures)
