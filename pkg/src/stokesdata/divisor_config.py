"""Divisor configurations and the stalk dimensions of the Stokes filtration."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .errors import AssumptionViolation
from .exponent_order import Angle, ExponentialFactor, leq_at


class Kind(enum.Enum):
    AT_INFINITY = "AtInfinity"
    ELSEWHERE = "Elsewhere"


@dataclass(frozen=True)
class DivisorComponent:
    kind: Kind
    factor: ExponentialFactor | None = None
    phi_dim: int | None = None
    label: str | None = None

    def __post_init__(self):
        if self.kind is Kind.AT_INFINITY and (self.factor is None or self.factor.is_zero):
            raise ValueError("an AtInfinity component needs a nonzero factor")
        if self.factor is not None and self.factor.is_zero:
            raise ValueError("component factors are nonzero")
        if self.phi_dim is not None and self.phi_dim < 0:
            raise ValueError("phi_dim must be nonnegative")


@dataclass(frozen=True)
class DivisorConfig:
    rank: int
    components: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("rank must be positive")
        object.__setattr__(self, "components", tuple(self.components))

    def phi(self, comp: DivisorComponent) -> int:
        return self.rank if comp.phi_dim is None else comp.phi_dim

    @property
    def at_infinity(self) -> list[DivisorComponent]:
        return [c for c in self.components if c.kind is Kind.AT_INFINITY]

    @property
    def elsewhere(self) -> list[DivisorComponent]:
        return [c for c in self.components if c.kind is Kind.ELSEWHERE]

    @property
    def max_q(self) -> int:
        return max((c.factor.q for c in self.at_infinity), default=0)


def example_config(rank: int) -> DivisorConfig:
    """The worked example: S_1 = {t = y} at infinity and one further component."""
    return DivisorConfig(rank, (
        DivisorComponent(Kind.AT_INFINITY, ExponentialFactor.polar(1), label="S1"),
        DivisorComponent(Kind.ELSEWHERE, label="S~1"),
    ))


def validate(config: DivisorConfig) -> None:
    comps = list(config.components)
    for i, a in enumerate(comps):
        for j in range(i + 1, len(comps)):
            b = comps[j]
            if a.kind is b.kind is Kind.AT_INFINITY and a.factor == b.factor:
                raise AssumptionViolation(
                    f"components {i} and {j} share (q, mu0) = ({a.factor.q}, {a.factor.mu0})",
                    components=[i, j])
            if (a.kind is b.kind is Kind.ELSEWHERE and a.label is not None
                    and a.label == b.label):
                raise AssumptionViolation(f"components {i} and {j} meet D in the same point",
                                          components=[i, j])


def formal_decomposition(config: DivisorConfig) -> list[tuple[ExponentialFactor, int]]:
    validate(config)
    out = [(ExponentialFactor.zero(), sum(config.phi(c) for c in config.elsewhere))]
    out += [(c.factor, config.phi(c)) for c in config.at_infinity]
    return out


def stalk_dim(config: DivisorConfig, psi: ExponentialFactor, theta: Angle) -> int:
    """Dimension of the stalk of L_{<= psi} at theta."""
    validate(config)
    zero = ExponentialFactor.zero()
    tilde = sum(config.phi(c) for c in config.elsewhere)
    dim = sum(config.phi(c) for c in config.at_infinity if leq_at(c.factor, psi, theta))
    if psi.is_zero or leq_at(zero, psi, theta):
        dim += tilde
    return dim


def total_dim(config: DivisorConfig) -> int:
    return sum(config.phi(c) for c in config.components)
