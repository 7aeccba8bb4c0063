"""Request documents of the service.

String fields carrying exact data are parsed during validation, so that an
unreadable factor or rational is reported as malformed input (HTTP 422)
rather than as a domain error.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator

from .divisor_config import DivisorComponent, DivisorConfig, Kind, example_config
from .exponent_order import Angle, ExponentialFactor, PolarCoefficient
from .ring import GENERATORS


def _fraction(text) -> Fraction:
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not an exact rational: {text!r}") from exc


def _check_factor(text: str) -> str:
    ExponentialFactor.parse(text)
    return text


def _angle(text: str) -> str:
    try:
        Angle.parse(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational multiple of π: {text!r}") from exc
    return text


class Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class CoefficientDoc(Strict):
    modulus: str = "1"
    argument_pi: str = "0"

    @field_validator("modulus", "argument_pi")
    @classmethod
    def _rational(cls, v):
        _fraction(v)
        return v


class ComponentDoc(Strict):
    kind: Literal["AtInfinity", "Elsewhere"]
    q: int | None = Field(default=None, ge=1)
    mu0: CoefficientDoc | None = None
    factor: str | None = None  # shorthand such as "1/t" or "2·t^-3"
    phi_dim: int | None = None
    label: str | None = None

    @field_validator("factor")
    @classmethod
    def _factor_text(cls, v):
        return v if v is None else _check_factor(v)

    def to_domain(self) -> DivisorComponent:
        fac = None
        if self.factor is not None:
            fac = ExponentialFactor.parse(self.factor)
        elif self.q is not None:
            mu = self.mu0 or CoefficientDoc()
            fac = ExponentialFactor(self.q, PolarCoefficient(_fraction(mu.modulus),
                                                             Angle(_fraction(mu.argument_pi))))
        if fac is not None and fac.is_zero:
            fac = None
        return DivisorComponent(Kind(self.kind), fac, self.phi_dim, self.label)


class RepDoc(Strict):
    backend: Literal["symbolic", "matrix"] = "symbolic"
    matrices: dict[str, list[list[str]]] | None = None

    @field_validator("matrices")
    @classmethod
    def _rows(cls, v):
        if v is None:
            return v
        for g, rows in v.items():
            if g not in GENERATORS:
                raise ValueError(f"unknown generator {g!r}")
            if not rows or any(len(r) != len(rows) for r in rows):
                raise ValueError(f"matrix for {g} is not square")
            for r in rows:
                for x in r:
                    _fraction(x)
        return v


class ConfigDocument(Strict):
    rank: int = Field(default=1, ge=1)
    components: list[ComponentDoc] | None = None
    rep: RepDoc | None = None

    def to_domain(self) -> DivisorConfig:
        if self.components is None:
            return example_config(self.rank)
        return DivisorConfig(self.rank, tuple(c.to_domain() for c in self.components))


class DirectionsRequest(Strict):
    factors: list[str] = Field(default_factory=lambda: ["0", "1/t"], min_length=2, max_length=2)

    @field_validator("factors")
    @classmethod
    def _factors(cls, v):
        return [_check_factor(x) for x in v]


class OrderRequest(Strict):
    factors: list[str] = Field(default_factory=lambda: ["0", "1/t"])
    theta: str = "0"

    @field_validator("factors")
    @classmethod
    def _factors(cls, v):
        return [_check_factor(x) for x in v]

    @field_validator("theta")
    @classmethod
    def _theta(cls, v):
        return _angle(v)


class DecomposeRequest(Strict):
    config: ConfigDocument = Field(default_factory=ConfigDocument)


class DimsRequest(Strict):
    config: ConfigDocument = Field(default_factory=ConfigDocument)
    grid: int = Field(default=24, ge=1, le=100000)
    psis: list[str] | None = None

    @field_validator("psis")
    @classmethod
    def _psis(cls, v):
        return v if v is None else [_check_factor(x) for x in v]


class ResolveRequest(Strict):
    config: ConfigDocument = Field(default_factory=ConfigDocument)
    psi: str = "1/t"

    @field_validator("psi")
    @classmethod
    def _psi(cls, v):
        return _check_factor(v)


class FiberRequest(Strict):
    config: ConfigDocument = Field(default_factory=ConfigDocument)
    psi: str = "0"
    theta: str = "0"

    @field_validator("psi")
    @classmethod
    def _psi(cls, v):
        return _check_factor(v)

    @field_validator("theta")
    @classmethod
    def _theta(cls, v):
        return _angle(v)


class StokesRequest(Strict):
    symbolic: bool = True
    rank: int = Field(default=1, ge=1, le=8)
    seed: int = 0
    rep: RepDoc | None = None


class VerifyRequest(Strict):
    seed: int = 0
    trials: int = Field(default=25, ge=1, le=1000)
    grid: int = Field(default=24, ge=1, le=10000)
