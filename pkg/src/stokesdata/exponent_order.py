"""Exponential factors mu0 * t^(-q) and their orderings at a direction theta.

Angles are exact rational multiples of pi.  A comparison reduces to the sign
of a finite sum  sum_k m_k cos(pi * a_k)  with rational m_k, a_k.  Zero is
decided exactly in a cyclotomic field; a nonzero sign is then read off a
high-precision evaluation.
"""

from __future__ import annotations

import enum
import functools
import math
import re
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .errors import EqualFactors, IrrationalArgument, StokesDirectionHit

_TWO = Fraction(2)


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


@dataclass(frozen=True, order=True)
class Angle:
    """A direction ``turns * pi`` with ``turns`` reduced into [0, 2)."""

    turns: Fraction

    def __init__(self, turns=0):
        object.__setattr__(self, "turns", _frac(turns) % _TWO)

    @classmethod
    def parse(cls, text: str) -> "Angle":
        s = text.strip().replace(" ", "")
        for suffix in ("·π", "*π", "π", "*pi", "pi"):
            if s.endswith(suffix):
                s = s[: -len(suffix)] or "1"
                break
        if s in ("", "+"):
            s = "1"
        elif s == "-":
            s = "-1"
        return cls(Fraction(s))

    def __add__(self, other: "Angle") -> "Angle":
        return Angle(self.turns + other.turns)

    def __sub__(self, other: "Angle") -> "Angle":
        return Angle(self.turns - other.turns)

    def __neg__(self) -> "Angle":
        return Angle(-self.turns)

    def times(self, k: int) -> "Angle":
        return Angle(self.turns * k)

    def in_open_interval(self, lo: "Angle", hi: "Angle") -> bool:
        """Membership in the open arc running counterclockwise from lo to hi."""
        width = (hi.turns - lo.turns) % _TWO
        offset = (self.turns - lo.turns) % _TWO
        return 0 < offset < width

    def to_float(self) -> float:
        return float(self.turns) * math.pi

    def __str__(self) -> str:
        t = self.turns
        num = str(t.numerator) if t.denominator == 1 else f"{t.numerator}/{t.denominator}"
        return f"{num}·π"

    def __repr__(self) -> str:
        return f"Angle({self})"


@dataclass(frozen=True)
class PolarCoefficient:
    modulus: Fraction
    argument: Angle

    def __init__(self, modulus=1, argument=Angle(0)):
        m = _frac(modulus)
        if m <= 0:
            raise ValueError("modulus must be positive")
        if not isinstance(argument, Angle):
            argument = Angle(argument)
        object.__setattr__(self, "modulus", m)
        object.__setattr__(self, "argument", argument)

    def negated(self) -> "PolarCoefficient":
        return PolarCoefficient(self.modulus, self.argument + Angle(1))

    def __str__(self) -> str:
        m = _fmt_rational(self.modulus)
        a = self.argument.turns
        if a == 0:
            return m
        if a == 1:
            return "-" + m
        return f"{m}·e^({self.argument}i)"


def _fmt_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class ExponentialFactor:
    """Leading polar datum of an exponent; ``q == 0`` encodes the zero factor."""

    q: int = 0
    mu0: PolarCoefficient | None = None

    def __post_init__(self):
        if self.q < 0:
            raise ValueError("q must be nonnegative")
        if (self.q == 0) != (self.mu0 is None):
            raise ValueError("zero factor has q=0 and no mu0; nonzero needs q>=1 and mu0")

    @classmethod
    def zero(cls) -> "ExponentialFactor":
        return cls()

    @classmethod
    def polar(cls, q: int, modulus=1, argument=0) -> "ExponentialFactor":
        return cls(q, PolarCoefficient(modulus, Angle(argument)))

    @property
    def is_zero(self) -> bool:
        return self.q == 0

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        c = str(self.mu0)
        if self.q == 1 and c in ("1", "-1"):
            return c + "/t"
        if c == "1":
            return f"t^-{self.q}"
        return f"{c}·t^-{self.q}"

    @classmethod
    def parse(cls, text: str) -> "ExponentialFactor":
        """Parse the rendering produced by ``str`` (and a few ASCII variants)."""
        s = text.strip().replace(" ", "").replace("*", "·")
        if s == "0":
            return cls.zero()
        m = re.fullmatch(r"(.*?)/t", s)
        if m:
            coef, q = m.group(1), 1
        else:
            m = re.fullmatch(r"(?:(.*)·)?t\^-?\(?-?(\d+)\)?", s)
            if not m or int(m.group(2)) < 1:
                raise ValueError(f"cannot parse exponential factor {text!r}")
            coef, q = m.group(1) or "1", int(m.group(2))
        return cls(q, _parse_coefficient(coef))


def _parse_coefficient(s: str) -> PolarCoefficient:
    m = re.fullmatch(r"(-?)([0-9]+(?:/[0-9]+)?)(?:·e\^\((.+?)i\))?", s)
    if not m:
        raise ValueError(f"cannot parse coefficient {s!r}")
    arg = Angle.parse(m.group(3)) if m.group(3) else Angle(0)
    if m.group(1):
        arg = arg + Angle(1)
    return PolarCoefficient(Fraction(m.group(2)), arg)


class ComparisonResult(enum.Enum):
    LESS_EQ = "LessEq"
    GREATER_EQ = "GreaterEq"
    EQUAL = "Equal"
    STOKES = "Stokes"


# --- exact sign of sums of cosines -----------------------------------------


def cos_sum_sign(terms) -> int:
    """Sign of sum(c * cos(pi * a)) for rational pairs (c, a)."""
    terms = [(_frac(c), _frac(a) % _TWO) for c, a in terms if c]
    if not terms:
        return 0
    if len(terms) == 1:
        c, a = terms[0]
        return _sign(c) * _cos_sign(a)
    # a value well above the working precision certifies the sign; only
    # near-zero sums need the exact cyclotomic test
    val = _cos_sum(terms, 60)
    if abs(val) > mpmath.mpf(10) ** -40:
        return 1 if val > 0 else -1
    if _cyclotomic_zero(terms):
        return 0
    for dps in (120, 480, 2000):
        val = _cos_sum(terms, dps)
        if abs(val) > mpmath.mpf(10) ** (-(dps // 2)):
            break
    return 1 if val > 0 else -1


def _cos_sum(terms, dps):
    with mpmath.workdps(dps):
        return +mpmath.fsum(mpmath.mpf(c.numerator) / c.denominator
                            * mpmath.cospi(mpmath.mpf(a.numerator) / a.denominator) for c, a in terms)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _cos_sign(a: Fraction) -> int:
    a = a % _TWO
    if a in (Fraction(1, 2), Fraction(3, 2)):
        return 0
    return 1 if (a < Fraction(1, 2) or a > Fraction(3, 2)) else -1


def _cyclotomic_zero(terms) -> bool:
    # cos(pi a) = (z^e + z^-e) / 2 with z = exp(2 pi i / M), e = a M / 2
    import sympy

    den = 1
    for _, a in terms:
        den = den * a.denominator // math.gcd(den, a.denominator)
    M = 2 * den
    coeffs = [Fraction(0)] * M
    for c, a in terms:
        e = int(a * den) % M
        coeffs[e] += c / 2
        coeffs[-e % M] += c / 2
    x = sympy.Symbol("x")
    poly = sympy.Poly(list(reversed([sympy.Rational(c.numerator, c.denominator) for c in coeffs])),
                      x, domain="QQ")
    return poly.rem(sympy.Poly(sympy.cyclotomic_poly(M, x), x, domain="QQ")).is_zero


# --- leading term of a difference ------------------------------------------


def leading_difference(phi: ExponentialFactor, psi: ExponentialFactor):
    """Return (q, terms) with phi - psi ~ (sum m e^{i pi a}) t^-q, or None if equal."""
    if phi == psi:
        return None
    if phi.q > psi.q:
        return phi.q, [(phi.mu0.modulus, phi.mu0.argument.turns)]
    if psi.q > phi.q:
        neg = psi.mu0.negated()
        return psi.q, [(neg.modulus, neg.argument.turns)]
    neg = psi.mu0.negated()
    return phi.q, [(phi.mu0.modulus, phi.mu0.argument.turns), (neg.modulus, neg.argument.turns)]


def compare_at(phi: ExponentialFactor, psi: ExponentialFactor, theta: Angle) -> ComparisonResult:
    """phi <=_theta psi iff Re((phi - psi)(t)) -> -infinity along arg t = theta."""
    lead = leading_difference(phi, psi)
    if lead is None:
        return ComparisonResult.EQUAL
    q, terms = lead
    shift = theta.turns * q
    s = cos_sum_sign([(m, a - shift) for m, a in terms])
    if s == 0:
        return ComparisonResult.STOKES
    return ComparisonResult.LESS_EQ if s < 0 else ComparisonResult.GREATER_EQ


def leq_at(phi: ExponentialFactor, psi: ExponentialFactor, theta: Angle) -> bool:
    """phi <=_theta psi, raising on Stokes directions."""
    res = compare_at(phi, psi, theta)
    if res is ComparisonResult.STOKES:
        raise StokesDirectionHit(f"{theta} is a Stokes direction of ({phi}, {psi})",
                                 pair=[str(phi), str(psi)], theta=str(theta))
    return res in (ComparisonResult.LESS_EQ, ComparisonResult.EQUAL)


def exact_argument(terms) -> Angle:
    """Argument of sum m e^{i pi a} as an exact Angle, when it is a rational multiple of pi."""
    if len(terms) == 1:
        return Angle(terms[0][1])
    with mpmath.workdps(50):
        z = mpmath.fsum(mpmath.mpf(m.numerator) / m.denominator
                        * mpmath.expjpi(mpmath.mpf(a.numerator) / a.denominator) for m, a in terms)
        approx = mpmath.arg(z) / mpmath.pi
    for max_den in (12, 60, 360, 2520, 27720):
        cand = Fraction(str(mpmath.nstr(approx, 40))).limit_denominator(max_den)
        im = cos_sum_sign([(m, a - cand - Fraction(1, 2)) for m, a in terms])
        re_ = cos_sum_sign([(m, a - cand) for m, a in terms])
        if im == 0 and re_ > 0:
            return Angle(cand)
    raise IrrationalArgument("leading coefficient has an argument that is not a rational multiple of pi",
                             approx_turns=float(approx))


def stokes_directions(phi: ExponentialFactor, psi: ExponentialFactor) -> list[Angle]:
    lead = leading_difference(phi, psi)
    if lead is None:
        raise EqualFactors(f"{phi} and {psi} are equal; no Stokes directions", pair=[str(phi), str(psi)])
    q, terms = lead
    alpha = exact_argument(terms).turns
    out = set()
    for k in range(q):
        for sgn in (Fraction(1, 2), Fraction(-1, 2)):
            out.add(Angle((alpha + sgn + 2 * k) / q))
    return sorted(out)


def total_order(factors, theta0: Angle) -> list[ExponentialFactor]:
    """Sort factors increasingly for <=_theta0; Equal ties keep input order."""
    factors = list(factors)
    for i, a in enumerate(factors):
        for b in factors[i + 1:]:
            if compare_at(a, b, theta0) is ComparisonResult.STOKES:
                raise StokesDirectionHit(f"{theta0} is a Stokes direction of ({a}, {b})",
                                         pair=[str(a), str(b)], theta=str(theta0))

    def cmp(a, b):
        res = compare_at(a, b, theta0)
        if res is ComparisonResult.EQUAL:
            return 0
        return -1 if res is ComparisonResult.LESS_EQ else 1

    return sorted(factors, key=functools.cmp_to_key(cmp))
