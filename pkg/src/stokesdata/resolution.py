"""Monomial blow-up charts resolving the twist g(t, y) = 1/y - psi(t).

Charts follow the explicit recipe for twists with leading datum (q, mu0):

* ``n = max q_i`` point blow-ups give charts ``k = 1..n`` with
  ``t = u v, y = u^(k-1) v^k`` and the chart ``~n`` with ``t = u, y = u^n v``;
* for psi != 0 the coordinate ``v`` of the chart containing ``(0, 1/mu)``
  is translated, ``v' = v - 1/mu``, and ``q`` more blow-ups of ``(u, v')``
  follow.  Their charts are labelled ``1'..q'`` and ``~q'``.

Coefficients are Gaussian rationals (sympy numbers in ``QQ<I>``).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import sympy

from .divisor_config import DivisorConfig, validate
from .errors import IrrationalArgument, NonGaussianCoefficient, UnsupportedTwist
from .exponent_order import Angle, ExponentialFactor, PolarCoefficient

t, y, u, v = sympy.symbols("t y u v")

_UNITS = {sympy.Rational(0): 1, sympy.Rational(1, 2): sympy.I,
          sympy.Rational(1): -1, sympy.Rational(3, 2): -sympy.I}


def to_gaussian(c: PolarCoefficient):
    arg = sympy.Rational(c.argument.turns.numerator, c.argument.turns.denominator)
    if arg not in _UNITS:
        raise NonGaussianCoefficient(f"argument {c.argument} is not a multiple of π/2",
                                     argument=str(c.argument))
    return sympy.Rational(c.modulus.numerator, c.modulus.denominator) * _UNITS[arg]


def gaussian_argument(z) -> Angle:
    """Exact argument of a nonzero Gaussian rational, when it is a rational multiple of pi."""
    z = sympy.nsimplify(z)
    a, b = sympy.re(z), sympy.im(z)
    if a == 0 and b == 0:
        raise ValueError("zero has no argument")
    if b == 0:
        return Angle(0 if a > 0 else 1)
    if a == 0:
        return Angle("1/2" if b > 0 else "3/2")
    if abs(a) == abs(b):
        quadrant = {(True, True): "1/4", (False, True): "3/4", (False, False): "5/4", (True, False): "7/4"}
        return Angle(quadrant[(bool(a > 0), bool(b > 0))])
    raise IrrationalArgument(f"arg({z}) is not a rational multiple of π", value=format_gaussian(z))


def format_gaussian(z) -> str:
    z = sympy.nsimplify(z)
    a, b = sympy.re(z), sympy.im(z)
    if b == 0:
        return str(a)
    im = "i" if b == 1 else "-i" if b == -1 else f"{b}·i"
    if a == 0:
        return im
    return f"{a}{'' if im.startswith('-') else '+'}{im}"


def parse_gaussian(text: str):
    s = text.strip().replace(" ", "").replace("·", "*").replace("i", "I")
    return sympy.nsimplify(sympy.sympify(s))


@dataclass(frozen=True)
class TwistExpression:
    psi: ExponentialFactor

    def expression(self):
        """g(t, y) as a sympy rational function."""
        if self.psi.is_zero:
            return 1 / y
        mu = to_gaussian(self.psi.mu0)
        return sympy.cancel((t ** self.psi.q - mu * y) / (y * t ** self.psi.q))


@dataclass(frozen=True)
class Chart:
    """t = u^a v^b, y = u^c v^d; optionally v -> v' + shift and a second monomial map of (u, v')."""

    label: str
    exponents: tuple  # ((a, b), (c, d))
    translation: object = None  # shift 1/mu, so that the base chart's v equals v' + shift
    inner: tuple | None = None  # ((a', b'), (c', d')) giving (u, v') in the chart coordinates

    def substitution(self):
        (a, b), (c, d) = self.exponents
        if self.inner is None:
            return {t: u ** a * v ** b, y: u ** c * v ** d}
        (a2, b2), (c2, d2) = self.inner
        bu = u ** a2 * v ** b2
        bv = u ** c2 * v ** d2 + self.translation
        return {t: bu ** a * bv ** b, y: bu ** c * bv ** d}


class GoodKind(enum.Enum):
    HOLOMORPHIC = "Holomorphic"
    GOOD = "Good"
    BAD = "Bad"


@dataclass(frozen=True)
class GoodForm:
    kind: GoodKind
    m: int = 0
    n: int = 0
    beta0: object = None

    def __str__(self):
        if self.kind is GoodKind.GOOD:
            return f"Good(m={self.m}, n={self.n}, β₀={format_gaussian(self.beta0)})"
        return self.kind.value

    def beta0_argument(self) -> Angle:
        return gaussian_argument(self.beta0)


@dataclass
class Resolution:
    psi: ExponentialFactor
    charts: list = field(default_factory=list)
    chart_forms: dict = field(default_factory=dict)
    intersections: list = field(default_factory=list)  # (component index, chart label, point, form)
    translation: tuple | None = None  # (chart label, point) of the translated bad point

    def chart(self, label: str) -> Chart:
        for c in self.charts:
            if c.label == label:
                return c
        raise KeyError(label)

    @property
    def total(self) -> bool:
        forms = list(self.chart_forms.values()) + [f for *_, f in self.intersections]
        return all(f.kind is not GoodKind.BAD for f in forms)


def unprimed_charts(n: int) -> list[Chart]:
    charts = [Chart(str(k), ((1, 1), (k - 1, k))) for k in range(1, n + 1)]
    charts.append(Chart(f"~{n}", ((1, 0), (n, 1))))
    return charts


def blowup_chain(n: int) -> dict:
    """Exponent matrices obtained by composing elementary point blow-ups.

    Chart ``~1`` is the chart t = a, y = a b of the first blow-up and chart
    ``1`` the other one; chart ``k`` (resp. ``~k``) comes from blowing up the
    origin of ``~(k-1)`` and taking the chart x = a b, z = b (resp. x = a, z = a b).
    """
    out = {"1": ((1, 1), (0, 1)), "~1": ((1, 0), (1, 1))}
    for k in range(2, n + 1):
        (a, b), (c, d) = out[f"~{k - 1}"]
        # origin of ~(k-1): coordinates (x, z); chart x = a'b', z = b'
        out[str(k)] = ((a, a + b), (c, c + d))
        out[f"~{k}"] = ((a + b, b), (c + d, d))
    return out


def pullback(twist: TwistExpression, chart: Chart):
    return sympy.factor(sympy.cancel(twist.expression().subs(chart.substitution(), simultaneous=True)))


def _split_monomial(poly: sympy.Poly):
    exps = poly.monoms()
    mu = min(e[0] for e in exps)
    mv = min(e[1] for e in exps)
    rest = sympy.Poly.from_dict({(e[0] - mu, e[1] - mv): c for e, c in poly.as_dict().items()},
                                u, v, domain=poly.domain)
    return mu, mv, rest


def is_good(expr, point=(0, 0)) -> GoodForm:
    """Classify expr near (0, v0) as u^-m v^-n beta with beta(0, v0) != 0."""
    v0 = sympy.nsimplify(point[1])
    num, den = sympy.fraction(sympy.cancel(sympy.sympify(expr)))
    if num == 0:
        return GoodForm(GoodKind.HOLOMORPHIC)
    pn = sympy.Poly(num, u, v, extension=True) if num.has(sympy.I) else sympy.Poly(num, u, v)
    pd = sympy.Poly(den, u, v, extension=True) if den.has(sympy.I) else sympy.Poly(den, u, v)
    nu, nv, n_rest = _split_monomial(pn)
    du, dv, d_rest = _split_monomial(pd)
    m, n = du - nu, dv - nv
    d_at = sympy.nsimplify(d_rest.as_expr().subs({u: 0, v: v0}))
    if d_at == 0:
        return GoodForm(GoodKind.BAD)
    mm, nn = max(m, 0), max(n, 0)
    if mm == 0 and nn == 0:
        return GoodForm(GoodKind.HOLOMORPHIC)
    beta = n_rest.as_expr() * u ** (mm - m) * v ** (nn - n) / d_rest.as_expr()
    beta0 = sympy.nsimplify(sympy.expand(beta.subs({u: 0, v: v0})))
    if beta0 == 0:
        return GoodForm(GoodKind.BAD)
    return GoodForm(GoodKind.GOOD, mm, nn, beta0)


def resolve(twist: TwistExpression, config: DivisorConfig) -> Resolution:
    validate(config)
    comps = [(i, c) for i, c in enumerate(config.components) if c.kind.value == "AtInfinity"]
    n = config.max_q
    psi = twist.psi
    if not psi.is_zero and psi.q > n:
        raise UnsupportedTwist(f"twist order q={psi.q} exceeds n={n}", q=psi.q, n=n)
    n = max(n, 1)
    res = Resolution(psi)
    res.charts = unprimed_charts(n)
    home = None
    if not psi.is_zero:
        mu = to_gaussian(psi.mu0)
        q = psi.q
        home = res.chart(str(q + 1) if q < n else f"~{n}")
        res.translation = (home.label, (0, 1 / mu))
        for s in range(1, q + 1):
            res.charts.append(Chart(f"{s}'", home.exponents, 1 / mu, ((1, 1), (s - 1, s))))
        res.charts.append(Chart(f"~{q}'", home.exponents, 1 / mu, ((1, 0), (q, 1))))
    for ch in res.charts:
        res.chart_forms[ch.label] = is_good(pullback(twist, ch), (0, 0))
    for idx, comp in comps:
        if not psi.is_zero and comp.factor == psi:
            label, point = f"~{psi.q}'", (0, 0)
        else:
            label = str(comp.factor.q + 1) if comp.factor.q < n else f"~{n}"
            point = (0, 1 / to_gaussian(comp.factor.mu0))
            if home is not None and label == home.label and point == res.translation[1]:
                label, point = f"~{psi.q}'", (0, 0)
        form = is_good(pullback(twist, res.chart(label)), point)
        res.intersections.append((idx, label, point, form))
    return res
