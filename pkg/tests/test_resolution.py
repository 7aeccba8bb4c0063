import sympy
import pytest
from hypothesis import given, settings, strategies as st

from stokesdata.divisor_config import DivisorComponent, DivisorConfig, Kind, example_config
from stokesdata.errors import NonGaussianCoefficient, UnsupportedTwist
from stokesdata.exponent_order import ExponentialFactor, PolarCoefficient
from stokesdata.resolution import (Chart, GoodKind, TwistExpression, blowup_chain, is_good, pullback,
                                   resolve, to_gaussian, unprimed_charts, u, v)

ZERO = ExponentialFactor.zero()
ONE_T = ExponentialFactor.polar(1)


def config_q(*factors, r=1):
    return DivisorConfig(r, tuple(DivisorComponent(Kind.AT_INFINITY, f) for f in factors))


def test_psi_zero_q1_tilde_chart():
    res = resolve(TwistExpression(ZERO), config_q(ONE_T))
    assert sympy.simplify(pullback(TwistExpression(ZERO), res.chart("~1")) - 1 / (u * v)) == 0
    form = res.chart_forms["~1"]
    assert (form.kind, form.m, form.n, form.beta0) == (GoodKind.GOOD, 1, 1, 1)


def test_example_twist_is_total():
    res = resolve(TwistExpression(ONE_T), example_config(1))
    assert res.total
    assert [c.label for c in res.charts] == ["1", "~1", "1'", "~1'"]
    assert res.translation[0] == "~1" and res.translation[1] == (0, 1)
    # the component matching psi sits at the origin of the last chart
    assert res.intersections[0][1:3] == ("~1'", (0, 0))


def test_intersection_point_mu5():
    res = resolve(TwistExpression(ZERO), config_q(ExponentialFactor.polar(1, 5)))
    _, label, point, form = res.intersections[0]
    assert label == "~1" and point == (0, sympy.Rational(1, 5))
    assert form.kind is not GoodKind.BAD


def test_pullback_examples():
    ident = Chart("id", ((1, 0), (0, 1)))
    assert sympy.simplify(pullback(TwistExpression(ZERO), ident) - 1 / sympy.Symbol("v")) == 0
    k1 = unprimed_charts(1)[0]
    assert sympy.simplify(pullback(TwistExpression(ZERO), k1) - 1 / v) == 0
    tilde = Chart("~1", ((1, 0), (1, 1)))
    assert sympy.simplify(pullback(TwistExpression(ONE_T), tilde) - (1 - v) / (u * v)) == 0


def test_is_good_examples():
    g = is_good(1 / (u * v), (0, 2))
    assert (g.kind, g.m, g.n, g.beta0) == (GoodKind.GOOD, 1, 1, 1)
    assert is_good((1 - v) / (u * v), (0, 1)).kind is GoodKind.BAD
    g = is_good((1 - v) / (u * v), (0, 2))
    assert (g.kind, g.m, g.n, g.beta0) == (GoodKind.GOOD, 1, 1, -1)
    assert is_good(u + v, (0, 0)).kind is GoodKind.HOLOMORPHIC


def test_unsupported_twist():
    with pytest.raises(UnsupportedTwist):
        resolve(TwistExpression(ExponentialFactor.polar(3)), config_q(ONE_T))


def test_non_gaussian_rejected():
    with pytest.raises(NonGaussianCoefficient):
        to_gaussian(PolarCoefficient(1, "1/3"))


@pytest.mark.parametrize("n", range(1, 6))
def test_psi_zero_chart_formulas(n):
    twist = TwistExpression(ZERO)
    res = resolve(twist, config_q(ExponentialFactor.polar(n)))
    assert res.total
    for k in range(1, n + 1):
        assert sympy.simplify(pullback(twist, res.chart(str(k))) - u ** (1 - k) * v ** (-k)) == 0


@pytest.mark.parametrize("n", range(1, 6))
def test_charts_compose_from_point_blowups(n):
    chain = blowup_chain(n)
    for ch in unprimed_charts(n):
        assert ch.exponents == chain[ch.label]
        (a, b), (c, d) = ch.exponents
        assert min(a, b, c, d) >= 0 and abs(a * d - b * c) == 1


def test_primed_charts_blow_down():
    # substituting the primed chart into the home chart reproduces its own (t, y)
    res = resolve(TwistExpression(ExponentialFactor.polar(1, 2, 1)), config_q(ExponentialFactor.polar(2)))
    home = res.chart(res.translation[0])
    for ch in res.charts:
        if ch.inner is None:
            continue
        (a2, b2), (c2, d2) = ch.inner
        bu, bv = u ** a2 * v ** b2, u ** c2 * v ** d2 + ch.translation
        ts = home.substitution()
        lhs = {k: e.subs({u: bu, v: bv}, simultaneous=True) for k, e in ts.items()}
        for k, e in ch.substitution().items():
            assert sympy.simplify(lhs[k] - e) == 0


gaussian_factors = st.builds(lambda q, m, k: ExponentialFactor.polar(q, m, sympy.Rational(k, 2)),
                             st.integers(1, 3), st.integers(1, 4), st.integers(0, 3))


@settings(max_examples=20)
@given(st.lists(gaussian_factors, min_size=1, max_size=3, unique=True), st.data())
def test_resolution_is_total(factors, data):
    cfg = config_q(*factors)
    n = cfg.max_q
    psi = data.draw(st.one_of(st.just(ZERO), gaussian_factors.filter(lambda f: f.q <= n)))
    res = resolve(TwistExpression(psi), cfg)
    assert all(f.kind is not GoodKind.BAD for f in res.chart_forms.values())
    assert res.total
    spots = [(label, point) for _, label, point, _ in res.intersections]
    assert len(spots) == len(factors) == len(set(spots))
