from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from stokesdata.errors import EqualFactors, IrrationalArgument, StokesDirectionHit
from stokesdata.exponent_order import (Angle, ComparisonResult as CR, ExponentialFactor, compare_at,
                                       cos_sum_sign, stokes_directions, total_order)

ZERO = ExponentialFactor.zero()
ONE_T = ExponentialFactor.polar(1)

angles = st.builds(lambda p, q: Angle(Fraction(p, q)), st.integers(0, 47), st.integers(1, 24))
factors = st.one_of(
    st.just(ZERO),
    st.builds(lambda q, m, a, d: ExponentialFactor.polar(q, Fraction(m, d), Fraction(a, 12)),
              st.integers(1, 3), st.integers(1, 6), st.integers(0, 23), st.integers(1, 3)),
)


def test_angle_rendering():
    assert str(Angle("1/2")) == "1/2·π"
    assert str(Angle(1)) == "1·π"
    assert str(Angle(0)) == "0·π"
    assert Angle(Fraction(-1, 2)) == Angle("3/2")
    assert Angle.parse("3/2·π") == Angle("3/2")


def test_factor_round_trip():
    for f in [ZERO, ONE_T, ExponentialFactor.polar(1, 1, 1), ExponentialFactor.polar(2, 3, "1/2"),
              ExponentialFactor.polar(3, "2/5", "7/4")]:
        assert ExponentialFactor.parse(str(f)) == f
    assert str(ExponentialFactor.polar(1, 1, 1)) == "-1/t"


def test_compare_examples():
    assert compare_at(ZERO, ONE_T, Angle(0)) is CR.LESS_EQ
    assert compare_at(ONE_T, ONE_T, Angle("1/3")) is CR.EQUAL
    assert compare_at(ZERO, ONE_T, Angle("1/2")) is CR.STOKES
    assert compare_at(ZERO, ONE_T, Angle(1)) is CR.GREATER_EQ


def test_stokes_direction_examples():
    assert stokes_directions(ZERO, ONE_T) == [Angle("1/2"), Angle("3/2")]
    with pytest.raises(EqualFactors):
        stokes_directions(ONE_T, ONE_T)
    i_t2 = ExponentialFactor.polar(2, 1, "1/2")
    assert stokes_directions(ZERO, i_t2) == [Angle(0), Angle("1/2"), Angle(1), Angle("3/2")]


def _scan_sign_changes(phi, psi, steps=4000):
    # oracle: sample Re of the leading coefficient times e^{-iq theta} on a fine grid
    q = max(phi.q, psi.q)

    def value(f, th):
        if f.is_zero or f.q < q:
            return 0
        return float(f.mu0.modulus) * mpmath.cos(mpmath.pi * (float(f.mu0.argument.turns) - q * th))

    # offset samples so that no sample sits on a zero; count changes around the circle
    grid = [2 * (k + 0.5) / steps for k in range(steps)]
    vals = [value(phi, th) - value(psi, th) for th in grid]
    return sum(1 for a, b in zip(vals, vals[1:] + vals[:1]) if (a < 0) != (b < 0))


def test_i_t2_directions_against_scan():
    i_t2 = ExponentialFactor.polar(2, 1, "1/2")
    assert _scan_sign_changes(ZERO, i_t2) == len(stokes_directions(ZERO, i_t2))


def test_non_rational_argument_directions():
    a = ExponentialFactor.polar(1, 2)
    b = ExponentialFactor.polar(1, 1, "1/3")
    assert stokes_directions(a, b) == [Angle("1/3"), Angle("4/3")]
    c = ExponentialFactor.polar(1, 1, "1/4")
    assert stokes_directions(ONE_T, c) == [Angle("1/8"), Angle("9/8")]


def test_irrational_argument_rejected():
    a = ExponentialFactor.polar(1, 3)
    b = ExponentialFactor.polar(1, 1, "1/2")
    # 3 - i has argument -arctan(1/3), not a rational multiple of pi
    with pytest.raises(IrrationalArgument):
        stokes_directions(a, b)


def test_total_order_examples():
    assert total_order([ZERO, ONE_T], Angle(0)) == [ZERO, ONE_T]
    assert total_order([ZERO, ONE_T], Angle(1)) == [ONE_T, ZERO]
    with pytest.raises(StokesDirectionHit):
        total_order([ZERO, ONE_T], Angle("1/2"))


def test_cos_sum_exact_zero():
    # cos(0) + cos(2π/3) + cos(4π/3) = 0
    assert cos_sum_sign([(1, 0), (1, Fraction(2, 3)), (1, Fraction(4, 3))]) == 0
    assert cos_sum_sign([(1, 0), (1, Fraction(2, 3))]) == 1


def _oracle(phi, psi, theta):
    """Sign of Re(phi(t) - psi(t)) * r^q along arg t = theta, by interval arithmetic."""
    iv = mpmath.iv
    iv.dps = 60
    q = max(phi.q, psi.q)
    r = iv.mpf(10) ** -40
    th = iv.mpf(theta.turns.numerator) / theta.turns.denominator

    def re_part(f):
        if f.is_zero:
            return iv.mpf(0)
        a = iv.mpf(f.mu0.argument.turns.numerator) / f.mu0.argument.turns.denominator
        m = iv.mpf(f.mu0.modulus.numerator) / f.mu0.modulus.denominator
        return m * iv.cos(iv.pi * (a - f.q * th)) * r ** (q - f.q)

    val = re_part(phi) - re_part(psi)
    if val.b < -1e-20:
        return -1
    if val.a > 1e-20:
        return 1
    return 0


@given(factors, factors, angles)
def test_compare_matches_interval_oracle(phi, psi, theta):
    res = compare_at(phi, psi, theta)
    if phi == psi:
        assert res is CR.EQUAL
        return
    expected = {-1: CR.LESS_EQ, 1: CR.GREATER_EQ, 0: CR.STOKES}[_oracle(phi, psi, theta)]
    assert res is expected


@given(factors, factors, angles)
def test_stokes_iff_in_directions(phi, psi, theta):
    if phi == psi:
        return
    try:
        dirs = stokes_directions(phi, psi)
    except IrrationalArgument:
        assert compare_at(phi, psi, theta) is not CR.STOKES
        return
    assert (compare_at(phi, psi, theta) is CR.STOKES) == (theta in dirs)


@given(st.builds(lambda m, a: ExponentialFactor.polar(1, m, Fraction(a, 12)), st.integers(1, 5),
                 st.integers(0, 23)), factors, angles)
def test_pi_shift_reverses_for_q1(phi, psi, theta):
    if phi == psi or psi.q > 1:
        return
    a = compare_at(phi, psi, theta)
    b = compare_at(phi, psi, theta + Angle(1))
    flip = {CR.LESS_EQ: CR.GREATER_EQ, CR.GREATER_EQ: CR.LESS_EQ, CR.STOKES: CR.STOKES}
    assert b is flip[a]


@given(st.lists(factors, min_size=1, max_size=5, unique=True), angles)
def test_total_order_adjacent_pairs(fs, theta):
    try:
        out = total_order(fs, theta)
    except StokesDirectionHit:
        assert any(compare_at(a, b, theta) is CR.STOKES for a in fs for b in fs if a != b)
        return
    assert sorted(map(str, out)) == sorted(map(str, fs))
    for a, b in zip(out, out[1:]):
        assert compare_at(a, b, theta) is CR.LESS_EQ
