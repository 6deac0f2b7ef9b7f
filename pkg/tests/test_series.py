"""Window bookkeeping, inversion and composition checks for the series engine."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from nckit.poly import Polynomial, delta, moment
from nckit.series import (
    LaurentSeries,
    NonUnitLeadingCoefficient,
    NotInvertible,
    OutOfTruncationRange,
    PositiveValuationRequired,
    constant_series,
    identity_series,
    lagrange_coeff_inverse,
    monomial_series,
    standard_series,
    zero_series,
)

F = Fraction


def series_of(low, *coeffs, order=None):
    return LaurentSeries(low, list(coeffs), order)


def rational_coeffs(s, lo, hi):
    return [s.coeff(k).as_rational() for k in range(lo, hi)]


# -- window semantics --------------------------------------------------------

def test_coeff_window():
    f = series_of(-1, 2, 0, 5)  # 2/z + 5z on [-1, 2)
    assert f.coeff(-3) == 0
    assert f.coeff(-1) == 2
    assert f.coeff(0) == 0
    assert f.coeff(1) == 5
    with pytest.raises(OutOfTruncationRange):
        f.coeff(2)


def test_leading_zero_normalization():
    f = series_of(-2, 0, 0, 7)
    assert f.low == 0 and f.order == 1
    assert f.coeff(0) == 7
    assert f.coeff(-1) == 0
    z = series_of(1, 0, 0, 0)
    assert z.is_zero and z.low == 3 and z.order == 4


def test_constructor_validation():
    with pytest.raises(ValueError):
        LaurentSeries(0, [1, 2], order=5)
    with pytest.raises(ValueError):
        LaurentSeries(3, [], order=3)


def test_add_mul_window_rules():
    f = series_of(1, 1, 1, 1)          # [1, 4)
    g = series_of(2, 1, 1)             # [2, 4)
    assert (f + g).order == 4 and (f + g).low == 1
    h = f * g
    assert h.low == 3 and h.order == min(4 + 2, 4 + 1)
    assert h.coeff(3) == 1 and h.coeff(4) == 2


def test_hadamard_rule():
    f = series_of(0, 2, 3, 4)
    g = series_of(1, 5, 7, 11)
    h = f.hadamard(g)
    assert h.low == 1 and h.order == 3
    assert h.coeff(1) == 15 and h.coeff(2) == 28
    with pytest.raises(ValueError):
        series_of(0, 1).hadamard(series_of(3, 1))


def test_derivative_drops_order_by_one():
    f = series_of(-1, 3, 9, 4, 5)  # 3/z + 9 + 4z + 5z^2 on [-1, 3)
    d = f.derivative()
    assert d.low == -2 and d.order == 2
    assert d.coeff(-2) == -3
    assert d.coeff(0) == 4
    assert d.coeff(1) == 10


def test_truncate_and_shift():
    f = series_of(0, 1, 2, 3)
    assert f.truncate(2).order == 2
    assert f.truncate(2).coeff(1) == 2
    assert f.shift(3).low == 3 and f.shift(3).order == 6
    t = f.truncate(0)
    assert t.is_zero and t.order == 0


# -- reciprocal --------------------------------------------------------------

def test_recip_geometric_series():
    one_minus_z = series_of(0, 1, -1, 0, 0, 0, 0, 0, 0)
    g = one_minus_z.recip()
    assert g.low == 0 and g.order == 8
    assert rational_coeffs(g, 0, 8) == [1] * 8


def test_recip_window_rule():
    f = series_of(2, 1, 4, 1)  # window [2, 5)
    g = f.recip()
    assert g.low == -2 and g.order == 5 - 4
    assert g.coeff(-2) == 1


def test_recip_errors():
    with pytest.raises(NotInvertible):
        zero_series(4).recip()
    poly_lead = LaurentSeries(0, [Polynomial.from_variable(moment(1)), 1])
    with pytest.raises(NonUnitLeadingCoefficient):
        poly_lead.recip()


@settings(max_examples=40, deadline=None)
@given(
    st.integers(-2, 2),
    st.lists(st.fractions(min_value=F(-5), max_value=F(5), max_denominator=6), min_size=1, max_size=6),
    st.fractions(min_value=F(1, 3), max_value=F(5), max_denominator=4),
)
def test_recip_multiplies_to_one(low, tail, lead):
    f = LaurentSeries(low, [lead] + tail)
    g = f.recip()
    h = f * g
    assert h.coeff(0) == 1
    for k in range(h.low, h.order):
        if k != 0:
            assert h.coeff(k) == 0


def test_power_zero_window():
    f = series_of(2, 1, 4, 1)
    p = f ** 0
    assert p.low == 0 and p.order == 3 and p.coeff(0) == 1
    assert (f ** -1) == f.recip()


# -- composition -------------------------------------------------------------

def test_compose_moebius_pair():
    n = 9
    f = series_of(1, *([1] * (n - 1)))              # z/(1-z)
    g = series_of(1, *[(-1) ** k for k in range(n - 1)])  # z/(1+z)
    h = f.compose(g)
    assert h.coeff(1) == 1
    for k in range(2, h.order):
        assert h.coeff(k) == 0


def test_compose_requires_valuations():
    f = series_of(0, 1, 1)
    bad_inner = series_of(0, 1, 1)
    with pytest.raises(PositiveValuationRequired):
        f.compose(bad_inner)
    laurent_outer = series_of(-1, 1, 1)
    with pytest.raises(PositiveValuationRequired):
        laurent_outer.compose(series_of(1, 1))


def test_compose_order_rule():
    f = series_of(0, *[1] * 6)   # order 6
    g = series_of(2, 1, 1)       # low 2, order 4
    h = f.compose(g)
    assert h.order == min(6 * 2, 4 + (1 - 1) * 2)
    f2 = series_of(3, 1, 1)      # low 3, order 5
    h2 = f2.compose(g)
    assert h2.order == min(5 * 2, 4 + 2 * 2)
    assert h2.low == 6


def test_comp_inverse_catalan():
    n = 8
    f = identity_series(n) - monomial_series(2, 1, n)  # z - z^2
    g = f.comp_inverse()
    # inverse is the Catalan generating series times z
    assert rational_coeffs(g, 1, 8) == [1, 1, 2, 5, 14, 42, 132]
    assert f.compose(g).coeff(1) == 1
    assert all(f.compose(g).coeff(k) == 0 for k in range(2, f.compose(g).order))


def test_comp_inverse_errors():
    with pytest.raises(NotInvertible):
        series_of(2, 1, 1).comp_inverse()
    with pytest.raises(NotInvertible):
        zero_series(5, low=1).comp_inverse()
    poly_linear = LaurentSeries(1, [Polynomial.from_variable(delta(1)), 1])
    with pytest.raises(NonUnitLeadingCoefficient):
        poly_linear.comp_inverse()


unit_series = st.builds(
    lambda lead, tail: LaurentSeries(1, [lead] + tail),
    st.sampled_from([F(1), F(-1), F(1, 2), F(3)]),
    st.lists(st.fractions(min_value=F(-4), max_value=F(4), max_denominator=5), min_size=4, max_size=9),
)


@settings(max_examples=30, deadline=None)
@given(unit_series)
def test_comp_inverse_round_trip(f):
    g = f.comp_inverse()
    assert g.order == f.order
    h = f.compose(g)
    assert h.coeff(1) == 1
    for k in range(2, h.order):
        assert h.coeff(k) == 0


@settings(max_examples=30, deadline=None)
@given(unit_series, st.integers(1, 6))
def test_lagrange_matches_direct_inverse(f, n):
    if n < f.order:
        direct = f.comp_inverse().coeff(n)
        assert lagrange_coeff_inverse(f, n) == direct


def test_lagrange_catalan_value():
    f = identity_series(9) - monomial_series(2, 1, 9)
    assert lagrange_coeff_inverse(f, 3) == 2
    assert lagrange_coeff_inverse(f, 5) == 14


def test_lagrange_requires_enough_order():
    f = identity_series(4) - monomial_series(2, 1, 4)
    with pytest.raises(OutOfTruncationRange):
        lagrange_coeff_inverse(f, 4)
    with pytest.raises(ValueError):
        lagrange_coeff_inverse(f, 0)


@settings(max_examples=30, deadline=None)
@given(
    st.integers(-3, 1),
    st.lists(st.fractions(min_value=F(-4), max_value=F(4), max_denominator=5), min_size=2, max_size=7),
)
def test_residue_of_derivative_vanishes(low, coeffs):
    f = LaurentSeries(low, coeffs)
    d = f.derivative()
    if d.low <= -1 < d.order:
        assert d.coeff(-1) == 0


# -- standard series ---------------------------------------------------------

def test_standard_series_shapes():
    m = standard_series("M", 5)
    assert m.low == 1 and m.order == 5
    assert m.coeff(1) == 1
    assert m.coeff(3) == Polynomial.from_variable(moment(2))
    d = standard_series("Delta", 4)
    assert d.coeff(2) == Polynomial.from_variable(delta(1))
    c = standard_series("C", 3)
    assert c.low == 0 and c.coeff(2) == Polynomial.parse("1*C3")
    with pytest.raises(ValueError):
        standard_series("Q", 4)


def test_standard_series_free_kind():
    f = standard_series("F", 4)
    assert f.coeff(0) == Polynomial.parse("1*M1")
    assert f.coeff(1) == Polynomial.parse("1*M2 - 1*M1^2")
    assert f.coeff(2) == Polynomial.parse("1*M3 - 3*M1*M2 + 2*M1^3")


def test_standard_series_boolean_kind():
    b = standard_series("B", 4)
    assert b.coeff(0) == Polynomial.parse("1*M1")
    assert b.coeff(1) == Polynomial.parse("1*M2 - 1*M1^2")
    assert b.coeff(2) == Polynomial.parse("1*M3 - 2*M1*M2 + 1*M1^3")


def test_hermite_style_coefficient_identity():
    # [z^n] (z / f^{<-1>}) equals [z^n] f'(z) * (z/f)^n
    f = LaurentSeries(1, [F(1), F(2), F(-1), F(1, 2), F(3), F(-2), F(1)])
    g = f.comp_inverse()
    z_over_g = g.recip().shift(1)
    for n in range(1, z_over_g.order):
        rhs = (f.derivative() * (f.recip().shift(1) ** n)).coeff(n)
        assert z_over_g.coeff(n) == rhs
