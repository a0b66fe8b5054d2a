import json
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from mockforms.errors import InsufficientPrecision, NotAUnit, PoleAtQZero
from mockforms.ring import MINUS_ONE, ONE, CycNumber, root_of_unity
from mockforms.series import (QXSeries, dumps, equal_up_to, evaluate,
                              geom_expand, invert_unit, loads, mono_scale,
                              to_json_dict)

exps = st.fractions(min_value=-2, max_value=4, max_denominator=4)
coeffs = st.sampled_from([
    CycNumber.from_rational(1), CycNumber.from_rational(-2),
    CycNumber.from_rational(F(1, 3)), root_of_unity(1, 4, 4),
    root_of_unity(1, 8, 8),
])


def series_strategy(trunc=5):
    triples = st.lists(st.tuples(coeffs, exps, exps), min_size=0, max_size=5)
    return triples.map(lambda ts: QXSeries.from_terms(ts, trunc))


def test_add_identity_and_cancellation():
    f = QXSeries.from_terms([(ONE, F(1, 2), 1), (MINUS_ONE, 2, -1)], 6)
    assert equal_up_to(f + QXSeries.zero(6), f, 6) is None
    g = QXSeries.monomial(ONE, F(1, 2), 1, 6)
    h = QXSeries.monomial(MINUS_ONE, F(1, 2), 1, 6)
    total = g + h
    assert total.is_zero() and total.trunc == 6


def test_add_truncation_rule():
    f = QXSeries.monomial(ONE, 1, 0, 3)
    g = QXSeries.monomial(ONE, 1, 0, 5)
    assert (f + g).trunc == 3
    assert (g + f).trunc == 3


def test_mul_monomials():
    a = QXSeries.monomial(ONE, F(1, 4), F(1, 2), 8)
    b = QXSeries.monomial(ONE, F(1, 4), F(-1, 2), 8)
    prod = a * b
    assert prod.coefficient(F(1, 2), 0) == ONE


@given(series_strategy(), series_strategy(), series_strategy())
@settings(max_examples=40, deadline=None)
def test_ring_laws(f, g, h):
    q = min(f.trunc, g.trunc, h.trunc, F(3))
    lhs = f * (g + h)
    rhs = f * g + f * h
    assert equal_up_to(lhs, rhs, min(lhs.trunc, rhs.trunc, q)) is None
    ab, ba = f * g, g * f
    assert equal_up_to(ab, ba, min(ab.trunc, ba.trunc)) is None


def test_mul_precision_rule():
    f = QXSeries.monomial(ONE, 2, 0, 5)     # val 2, trunc 5
    g = QXSeries.monomial(ONE, -1, 0, 4)    # val -1, trunc 4
    assert (f * g).trunc == min(5 + (-1), 4 + 2)


def test_mono_scale_inverse():
    f = QXSeries.from_terms([(ONE, 0, 0), (MINUS_ONE, 1, 2)], 5)
    i = root_of_unity(1, 4, 4)
    g = mono_scale(f, i, F(-3, 8), 0)
    assert g.coefficient(F(-3, 8), 0) == i
    back = mono_scale(g, i.inverse(), F(3, 8), 0)
    assert equal_up_to(back, f, 5) is None


def test_geom_expand_positive():
    g = geom_expand(1, MINUS_ONE, F(1), F(1, 2), 2)
    # 1/(1 + x q^(1/2)) = 1 - x q^(1/2) + x^2 q - x^3 q^(3/2) + O(q^2)
    assert g.coefficient(0, 0) == ONE
    assert g.coefficient(F(1, 2), 1) == MINUS_ONE
    assert g.coefficient(1, 2) == ONE
    assert g.coefficient(F(3, 2), 3) == MINUS_ONE


def test_geom_expand_negative_valuation():
    g = geom_expand(1, ONE, F(1), F(-2), 4)
    assert g.coefficient(2, -1) == MINUS_ONE
    assert equal_up_to(g, QXSeries.monomial(MINUS_ONE, 2, -1, 4), 4) is None


@given(st.sampled_from([F(1, 2), F(3, 2), F(-2), F(5, 4)]),
       st.sampled_from([F(1), F(-1), F(1, 2)]),
       st.sampled_from([1, -1]))
@settings(max_examples=30, deadline=None)
def test_geom_expand_defining_property(b, a, sign):
    c = root_of_unity(1, 8, 8)
    g = geom_expand(sign, c, a, b, 10)
    den = QXSeries.one(12) - QXSeries.monomial(
        c if sign == 1 else -c, b, a, 12)
    prod = den * g
    one = QXSeries.one(prod.trunc)
    assert equal_up_to(prod, one, min(prod.trunc, F(8))) is None


def test_geom_expand_pole_at_q_zero():
    with pytest.raises(PoleAtQZero):
        geom_expand(1, ONE, F(1), F(0), 4)


def test_invert_unit_monomial():
    f = QXSeries.monomial(ONE, F(1, 16), F(-1, 4), 6)
    g = invert_unit(f, 5)
    assert g.coefficient(F(-1, 16), F(1, 4)) == ONE


def test_invert_unit_self_check():
    # theta_{-1/2,1}-like series: leading q^(1/16) x^(-1/4) single monomial
    from mockforms.special import ThetaSpec, theta
    f = theta(ThetaSpec.of(F(-1, 2), 1), 8)
    g = invert_unit(f, 6)
    prod = f * g
    assert equal_up_to(prod, QXSeries.one(prod.trunc),
                       min(prod.trunc, F(6))) is None


def test_invert_unit_two_term_leading_is_not_a_unit():
    f = QXSeries.from_terms([(ONE, 0, F(1, 2)), (ONE, 0, F(-1, 2))], 5)
    with pytest.raises(NotAUnit):
        invert_unit(f, 5)
    with pytest.raises(ZeroDivisionError):
        invert_unit(QXSeries.zero(5), 5)


def test_equal_up_to_verdicts():
    f = QXSeries.from_terms([(ONE, 0, 0), (ONE, 3, 1)], 8)
    assert equal_up_to(f, f, 8) is None
    g = f + QXSeries.monomial(ONE, 5, 1, 8)
    mm = equal_up_to(f, g, 8)
    assert (mm.qexp, mm.xexp) == (5, 1)
    with pytest.raises(InsufficientPrecision):
        equal_up_to(f, g, 9)


def _naive_euler_inverse(order):
    """Pentagonal-number oracle: coefficients of 1/prod(1-q^n) (partitions)."""
    parts = [1] + [0] * order
    for n in range(1, order + 1):
        for k in range(n, order + 1):
            parts[k] += parts[k - n]
    return parts


def test_euler_product_times_partition_series():
    from mockforms.special import euler_product
    order = 12
    em = euler_product("one_minus", order)
    inv = QXSeries.from_terms(
        [(CycNumber.from_rational(c), k, 0)
         for k, c in enumerate(_naive_euler_inverse(order))], order)
    prod = em * inv
    assert equal_up_to(prod, QXSeries.one(prod.trunc),
                       min(prod.trunc, F(order))) is None


@given(series_strategy(trunc=8))
@settings(max_examples=30, deadline=None)
def test_truncation_is_conservative(f):
    low = f.truncate(4)
    again = f.truncate(6).truncate(4)
    assert equal_up_to(low, again, 4) is None


def test_serialization_roundtrip():
    f = QXSeries.from_terms(
        [(root_of_unity(1, 8, 8), F(-3, 8), F(1, 2)), (MINUS_ONE, 2, -1)], 6)
    blob = dumps(f)
    g = loads(blob)
    assert equal_up_to(f, g, 6) is None
    obj = to_json_dict(f)
    assert obj["trunc"] == "6"
    assert obj["lattice"] == [f.dq, f.dx]
    json.dumps(obj)  # must be plain JSON


def test_evaluate_branch_consistency():
    f = QXSeries.monomial(ONE, F(1, 2), F(1, 2), 4)
    tau, z = 0.9j, 0.3 + 0.2j
    import cmath
    expect = cmath.exp(2j * cmath.pi * (0.5 * tau + 0.5 * z))
    assert abs(evaluate(f, tau, z) - expect) < 1e-14
