import pytest

from algebra.counts import TraceClass, f_row, g_count
from algebra.polyring import (
    IDENTITY_Q_VALUES,
    A_poly,
    A_poly_rec,
    PolyZ,
    a2_closed_form,
    f_poly,
    f_poly_rec,
    f_table_rec,
    g_poly,
    g_poly_rec,
    poly_divexact,
    poly_scale_arg,
    recurrence_step,
)
from algebra.qanalogs import DivisionInexact, InvalidParameter, q_pochhammer_poly

ZERO, NONZERO = TraceClass.ZERO, TraceClass.NONZERO


def test_polyz_normalises_trailing_zeros():
    p = PolyZ((1, 2, 0, 0))
    assert p.coeffs == (1, 2)
    assert p.degree == 1
    assert PolyZ.zero().degree == -1
    assert PolyZ((0, 0)).is_zero()
    assert p.coeff(5) == 0


def test_polyz_arithmetic():
    a = PolyZ((1, -1))
    b = PolyZ((1, -2))
    assert (a * b).coeffs == (1, -3, 2)
    assert (a + b).coeffs == (2, -3)
    assert (a - a).is_zero()
    assert (3 * a).coeffs == (3, -3)
    assert (-a).coeffs == (-1, 1)
    assert (a * b).evaluate(2) == a.evaluate(2) * b.evaluate(2)
    assert str(PolyZ((1, -3, 2))) == "1 - 3X + 2X^2"
    assert str(PolyZ.zero()) == "0"


def test_polyz_is_immutable_and_hashable():
    p = PolyZ((1, 2))
    with pytest.raises(AttributeError):
        p.foo = 1
    assert {p: 1}[PolyZ([1, 2, 0])] == 1


def test_poly_scale_arg():
    assert poly_scale_arg(PolyZ((1, 1, 1)), 3).coeffs == (1, 3, 9)


def test_poly_divexact():
    product = PolyZ((1, -1)) * PolyZ((1, -2))
    assert poly_divexact(product, PolyZ((1, -1))) == PolyZ((1, -2))
    assert poly_divexact(PolyZ.zero(), PolyZ((1, 1))).is_zero()
    with pytest.raises(DivisionInexact):
        poly_divexact(PolyZ((1, 0, 1)), PolyZ((1, 1)))
    with pytest.raises(DivisionInexact):
        poly_divexact(PolyZ((1, 1)), PolyZ.zero())


def test_small_generating_functions():
    assert A_poly(0, 2) == PolyZ.one()
    assert A_poly(1, 3).coeffs == (1, 2)
    assert A_poly(2, 2).coeffs == (1, 9, 6)
    assert a2_closed_form(2) == A_poly(2, 2)
    assert g_poly(2, 1, 2).coeffs == (1, 1, -2)
    assert g_poly(2, 2, 2) == q_pochhammer_poly(2, 2)


def test_recurrence_step_rejects_n_zero():
    with pytest.raises(InvalidParameter):
        recurrence_step(PolyZ.one(), 0, 2)


@pytest.mark.parametrize("q", IDENTITY_Q_VALUES)
def test_g_poly_coefficients_are_g_count(q):
    for n in range(9):
        for k in range(n + 1):
            poly = g_poly(n, k, q)
            assert poly.degree <= n
            assert [poly.coeff(r) for r in range(n + 1)] == [g_count(n, r, k, q) for r in range(n + 1)]


@pytest.mark.parametrize("q", IDENTITY_Q_VALUES)
def test_recurrences_match_closed_forms(q):
    for n in range(9):
        assert A_poly_rec(n, q) == A_poly(n, q)
        for k in range(n + 1):
            assert g_poly_rec(n, k, q) == g_poly(n, k, q)


@pytest.mark.parametrize("q", [2, 3, 4])
def test_f_generating_function_recurrence(q):
    for n in range(7):
        for k in range(n + 1):
            for alpha in (ZERO, NONZERO):
                assert f_poly_rec(n, k, q, alpha) == f_poly(n, k, q, alpha)


@pytest.mark.parametrize("q", [2, 3, 4])
def test_f_table_rec_rows_match_f_count(q):
    for n in range(7):
        for k in range(n + 1):
            for alpha in (ZERO, NONZERO):
                assert f_table_rec(n, k, q, alpha) == f_row(n, k, q, alpha)


def test_f_table_rec_small_rows():
    assert f_table_rec(2, 1, 2, ZERO) == [1, 5, 2]
    assert f_table_rec(2, 1, 2, NONZERO) == [0, 4, 4]
    with pytest.raises(InvalidParameter):
        f_table_rec(1, 2, 2, ZERO)


@pytest.mark.parametrize("q", IDENTITY_Q_VALUES)
def test_low_codimension_quotients(q):
    for k in range(6):
        base = q_pochhammer_poly(k, q)
        assert poly_divexact(g_poly(k + 1, k, q), base) == PolyZ((1, (q - 1) * q**k))
        assert poly_divexact(g_poly(k + 2, k, q), base) == poly_scale_arg(a2_closed_form(q), q**k)
