import pytest

from algebra.polyring import PolyZ
from algebra.qanalogs import (
    DivisionInexact,
    InvalidParameter,
    QParam,
    binom2,
    exact_div,
    gauss_binom,
    gl_order,
    is_prime,
    matrix_count,
    order_of,
    prime_power,
    q_binomial_expand,
    q_pochhammer_poly,
    rank_count,
    rank_count_product,
)


@pytest.mark.parametrize(
    "n,r,q,expected",
    [
        (0, 0, 2, 1),
        (3, 0, 5, 1),
        (3, 3, 5, 1),
        (3, 1, 2, 7),
        (4, 2, 2, 35),
        (2, 1, 3, 4),
        (2, 3, 2, 0),
        (2, 1, 2, 3),
        (3, 5, 7, 0),
        (4, 2, 3, 130),
    ],
)
def test_gauss_binom_values(n, r, q, expected):
    assert gauss_binom(n, r, q) == expected


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_gauss_binom_symmetry(q):
    for n in range(11):
        for r in range(n + 1):
            assert gauss_binom(n, r, q) == gauss_binom(n, n - r, q)


def test_gauss_binom_rejects_negative_arguments():
    with pytest.raises(InvalidParameter):
        gauss_binom(-1, 0, 2)
    with pytest.raises(InvalidParameter):
        gauss_binom(2, 1, 1)


def test_binom2():
    assert [binom2(m) for m in range(5)] == [0, 0, 1, 3, 6]


def test_gl_order_and_rank_count():
    assert gl_order(0, 7) == 1
    assert gl_order(2, 2) == 6
    assert gl_order(3, 2) == 168
    assert rank_count(2, 1, 2) == 9
    assert rank_count(2, 2, 2) == 6
    assert rank_count(3, 3, 2) == 168
    assert rank_count(2, 3, 2) == 0


def test_rank_count_is_exact_for_large_parameters():
    value = rank_count(6, 6, 5)
    assert value == gl_order(6, 5)
    assert value > 10**25
    assert value == rank_count_product(6, 6, 5)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_rank_counts_partition_all_matrices(q):
    for n in range(7):
        assert sum(rank_count(n, r, q) for r in range(n + 1)) == matrix_count(n, q)
        for r in range(n + 1):
            assert rank_count(n, r, q) == rank_count_product(n, r, q)


def test_q_pochhammer_expansion():
    assert q_pochhammer_poly(0, 3) == PolyZ.one()
    assert q_pochhammer_poly(2, 2).coeffs == (1, -3, 2)
    assert q_pochhammer_poly(3, 2).coeffs == (1, -7, 14, -8)


@pytest.mark.parametrize("q", [2, 3, 5])
def test_q_binomial_theorem(q):
    for n in range(13):
        assert q_binomial_expand(n, q) == q_pochhammer_poly(n, q)


def test_exact_div():
    assert exact_div(12, 4) == 3
    assert exact_div(-12, 4) == -3
    with pytest.raises(DivisionInexact) as err:
        exact_div(7, 2, "test")
    assert err.value.numerator == 7
    assert err.value.denominator == 2


def test_prime_checks():
    assert [p for p in range(20) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert prime_power(9) == QParam(3, 2)
    assert prime_power(2) == QParam(2, 1)
    assert prime_power(16) == QParam(2, 4)
    assert prime_power(12) is None
    assert prime_power(1) is None


def test_prime_power_large_inputs():
    # primes just below and above 10^6 keep trial division short
    assert prime_power(999983) == QParam(999983, 1)
    assert prime_power(999983**2) == QParam(999983, 2)
    assert prime_power(1000003) == QParam(1000003, 1)
    assert prime_power(999983 * 1000003) is None
    assert prime_power(2**40) == QParam(2, 40)
    assert prime_power(3**25) == QParam(3, 25)


def test_qparam():
    qp = QParam.of(25)
    assert (qp.p, qp.m, qp.q) == (5, 2, 25)
    assert int(qp) == 25
    assert str(qp) == "5^2"
    assert gauss_binom(2, 1, qp) == 26
    with pytest.raises(InvalidParameter):
        QParam.of(6)
    with pytest.raises(InvalidParameter):
        QParam(4, 1)


def test_order_of():
    assert order_of(7) == 7
    assert order_of(QParam(2, 3)) == 8
    for bad in (1, 0, True, 2.0):
        with pytest.raises(InvalidParameter):
            order_of(bad)
