import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from braidtangle.errors import CapExceededError, DomainError, PoleError
from braidtangle.qseries import (
    DEFAULT_TOL,
    QTolerance,
    partial_product,
    pochhammer,
    pochhammer_ratio,
)

# Frozen after checking the 200- and 400-term partial products agree to
# better than 1e-12 (they agree to the last bit in double precision).
POCH_HALF_HALF = 0.2887880950866024


def test_zero_argument_is_one():
    assert pochhammer(0.0, 0.5) == 1.0


def test_zero_modulus_leaves_single_factor():
    assert pochhammer(0.3 + 0.0j, 0.0) == pytest.approx(0.7, abs=1e-15)
    assert pochhammer(0.25 - 0.5j, 0.0) == pytest.approx(0.75 + 0.5j, abs=1e-15)


def test_self_convergence_oracle_and_frozen_value():
    p200 = partial_product(0.5, 0.5, 200)
    p400 = partial_product(0.5, 0.5, 400)
    assert abs(p200 - p400) < 1e-12
    value = pochhammer(0.5 + 0.0j, 0.5)
    assert abs(value - p200) < 1e-12
    assert value.real == pytest.approx(POCH_HALF_HALF, abs=1e-12)
    assert value.imag == 0.0


@settings(max_examples=200, deadline=None)
@given(
    re=st.floats(-5.0, 5.0),
    im=st.floats(-5.0, 5.0),
    a=st.floats(0.0, 0.95),
)
def test_conjugation_commutes(re, im, a):
    x = complex(re, im)
    lhs = pochhammer(x.conjugate(), a)
    rhs = pochhammer(x, a).conjugate()
    assert abs(lhs - rhs) <= 1e-13 * max(1.0, abs(rhs))


@pytest.mark.parametrize(
    "x, a, n",
    [(2.0, 0.7, 40), (0.5 + 0.5j, 0.9, 120), (-3.0, 0.5, 30)],
)
def test_truncation_tail_bound(x, a, n):
    # Doubling the factor count moves the value by less than the geometric
    # tail bound of the shorter product.
    shorter = partial_product(x, a, n)
    longer = partial_product(x, a, 2 * n)
    tail = abs(x) * a ** n / (1.0 - a)
    bound = abs(shorter) * math.expm1(tail) + 1e-15
    assert abs(longer - shorter) <= bound


def test_ratio_identical_arguments_is_exactly_one():
    assert pochhammer_ratio(0.3 + 0.2j, -0.4j, 0.3 + 0.2j, -0.4j, 0.6) == 1.0


def test_ratio_of_conjugates_has_unit_modulus():
    x1 = 0.4 + 0.3j
    x2 = -0.2 + 0.6j
    ratio = pochhammer_ratio(x1, x2, x1.conjugate(), x2.conjugate(), 0.7)
    assert abs(abs(ratio) - 1.0) < 1e-13


def test_ratio_at_theta_pi_arguments_collapse():
    # z = 1/z = -1 makes the numerator and denominator argument sets equal.
    p, q = 0.1, 0.5
    sp = math.sqrt(p)
    z = -1.0
    ratio = pochhammer_ratio(-sp / q * z, -sp * q * z, -sp / q * z, -sp * q * z, p)
    assert ratio == 1.0


@pytest.mark.parametrize(
    "args, a",
    [
        ((0.5, -0.3 + 0.1j, 0.2j, 0.8), 0.3),
        ((1.5 + 0.5j, -1.2, 0.7 - 0.7j, -0.4j), 0.85),
    ],
)
def test_ratio_matches_quotient_of_products(args, a):
    interleaved = pochhammer_ratio(*args, a)
    separate = (
        pochhammer(args[0], a)
        * pochhammer(args[1], a)
        / (pochhammer(args[2], a) * pochhammer(args[3], a))
    )
    assert abs(interleaved - separate) < 1e-12


def test_mpmath_cross_check():
    mp = pytest.importorskip("mpmath")
    for x, a in [(0.5, 0.5), (-0.3 + 0.4j, 0.8), (2.0, 0.25)]:
        expected = complex(mp.qp(mp.mpmathify(x), mp.mpf(a)))
        assert abs(pochhammer(x, a) - expected) < 1e-12 * max(1.0, abs(expected))


def test_modulus_domain_errors():
    with pytest.raises(DomainError):
        pochhammer(0.5, -0.1)
    with pytest.raises(DomainError):
        pochhammer(0.5, 1.0)
    with pytest.raises(DomainError):
        partial_product(0.5, 1.2, 10)
    with pytest.raises(DomainError):
        pochhammer_ratio(1, 2, 3, 4, -0.5)


def test_tolerance_validation():
    with pytest.raises(DomainError):
        QTolerance(eps=0.0)
    with pytest.raises(DomainError):
        QTolerance(eps=-1e-9)
    with pytest.raises(DomainError):
        QTolerance(max_terms=0)
    assert DEFAULT_TOL.eps == 1e-15
    assert DEFAULT_TOL.max_terms == 10000


def test_partial_product_needs_positive_terms():
    with pytest.raises(DomainError):
        partial_product(0.5, 0.5, 0)


def test_cap_exceeded_is_distinct_error():
    tight = QTolerance(eps=1e-15, max_terms=5)
    with pytest.raises(CapExceededError):
        pochhammer(1.0 + 0.0j, 0.99, tight)
    with pytest.raises(CapExceededError):
        pochhammer_ratio(1.0, 1.0, 0.5, 0.5, 0.99, tight)


def test_denominator_pole_is_detected():
    with pytest.raises(PoleError):
        pochhammer_ratio(0.5, 0.5, 1.0, 0.5, 0.3)
    # Pole in a later factor: x a^1 = 1 at x = 2, a = 0.5.
    with pytest.raises(PoleError):
        pochhammer_ratio(0.5, 0.5, 2.0, 0.5, 0.5)
