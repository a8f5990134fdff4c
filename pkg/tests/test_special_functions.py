import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import jv

from lzspectra import ComplexOrder, DomainError, airy_ai, bessel_j, bessel_product_nicholson, legendre_p
from lzspectra.newberger_sum import bessel_pair
from lzspectra.special_functions import cos_pi, sin_pi

finite = st.floats(allow_nan=False, allow_infinity=False)


def order_strategy(max_re=20.0, max_im=5.0):
    return st.builds(
        complex,
        st.floats(-max_re, max_re, allow_nan=False),
        st.floats(-max_im, max_im, allow_nan=False),
    )


# --- ComplexOrder ---------------------------------------------------------


@given(finite, finite)
def test_conj_is_an_involution(re, im):
    mu = ComplexOrder(re, im)
    assert mu.conj().conj() == mu


def test_complex_order_accepts_several_spellings():
    assert ComplexOrder.of((1.5, -2)) == ComplexOrder(1.5, -2.0)
    assert ComplexOrder.of(1.5 - 2j) == ComplexOrder(1.5, -2.0)
    assert ComplexOrder.of(3) == ComplexOrder(3.0, 0.0)
    assert complex(-ComplexOrder(1, 2)) == -1 - 2j


def test_real_integer_detection():
    assert ComplexOrder(3, 0).is_real_integer()
    assert not ComplexOrder(3, 1e-12).is_real_integer()
    assert not ComplexOrder(3.5, 0).is_real_integer()


def test_sin_pi_is_exact_at_integers():
    for n in range(-6, 7):
        assert sin_pi(complex(n, 0)) == 0
        assert cos_pi(complex(n, 0)) == (-1) ** n


# --- bessel_j -------------------------------------------------------------


def test_bessel_trivial_values():
    assert bessel_j((0, 0), 0.0).value == 1
    assert bessel_j((0.5, 0), math.pi / 2).value == pytest.approx(2 / math.pi, rel=1e-14)


def test_bessel_complex_order_reference():
    # extended-precision ascending series, 200 terms (tests/oracles.py)
    ref = 0.5805326852532042 + 0.07030991821184256j
    r = bessel_j((0.3, 0.2), 1.7)
    assert abs(r.value - ref) <= 1e-14 * abs(ref)
    assert r.est_error <= 1e-12 * abs(ref)
    assert r.terms_used >= 1


def test_bessel_zero_argument():
    assert bessel_j(2.5 + 1j, 0.0).value == 0
    assert bessel_j(0, 0.0).value == 1


@pytest.mark.parametrize("x", [-1.0, math.inf, math.nan])
def test_bessel_rejects_bad_argument(x):
    with pytest.raises(DomainError):
        bessel_j(0.3, x)


def test_bessel_rejects_nonfinite_order():
    with pytest.raises(DomainError):
        bessel_j(complex(math.nan, 0), 1.0)


def test_bessel_large_imaginary_order_does_not_overflow():
    v = bessel_j((2.0, 60.0), 3.0).value
    ref = complex(mp.besselj(mp.mpc(2, 60), 3))
    assert abs(v - ref) <= 1e-12 * abs(ref)


@settings(deadline=None, max_examples=60)
@given(order_strategy(), st.floats(1e-3, 200))
def test_conjugate_symmetry(mu, x):
    a = bessel_j(mu, x).value
    b = bessel_j(mu.conjugate(), x).value
    assert abs(b - a.conjugate()) <= 1e-12 * abs(a) + 1e-300


@settings(deadline=None, max_examples=80)
@given(order_strategy(max_re=50.0, max_im=10.0), st.floats(0.01, 200))
def test_bessel_matches_mpmath(mu, x):
    v = bessel_j(mu, x).value
    ref = complex(mp.besselj(mp.mpc(mu.real, mu.imag), x))
    # relative to the local size of J near this order, so that zeros of
    # real-order J do not turn rounding into huge relative errors
    scale = max(abs(ref), abs(complex(mp.besselj(mp.mpc(mu.real + 0.5, mu.imag), x))))
    assert abs(v - ref) <= 1e-11 * scale + 1e-300


@settings(deadline=None, max_examples=80)
@given(order_strategy(max_re=20.0, max_im=3.0), st.floats(0.5, 50))
def test_three_term_recurrence(mu, x):
    jm = bessel_j(mu - 1, x).value
    j0 = bessel_j(mu, x).value
    jp = bessel_j(mu + 1, x).value
    scale = max(abs(jm), abs(jp), abs(2 * mu / x * j0))
    assert abs(jm + jp - 2 * mu / x * j0) <= 1e-10 * scale


@pytest.mark.parametrize("n", range(-10, 11))
def test_integer_orders_match_scipy(n):
    xs = np.linspace(0.0, 60.0, 121)
    ours = np.array([bessel_j(n, x).value for x in xs])
    assert np.max(np.abs(ours.imag)) == 0
    ref = jv(n, xs)
    assert np.max(np.abs(ours.real - ref)) <= 1e-12


def test_nicholson_product_grid():
    for re in np.linspace(-2.3, 2.3, 5):
        for im in np.linspace(-1.0, 1.0, 5):
            for x in np.linspace(0.5, 8.0, 5):
                mu = complex(re, im)
                direct = bessel_j(mu, x).value * bessel_j(-mu, x).value
                assert abs(direct - bessel_product_nicholson(mu, x, 512)) <= 1e-8


@given(order_strategy(max_re=3, max_im=2))
def test_nicholson_zero_argument_limit(mu):
    # J_mu J_-mu -> sin(pi mu)/(pi mu) as x -> 0
    expected = bessel_pair(mu, -mu, 0.0)
    assert abs(bessel_product_nicholson(mu, 0.0, 64) - expected) <= 1e-12 * max(1.0, abs(expected))


def test_nicholson_trivial_values():
    assert bessel_product_nicholson(0, 0.0, 16) == pytest.approx(1.0, abs=1e-15)
    assert bessel_product_nicholson(0.5, 1.0).real == pytest.approx(math.sin(2) / math.pi, abs=1e-14)


def test_nicholson_reference_product():
    # product of two extended-precision ascending-series evaluations
    ref = -0.4100868179686248 + 0.08939409969961261j
    assert abs(bessel_product_nicholson((5.5, 0.8), 3.0) - ref) <= 1e-12


def test_nicholson_needs_enough_points():
    with pytest.raises(DomainError):
        bessel_product_nicholson(0.3, 1.0, quad_points=8)


def test_airy_connection_near_turning_point():
    x = 30.0
    a = (2 / x) ** (1 / 3)
    worst = max(abs(jv(n, x) - a * airy_ai(a * (n - x))) for n in range(25, 36))
    assert worst <= 0.02


# --- airy_ai --------------------------------------------------------------


def test_airy_at_origin():
    assert airy_ai(0.0) == pytest.approx(3 ** (-2 / 3) / math.gamma(2 / 3), abs=1e-15)
    assert airy_ai(0.0) == pytest.approx(0.3550280538878172, abs=1e-15)


def test_airy_decays():
    assert 0 < airy_ai(20.0) < 1e-12
    vals = [airy_ai(t) for t in np.linspace(0, 20, 41)]
    assert all(b < a for a, b in zip(vals, vals[1:]))


def test_airy_oscillatory_reference():
    # Maclaurin pair series in extended precision (tests/oracles.py)
    assert airy_ai(-5.0) == pytest.approx(0.35076100902411433, abs=1e-12)


@settings(deadline=None, max_examples=100)
@given(st.floats(-20, 20))
def test_airy_matches_mpmath(t):
    assert abs(airy_ai(t) - float(mp.airyai(t))) <= 1e-10


# --- legendre_p -----------------------------------------------------------


@given(order_strategy(max_re=10, max_im=5))
def test_legendre_at_one(nu):
    assert legendre_p(nu, 1.0).value == 1


@given(st.floats(-1, 1))
def test_legendre_degree_zero(z):
    assert legendre_p((0, 0), z).value == pytest.approx(1.0, abs=1e-15)


def test_legendre_reference():
    # Mehler-Dirichlet integral in extended precision (tests/oracles.py)
    ref = -0.13660604196213544 + 0.6575942758702649j
    assert abs(legendre_p((2.0, 0.5), -0.5).value - ref) <= 1e-10 * abs(ref)


@pytest.mark.parametrize("z", [-1.0001, 1.5, math.nan])
def test_legendre_domain(z):
    with pytest.raises(DomainError):
        legendre_p(0.3, z)


@settings(deadline=None, max_examples=60)
@given(order_strategy(max_re=6, max_im=3), st.floats(-0.9, 1.0))
def test_legendre_matches_mpmath(nu, z):
    degree = mp.mpc(nu.real, nu.imag) if nu.imag else mp.mpf(nu.real)
    ref = complex(mp.legenp(degree, 0, z, type=2))
    r = legendre_p(nu, z)
    assert abs(r.value - ref) <= 1e-8 * max(abs(ref), 1.0)


def test_legendre_near_minus_one_reports_error():
    r = legendre_p((0.3, 0.2), -0.995)
    ref = complex(mp.legenp(mp.mpc(0.3, 0.2), 0, -0.995, type=2))
    assert r.est_error >= 0
    assert abs(r.value - ref) <= max(r.est_error, 1e-12 * abs(ref))


@pytest.mark.parametrize("nu", [0.0, 0.5, 1.5 + 0.3j])
def test_bessel_j_at_smallest_subnormal(nu):
    # half the argument underflows to zero; the series prefactor must not
    x = 5e-324
    expected = complex(mp.besselj(nu, x))
    assert bessel_j(nu, x).value == pytest.approx(expected, rel=1e-12, abs=1e-300)
