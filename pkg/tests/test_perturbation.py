import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from diatomic.errors import DomainError
from diatomic.exact import exact_fields
from diatomic.model import LatticeParams
from diatomic.perturbation import (
    MAX_ORDER,
    RsOrderConfig,
    dyson_series_oracle,
    dyson_terms,
    horner,
    rs_amplitude,
    rs_fields,
    rs_polynomials,
    rs_term,
)

from oracles import block_dyson

P03 = LatticeParams(1.0, 0.3)


def test_seed_polynomials():
    assert rs_polynomials(0).p_coeffs == (1,) and rs_polynomials(0).q_coeffs == (0,)
    assert rs_polynomials(1).p_coeffs == (-1,) and rs_polynomials(1).q_coeffs == (1,)


def test_second_order_polynomials():
    pair = rs_polynomials(2)
    assert pair.p_coeffs == (-1, -1)
    assert pair.q_coeffs == (1,)


def test_third_order_polynomials():
    # fitted to the exact Dyson integrals
    pair = rs_polynomials(3)
    assert pair.p_coeffs == (2, 1)
    assert pair.q_coeffs == (-2, 1)


def test_skip_odd_rule():
    pair = rs_polynomials(3, recurrence="skip")
    assert pair.p_coeffs == (2, -1)
    assert pair.q_coeffs == (-2, 1)
    assert rs_polynomials(2, "skip") == rs_polynomials(2)


def test_skip_odd_rule_disagrees_with_dyson():
    z = 1.7
    got = rs_term(P03, 3, 0, z, 3, recurrence="skip")
    assert abs(got - dyson_series_oracle(P03, 3, 0, z, 3)) > 1e-3


def test_integer_coefficients_and_degrees():
    for k in range(MAX_ORDER + 1):
        pair = rs_polynomials(k)
        assert all(type(c) is int for c in pair.p_coeffs + pair.q_coeffs)
        assert len(pair.p_coeffs) - 1 <= math.ceil(k / 2)
        assert len(pair.p_coeffs) - 1 == k // 2


def test_order_cap():
    with pytest.raises(DomainError):
        rs_polynomials(MAX_ORDER + 1)
    with pytest.raises(DomainError):
        RsOrderConfig(max_order=13)


def test_horner():
    assert horner((1, 2, 3), 2.0) == 17.0
    assert horner((0, 1), 1j) == 1j


@pytest.mark.parametrize("m", [0, 1, -3])
def test_order_zero(m):
    cfg = RsOrderConfig(max_order=0)
    for z in (0.0, 2.0, 9.0):
        assert rs_amplitude(P03, m, m, z, cfg) == pytest.approx(cmath.exp(-1j * (-1) ** m * z))
        assert rs_amplitude(P03, m + 1, m, z, cfg) == 0


def test_uncoupled_limit():
    p = LatticeParams(1.0, 0.0)
    cfg = RsOrderConfig(max_order=6)
    for z in (0.5, 5.0, 50.0):
        assert abs(rs_amplitude(p, 0, 0, z, cfg) - cmath.exp(-1j * z)) <= 1e-14
        assert rs_amplitude(p, 2, 0, z, cfg) == 0


def test_first_order_closed_form():
    z, w, a = 2.3, 1.0, 0.3
    expected = a / (2 * w) * (cmath.exp(-1j * w * z) - cmath.exp(1j * w * z))
    for n in (1, -1):
        assert abs(dyson_series_oracle(P03, n, 0, z, 1) - expected) <= 1e-14
        assert abs(rs_term(P03, n, 0, z, 1) - expected) <= 1e-14


def test_second_order_matches_oracle():
    for n in (-2, 0, 2):
        assert abs(rs_term(P03, n, 0, 3.1, 2) - dyson_series_oracle(P03, n, 0, 3.1, 2)) <= 1e-12


@pytest.mark.parametrize("m", [0, 1, -2, 5])
@pytest.mark.parametrize("z", [0.4, 2.0, 7.5])
def test_order_by_order_equivalence(m, z):
    p = LatticeParams(1.3, 0.3)
    for k in range(0, 4):
        for n in range(m - 3, m + 4):
            assert abs(rs_term(p, n, m, z, k) - dyson_series_oracle(p, n, m, z, k)) <= 1e-10


def test_higher_orders_match_oracle():
    for k in range(4, 9):
        for n in range(-k, k + 1):
            assert abs(rs_term(P03, n, 0, 1.2, k) - dyson_series_oracle(P03, n, 0, 1.2, k)) <= 1e-10


@pytest.mark.parametrize("m", [0, 1])
def test_dyson_oracle_against_block_exponential(m):
    p = LatticeParams(1.0, 0.3)
    window = 6
    terms = dyson_terms(p, m, 1.9, 4, window)
    for k in range(5):
        ref = block_dyson(p.omega, k, 1.9, m, window) * p.alpha**k
        np.testing.assert_allclose(terms[k], ref, rtol=0, atol=1e-12)


@settings(max_examples=100, deadline=None)
@given(n=st.integers(-8, 8), m=st.integers(-4, 4), k=st.integers(0, 6), z=st.floats(0, 20))
def test_selection_rule(n, m, k, z):
    term = rs_term(P03, n, m, z, k)
    d = n - m
    if abs(d) > k or (d - k) % 2:
        assert term == 0


def test_guides_light_up_in_order():
    cfg = RsOrderConfig(max_order=3)
    assert rs_amplitude(P03, 4, 0, 5.0, cfg) == 0
    assert rs_amplitude(P03, 3, 0, 5.0, cfg) != 0


def test_fields_match_amplitudes():
    zs = [0.0, 1.5, 12.0]
    out = rs_fields(P03, 1, zs, 6)
    for i, z in enumerate(zs):
        for n in range(-6, 7):
            assert abs(out[i, n + 6] - rs_amplitude(P03, n, 1, z)) <= 1e-13


def test_early_agreement_then_divergence():
    zs = np.linspace(0, 100, 1001)
    rs = rs_fields(P03, 0, zs, 5)
    ex = exact_fields(P03, 0, zs, 5)
    err = np.max(np.abs(np.abs(rs) ** 2 - np.abs(ex) ** 2), axis=1)
    assert np.max(err[zs <= 2]) <= 5e-2
    assert err[500] > err[50]


def test_domain_checks():
    with pytest.raises(DomainError):
        rs_term(P03, 0, 0, -1.0, 1)
    with pytest.raises(DomainError):
        dyson_terms(P03, 0, 1.0, 9)
