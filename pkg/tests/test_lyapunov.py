import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quasispec import DomainError, ModelParams, SingularPotential, band_interval, le_analytic, le_transfer
from quasispec.lyapunov import _arcosh1p, _branch_excess

# mpmath: arcosh((sqrt(29) + sqrt(5)) / 4)
GAMMA_2I_V3 = 1.2604751877984540729


def reference_gamma(E, V):
    """Closed form evaluated naively in 50-digit arithmetic."""
    mpmath.mp.dps = 50
    E = mpmath.mpc(E)
    V = mpmath.mpf(V)
    def branch(z):
        x = (abs(z + 2) + abs(z - 2)) / 4
        return mpmath.acosh(max(x, mpmath.mpf(1)))
    return float(max(branch(E + V), branch(E - V)))


def test_band_centre_zero():
    assert le_analytic(0.0, 1.0) == 0.0


def test_ln2_outside_band():
    assert le_analytic(1.5, 1.0) == pytest.approx(math.log(2.0), rel=1e-15)


def test_imaginary_energy():
    assert le_analytic(2j, 3.0) == pytest.approx(GAMMA_2I_V3, rel=1e-14)


@settings(max_examples=200)
@given(st.complex_numbers(max_magnitude=50, allow_nan=False, allow_infinity=False), st.floats(0, 10))
def test_matches_high_precision(E, V):
    g = le_analytic(E, V)
    ref = reference_gamma(E, V)
    assert g >= 0.0
    # naive formula loses half the digits near x = 1; stable form is at least that good
    assert abs(g - ref) <= 1e-12 + 1e-12 * ref or abs(g - ref) <= 2e-8 and ref < 1e-7


@settings(max_examples=200)
@given(st.complex_numbers(max_magnitude=50, allow_nan=False, allow_infinity=False), st.floats(0, 10))
def test_symmetries(E, V):
    g = le_analytic(E, V)
    assert le_analytic(-E, V) == g
    assert le_analytic(E.conjugate(), V) == g


def test_branch_excess_is_exactly_zero_on_segment():
    for z in np.linspace(-2, 2, 4001):
        assert _branch_excess(complex(z, 0.0)) == 0.0


def test_domain_guard():
    assert _arcosh1p(-5e-13) == 0.0
    with pytest.raises(DomainError):
        _arcosh1p(-1e-9)


@pytest.mark.parametrize("V", [0.5, 1.0, 1.5, 2.0])
def test_zero_exactly_on_band(V):
    lo, hi = band_interval(V)
    for E in np.arange(-300, 301) / 100:
        g = le_analytic(E, V)
        if lo <= E <= hi:
            assert g == 0.0
        else:
            assert g > 0.0


@pytest.mark.parametrize("V, expected", [(0.0, (-2.0, 2.0)), (1.0, (-1.0, 1.0)), (2.0, (0.0, 0.0)), (2.5, None)])
def test_band_interval(V, expected):
    assert band_interval(V) == expected


def test_band_interval_rejects_negative():
    with pytest.raises(ValueError):
        band_interval(-1.0)


def test_transfer_free_chain_band_centre():
    est = le_transfer(0.0, ModelParams(L=2, V=0.0), n_steps=100_000, burn_in=0)
    assert est.gamma <= 0.01


@pytest.mark.parametrize("E, V", [(1.5, 1.0), (2j, 3.0), (3j, 1.0), (0.3 + 0.7j, 1.0)])
def test_transfer_matches_closed_form(E, V):
    est = le_transfer(E, ModelParams(L=2, V=V), n_steps=100_000, burn_in=1_000)
    assert est.gamma == pytest.approx(le_analytic(E, V), rel=0.05)
    assert est.n_steps == 100_000 and est.burn_in == 1_000
    assert est.gamma == est.log_growth / (est.n_steps - est.burn_in)


@pytest.mark.parametrize("E", [0.0, 0.5, -0.9])
def test_transfer_in_band(E):
    est = le_transfer(E, ModelParams(L=2, V=1.0))
    assert est.gamma <= 0.02


def test_transfer_orbit_independence():
    p = ModelParams(L=2, V=1.0)
    ref = le_transfer(1.5, p).gamma
    for seed_phase, start in [(0.123, (1.0, 0.0)), (0.77, (0.3, 1.0 - 2.0j)), (0.0, (0.0, 1.0))]:
        g = le_transfer(1.5, p, seed_phase=seed_phase, start=start).gamma
        assert g == pytest.approx(ref, rel=0.02)


def test_transfer_floor_at_zero():
    est = le_transfer(0.5, ModelParams(L=2, V=1.0), n_steps=2_000, burn_in=10)
    assert est.gamma >= 0.0
    if est.log_growth < 0:
        assert est.gamma == 0.0


def test_transfer_argument_checks():
    p = ModelParams(L=2, V=1.0)
    with pytest.raises(ValueError):
        le_transfer(0.0, p, n_steps=10, burn_in=10)
    with pytest.raises(ValueError):
        le_transfer(0.0, p, start=(0.0, 0.0))


def test_transfer_singular_orbit():
    with pytest.raises(SingularPotential):
        le_transfer(0.0, ModelParams(L=2, V=1.0, alpha=0.5), n_steps=100, burn_in=0)
