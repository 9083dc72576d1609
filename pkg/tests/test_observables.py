import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from quasispec import ClassTag, NotNormalized, classify, ipr, le_analytic


def test_ipr_uniform():
    assert ipr(np.full(100, 0.1)) == pytest.approx(0.01, rel=1e-14)


def test_ipr_delta():
    psi = np.zeros(7, dtype=complex)
    psi[3] = 1j
    assert ipr(psi) == 1.0


def test_ipr_two_sites():
    psi = np.zeros(5)
    psi[[0, 4]] = 1 / np.sqrt(2)
    assert ipr(psi) == pytest.approx(0.5, rel=1e-15)


def test_ipr_requires_unit_norm():
    with pytest.raises(NotNormalized):
        ipr(np.ones(4))


@settings(max_examples=100)
@given(arrays(np.complex128, st.integers(1, 200),
              elements=st.complex_numbers(max_magnitude=1e3, allow_nan=False, allow_infinity=False)))
def test_ipr_bounds(v):
    n = np.linalg.norm(v)
    if not 1e-100 < n < np.inf:
        return
    psi = v / n
    value = ipr(psi)
    L = psi.size
    assert 1.0 / L - 1e-12 <= value <= 1.0 + 1e-12


@pytest.mark.parametrize(
    "E, V, tag",
    [
        (0.5, 1.0, ClassTag.REAL_BAND),
        (3j, 3.0, ClassTag.IMAGINARY_AXIS),
        (1 + 1j, 1.0, ClassTag.OTHER),
        (1.0 + 5e-7, 1.0, ClassTag.REAL_BAND),
        (1.0 + 2e-6, 1.0, ClassTag.OTHER),
        (0.5 + 2e-6j, 1.0, ClassTag.OTHER),
        (0.0, 2.5, ClassTag.OTHER),
        (5e-7 + 1e-3j, 1.0, ClassTag.IMAGINARY_AXIS),
        (1e-7j, 1.0, ClassTag.REAL_BAND),
    ],
)
def test_classify(E, V, tag):
    c = classify(E, V)
    assert c.tag is tag
    assert c.re_tol == c.im_tol == 1e-6


def test_classify_tolerances_positive():
    with pytest.raises(ValueError):
        classify(0.0, 1.0, re_tol=0.0)


def test_free_chain_diagnostics(spectrum_cache):
    _, _, diags = spectrum_cache(100, 0.0)
    assert all(d.spectral_class.tag is ClassTag.REAL_BAND for d in diags)
    assert max(d.ipr for d in diags) <= 0.03
    # sine modes: IPR = 3 / (2 (L + 1)) except the two k with 2k = L+1 aliasing; L=100 has none
    np.testing.assert_allclose([d.ipr for d in diags], 1.5 / 101, rtol=1e-9)


def test_localized_states_reference_size(spectrum_cache):
    _, pairs, diags = spectrum_cache(610, 1.0)
    assert len(diags) == len(pairs) == 610
    assert [d.value for d in diags] == [p.value for p in pairs]
    imag = [d for d in diags if d.spectral_class.tag is ClassTag.IMAGINARY_AXIS]
    assert len(imag) > 100
    # the exception is the band-centre state pinned to Re E = 0 by the E -> -conj(E) pairing:
    # |Im E| ~ 1e-4, gamma ~ 1e-5, extended
    weak = [d for d in imag if abs(d.value.imag) < 0.1]
    assert len(weak) == 1 and abs(weak[0].value.imag) < 1e-3 and weak[0].gamma_analytic < 1e-3
    assert min(d.ipr for d in imag if abs(d.value.imag) >= 0.1) >= 0.1
    for d in imag:
        if abs(d.value.imag) >= 0.1:
            assert d.gamma_analytic > 0
    for d in diags:
        if d.spectral_class.tag is ClassTag.REAL_BAND:
            assert d.gamma_analytic <= 1e-8


@pytest.mark.parametrize("V", [0.5, 1.0, 1.5])
def test_real_band_energies_have_zero_gamma(V):
    for E in np.linspace(V - 2, 2 - V, 41):
        assert classify(E, V).tag is ClassTag.REAL_BAND
        assert le_analytic(E, V) == 0.0
    for y in (0.1, 0.5, 3.0):
        assert classify(1j * y, V).tag is ClassTag.IMAGINARY_AXIS
        assert le_analytic(1j * y, V) > 0
