import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kgbf.special import reflection_harmonic, spherical_harmonic, spherical_jn, spherical_yn

scipy_special = pytest.importorskip("scipy.special")


@pytest.mark.parametrize("l", range(0, 9))
def test_bessel_matches_scipy(l):
    x = np.concatenate([np.geomspace(1e-4, 1.0, 30), np.linspace(1.0, 60.0, 200)])
    for deriv in (False, True):
        ref_j = scipy_special.spherical_jn(l, x, derivative=deriv)
        ref_y = scipy_special.spherical_yn(l, x, derivative=deriv)
        np.testing.assert_allclose(spherical_jn(l, x, derivative=deriv), ref_j, rtol=1e-11, atol=1e-300)
        np.testing.assert_allclose(spherical_yn(l, x, derivative=deriv), ref_y, rtol=1e-11)


def test_bessel_closed_forms():
    assert spherical_jn(0, np.pi) == pytest.approx(0.0, abs=1e-16)
    assert spherical_yn(0, np.pi) == pytest.approx(1 / np.pi, rel=1e-14)
    assert spherical_jn(0, 0.0) == 1.0
    assert spherical_jn(3, 0.0) == 0.0


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10), st.floats(0.05, 80.0))
def test_bessel_wronskian(l, x):
    w = spherical_jn(l, x) * spherical_yn(l, x, True) - spherical_yn(l, x) * spherical_jn(l, x, True)
    assert w * x**2 == pytest.approx(1.0, rel=1e-10)


@pytest.mark.parametrize("l", range(0, 6))
def test_harmonics_match_scipy(l):
    rng = np.random.default_rng(l)
    theta, phi = rng.uniform(0, np.pi, 20), rng.uniform(0, 2 * np.pi, 20)
    for m in range(-l, l + 1):
        ref = scipy_special.sph_harm_y(l, m, theta, phi)
        np.testing.assert_allclose(spherical_harmonic(l, m, theta, phi), ref, rtol=1e-12, atol=1e-14)


def test_reflection_harmonic_conjugates_negative_m():
    y = spherical_harmonic(2, 1, 0.4, 1.1)
    assert reflection_harmonic(2, 1, 0.4, 1.1) == y
    assert reflection_harmonic(2, -1, 0.4, 1.1) == pytest.approx(np.conj(y))
