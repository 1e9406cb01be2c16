import numpy as np
import pytest

from kgbf import (
    DegenerateVacuumError,
    DomainError,
    FreqCoeffs,
    GridMismatchError,
    IntervalBoundaryField,
    IntervalMode,
    ModeGrid,
    RealCoeffs,
    RodBoundaryField,
    RodMode,
    VacuumSpec,
    apply_j_freq,
    asymptotic_field_interval,
    asymptotic_field_rod,
    decompose_interval,
    decompose_rod,
    freq_to_real,
    real_to_freq,
    xi_matrices,
)
from kgbf import boundary as bd
from kgbf import randomfields as rf

ROD_PAIR = ModeGrid([RodMode(1.0, 0, 0), RodMode(-1.0, 0, 0)])


def test_decompose_interval_examples(igrid, standard, rng):
    xi = rf.random_real_freq(rng, igrid)
    lr, li = decompose_interval(standard, xi, xi)
    assert lr.max_abs_diff(xi) == 0 and li.norm() == 0
    lr, li = decompose_interval(standard, -xi, xi)
    assert lr.norm() == 0 and li.max_abs_diff(apply_j_freq(xi)) == 0


def test_interval_reconstruction(igrid, rng):
    spec = rf.random_spec(rng, igrid)
    for _ in range(20):
        ze, xi = rf.random_real_freq(rng, igrid), rf.random_real_freq(rng, igrid)
        lr, li = decompose_interval(spec, ze, xi)
        assert lr.is_real() and li.is_real()
        z2, x2 = bd.recompose_interval(lr, li)
        assert z2.max_abs_diff(ze) < 1e-12 and x2.max_abs_diff(xi) < 1e-12
        lam = asymptotic_field_interval(spec, ze, xi)
        assert lam.max_abs_diff(bd.asymptotic_field_interval_from_parts(lr, li)) < 1e-12


def test_asymptotic_interval_examples(igrid, standard, rng):
    xi = rf.random_real_freq(rng, igrid)
    assert asymptotic_field_interval(standard, xi, xi).max_abs_diff(xi) == 0
    n = len(igrid)
    lam = asymptotic_field_interval(
        standard, FreqCoeffs(np.ones(n), np.zeros(n), igrid), FreqCoeffs(np.zeros(n), np.ones(n), igrid)
    )
    np.testing.assert_array_equal(lam.p, 1)
    np.testing.assert_array_equal(lam.q, 1)


def test_interval_field_type(igrid, rng):
    with pytest.raises(GridMismatchError):
        IntervalBoundaryField(rf.random_real_freq(rng, igrid), rf.random_real_freq(rng, ModeGrid([IntervalMode(1.0), IntervalMode(-1.0)])))
    f = IntervalBoundaryField(rf.random_real_freq(rng, igrid), rf.random_real_freq(rng, igrid))
    assert f.is_real()


def test_xi_matrix_examples():
    idx = RodMode(1.0, 0, 0)
    X, Xi = xi_matrices(VacuumSpec.standard(), idx)
    np.testing.assert_allclose(X, np.eye(2), atol=1e-16)
    X, Xi = xi_matrices(VacuumSpec.constant(1, np.exp(1j * np.pi / 4)), idx)
    np.testing.assert_allclose(X, [[1, -1], [0, -np.sqrt(2)]], rtol=1e-15)
    np.testing.assert_allclose(X @ Xi, np.eye(2), atol=1e-14)
    with pytest.raises(DegenerateVacuumError):
        xi_matrices(VacuumSpec.constant(1, 1), idx)


def test_decompose_rod_examples(standard):
    xr, xi = decompose_rod(standard, RodBoundaryField(RealCoeffs([1, 1], [0, 0], ROD_PAIR)))
    np.testing.assert_allclose(xr, 1)
    np.testing.assert_allclose(xi, 0, atol=1e-16)
    xr, xi = decompose_rod(standard, RodBoundaryField(RealCoeffs([0, 0], [1, 1], ROD_PAIR)))
    np.testing.assert_allclose(xr, 0, atol=1e-16)
    np.testing.assert_allclose(xi, 1)


def test_rod_round_trip(rgrid, rng):
    spec = rf.random_spec(rng, rgrid)
    for _ in range(20):
        r = rf.random_real_coeffs(rng, rgrid)
        xr, xi = decompose_rod(spec, RodBoundaryField(r))
        assert bd.recompose_rod(spec, xr, xi, rgrid).max_abs_diff(r) < 1e-12 * r.norm()
        # regular parts are real solutions with no singular component
        zero = np.zeros(len(rgrid))
        for part in (xr, xi):
            assert RealCoeffs(part, zero, rgrid).is_real()


def test_asymptotic_rod_examples(rgrid, standard, rng):
    r = rf.random_real_coeffs(rng, rgrid)
    np.testing.assert_allclose(asymptotic_field_rod(standard, RodBoundaryField(r)), r.a - 1j * r.b, rtol=1e-15)
    reg = RealCoeffs(r.a, np.zeros(len(rgrid)), rgrid)
    np.testing.assert_array_equal(asymptotic_field_rod(standard, RodBoundaryField(reg)), r.a)
    with pytest.raises(DegenerateVacuumError):
        asymptotic_field_rod(VacuumSpec.constant(1j, 0), RodBoundaryField(r))


def test_rod_asymptotic_relations(rgrid, rng):
    spec = rf.random_spec(rng, rgrid)
    ca, cb = spec.values(rgrid)
    for _ in range(20):
        r = rf.random_real_coeffs(rng, rgrid)
        b = RodBoundaryField(r)
        lam = asymptotic_field_rod(spec, b)
        np.testing.assert_allclose(lam, bd.asymptotic_field_rod_from_parts(spec, b), rtol=0, atol=1e-12 * r.norm())
        lf = bd.rod_asymptotic_freq(spec, b)
        assert np.max(np.abs(lf.p + (np.conj(cb) / cb) * lf.q)) < 1e-12 * lf.norm()
        assert np.max(np.abs(lf.q - real_to_freq(spec, r).q)) < 1e-12 * r.norm()
        lab = freq_to_real(spec, lf)
        assert np.max(np.abs(lab.b)) < 1e-12 * lab.norm()
        np.testing.assert_allclose(lab.a, lam, atol=1e-12 * r.norm())
    # a generic asymptotic field is not real
    assert not RealCoeffs(lam, np.zeros(len(rgrid)), rgrid).is_real()


def test_rod_field_needs_rod_grid(igrid, rng):
    with pytest.raises(DomainError):
        RodBoundaryField(rf.random_real_coeffs(rng, igrid))
