import numpy as np
import pytest

from kgbf import (
    IntervalMode,
    ModeGrid,
    PairingContext,
    PhasePoint,
    VacuumSpec,
    abdc_operators,
    conjugation_residual,
    f_matrix,
    jab_matrix,
    phase_subspace_relations,
    recover_from_initial_data,
    InitialData,
    sample_mode,
    symplectic_form,
    upsilon,
)
from kgbf import phase_space as ps
from kgbf import randomfields as rf

PAIR = ModeGrid([IntervalMode(1.0), IntervalMode(-1.0)])


@pytest.mark.parametrize("E", [0.5, 1.0, 3.0])
def test_abdc_standard(interval_family, standard, E):
    e = abdc_operators(standard, sample_mode(interval_family, IntervalMode(E), 0.0))
    assert (e.A, e.B, e.D, e.C) == pytest.approx((0, 1 / E, -E, 0), abs=1e-15)
    assert e.A**2 + e.B * e.D == pytest.approx(-1)


def test_abdc_unit_energy_any_time(interval_family, standard):
    for t in (0.3, 1.7, -4.0):
        e = abdc_operators(standard, sample_mode(interval_family, IntervalMode(1.0), t))
        assert (e.A, e.B, e.D, e.C) == pytest.approx((0, 1, -1, 0), abs=1e-15)


def test_abdc_constraints_random(interval_family, rod_family, igrid, rgrid, rng):
    for fam, grid, taus in ((interval_family, igrid, (-1.0, 0.0, 2.3)), (rod_family, rgrid, (3.0, 6.0, 12.0))):
        spec = rf.random_spec(rng, grid)
        for tau in taus:
            e = abdc_operators(spec, fam.sample(grid, tau))
            scale = np.maximum(1.0, np.abs(e.B * e.D))
            for x in (e.A**2 + e.B * e.D + 1, e.A * e.B + e.B * e.C, e.D * e.A + e.C * e.D):
                assert np.all(np.abs(x) <= 1e-12 * scale)
            np.testing.assert_array_equal(e.A, -e.C)
            assert np.all(e.B != 0)


def test_vacuum_operator_relation(interval_family, igrid, rng):
    # 1/B and -C/B are the real and imaginary parts of the vacuum operator
    from kgbf import vacuum_operator_eig

    spec = rf.random_spec(rng, igrid)
    s = interval_family.sample(igrid, 0.7)
    e = abdc_operators(spec, s)
    a = vacuum_operator_eig(spec, s)
    np.testing.assert_allclose(1 / e.B, a.real, rtol=1e-12)
    assert np.all(np.abs(-e.C / e.B - a.imag) <= 1e-12 * np.abs(a))


def test_f_matrix_examples(interval_family, standard):
    s = interval_family.sample(PAIR, 0.0)
    f = ps.to_freq(standard, s, PhasePoint([1, 1], [-1j, -1j], PAIR))
    np.testing.assert_allclose(f.p, 1, atol=1e-16)
    np.testing.assert_allclose(f.q, 0, atol=1e-16)
    assert ps.to_freq(standard, s, PhasePoint([0, 0], [0, 0], PAIR)).norm() == 0


def test_f_matches_recovery(rod_family, rgrid, rng):
    spec = rf.random_spec(rng, rgrid)
    s = rod_family.sample(rgrid, 5.0)
    phi, dphi = rf.random_config(rng, rgrid, True), rf.random_config(rng, rgrid, True)
    a = ps.to_freq(spec, s, PhasePoint(phi, s.wtilde * dphi, rgrid))
    b = recover_from_initial_data(spec, s, InitialData(phi, dphi, 5.0, rgrid))
    assert a.max_abs_diff(b) < 1e-12 * b.norm()
    F = f_matrix(spec, s)
    assert np.all(np.abs(np.linalg.det(F)) > 0)


def test_conjugation_examples(interval_family):
    s = sample_mode(interval_family, IntervalMode(1.0), 0.0)
    assert conjugation_residual(VacuumSpec.standard(), s) < 1e-14
    s3 = sample_mode(interval_family, IntervalMode(3.0), 0.4)
    assert conjugation_residual(VacuumSpec.constant(2, -0.5j), s3) < 1e-12
    assert conjugation_residual(VacuumSpec.standard(), s, perturb_C=0.1) > 0.01


def test_conjugation_random_interval(interval_family, igrid, rng):
    for _ in range(20):
        spec = rf.random_spec(rng, igrid)
        s = interval_family.sample(igrid, rng.uniform(-5, 5))
        assert np.max(ps.conjugation_residuals(spec, s)) < 1e-12


def test_representations_conjugate(interval_family, igrid, rng):
    spec = rf.random_spec(rng, igrid)
    s = interval_family.sample(igrid, 1.1)
    G = ps.real_to_phase_matrix(s)
    M = abdc_operators(spec, s).matrix()
    J = jab_matrix(spec, igrid)
    np.testing.assert_allclose(G @ J, M @ G, atol=1e-12 * np.max(np.abs(M)))


def test_subspace_relations(interval_family, rod_family, igrid, rgrid, rng):
    for fam, grid, tau in ((interval_family, igrid, 0.4), (rod_family, rgrid, 6.0)):
        spec = rf.random_spec(rng, grid)
        s = fam.sample(grid, tau)
        pt = PhasePoint(rf.random_config(rng, grid, True), rf.random_config(rng, grid, True), grid)
        rel = phase_subspace_relations(spec, s, pt)
        assert set(rel) == {"A_phi_in_N", "B_pi_in_N", "D_phi_in_M", "C_pi_in_M"}
        assert max(rel.values()) < 1e-10


def test_phase_projections(interval_family, igrid, standard, rng):
    from kgbf import complex_structure as cs

    s = interval_family.sample(igrid, 0.9)
    pi = rf.random_config(rng, igrid, True)
    phi = rf.random_config(rng, igrid, True)
    zero = np.zeros(len(igrid))
    assert cs.m_condition_residual(standard, s, ps.to_freq(standard, s, PhasePoint(zero, pi, igrid))) < 1e-12
    assert cs.n_condition_residual(standard, s, ps.to_freq(standard, s, PhasePoint(phi, zero, igrid))) < 1e-12
    # C vanishes for the standard vacuum, so (0, C pi) is the zero point
    assert np.all(np.abs(abdc_operators(standard, s).C) < 1e-15)


def test_phase_symplectic_compat(interval_family, igrid, rng):
    spec = rf.random_spec(rng, igrid)
    ctx = PairingContext(interval_family, igrid, spec, 0.5)
    s = ctx.sample
    for _ in range(10):
        x = PhasePoint(rf.random_config(rng, igrid, True), rf.random_config(rng, igrid, True), igrid)
        y = PhasePoint(rf.random_config(rng, igrid, True), rf.random_config(rng, igrid, True), igrid)
        w = ps.symplectic_form_phase(1, x, y)
        wj = ps.symplectic_form_phase(1, ps.apply_j_phase(spec, s, x), ps.apply_j_phase(spec, s, y))
        fx, fy = ps.to_freq(spec, s, x), ps.to_freq(spec, s, y)
        scale = max(1.0, abs(w))
        assert abs(wj - w) < 1e-10 * scale
        assert abs(w - symplectic_form(ctx, fx, fy)) < 1e-10 * scale


def test_phase_point_reality(igrid, rng):
    assert PhasePoint(rf.random_config(rng, igrid, True), rf.random_config(rng, igrid, True), igrid).is_real()
    assert not PhasePoint(rf.random_config(rng, igrid), rf.random_config(rng, igrid), igrid).is_real()


def test_constraint_residual_helper(interval_family, standard, igrid):
    assert abdc_operators(standard, interval_family.sample(igrid, 0.2)).constraint_residual() < 1e-12
