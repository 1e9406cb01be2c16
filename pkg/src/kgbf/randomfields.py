"""Seeded random fields, vacua and gauge functions for property checks.

Every random real field is a reflection-symmetrized complex Gaussian, so
``q[k] = conj(p[R k])`` holds exactly.
"""

import numpy as np

from .complex_structure import FreqCoeffs, RealCoeffs, VacuumSpec
from .coefficients import InitialData


def complex_normal(rng, n, scale=1.0):
    return scale * (rng.standard_normal(n) + 1j * rng.standard_normal(n)) / np.sqrt(2.0)


def symmetrize(values, grid):
    """Project per-mode values onto ``v[R k] = conj(v[k])``."""
    values = np.asarray(values, dtype=complex)
    return 0.5 * (values + np.conj(values[grid.reflect]))


def random_real_freq(rng, grid, scale=1.0):
    p = complex_normal(rng, len(grid), scale)
    return FreqCoeffs(p, np.conj(p[grid.reflect]), grid)


def random_complex_freq(rng, grid, scale=1.0):
    return FreqCoeffs(complex_normal(rng, len(grid), scale), complex_normal(rng, len(grid), scale), grid)


def random_real_coeffs(rng, grid, scale=1.0):
    n = len(grid)
    return RealCoeffs(symmetrize(complex_normal(rng, n, scale), grid), symmetrize(complex_normal(rng, n, scale), grid), grid)


def random_config(rng, grid, real=False, scale=1.0):
    """Configuration coefficients; complex by default, leaf-real if ``real``."""
    z = complex_normal(rng, len(grid), scale)
    return symmetrize(z, grid) if real else z


def random_initial_data(rng, grid, T, scale=1.0):
    n = len(grid)
    return InitialData(symmetrize(complex_normal(rng, n, scale), grid), symmetrize(complex_normal(rng, n, scale), grid), T, grid)


def _pair_representatives(grid):
    # one entry per reflection orbit, so tables stay reflection symmetric
    rep = np.minimum(np.arange(len(grid)), grid.reflect)
    return rep


def random_vacuum_pair(rng, dalpha_range=(-np.pi + 0.3, -0.3), modulus_range=(0.5, 2.0)):
    """Random ``(ca, cb)`` with moduli and relative phase in the given ranges."""
    ma, mb = rng.uniform(*modulus_range, size=2)
    dalpha = rng.uniform(*dalpha_range)
    phase = rng.uniform(-np.pi, np.pi)
    ca = ma * np.exp(1j * phase)
    return complex(ca), complex(mb * np.exp(1j * (phase + dalpha)))


def random_spec(rng, grid=None, **kwargs):
    """Random admissible vacuum.

    With the default relative phase in ``(-pi, 0)`` we get
    ``Im(conj(ca) cb) < 0``, which is positive for ``sigma = +1`` families
    with positive Wronskian. Without a grid the spec is mode independent.
    """
    if grid is None:
        ca, cb = random_vacuum_pair(rng, **kwargs)
        return VacuumSpec.constant(ca, cb, name="random")
    rep = _pair_representatives(grid)
    pairs = {}
    for j in np.unique(rep):
        pairs[int(j)] = random_vacuum_pair(rng, **kwargs)
    table = {idx: pairs[int(rep[j])] for j, idx in enumerate(grid.modes)}
    return VacuumSpec.from_table(table, name="random-table")


def random_gauge(rng, grid, modulus_range=(0.3, 3.0)):
    """Reflection-symmetric nonzero gauge function as a ``{label: f}`` callable."""
    rep = _pair_representatives(grid)
    vals = {}
    for j in np.unique(rep):
        vals[int(j)] = complex(rng.uniform(*modulus_range) * np.exp(1j * rng.uniform(-np.pi, np.pi)))
    table = {idx: vals[int(rep[j])] for j, idx in enumerate(grid.modes)}
    return table.__getitem__
