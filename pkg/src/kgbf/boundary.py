"""Boundary solutions of interval and rod regions and their asymptotic fields.

An interval boundary field is a pair of real solutions ``(zeta, xi)`` near
the two leaves. It splits as ``zeta = lamR + J lamI``, ``xi = lamR - J lamI``
and the classical asymptotic field ``lamR - i lamI`` takes its ``p`` part
from ``zeta`` and its ``q`` part from ``xi``.

A rod boundary field is one real solution ``xi`` near the hypercylinder,
given in the real expansion. It splits as ``xi = xiR - J xiI`` with ``xiR``,
``xiI`` regular (no ``Xb`` component); the asymptotic field is
``xiR - i xiI``, again regular.
"""

from dataclasses import dataclass

import numpy as np

from .coefficients import real_to_freq
from .complex_structure import FreqCoeffs, RealCoeffs, apply_j_freq, imag_cacb
from .errors import DegenerateVacuumError, DomainError, GridMismatchError


@dataclass(frozen=True, eq=False)
class IntervalBoundaryField:
    """Real solutions ``zeta`` (near the first leaf) and ``xi`` (near the second)."""

    zeta: FreqCoeffs
    xi: FreqCoeffs

    def __post_init__(self):
        if self.zeta.grid != self.xi.grid:
            raise GridMismatchError("boundary components live on different grids")

    def is_real(self, atol=1e-12):
        return self.zeta.is_real(atol) and self.xi.is_real(atol)


@dataclass(frozen=True, eq=False)
class RodBoundaryField:
    """Real-expansion coefficients ``(xi_a, xi_b)`` of one solution on a rod grid."""

    xi_ab: RealCoeffs

    def __post_init__(self):
        if self.xi_ab.grid.kind != "rod":
            raise DomainError("rod boundary fields need a rod grid")

    def is_real(self, atol=1e-12):
        return self.xi_ab.is_real(atol)


def decompose_interval(spec, zeta, xi):
    """``lamR = (zeta + xi) / 2`` and ``lamI = (J xi - J zeta) / 2``."""
    zeta._same_grid(xi)
    return 0.5 * (zeta + xi), 0.5 * (apply_j_freq(xi) - apply_j_freq(zeta))


def recompose_interval(lamR, lamI):
    """Inverse of :func:`decompose_interval`: ``(lamR + J lamI, lamR - J lamI)``."""
    jl = apply_j_freq(lamI)
    return lamR + jl, lamR - jl


def asymptotic_field_interval(spec, zeta, xi):
    """Complexified solution with ``p`` from ``zeta`` and ``q`` from ``xi``."""
    zeta._same_grid(xi)
    return FreqCoeffs(zeta.p, xi.q, zeta.grid)


def asymptotic_field_interval_from_parts(lamR, lamI):
    """``lamR - i lamI``."""
    return lamR - 1j * lamI


def xi_matrices(spec, idx):
    """``Xi`` with ``(xi_a, xi_b) = Xi (xiR_a, xiI_a)`` and its inverse.

    Shapes ``(2, 2)`` for a label and ``(n, 2, 2)`` for a grid.
    """
    im = imag_cacb(spec, idx)
    ca, cb = spec.values(idx)
    re = (np.conj(ca) * cb).real
    cb2 = np.abs(cb) ** 2
    one, zero = np.ones_like(re), np.zeros_like(re)
    xi = np.array([[one, -re / im], [zero, -cb2 / im]])
    xi_inv = np.array([[one, -re / cb2], [zero, -im / cb2]])
    if xi.ndim == 3:
        xi, xi_inv = np.moveaxis(xi, (0, 1), (-2, -1)), np.moveaxis(xi_inv, (0, 1), (-2, -1))
    return xi, xi_inv


def decompose_rod(spec, field):
    """Regular components ``(xiR_a, xiI_a) = Xi^-1 (xi_a, xi_b)``."""
    r = _rod_coeffs(field)
    _, inv = xi_matrices(spec, r.grid)
    return inv[:, 0, 0] * r.a + inv[:, 0, 1] * r.b, inv[:, 1, 0] * r.a + inv[:, 1, 1] * r.b


def recompose_rod(spec, xiR_a, xiI_a, grid):
    """``(xi_a, xi_b) = Xi (xiR_a, xiI_a)`` as :class:`RealCoeffs`."""
    mat, _ = xi_matrices(spec, grid)
    return RealCoeffs(mat[:, 0, 0] * xiR_a + mat[:, 0, 1] * xiI_a, mat[:, 1, 0] * xiR_a + mat[:, 1, 1] * xiI_a, grid)


def asymptotic_field_rod(spec, field):
    """``Xa`` coefficient of the rod asymptotic field, ``xi_a - (ca / cb) xi_b``."""
    r = _rod_coeffs(field)
    ca, cb = spec.values(r.grid)
    if np.any(cb == 0):
        raise DegenerateVacuumError("rod asymptotic field needs cb != 0")
    return r.a - (ca / cb) * r.b


def asymptotic_field_rod_from_parts(spec, field):
    """Same field assembled as ``xiR - i xiI`` from :func:`decompose_rod`."""
    xr, xi = decompose_rod(spec, field)
    return xr - 1j * xi


def rod_asymptotic_freq(spec, field):
    """Frequency coefficients of the rod asymptotic field (zero ``Xb`` part)."""
    lam_a = asymptotic_field_rod(spec, field)
    r = _rod_coeffs(field)
    return real_to_freq(spec, RealCoeffs(lam_a, np.zeros(len(r.grid)), r.grid))


def _rod_coeffs(field):
    r = field.xi_ab if isinstance(field, RodBoundaryField) else field
    if not isinstance(r, RealCoeffs):
        raise TypeError("rod operations take RealCoeffs or RodBoundaryField")
    return r
