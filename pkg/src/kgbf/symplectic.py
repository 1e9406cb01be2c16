"""Symplectic potential, symplectic form, g-product and complex inner product.

All pairings are quadrature sums over the grid,
``sum_j mu_j x[j] y[R j]``, i.e. each mode is paired with its reflection.
For real fields this is a Hermitian pairing. Summing over every grid point
counts each reflection pair twice with half weight each, which is the same
as folding pairs once; self-reflected points enter once with their own
weight.
"""

import math
from functools import cached_property

import numpy as np

from .complex_structure import apply_j_freq, imag_cacb, upsilon
from .errors import DomainError, GridMismatchError, PositivityError
from .modes import wronskian


def fsum_complex(values):
    """Correctly rounded sum of complex values (order independent)."""
    values = np.asarray(values, dtype=complex).ravel()
    return complex(math.fsum(values.real), math.fsum(values.imag))


def pair_sum(grid, x, y):
    """``sum_j mu_j x[j] y[R j]``."""
    return fsum_complex(grid.weights * x * y[grid.reflect])


class PairingContext:
    """Everything needed to pair solutions on one leaf.

    Parameters
    ----------
    family : ModeFamily
    grid : ModeGrid
    spec : VacuumSpec
    tau : float
        Leaf parameter.
    orientation : int
        ``+1`` for the reference orientation, ``-1`` for the reversed leaf.
        Reversal flips the symplectic potential, the symplectic form and
        ``J``; the g-product is unchanged.
    """

    def __init__(self, family, grid, spec, tau, orientation=1):
        if orientation not in (1, -1):
            raise DomainError("orientation must be +1 or -1")
        self.family = family
        self.grid = grid
        self.spec = spec
        self.tau = float(tau)
        self.orientation = orientation
        self.sample = family.sample(grid, tau)
        self.sigma = family.sigma

    def at(self, tau=None, orientation=None):
        """Same context on another leaf and/or with another orientation."""
        return PairingContext(
            self.family,
            self.grid,
            self.spec,
            self.tau if tau is None else tau,
            self.orientation if orientation is None else orientation,
        )

    def reversed(self):
        return self.at(orientation=-self.orientation)

    @cached_property
    def upsilon(self):
        return upsilon(self.spec, self.sample, self.grid)

    @cached_property
    def im(self):
        return imag_cacb(self.spec, self.grid)

    @cached_property
    def wronskian(self):
        return wronskian(self.sample)

    @cached_property
    def weighted_wronskian(self):
        return self.sample.wtilde * self.wronskian

    @cached_property
    def positivity(self):
        """Per-mode ``-sigma Im(conj(ca) cb) W``; positive for admissible vacua."""
        return -self.sigma * self.im * self.wronskian

    def check_positivity(self):
        if np.any(self.positivity <= 0):
            j = int(np.argmin(self.positivity))
            raise PositivityError(f"vacuum positivity fails at mode {self.grid.modes[j]}")

    @cached_property
    def kd(self):
        """Per-mode ``K^D = 1 / (-2 sigma Im(conj(ca) cb) wtilde W)``."""
        self.check_positivity()
        return 1.0 / (-2.0 * self.sigma * self.im * self.weighted_wronskian)

    def apply_j(self, f):
        """``J`` of this (possibly reversed) leaf."""
        jf = apply_j_freq(f)
        return jf if self.orientation == 1 else -jf

    def check(self, *fields):
        for f in fields:
            if f.grid is not self.grid and f.grid != self.grid:
                raise GridMismatchError("coefficient field does not live on the context grid")


def symplectic_potential_density(ctx, xi, phi):
    """Per-mode terms of the symplectic potential ``[xi, phi]`` (before weights).

    Four-term form in the frequency coefficients:
    ``sigma wtilde phi_k (d xi)_{Rk}`` with ``phi_k = p U + q conj U`` and
    ``(d xi)_k = p dU + q conj dU`` multiplied out.
    """
    ctx.check(xi, phi)
    U, dU = ctx.upsilon
    R = ctx.grid.reflect
    Uc, dUc = np.conj(U), np.conj(dU)
    terms = (
        phi.p * xi.p[R] * U * dU
        + phi.p * xi.q[R] * U * dUc
        + phi.q * xi.p[R] * Uc * dU
        + phi.q * xi.q[R] * Uc * dUc
    )
    return ctx.orientation * ctx.sigma * ctx.sample.wtilde * terms


def symplectic_potential(ctx, xi, phi):
    """Symplectic potential ``[xi, phi]`` on the context leaf; real for real fields."""
    return _real_if_real(fsum_complex(ctx.grid.weights * symplectic_potential_density(ctx, xi, phi)), xi, phi)


def symplectic_form_density(ctx, xi, zeta):
    R = ctx.grid.reflect
    ctx.check(xi, zeta)
    return (
        1j * ctx.orientation * ctx.sigma * ctx.weighted_wronskian * ctx.im * (xi.p * zeta.q[R] - xi.q * zeta.p[R])
    )


def symplectic_form(ctx, xi, zeta):
    """``omega(xi, zeta)`` in the frequency representation.

    Real for real fields; bilinear, so it also accepts complexified fields.
    """
    return _real_if_real(fsum_complex(ctx.grid.weights * symplectic_form_density(ctx, xi, zeta)), xi, zeta)


def symplectic_form_real(ctx, xi_ab, zeta_ab):
    """``omega`` from real-expansion coefficients."""
    ctx.check(xi_ab, zeta_ab)
    R = ctx.grid.reflect
    dens = -0.5 * ctx.orientation * ctx.sigma * ctx.weighted_wronskian * (xi_ab.a * zeta_ab.b[R] - xi_ab.b * zeta_ab.a[R])
    return _real_if_real(fsum_complex(ctx.grid.weights * dens), xi_ab, zeta_ab)


def symplectic_form_leaf_data(ctx, data1, data2):
    """``omega`` from leaf data ``(phi, d_tau phi)`` with momentum ``wtilde d_tau phi``."""
    R = ctx.grid.reflect
    wt = ctx.sample.wtilde
    dens = -0.5 * ctx.orientation * ctx.sigma * wt * (data1.phi * data2.dphi[R] - data2.phi * data1.dphi[R])
    return _real_if_real(fsum_complex(ctx.grid.weights * dens), data1, data2)


def g_product_density(ctx, xi, zeta):
    ctx.check(xi, zeta)
    R = ctx.grid.reflect
    return -2.0 * ctx.sigma * ctx.weighted_wronskian * ctx.im * (xi.p * zeta.q[R] + xi.q * zeta.p[R])


def g_product(ctx, xi, zeta):
    """``g(xi, zeta) = 2 omega(xi, J zeta)``; symmetric and orientation invariant."""
    ctx.check_positivity()
    return _real_if_real(fsum_complex(ctx.grid.weights * g_product_density(ctx, xi, zeta)), xi, zeta)


def complex_inner_product_density(ctx, xi, zeta):
    ctx.check(xi, zeta)
    R = ctx.grid.reflect
    pairing = xi.p * zeta.q[R] if ctx.orientation == 1 else xi.q * zeta.p[R]
    return -4.0 * ctx.sigma * ctx.weighted_wronskian * ctx.im * pairing


def complex_inner_product(ctx, xi, zeta):
    """``<xi, zeta> = g(xi, zeta) + 2i omega(xi, zeta)``.

    Conjugate linear in ``xi`` with respect to ``J``, linear in ``zeta``.
    """
    return fsum_complex(ctx.grid.weights * complex_inner_product_density(ctx, xi, zeta))


def _real_if_real(value, *fields):
    if all(f.is_real() for f in fields):
        return value.real
    return value
