"""Vacuum and coherent states, their inner products and free amplitudes.

Two quantization schemes are implemented side by side:

* Schroedinger-Feynman (SFQ): states are wave functionals of leaf
  configurations, coherent states are labelled by complex configuration
  coefficients ``eta``.
* Holomorphic (HQ): coherent states are labelled by real solutions.

A configuration ``eta`` corresponds to the real solution ``eta^D`` with
``p = K eta`` and ``q = K conj(eta[R k])`` where ``K = K^D`` per mode.
Every exponent below is a quadrature sum, and each result keeps its
per-mode table so that ``value = exp(sum_j mu_j log_density_j)``.
"""

from dataclasses import dataclass, field

import numpy as np

from .boundary import decompose_interval, decompose_rod, rod_asymptotic_freq, asymptotic_field_interval
from .coefficients import real_to_freq, restrict_to_leaf
from .complex_structure import FreqCoeffs, RealCoeffs, _coerce, j_sigma_map, upsilon
from .errors import DegenerateVacuumError, DomainError
from .modes import ModeGrid
from .symplectic import (
    complex_inner_product,
    fsum_complex,
    g_product,
    g_product_density,
    symplectic_potential,
)

SFQ = "SFQ"
HQ = "HQ"


@dataclass(frozen=True, eq=False)
class AmplitudeResult:
    """Amplitude value with its per-mode exponent table."""

    value: complex
    scheme: str
    region: str
    log_density: np.ndarray
    grid: ModeGrid = field(repr=False)

    @property
    def log_value(self):
        return fsum_complex(self.grid.weights * self.log_density)

    @classmethod
    def from_density(cls, density, scheme, region, grid):
        density = np.asarray(density, dtype=complex)
        return cls(complex(np.exp(fsum_complex(grid.weights * density))), scheme, region, density, grid)


def vacuum_operator_eig(spec, sample, idx=None):
    """Vacuum-operator eigenvalue ``a = -i sigma wtilde conj(dU) / conj(U)`` per mode."""
    where = idx if idx is not None else sample.where
    U, dU = upsilon(spec, sample, where)
    return -1j * sample.sigma * sample.wtilde * np.conj(dU) / np.conj(U)


def vacuum_form_direct(ctx, phi, chi):
    """``Omega(phi, chi) = sum_j mu_j a_j phi_j chi_{Rj}`` from the vacuum operator."""
    a = vacuum_operator_eig(ctx.spec, ctx.sample, ctx.grid)
    phi, chi = _coerce(phi, ctx.grid), _coerce(chi, ctx.grid)
    return fsum_complex(ctx.grid.weights * a * phi * chi[ctx.grid.reflect])


def omega_vacuum_form(ctx, phi, chi):
    """``Omega(phi, chi) = g(j phi, j chi) - i [j phi, j chi]`` from solution-space data."""
    jphi = j_sigma_map(ctx.spec, ctx.sample, phi)
    jchi = j_sigma_map(ctx.spec, ctx.sample, chi)
    return complex(g_product(ctx, jphi, jchi)) - 1j * symplectic_potential(ctx, jphi, jchi)


def kd_eig(ctx, idx=None):
    """``K^D`` per mode (array), or for one label of the context grid."""
    kd = ctx.kd
    return kd if idx is None else float(kd[ctx.grid.index(idx)])


def characterizing_solution(ctx, eta):
    """Real solution ``eta^D`` labelling the same coherent state as ``eta``."""
    eta = _coerce(eta, ctx.grid)
    kd = ctx.kd
    return FreqCoeffs(kd * eta, kd * np.conj(eta[ctx.grid.reflect]), ctx.grid)


def characterizing_function(ctx, xi):
    """Inverse of :func:`characterizing_solution`: ``eta = p / K``."""
    return xi.p / ctx.kd


def coherent_inner_product_schrodinger(ctx, eta, kappa):
    """``<psi_eta, psi_kappa>`` of normalized Schroedinger coherent states."""
    eta, kappa = _coerce(eta, ctx.grid), _coerce(kappa, ctx.grid)
    dens = ctx.kd * (np.conj(eta) * kappa - 0.5 * np.abs(eta) ** 2 - 0.5 * np.abs(kappa) ** 2)
    return complex(np.exp(fsum_complex(ctx.grid.weights * dens)))


def coherent_inner_product_holomorphic(ctx, xi, zeta):
    """``exp(<xi, zeta>/2 - g(xi, xi)/4 - g(zeta, zeta)/4)``.

    With ``zeta = eta^D`` and ``xi = kappa^D`` this is the Schroedinger
    overlap of ``eta`` with ``kappa``.
    """
    expo = 0.5 * complex_inner_product(ctx, xi, zeta) - 0.25 * g_product(ctx, xi, xi) - 0.25 * g_product(ctx, zeta, zeta)
    return complex(np.exp(expo))


def amplitude_sfq_interval(ctx, eta, kappa):
    """Schroedinger-Feynman interval amplitude for coherent states ``eta``, ``kappa``."""
    eta, kappa = _coerce(eta, ctx.grid), _coerce(kappa, ctx.grid)
    dens = ctx.kd * (eta * np.conj(kappa) - 0.5 * np.abs(eta) ** 2 - 0.5 * np.abs(kappa) ** 2)
    return AmplitudeResult.from_density(dens, SFQ, "interval", ctx.grid)


def amplitude_hq_interval(ctx, zeta, xi, route="decomposition"):
    """Holomorphic interval amplitude for the boundary solution ``(zeta, xi)``.

    ``route="decomposition"`` evaluates ``exp(-g(lamI, lamI) - i g(lamR, lamI))``;
    ``route="asymptotic"`` evaluates
    ``exp(-g(zeta, zeta)/4 - g(xi, xi)/4 + g(lam, lam)/2)`` with the
    asymptotic field ``lam``.
    """
    ctx.check_positivity()
    if route == "decomposition":
        lamR, lamI = decompose_interval(ctx.spec, zeta, xi)
        dens = -g_product_density(ctx, lamI, lamI) - 1j * g_product_density(ctx, lamR, lamI)
    elif route == "asymptotic":
        lam = asymptotic_field_interval(ctx.spec, zeta, xi)
        dens = (
            -0.25 * g_product_density(ctx, zeta, zeta)
            - 0.25 * g_product_density(ctx, xi, xi)
            + 0.5 * g_product_density(ctx, lam, lam)
        )
    else:
        raise DomainError(f"unknown route {route!r}")
    return AmplitudeResult.from_density(dens, HQ, "interval", ctx.grid)


def _rod_grid_check(ctx):
    if ctx.grid.kind != "rod":
        raise DomainError("rod amplitudes need a rod grid")


def amplitude_sfq_rod(ctx, kappa):
    """Schroedinger-Feynman rod amplitude for the coherent state ``kappa``."""
    _rod_grid_check(ctx)
    kappa = _coerce(kappa, ctx.grid)
    _, cb = ctx.spec.values(ctx.grid)
    if np.any(cb == 0):
        raise DegenerateVacuumError("rod amplitude needs cb != 0")
    kc = np.conj(kappa)
    dens = -0.5 * ctx.kd * ((np.conj(cb) / cb) * kc * kc[ctx.grid.reflect] + np.abs(kappa) ** 2)
    return AmplitudeResult.from_density(dens, SFQ, "rod", ctx.grid)


def rod_regular_parts(ctx, boundary):
    """``(xiR, xiI)`` as frequency coefficients of regular real solutions."""
    xr, xi = decompose_rod(ctx.spec, boundary)
    zero = np.zeros(len(ctx.grid))
    return (
        real_to_freq(ctx.spec, RealCoeffs(xr, zero, ctx.grid)),
        real_to_freq(ctx.spec, RealCoeffs(xi, zero, ctx.grid)),
    )


def amplitude_hq_rod(ctx, boundary, route="decomposition"):
    """Holomorphic rod amplitude for a real boundary solution.

    ``route="decomposition"`` evaluates ``exp(-g(xiI, xiI)/2 - i g(xiR, xiI)/2)``;
    ``route="asymptotic"`` evaluates ``exp(-g(xi, xi)/4 + g(lam, lam)/4)``
    with the rod asymptotic field ``lam``.
    """
    _rod_grid_check(ctx)
    ctx.check_positivity()
    if route == "decomposition":
        xr, xi = rod_regular_parts(ctx, boundary)
        dens = -0.5 * g_product_density(ctx, xi, xi) - 0.5j * g_product_density(ctx, xr, xi)
    elif route == "asymptotic":
        r = boundary.xi_ab if hasattr(boundary, "xi_ab") else boundary
        full = real_to_freq(ctx.spec, r)
        lam = rod_asymptotic_freq(ctx.spec, r)
        dens = -0.25 * g_product_density(ctx, full, full) + 0.25 * g_product_density(ctx, lam, lam)
    else:
        raise DomainError(f"unknown route {route!r}")
    return AmplitudeResult.from_density(dens, HQ, "rod", ctx.grid)


def correspondence_kernel_log(ctx, xi, phi):
    """Exponent of the kernel mapping holomorphic to Schroedinger wave functions.

    ``-(i/2)[j phi, j phi] - g(j phi, j phi)/2 + <j phi, xi> - <j q xi, xi>/2``
    where ``q`` restricts a solution to the leaf.
    """
    jphi = j_sigma_map(ctx.spec, ctx.sample, phi)
    jqxi = j_sigma_map(ctx.spec, ctx.sample, restrict_to_leaf(ctx.spec, ctx.sample, xi))
    return (
        -0.5j * symplectic_potential(ctx, jphi, jphi)
        - 0.5 * complex(g_product(ctx, jphi, jphi))
        + complex_inner_product(ctx, jphi, xi)
        - 0.5 * complex_inner_product(ctx, jqxi, xi)
    )


def schrodinger_vacuum_log(ctx, phi):
    """Log of the (unnormalized) vacuum wave functional, ``-Omega(phi, phi)/2``."""
    return -0.5 * vacuum_form_direct(ctx, phi, phi)


def schrodinger_coherent_log(ctx, eta, phi):
    """Log of the coherent wave functional relative to the vacuum.

    ``sum mu eta_j phi_{Rj} / conj(U_j)
    - (1/2) sum mu K (U/conj U eta_j eta_{Rj} + |eta_j|^2)``.
    """
    eta, phi = _coerce(eta, ctx.grid), _coerce(phi, ctx.grid)
    U, _ = ctx.upsilon
    R = ctx.grid.reflect
    lin = eta * phi[R] / np.conj(U)
    norm = -0.5 * ctx.kd * ((U / np.conj(U)) * eta * eta[R] + np.abs(eta) ** 2)
    return fsum_complex(ctx.grid.weights * (lin + norm))


def vacuum_normalization_log_density(ctx):
    """Per-mode log of the Gaussian normalization, ``log(Re a / pi) / 4``.

    Read-only diagnostic; the infinite product over modes is never formed.
    """
    U, _ = ctx.upsilon
    re_a = np.abs(2 * ctx.im * ctx.weighted_wronskian) / (2 * np.abs(U) ** 2)
    return 0.25 * np.log(re_a / np.pi)
