"""Complex structure on phase-space data ``(phi, pi)`` of a leaf.

All operators are diagonal in the mode basis, so the phase-space complex
structure ``[[A, B], [D, C]]`` reduces to four real numbers per mode. The
matrix ``F`` sends ``(phi, pi)`` to frequency coefficients and conjugates
the phase-space ``J`` into ``diag(-i, i)``.
"""

from dataclasses import dataclass

import numpy as np

from .complex_structure import FreqCoeffs, _coerce, imag_cacb, upsilon
from .modes import ModeGrid, wronskian
from .symplectic import fsum_complex


@dataclass(frozen=True, eq=False)
class PhasePoint:
    """Configuration ``vph`` and momentum density ``pi`` coefficients on a leaf."""

    vph: np.ndarray
    pi: np.ndarray
    grid: ModeGrid

    def __post_init__(self):
        object.__setattr__(self, "vph", _coerce(self.vph, self.grid))
        object.__setattr__(self, "pi", _coerce(self.pi, self.grid))

    def is_real(self, atol=1e-12):
        R = self.grid.reflect
        res = max(np.max(np.abs(self.vph[R] - np.conj(self.vph))), np.max(np.abs(self.pi[R] - np.conj(self.pi))))
        return res <= atol * max(1.0, np.max(np.abs(self.vph)), np.max(np.abs(self.pi)))


@dataclass(frozen=True)
class AbdcEigs:
    """Per-mode eigenvalues of the phase-space complex structure blocks."""

    A: np.ndarray
    B: np.ndarray
    D: np.ndarray
    C: np.ndarray

    def matrix(self):
        """``[[A, B], [D, C]]`` with shape ``(2, 2)`` or ``(n, 2, 2)``."""
        mat = np.array([[self.A, self.B], [self.D, self.C]], dtype=float)
        return np.moveaxis(mat, (0, 1), (-2, -1)) if mat.ndim == 3 else mat

    def constraint_residual(self):
        """Largest violation of ``J^2 = -1`` written out in blocks, and of ``A = -C``."""
        A, B, D, C = (np.asarray(v) for v in (self.A, self.B, self.D, self.C))
        parts = [A**2 + B * D + 1, C**2 + D * B + 1, A * B + B * C, D * A + C * D, A + C]
        return float(max(np.max(np.abs(x)) for x in parts))


def _where(sample, idx):
    return idx if idx is not None else sample.where


def abdc_operators(spec, sample, idx=None):
    """Blocks of the phase-space complex structure.

    ``A = Re(conj U dU) / (W Im)``, ``C = -A``,
    ``B = -|U|^2 / (wtilde Im W)``, ``D = wtilde |dU|^2 / (W Im)``
    with ``Im = Im(conj(ca) cb)``.
    """
    where = _where(sample, idx)
    U, dU = upsilon(spec, sample, where)
    im = imag_cacb(spec, where)
    W = wronskian(sample)
    wt = sample.wtilde
    A = (np.conj(U) * dU).real / (W * im)
    B = -np.abs(U) ** 2 / (wt * im * W)
    D = wt * np.abs(dU) ** 2 / (W * im)
    return AbdcEigs(A, B, D, -A)


def f_matrix(spec, sample, idx=None):
    """Matrix sending ``(phi, pi)`` to ``(p, q)`` with ``pi = wtilde d_tau phi``."""
    where = _where(sample, idx)
    U, dU = upsilon(spec, sample, where)
    pref = 1.0 / (2j * imag_cacb(spec, where) * wronskian(sample))
    wt = sample.wtilde
    mat = np.array([[-np.conj(dU), np.conj(U) / wt], [dU, -U / wt]]) * pref
    return np.moveaxis(mat, (0, 1), (-2, -1)) if mat.ndim == 3 else mat


def conjugation_residuals(spec, sample, idx=None, perturb_C=0.0, normalized=False):
    """Per-mode Frobenius norm of ``F M - diag(-i, i) F``.

    ``perturb_C`` (scalar or per-mode) shifts ``C`` for negative controls.
    With ``normalized`` each norm is divided by ``|F| |M|``, the scale of
    rounding errors in the product.
    """
    eigs = abdc_operators(spec, sample, idx)
    if np.any(perturb_C):
        eigs = AbdcEigs(eigs.A, eigs.B, eigs.D, eigs.C + perturb_C)
    F = f_matrix(spec, sample, idx)
    M = eigs.matrix()
    diff = F @ M - np.array([-1j, 1j])[:, None] * F
    res = np.sqrt(np.sum(np.abs(diff) ** 2, axis=(-2, -1)))
    if normalized:
        res = res / (np.linalg.norm(F, axis=(-2, -1)) * np.linalg.norm(M, axis=(-2, -1)))
    return res


def conjugation_residual(spec, sample, idx=None, perturb_C=0.0):
    """Frobenius norm of ``F M - diag(-i, i) F`` (worst mode for grids).

    ``perturb_C`` shifts ``C`` for negative controls.
    """
    return float(np.max(conjugation_residuals(spec, sample, idx, perturb_C)))


def to_freq(spec, sample, point):
    """Frequency coefficients of the solution with phase-space data ``point``."""
    F = f_matrix(spec, sample, point.grid)
    return FreqCoeffs(
        F[:, 0, 0] * point.vph + F[:, 0, 1] * point.pi,
        F[:, 1, 0] * point.vph + F[:, 1, 1] * point.pi,
        point.grid,
    )


def apply_j_phase(spec, sample, point):
    """``(phi, pi) -> (A phi + B pi, D phi + C pi)``."""
    e = abdc_operators(spec, sample, point.grid)
    return PhasePoint(e.A * point.vph + e.B * point.pi, e.D * point.vph + e.C * point.pi, point.grid)


def symplectic_form_phase(sigma, point1, point2, orientation=1):
    """``-(sigma/2) sum mu (phi1 pi2_R - phi2 pi1_R)``."""
    R = point1.grid.reflect
    dens = point1.vph * point2.pi[R] - point2.vph * point1.pi[R]
    return fsum_complex(point1.grid.weights * dens) * (-0.5 * sigma * orientation)


def phase_subspace_relations(spec, sample, point):
    """Residuals of the phase-space images of ``M`` and ``N``.

    ``(A phi, 0)`` and ``(B pi, 0)`` must map into ``N`` (vanishing leaf
    derivative); ``(0, D phi)`` and ``(0, C pi)`` into ``M`` (vanishing on the
    leaf). Returns a dict of relative residuals.
    """
    grid = point.grid
    e = abdc_operators(spec, sample, grid)
    U, dU = upsilon(spec, sample, grid)
    zero = np.zeros(len(grid))
    images = {
        "A_phi_in_N": PhasePoint(e.A * point.vph, zero, grid),
        "B_pi_in_N": PhasePoint(e.B * point.pi, zero, grid),
        "D_phi_in_M": PhasePoint(zero, e.D * point.vph, grid),
        "C_pi_in_M": PhasePoint(zero, e.C * point.pi, grid),
    }
    out = {}
    for name, img in images.items():
        f = to_freq(spec, sample, img)
        scale = max(np.max(np.abs(f.p)), np.max(np.abs(f.q)), 1e-300)
        if name.endswith("_N"):
            r = np.abs(f.p * dU + f.q * np.conj(dU)) / (scale * np.abs(dU))
        else:
            r = np.abs(f.p * U + f.q * np.conj(U)) / (scale * np.abs(U))
        out[name] = float(np.max(r))
    return out


def real_to_phase_matrix(sample):
    """``G`` with ``(phi, pi) = G (a, b)``: ``[[Xa, Xb], [wtilde dXa, wtilde dXb]]``."""
    wt = sample.wtilde
    mat = np.array([[sample.Xa, sample.Xb], [wt * sample.dXa, wt * sample.dXb]], dtype=float)
    return np.moveaxis(mat, (0, 1), (-2, -1)) if mat.ndim == 3 else mat
