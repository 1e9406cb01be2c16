"""Maps between coefficient representations, leaf data and configurations."""

import csv
import io
from dataclasses import dataclass

import numpy as np

from .complex_structure import FreqCoeffs, RealCoeffs, _coerce, imag_cacb, upsilon
from .errors import DomainError, GridMismatchError
from .modes import ModeGrid, wronskian


@dataclass(frozen=True, eq=False)
class InitialData:
    """Per-mode leaf data ``phi_k(T)`` and ``(d_tau phi)_k(T)``."""

    phi: np.ndarray
    dphi: np.ndarray
    T: float
    grid: ModeGrid

    def __post_init__(self):
        object.__setattr__(self, "phi", _coerce(self.phi, self.grid))
        object.__setattr__(self, "dphi", _coerce(self.dphi, self.grid))

    def is_real(self, atol=1e-12):
        R = self.grid.reflect
        res = max(np.max(np.abs(self.phi[R] - np.conj(self.phi))), np.max(np.abs(self.dphi[R] - np.conj(self.dphi))))
        return res <= atol * max(1.0, np.max(np.abs(self.phi)), np.max(np.abs(self.dphi)))


def real_to_freq(spec, r):
    """``(a, b) -> (p, q)`` by inverting ``[[ca, conj ca], [cb, conj cb]]``."""
    ca, cb = spec.values(r.grid)
    pref = -1.0 / (2j * imag_cacb(spec, r.grid))
    p = pref * (np.conj(cb) * r.a - np.conj(ca) * r.b)
    q = pref * (-cb * r.a + ca * r.b)
    return FreqCoeffs(p, q, r.grid)


def freq_to_real(spec, f):
    """``(p, q) -> (a, b) = (ca p + conj(ca) q, cb p + conj(cb) q)``."""
    ca, cb = spec.values(f.grid)
    imag_cacb(spec, f.grid)
    return RealCoeffs(ca * f.p + np.conj(ca) * f.q, cb * f.p + np.conj(cb) * f.q, f.grid)


def recover_from_initial_data(spec, sample, data):
    """Frequency coefficients of the solution with the given leaf data.

    ``sample`` must be the grid sample at ``data.T``.
    """
    if sample.where is not data.grid and sample.where != data.grid:
        raise GridMismatchError("sample and initial data live on different grids")
    if not np.isclose(sample.tau, data.T, rtol=0, atol=1e-14 * max(1.0, abs(data.T))):
        raise DomainError(f"sample taken at tau={sample.tau}, data given at T={data.T}")
    U, dU = upsilon(spec, sample, data.grid)
    pref = 1.0 / (2j * imag_cacb(spec, data.grid) * wronskian(sample))
    p = pref * (-np.conj(dU) * data.phi + np.conj(U) * data.dphi)
    q = pref * (dU * data.phi - U * data.dphi)
    return FreqCoeffs(p, q, data.grid)


def evaluate_solution(spec, sample, f, idx=None):
    """Mode coefficient of the solution and of its leaf derivative at ``sample.tau``.

    With ``idx`` given, only that label is evaluated and ``sample`` may be
    a single-label sample.
    """
    if idx is None:
        U, dU = upsilon(spec, sample, f.grid)
        return f.p * U + f.q * np.conj(U), f.p * dU + f.q * np.conj(dU)
    j = f.grid.index(idx)
    U, dU = upsilon(spec, sample, idx)
    return f.p[j] * U + f.q[j] * np.conj(U), f.p[j] * dU + f.q[j] * np.conj(dU)


def initial_data(spec, sample, f):
    """Leaf data of ``f`` at ``sample.tau`` as :class:`InitialData`."""
    phi, dphi = evaluate_solution(spec, sample, f)
    return InitialData(phi, dphi, sample.tau, f.grid)


def restrict_to_leaf(spec, sample, f):
    """Configuration coefficients ``phi^T_k = p Upsilon(T) + q conj(Upsilon(T))``."""
    return evaluate_solution(spec, sample, f)[0]


def reconstruct_spatial(family, grid, config, point):
    """Quadrature sum ``sum_j mu_j config_j U_j(point)``."""
    if not family.has_spatial_modes:
        raise DomainError(f"{type(family).__name__} provides no spatial modes")
    config = _coerce(config, grid)
    total = 0.0 + 0.0j
    for w, c, idx in zip(grid.weights, config, grid.modes):
        if c != 0:
            total += w * c * family.spatial_mode(idx, point)
    return complex(total)


_FIELDS = {FreqCoeffs: ("p", "q"), RealCoeffs: ("a", "b")}


def _label_columns(grid):
    return ["kx", "ky", "kz"] if grid.kind == "interval" else ["omega", "l", "m"]


def coeffs_to_csv(f):
    """CSV text with mode labels and real/imaginary parts of both components."""
    names = _FIELDS[type(f)]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_label_columns(f.grid) + ["weight"] + [f"{n}_{part}" for n in names for part in ("re", "im")])
    u, v = (getattr(f, n) for n in names)
    for idx, w, x, y in zip(f.grid.modes, f.grid.weights, u, v):
        nums = [float(w), x.real, x.imag, y.real, y.imag]
        writer.writerow([repr(c) for c in idx] + [repr(float(v)) for v in nums])
    return buf.getvalue()


def coeffs_from_csv(text, grid):
    """Inverse of :func:`coeffs_to_csv`; the grid must match the labels."""
    rows = list(csv.reader(io.StringIO(text)))
    header, body = rows[0], rows[1:]
    cls = FreqCoeffs if header[-4].startswith("p_") else RealCoeffs
    if len(body) != len(grid):
        raise GridMismatchError("CSV row count does not match the grid")
    vals = np.array([[float(x) for x in row[-4:]] for row in body])
    return cls(vals[:, 0] + 1j * vals[:, 1], vals[:, 2] + 1j * vals[:, 3], grid)
