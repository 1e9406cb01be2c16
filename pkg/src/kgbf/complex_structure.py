"""Vacuum functions, coefficient containers and complex structures.

A vacuum is fixed per mode by two complex numbers ``(ca, cb)`` through
``Upsilon = ca Xa + cb Xb``. Solutions are stored per mode either in the
real expansion ``(a, b)`` (coefficients of ``Xa``, ``Xb``) or in the
frequency expansion ``(p, q)`` (coefficients of ``Upsilon`` and
``conj(Upsilon)``). Pairings between modes always go through the grid's
reflection permutation ``R``: a field is real iff ``q[k] = conj(p[R k])``.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateVacuumError, DomainError, GridMismatchError, ZeroUpsilonError
from .modes import ModeGrid

# relative floor for Im(conj(ca) cb); only rounding-level values count as zero
_DEGENERATE_RTOL = 1e-14


class VacuumSpec:
    """Per-mode vacuum functions ``(ca, cb)``.

    Parameters
    ----------
    evaluator : callable
        ``evaluator(idx) -> (ca, cb)``.
    name : str
        Label used in reports.
    constant : tuple of complex, optional
        Set when the evaluator is mode independent; enables a fast path.
    """

    def __init__(self, evaluator, name="custom", constant=None):
        self._evaluator = evaluator
        self.name = name
        self._constant = None if constant is None else (complex(constant[0]), complex(constant[1]))

    def __repr__(self):
        return f"VacuumSpec({self.name})"

    def __call__(self, idx):
        ca, cb = self._evaluator(idx)
        return complex(ca), complex(cb)

    def values(self, where):
        """``(ca, cb)`` for one label (scalars) or a grid (arrays)."""
        if not isinstance(where, ModeGrid):
            return self(where)
        if self._constant is not None:
            n = len(where)
            return np.full(n, self._constant[0]), np.full(n, self._constant[1])
        pairs = np.array([self(idx) for idx in where.modes], dtype=complex).reshape(len(where), 2)
        return pairs[:, 0].copy(), pairs[:, 1].copy()

    @classmethod
    def constant(cls, ca, cb, name=None):
        ca, cb = complex(ca), complex(cb)
        return cls(lambda idx: (ca, cb), name=name or f"constant({ca}, {cb})", constant=(ca, cb))

    @classmethod
    def standard(cls):
        """``(1, -i)``: ``Upsilon = Xa - i Xb`` (``exp(-iEt)`` for plane waves)."""
        return cls.constant(1.0, -1j, name="standard")

    @classmethod
    def from_table(cls, table, name="table"):
        """Spec from an explicit ``{label: (ca, cb)}`` mapping."""
        table = {idx: (complex(ca), complex(cb)) for idx, (ca, cb) in table.items()}

        def lookup(idx):
            try:
                return table[idx]
            except KeyError:
                raise DomainError(f"no vacuum coefficients tabulated for {idx}") from None

        return cls(lookup, name=name)

    def gauge_scaled(self, f):
        """Spec ``(f ca, f cb)`` for a complex function ``f(idx)`` or a constant."""
        fun = f if callable(f) else (lambda idx, _f=complex(f): _f)
        base = self

        def scaled(idx):
            ca, cb = base(idx)
            s = complex(fun(idx))
            return s * ca, s * cb

        const = None
        if self._constant is not None and not callable(f):
            const = (complex(f) * self._constant[0], complex(f) * self._constant[1])
        return VacuumSpec(scaled, name=f"gauge({self.name})", constant=const)

    def check_reflection(self, grid, atol=0.0):
        """Raise unless ``ca``, ``cb`` are reflection symmetric on ``grid``."""
        ca, cb = self.values(grid)
        bad = np.maximum(np.abs(ca - ca[grid.reflect]), np.abs(cb - cb[grid.reflect]))
        if np.any(bad > atol):
            raise DomainError("vacuum functions must satisfy c(R k) = c(k)")


@dataclass(frozen=True, eq=False)
class _Pair:
    grid: ModeGrid

    _names = ("x", "y")

    def _parts(self):
        return getattr(self, self._names[0]), getattr(self, self._names[1])

    def _new(self, u, v):
        return type(self)(u, v, self.grid)

    def _same_grid(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.grid is not self.grid and other.grid != self.grid:
            raise GridMismatchError("coefficient fields live on different grids")

    def __add__(self, other):
        self._same_grid(other)
        (u1, v1), (u2, v2) = self._parts(), other._parts()
        return self._new(u1 + u2, v1 + v2)

    def __sub__(self, other):
        self._same_grid(other)
        (u1, v1), (u2, v2) = self._parts(), other._parts()
        return self._new(u1 - u2, v1 - v2)

    def __neg__(self):
        u, v = self._parts()
        return self._new(-u, -v)

    def __mul__(self, scalar):
        u, v = self._parts()
        return self._new(scalar * u, scalar * v)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (1.0 / scalar)

    def max_abs_diff(self, other):
        self._same_grid(other)
        (u1, v1), (u2, v2) = self._parts(), other._parts()
        return float(max(np.max(np.abs(u1 - u2)), np.max(np.abs(v1 - v2))))

    def norm(self):
        u, v = self._parts()
        return float(max(np.max(np.abs(u)), np.max(np.abs(v))))


def _coerce(values, grid):
    arr = np.array(values, dtype=complex).reshape(-1)
    if arr.shape != (len(grid),):
        raise GridMismatchError(f"expected {len(grid)} coefficients, got {arr.shape[0]}")
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class FreqCoeffs(_Pair):
    """Frequency coefficients ``p[k] = phi+_k`` and ``q[k] = conj(phi-_{-k})``."""

    p: np.ndarray = None
    q: np.ndarray = None
    _names = ("p", "q")

    def __init__(self, p, q, grid):
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "p", _coerce(p, grid))
        object.__setattr__(self, "q", _coerce(q, grid))

    @classmethod
    def zeros(cls, grid):
        return cls(np.zeros(len(grid)), np.zeros(len(grid)), grid)

    def reality_residual(self):
        return float(np.max(np.abs(self.q - np.conj(self.p[self.grid.reflect]))))

    def is_real(self, atol=1e-12):
        scale = max(1.0, self.norm())
        return self.reality_residual() <= atol * scale


@dataclass(frozen=True, eq=False)
class RealCoeffs(_Pair):
    """Real-expansion coefficients ``(a, b)`` of ``Xa U_k`` and ``Xb U_k``."""

    a: np.ndarray = None
    b: np.ndarray = None
    _names = ("a", "b")

    def __init__(self, a, b, grid):
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "a", _coerce(a, grid))
        object.__setattr__(self, "b", _coerce(b, grid))

    @classmethod
    def zeros(cls, grid):
        return cls(np.zeros(len(grid)), np.zeros(len(grid)), grid)

    def reality_residual(self):
        R = self.grid.reflect
        return float(max(np.max(np.abs(self.a[R] - np.conj(self.a))), np.max(np.abs(self.b[R] - np.conj(self.b)))))

    def is_real(self, atol=1e-12):
        scale = max(1.0, self.norm())
        return self.reality_residual() <= atol * scale


def _where(sample, idx):
    where = idx if idx is not None else sample.where
    if where is None:
        raise DomainError("need a mode label or grid to evaluate the vacuum functions")
    return where


def imag_cacb(spec, where):
    """``Im(conj(ca) cb)``, raising when it vanishes."""
    ca, cb = spec.values(where)
    prod = np.conj(ca) * cb
    if np.any(np.abs(prod.imag) <= _DEGENERATE_RTOL * np.abs(ca) * np.abs(cb)):
        raise DegenerateVacuumError("Im(conj(ca) cb) vanishes; (ca, cb) do not define a complex structure")
    return prod.imag


def upsilon(spec, sample, idx=None):
    """``Upsilon = ca Xa + cb Xb`` and its leaf derivative.

    Raises :class:`ZeroUpsilonError` if either vanishes.
    """
    ca, cb = spec.values(_where(sample, idx))
    U = ca * sample.Xa + cb * sample.Xb
    dU = ca * sample.dXa + cb * sample.dXb
    if np.any(U == 0) or np.any(dU == 0):
        raise ZeroUpsilonError(f"Upsilon or its derivative vanishes at tau={sample.tau}")
    return U, dU


def jab_matrix(spec, idx):
    """Complex structure acting on real-expansion coefficients ``(a, b)``.

    Returns a ``(2, 2)`` array for a label, ``(n, 2, 2)`` for a grid.
    """
    im = imag_cacb(spec, idx)
    ca, cb = spec.values(idx)
    re = (np.conj(ca) * cb).real
    mat = np.array([[re, -np.abs(ca) ** 2], [np.abs(cb) ** 2, -re]]) / im
    return np.moveaxis(mat, (0, 1), (-2, -1)) if mat.ndim == 3 else mat


def apply_j_freq(f):
    """``J`` in the frequency representation: ``p -> -i p``, ``q -> i q``."""
    return FreqCoeffs(-1j * f.p, 1j * f.q, f.grid)


def apply_j_real(spec, r):
    """``J`` in the real expansion, mode by mode via :func:`jab_matrix`."""
    m = jab_matrix(spec, r.grid)
    a = m[:, 0, 0] * r.a + m[:, 0, 1] * r.b
    b = m[:, 1, 0] * r.a + m[:, 1, 1] * r.b
    return RealCoeffs(a, b, r.grid)


def vacuum_invariants(spec, idx):
    """Gauge-invariant pair ``(Qr, dAlpha)``.

    ``Qr = |ca| / |cb|`` and ``dAlpha = arg(cb) - arg(ca)`` in ``(-pi, pi]``.
    Only defined for a single label.
    """
    ca, cb = spec.values(idx)
    if ca == 0 or cb == 0:
        raise DegenerateVacuumError("vacuum invariants need ca != 0 and cb != 0")
    imag_cacb(spec, idx)
    dalpha = cmath.phase(cb / ca)
    if dalpha <= -math.pi:
        dalpha += 2 * math.pi
    return abs(ca) / abs(cb), dalpha


def _stack(rows):
    mat = np.array(rows)
    return np.moveaxis(mat, (0, 1), (-2, -1)) if mat.ndim == 3 else mat


def projectors_mn(spec, sample, idx=None):
    """Projectors onto solutions vanishing at the leaf (``PM``) and with
    vanishing leaf derivative there (``PN``), acting on ``(p, q)``.

    ``PM + PN = 1``; both are oblique in general.
    """
    where = _where(sample, idx)
    U, dU = upsilon(spec, sample, where)
    im = imag_cacb(spec, where)
    pref = 1.0 / (2j * im * sample.wronskian)
    Uc, dUc = np.conj(U), np.conj(dU)
    PM = _stack([[Uc * dU, Uc * dUc], [-U * dU, -U * dUc]]) * np.asarray(pref)[..., None, None]
    PN = _stack([[-U * dUc, -Uc * dUc], [U * dU, Uc * dU]]) * np.asarray(pref)[..., None, None]
    return PM, PN


def apply_projector(P, f):
    """Apply a per-mode ``(n, 2, 2)`` matrix to frequency coefficients."""
    p = P[..., 0, 0] * f.p + P[..., 0, 1] * f.q
    q = P[..., 1, 0] * f.p + P[..., 1, 1] * f.q
    return FreqCoeffs(p, q, f.grid)


def projectors_pm(f):
    """Frequency projectors ``P+`` (keeps ``q``) and ``P-`` (keeps ``p``)."""
    zero = np.zeros(len(f.grid))
    return FreqCoeffs(zero, f.q, f.grid), FreqCoeffs(f.p, zero, f.grid)


def j_sigma_map(spec, sample, kappa, idx=None):
    """Lift leaf configuration coefficients ``kappa`` into ``J M``.

    The result restricts to ``kappa`` on the leaf and satisfies
    ``p = q conj(Upsilon) / Upsilon`` there.
    """
    U, _ = upsilon(spec, sample, _where(sample, idx))
    kappa = np.asarray(kappa, dtype=complex)
    return FreqCoeffs(kappa / (2 * U), kappa / (2 * np.conj(U)), _grid_of(sample, idx))


def jm_parameter(f):
    """Per-mode parameter ``conj(xi_{-k}) = -i q[k]`` of an element of ``J M``."""
    return -1j * f.q


def _grid_of(sample, idx):
    where = _where(sample, idx)
    if not isinstance(where, ModeGrid):
        raise DomainError("grid-valued operation needs a grid sample")
    return where


def m_condition_residual(spec, sample, f):
    """Max ``|p Upsilon + q conj(Upsilon)|`` at the leaf (zero on ``M``)."""
    U, _ = upsilon(spec, sample, f.grid)
    return float(np.max(np.abs(f.p * U + f.q * np.conj(U))))


def n_condition_residual(spec, sample, f):
    """Max ``|p dUpsilon + q conj(dUpsilon)|`` at the leaf (zero on ``N``)."""
    _, dU = upsilon(spec, sample, f.grid)
    return float(np.max(np.abs(f.p * dU + f.q * np.conj(dU))))


def jm_condition_residual(spec, sample, f):
    """Max ``|p Upsilon - q conj(Upsilon)|`` at the leaf (zero on ``J M``)."""
    U, _ = upsilon(spec, sample, f.grid)
    return float(np.max(np.abs(f.p * U - f.q * np.conj(U))))
