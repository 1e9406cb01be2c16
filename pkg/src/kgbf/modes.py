"""Mode labels, quadrature grids and separated mode-function families.

A mode family supplies, for every mode label and leaf parameter ``tau``, the
two real separated solutions ``Xa``, ``Xb`` with their ``tau``-derivatives,
the leaf weight ``wtilde`` and the sign ``sigma``. Everything downstream
works on whole grids at once, so families evaluate vectorised over a
:class:`ModeGrid` as well as on single labels.
"""

from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Optional

import numpy as np

from .errors import DegenerateModeError, DomainError
from .special import reflection_harmonic, spherical_jn, spherical_yn

INTERVAL = "interval"
ROD = "rod"
TUBE = "tube"


class IntervalMode(NamedTuple):
    """Momentum label ``k`` (a real 3-vector) of a constant-time leaf."""

    kx: float
    ky: float = 0.0
    kz: float = 0.0

    kind = INTERVAL

    def reflection(self):
        # ``+ 0.0`` keeps -0.0 out of the labels
        return IntervalMode(-self.kx + 0.0, -self.ky + 0.0, -self.kz + 0.0)

    @property
    def norm(self):
        return float(np.sqrt(self.kx**2 + self.ky**2 + self.kz**2))


class RodMode(NamedTuple):
    """Hypercylinder label: frequency ``omega`` and angular numbers ``l``, ``m``."""

    omega: float
    l: int
    m: int

    kind = ROD

    def reflection(self):
        return RodMode(-self.omega + 0.0, self.l, -self.m)


def _check_label(idx):
    if isinstance(idx, RodMode):
        if idx.l < 0 or abs(idx.m) > idx.l:
            raise DomainError(f"rod label needs |m| <= l, got {idx}")
    elif not isinstance(idx, IntervalMode):
        raise DomainError(f"unsupported mode label {idx!r}")


class ModeGrid:
    """Finite, reflection-closed set of mode labels with quadrature weights.

    Parameters
    ----------
    modes : sequence of IntervalMode or RodMode
        All labels must share one kind.
    weights : array_like, optional
        Positive weight per label, symmetric under reflection. Defaults to 1.

    Attributes
    ----------
    reflect : ndarray of int
        ``reflect[j]`` is the position of ``modes[j].reflection()``.
    """

    def __init__(self, modes, weights=None):
        modes = tuple(modes)
        if not modes:
            raise DomainError("a mode grid needs at least one mode")
        for idx in modes:
            _check_label(idx)
        kinds = {type(idx) for idx in modes}
        if len(kinds) != 1:
            raise DomainError("a mode grid cannot mix interval and rod labels")
        position = {idx: j for j, idx in enumerate(modes)}
        if len(position) != len(modes):
            raise DomainError("duplicate mode labels in grid")
        try:
            reflect = np.array([position[idx.reflection()] for idx in modes])
        except KeyError as exc:
            raise DomainError(f"grid is not closed under reflection: missing {exc.args[0]}") from None
        w = np.ones(len(modes)) if weights is None else np.asarray(weights, dtype=float)
        if w.shape != (len(modes),):
            raise DomainError("need exactly one weight per mode")
        if np.any(~(w > 0)):
            raise DomainError("quadrature weights must be strictly positive")
        if not np.allclose(w, w[reflect], rtol=1e-14, atol=0):
            raise DomainError("quadrature weights must be reflection symmetric")
        self.modes = modes
        self.weights = w
        self.reflect = reflect
        self.kind = modes[0].kind
        self._position = position
        self.weights.flags.writeable = False
        self.reflect.flags.writeable = False

    def __len__(self):
        return len(self.modes)

    def __iter__(self):
        return iter(self.modes)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, ModeGrid):
            return NotImplemented
        return self.kind == other.kind and self.modes == other.modes and np.array_equal(self.weights, other.weights)

    def __hash__(self):
        return hash((self.kind, self.modes))

    def __repr__(self):
        return f"ModeGrid({self.kind}, {len(self)} modes)"

    def index(self, idx):
        return self._position[idx]

    def self_paired(self):
        """Boolean mask of labels that are their own reflection."""
        return self.reflect == np.arange(len(self))

    def column(self, name):
        """Array of one label field over the grid, e.g. ``column("l")``."""
        return np.array([getattr(idx, name) for idx in self.modes])

    def label_rows(self):
        """Mode labels as tuples, for tabular output."""
        return [tuple(idx) for idx in self.modes]


def interval_grid(n_radial=16, kmin=0.1, kmax=10.0, axis=(1.0, 0.0, 0.0), weights="unit"):
    """Reflection-closed 1D proxy grid of ``2 * n_radial`` momenta.

    ``|k|`` is log-spaced in ``[kmin, kmax]`` and placed at ``+/- |k| * axis``.
    ``weights="unit"`` gives every mode weight 1, ``"spacing"`` uses the local
    spacing in ``|k|``.
    """
    if n_radial < 1 or not (0 < kmin <= kmax):
        raise DomainError("need n_radial >= 1 and 0 < kmin <= kmax")
    axis = np.asarray(axis, dtype=float)
    axis = axis / np.linalg.norm(axis)
    ks = np.geomspace(kmin, kmax, n_radial)
    w_half = _spacing_weights(ks) if weights == "spacing" else _unit_weights(weights, n_radial)
    modes, w = [], []
    for kval, wk in zip(ks, w_half):
        for sgn in (1.0, -1.0):
            vec = sgn * kval * axis + 0.0
            modes.append(IntervalMode(*(float(c) for c in vec)))
            w.append(wk)
    return ModeGrid(modes, w)


def rod_grid(omegas=None, lmax=4, weights="unit"):
    """Rod grid over ``+/-omega`` for each positive ``omega`` and all ``|m| <= l <= lmax``.

    Defaults to ``omega`` in ``{0.5, 1.0, ..., 4.0}``.
    """
    if omegas is None:
        omegas = np.arange(1, 9) * 0.5
    omegas = np.sort(np.asarray(omegas, dtype=float))
    if np.any(omegas <= 0):
        raise DomainError("rod grid frequencies must be positive (their negatives are added)")
    w_om = _spacing_weights(omegas) if weights == "spacing" else _unit_weights(weights, len(omegas))
    modes, w = [], []
    for om, wo in zip(omegas, w_om):
        for l in range(lmax + 1):
            for m in range(-l, l + 1):
                modes.append(RodMode(float(om), l, m))
                modes.append(RodMode(float(-om), l, -m))
                w.extend((wo, wo))
    return ModeGrid(modes, w)


def _unit_weights(rule, n):
    if rule != "unit":
        raise DomainError(f"unknown weight rule {rule!r}; use 'unit' or 'spacing'")
    return np.ones(n)


def _spacing_weights(x):
    if len(x) == 1:
        return np.ones(1)
    return np.gradient(x)


@dataclass(frozen=True)
class ModeSample:
    """Mode data at one leaf parameter, for one label or a whole grid.

    Array-valued fields are aligned with ``where.modes`` when ``where`` is a
    :class:`ModeGrid`.
    """

    Xa: np.ndarray
    Xb: np.ndarray
    dXa: np.ndarray
    dXb: np.ndarray
    wtilde: np.ndarray
    sigma: int
    tau: float
    where: object = None

    @property
    def wronskian(self):
        return self.Xa * self.dXb - self.Xb * self.dXa


class ModeFamily:
    """Base class for separated mode-function families.

    Subclasses implement :meth:`_evaluate` for arrays of label data and may
    implement :meth:`spatial_mode`.
    """

    region = INTERVAL
    sigma = 1
    tau_domain = (-np.inf, np.inf)

    def label_kind(self):
        return ROD if self.region in (ROD, TUBE) else INTERVAL

    def check_tau(self, tau):
        lo, hi = self.tau_domain
        if not (lo < tau < hi) or not np.isfinite(tau):
            raise DomainError(f"leaf parameter {tau} outside the domain {self.tau_domain}")

    def check_kind(self, kind):
        if kind != self.label_kind():
            raise DomainError(f"{type(self).__name__} expects {self.label_kind()} labels, got {kind}")

    def sample(self, where, tau):
        """Evaluate on a single label or on every mode of a grid."""
        tau = float(tau)
        self.check_tau(tau)
        if isinstance(where, ModeGrid):
            self.check_kind(where.kind)
            modes = where.modes
        else:
            _check_label(where)
            self.check_kind(where.kind)
            modes = (where,)
        Xa, Xb, dXa, dXb, wt = self._evaluate(modes, tau)
        if not isinstance(where, ModeGrid):
            Xa, Xb, dXa, dXb, wt = (float(np.asarray(v).reshape(-1)[0]) for v in (Xa, Xb, dXa, dXb, wt))
        return ModeSample(Xa, Xb, dXa, dXb, wt, self.sigma, tau, where)

    def _evaluate(self, modes, tau):  # pragma: no cover - abstract
        raise NotImplementedError

    def spatial_mode(self, idx, point):
        raise DomainError(f"{type(self).__name__} provides no spatial modes")

    @property
    def has_spatial_modes(self):
        return type(self).spatial_mode is not ModeFamily.spatial_mode


class MinkowskiInterval(ModeFamily):
    """Plane-wave modes between constant-time leaves.

    ``Xa = cos(E t)``, ``Xb = sin(E t)`` with ``E = sqrt(k^2 + mass^2)`` and
    unit leaf weight, so the weighted Wronskian is ``E``.
    """

    region = INTERVAL

    def __init__(self, mass=0.0, sigma=1):
        if mass < 0:
            raise DomainError("mass must be non-negative")
        self.mass = float(mass)
        self.sigma = int(sigma)

    def energy(self, modes):
        k2 = np.array([idx.kx**2 + idx.ky**2 + idx.kz**2 for idx in modes])
        return np.sqrt(k2 + self.mass**2)

    def _evaluate(self, modes, tau):
        E = self.energy(modes)
        if np.any(E == 0):
            raise DomainError("zero-energy mode (k = 0 with zero mass) has dependent mode functions")
        c, s = np.cos(E * tau), np.sin(E * tau)
        return c, s, -E * s, E * c, np.ones_like(E)

    def spatial_mode(self, idx, point):
        """Plane wave ``exp(i k.x) / (2 pi)^(3/2)``."""
        x = np.asarray(point, dtype=float)
        return np.exp(1j * (idx.kx * x[0] + idx.ky * x[1] + idx.kz * x[2])) / (2 * np.pi) ** 1.5


class MinkowskiRadial(ModeFamily):
    """Spherical-Bessel modes on hypercylinders of radius ``r``.

    ``Xa = j_l(p r)`` (regular), ``Xb = y_l(p r)`` (singular at the origin),
    ``p = sqrt(omega^2 - mass^2)`` and leaf weight ``r^2``, so the weighted
    Wronskian is ``1/p``. ``region`` is ``"rod"`` or ``"tube"``; both use the
    same radial functions.
    """

    tau_domain = (0.0, np.inf)

    def __init__(self, mass=0.0, sigma=1, region=ROD):
        if mass < 0:
            raise DomainError("mass must be non-negative")
        if region not in (ROD, TUBE):
            raise DomainError(f"radial family region must be 'rod' or 'tube', got {region!r}")
        self.mass = float(mass)
        self.sigma = int(sigma)
        self.region = region

    def radial_momentum(self, modes):
        om = np.array([idx.omega for idx in modes], dtype=float)
        p2 = om**2 - self.mass**2
        if np.any(p2 <= 0):
            raise DomainError("radial modes need omega^2 > mass^2")
        return np.sqrt(p2)

    def _evaluate(self, modes, tau):
        p = self.radial_momentum(modes)
        ls = np.array([idx.l for idx in modes])
        out = np.empty((4, len(modes)))
        for l in np.unique(ls):
            sel = ls == l
            x = p[sel] * tau
            out[0, sel] = spherical_jn(int(l), x)
            out[1, sel] = spherical_yn(int(l), x)
            out[2, sel] = p[sel] * spherical_jn(int(l), x, derivative=True)
            out[3, sel] = p[sel] * spherical_yn(int(l), x, derivative=True)
        return out[0], out[1], out[2], out[3], np.full(len(modes), tau**2)

    def spatial_mode(self, idx, point):
        """``exp(-i omega t) Y~_lm(theta, phi) / sqrt(2 pi)`` at ``point = (t, theta, phi)``."""
        t, theta, phi = point
        return np.exp(-1j * idx.omega * t) * reflection_harmonic(idx.l, idx.m, theta, phi) / np.sqrt(2 * np.pi)


@dataclass
class ClosureFamily(ModeFamily):
    """Family defined by a user callable.

    Parameters
    ----------
    evaluator : callable
        ``evaluator(idx, tau) -> (Xa, Xb, dXa, dXb, wtilde)`` for one label.
    region : str
        ``"interval"``, ``"rod"`` or ``"tube"``.
    sigma : int
        Declared geometric sign.
    tau_domain : tuple
        Open interval of admissible leaf parameters.
    spatial : callable, optional
        ``spatial(idx, point) -> complex``.
    """

    evaluator: Callable
    region: str = INTERVAL
    sigma: int = 1
    tau_domain: tuple = (-np.inf, np.inf)
    spatial: Optional[Callable] = field(default=None)

    def _evaluate(self, modes, tau):
        vals = np.array([self.evaluator(idx, tau) for idx in modes], dtype=float).reshape(len(modes), 5)
        if np.any(vals[:, 4] <= 0):
            raise DomainError("closure family returned a non-positive leaf weight")
        return tuple(vals.T)

    def spatial_mode(self, idx, point):
        if self.spatial is None:
            return ModeFamily.spatial_mode(self, idx, point)
        return self.spatial(idx, point)

    @property
    def has_spatial_modes(self):
        return self.spatial is not None


def sample_mode(family, idx, tau):
    """Mode data of ``family`` at label (or grid) ``idx`` and leaf ``tau``."""
    return family.sample(idx, tau)


def wronskian(sample, floor=1e-300):
    """``Xa dXb - Xb dXa``, raising when its modulus drops below ``floor``."""
    w = sample.wronskian
    if np.any(np.abs(w) < floor) or np.any(~np.isfinite(w)):
        raise DegenerateModeError("mode functions are linearly dependent (Wronskian below floor)")
    return w


def weighted_wronskian_residual(family, idx, tau_grid):
    """Maximum relative drift of ``wtilde * W`` over ``tau_grid``.

    ``idx`` may be a label or a grid; for a grid the worst mode counts.
    """
    taus = list(tau_grid)
    if len(taus) < 2:
        raise DomainError("need at least two leaf parameters")
    vals = []
    for tau in taus:
        s = family.sample(idx, tau)
        vals.append(s.wtilde * wronskian(s))
    vals = np.array(vals, dtype=float)
    return float(np.max(np.abs(vals - vals[0]) / np.abs(vals[0])))
