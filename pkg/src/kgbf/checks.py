"""Registry of verification checks run by scenarios.

Each check receives a :class:`CheckEnv` (the built scenario plus a private
random generator) and returns a :class:`CheckOutcome`. A check passes iff
its residual is at most its tolerance. Residuals are relative to the
natural scale of the quantity compared unless the check says otherwise;
for "witness" checks that must exhibit a gap, the residual is
``threshold - gap`` with tolerance 0.
"""

import zlib
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Optional

import numpy as np

from . import amplitudes as amp
from . import boundary as bd
from . import coefficients as co
from . import complex_structure as cs
from . import phase_space as ps
from . import randomfields as rf
from . import symplectic as sy
from .errors import DegenerateVacuumError
from .modes import ROD, weighted_wronskian_residual, wronskian


@dataclass
class CheckOutcome:
    residual: float
    worst_mode: Optional[tuple] = None
    mode_residuals: Optional[list] = None
    note: str = ""


@dataclass(frozen=True)
class CheckDef:
    id: str
    func: Callable
    tolerance: float
    description: str
    applies: Callable = field(default=lambda family: True)


REGISTRY = {}


def check(check_id, tolerance, applies=None):
    def deco(func):
        REGISTRY[check_id] = CheckDef(
            check_id, func, tolerance, (func.__doc__ or "").strip().splitlines()[0], applies or (lambda fam: True)
        )
        return func

    return deco


def _is_rod(fam):
    return fam.region == ROD


def _not_rod(fam):
    return fam.region != ROD


class CheckEnv:
    """Scenario objects plus a per-check random generator."""

    def __init__(self, scenario, check_id):
        self.scenario = scenario
        self.family = scenario.family
        self.grid = scenario.grid
        self.spec = scenario.spec
        self.taus = list(scenario.taus)
        self.tau0 = self.taus[0]
        self.n = scenario.n_random
        self.n_small = min(scenario.n_random, 50)
        self.rng = np.random.default_rng([scenario.seed, zlib.crc32(check_id.encode())])
        self._ctx = {}

    def ctx(self, tau=None, spec=None, orientation=1):
        tau = self.tau0 if tau is None else tau
        spec = self.spec if spec is None else spec
        key = (tau, id(spec), orientation)
        if key not in self._ctx:
            self._ctx[key] = sy.PairingContext(self.family, self.grid, spec, tau, orientation)
        return self._ctx[key]

    def sample(self, tau=None):
        return self.ctx(tau).sample

    def real_field(self):
        return rf.random_real_freq(self.rng, self.grid)

    def scaled_config(self, ctx):
        """Complex configuration with ``sum mu K |eta|^2`` of order one."""
        z = rf.random_config(self.rng, self.grid)
        return z / np.sqrt(ctx.kd * np.sum(self.grid.weights))

    def random_tau(self):
        if self.family.label_kind() == "rod":
            return float(self.rng.uniform(min(self.taus), max(self.taus)))
        lo, hi = min(self.taus), max(self.taus)
        return float(self.rng.uniform(lo - 1.0, hi + 1.0))

    def label(self, j):
        return tuple(self.grid.modes[int(j)])

    @cached_property
    def gscale(self):
        return lambda ctx, a, b: np.sqrt(abs(sy.g_product(ctx, a, a) * sy.g_product(ctx, b, b)))


def _worst(env, per_mode):
    per_mode = np.asarray(per_mode, dtype=float)
    j = int(np.nanargmax(per_mode)) if np.all(np.isfinite(per_mode)) else int(np.argmax(~np.isfinite(per_mode)))
    table = [(env.label(i), float(r)) for i, r in enumerate(per_mode)]
    return float(per_mode[j]), env.label(j), table


def _rel(x, y, floor=0.0):
    return abs(x - y) / max(abs(y), floor, 1e-300)


# ---------------------------------------------------------------- modes


@check("wronskian_constancy", 1e-9)
def wronskian_constancy(env):
    """Weighted Wronskian wtilde*W is independent of the leaf parameter."""
    vals = []
    for tau in env.taus:
        s = env.sample(tau)
        vals.append(s.wtilde * wronskian(s))
    vals = np.array(vals)
    per_mode = np.max(np.abs(vals - vals[0]) / np.abs(vals[0]), axis=0)
    r, worst, table = _worst(env, per_mode)
    return CheckOutcome(r, worst, table)


@check("mode_reflection", 1e-14)
def mode_reflection(env):
    """Mode functions agree on k and its reflection."""
    R = env.grid.reflect
    per_mode = np.zeros(len(env.grid))
    for tau in env.taus:
        s = env.sample(tau)
        for x in (s.Xa, s.Xb, s.dXa, s.dXb, s.wtilde):
            per_mode = np.maximum(per_mode, np.abs(x - x[R]) / np.maximum(np.abs(x), 1e-300))
    r, worst, table = _worst(env, per_mode)
    return CheckOutcome(r, worst, table)


@check("derivative_consistency", 1e-6)
def derivative_consistency(env):
    """Analytic leaf derivatives match central differences with h = 1e-4."""
    h = 1e-4
    per_mode = np.zeros(len(env.grid))
    for tau in env.taus:
        s = env.family.sample(env.grid, tau)
        sp = env.family.sample(env.grid, tau + h)
        sm = env.family.sample(env.grid, tau - h)
        scale = np.abs(s.dXa) + np.abs(s.dXb)
        for x_p, x_m, d in ((sp.Xa, sm.Xa, s.dXa), (sp.Xb, sm.Xb, s.dXb)):
            per_mode = np.maximum(per_mode, np.abs((x_p - x_m) / (2 * h) - d) / scale)
    r, worst, table = _worst(env, per_mode)
    return CheckOutcome(r, worst, table)


# ---------------------------------------------------------------- vacuum and J


@check("vacuum_admissibility", 0.0)
def vacuum_admissibility(env):
    """Vacuum functions are nondegenerate, reflection symmetric and positive.

    The residual counts modes and leaves where positivity fails.
    """
    cs.imag_cacb(env.spec, env.grid)
    env.spec.check_reflection(env.grid)
    bad = np.zeros(len(env.grid))
    for tau in env.taus:
        ctx = env.ctx(tau)
        ctx.upsilon
        bad += ctx.positivity <= 0
    r, worst, table = _worst(env, bad)
    return CheckOutcome(r, worst if r > 0 else None, table)


@check("j_squared", 1e-12)
def j_squared(env):
    """J^2 = -1 in real, frequency and phase-space form on random (spec, mode, tau).

    Residuals are normalized by ``max(1, |J|^2)``, the rounding scale of
    the matrix product.
    """
    worst, worst_mode = 0.0, None
    eye = np.eye(2)
    for _ in range(env.n):
        spec = rf.random_spec(env.rng)
        j = int(env.rng.integers(len(env.grid)))
        idx = env.grid.modes[j]
        s = env.family.sample(idx, env.random_tau())
        J = cs.jab_matrix(spec, idx)
        M = ps.abdc_operators(spec, s).matrix()
        D = np.diag([-1j, 1j])
        res = max(
            np.max(np.abs(J @ J + eye)) / max(1.0, np.sum(J**2)),
            np.max(np.abs(D @ D + eye)),
            np.max(np.abs(M @ M + eye)) / max(1.0, np.sum(M**2)),
        )
        if res > worst or worst_mode is None:
            worst, worst_mode = res, tuple(idx)
    return CheckOutcome(float(worst), worst_mode)


@check("j_representation_conjugacy", 1e-12)
def j_representation_conjugacy(env):
    """The real, frequency and phase-space complex structures are conjugate."""
    res = 0.0
    for _ in range(env.n_small):
        r = rf.random_real_coeffs(env.rng, env.grid)
        lhs = co.real_to_freq(env.spec, cs.apply_j_real(env.spec, r))
        rhs = cs.apply_j_freq(co.real_to_freq(env.spec, r))
        res = max(res, lhs.max_abs_diff(rhs) / rhs.norm())
    per_mode = np.zeros(len(env.grid))
    Jab = cs.jab_matrix(env.spec, env.grid)
    for tau in env.taus:
        s = env.sample(tau)
        per_mode = np.maximum(per_mode, ps.conjugation_residuals(env.spec, s, normalized=True))
        G = ps.real_to_phase_matrix(s)
        M = ps.abdc_operators(env.spec, s).matrix()
        lhs = G @ Jab
        rhs = M @ G
        scale = np.linalg.norm(M, axis=(-2, -1)) * np.linalg.norm(G, axis=(-2, -1))
        per_mode = np.maximum(per_mode, np.linalg.norm(lhs - rhs, axis=(-2, -1)) / scale)
    r, worst, table = _worst(env, per_mode)
    return CheckOutcome(max(r, res), worst, table)


@check("j_reality", 1e-12)
def j_reality(env):
    """J, P_M, P_N and the j-map send real data to real solutions."""
    res = 0.0
    s = env.sample()
    PM, PN = cs.projectors_mn(env.spec, s)
    for _ in range(env.n_small):
        f = env.real_field()
        outs = [
            cs.apply_j_freq(f),
            cs.apply_projector(PM, f),
            cs.apply_projector(PN, f),
            cs.j_sigma_map(env.spec, s, rf.random_config(env.rng, env.grid, real=True)),
        ]
        for g in outs:
            res = max(res, g.reality_residual() / max(g.norm(), 1e-300))
        r = cs.apply_j_real(env.spec, rf.random_real_coeffs(env.rng, env.grid))
        res = max(res, r.reality_residual() / max(r.norm(), 1e-300))
    return CheckOutcome(res)


@check("gauge_invariance", 1e-12)
def gauge_invariance(env):
    """J, (Qr, dAlpha), the vacuum operator, ABDC and HQ amplitudes are gauge invariant."""
    res = 0.0
    n = min(env.n, 100)
    s = env.sample()
    base_J = cs.jab_matrix(env.spec, env.grid)
    base_a = amp.vacuum_operator_eig(env.spec, s)
    base_M = ps.abdc_operators(env.spec, s).matrix()
    ca, cb = env.spec.values(env.grid)
    has_inv = bool(np.all(ca != 0) and np.all(cb != 0))
    base_inv = [cs.vacuum_invariants(env.spec, idx) for idx in env.grid.modes] if has_inv else None
    rod = _is_rod(env.family)
    fields = []
    for _ in range(3):
        if rod:
            fields.append(rf.random_real_coeffs(env.rng, env.grid, scale=0.1))
        else:
            fields.append((rf.random_real_coeffs(env.rng, env.grid, 0.1), rf.random_real_coeffs(env.rng, env.grid, 0.1)))
    base_amp = [_hq_from_real(env.ctx(), env.spec, fr, rod) for fr in fields]
    for _ in range(n):
        spec2 = env.spec.gauge_scaled(rf.random_gauge(env.rng, env.grid))
        ctx2 = sy.PairingContext(env.family, env.grid, spec2, env.tau0)
        J2 = cs.jab_matrix(spec2, env.grid)
        res = max(res, np.max(np.abs(J2 - base_J) / np.maximum(1.0, np.abs(base_J))))
        a2 = amp.vacuum_operator_eig(spec2, s)
        res = max(res, np.max(np.abs(a2 - base_a) / np.abs(base_a)))
        M2 = ps.abdc_operators(spec2, s).matrix()
        res = max(res, np.max(np.abs(M2 - base_M) / np.maximum(np.abs(base_M), np.linalg.norm(base_M, axis=(-2, -1))[:, None, None])))
        if has_inv:
            for idx, (q0, d0) in zip(env.grid.modes, base_inv):
                q1, d1 = cs.vacuum_invariants(spec2, idx)
                dd = abs((d1 - d0 + np.pi) % (2 * np.pi) - np.pi)
                res = max(res, abs(q1 - q0) / q0, dd)
        for fr, a0 in zip(fields, base_amp):
            res = max(res, abs(_hq_from_real(ctx2, spec2, fr, rod) - a0) / abs(a0))
    return CheckOutcome(float(res))


def _hq_from_real(ctx, spec, fr, rod):
    if rod:
        return amp.amplitude_hq_rod(ctx, bd.RodBoundaryField(fr)).value
    zeta, xi = (co.real_to_freq(spec, x) for x in fr)
    return amp.amplitude_hq_interval(ctx, zeta, xi).value


# ---------------------------------------------------------------- symplectic


@check("symplectic_compatibility", 1e-10)
def symplectic_compatibility(env):
    """omega(J xi, J zeta) = omega(xi, zeta) on random real fields."""
    ctx = env.ctx()
    res = 0.0
    for _ in range(env.n):
        xi, ze = env.real_field(), env.real_field()
        w = sy.symplectic_form(ctx, xi, ze)
        wj = sy.symplectic_form(ctx, cs.apply_j_freq(xi), cs.apply_j_freq(ze))
        res = max(res, abs(wj - w) / env.gscale(ctx, xi, ze))
    return CheckOutcome(res)


@check("symplectic_tau_independence", 1e-10)
def symplectic_tau_independence(env):
    """omega from leaf data and from the potential agrees on every leaf."""
    res = 0.0
    ctx0 = env.ctx()
    for _ in range(env.n_small):
        xi, ze = env.real_field(), env.real_field()
        w0 = sy.symplectic_form(ctx0, xi, ze)
        scale = env.gscale(ctx0, xi, ze)
        for tau in env.taus:
            ctx = env.ctx(tau)
            d1 = co.initial_data(env.spec, ctx.sample, xi)
            d2 = co.initial_data(env.spec, ctx.sample, ze)
            w_leaf = sy.symplectic_form_leaf_data(ctx, d1, d2)
            w_pot = 0.5 * (sy.symplectic_potential(ctx, xi, ze) - sy.symplectic_potential(ctx, ze, xi))
            w_freq = sy.symplectic_form(ctx, xi, ze)
            res = max(res, abs(w_leaf - w0) / scale, abs(w_pot - w0) / scale, abs(w_freq - w0) / scale)
    return CheckOutcome(res)


@check("symplectic_representation_agreement", 1e-12)
def symplectic_representation_agreement(env):
    """omega in the frequency and real expansions agree; reversal flips its sign."""
    ctx = env.ctx()
    rev = env.ctx(orientation=-1)
    res = 0.0
    for _ in range(env.n_small):
        xi, ze = env.real_field(), env.real_field()
        w = sy.symplectic_form(ctx, xi, ze)
        wab = sy.symplectic_form_real(ctx, co.freq_to_real(env.spec, xi), co.freq_to_real(env.spec, ze))
        scale = env.gscale(ctx, xi, ze)
        res = max(res, abs(wab - w) / scale, abs(sy.symplectic_form(rev, xi, ze) + w) / scale)
    return CheckOutcome(res)


@check("g_positivity", 1e-12)
def g_positivity(env):
    """g is symmetric, positive definite, orientation invariant and equals 2 omega(., J .).

    A nonpositive g(xi, xi) adds 1 to the residual.
    """
    ctx = env.ctx()
    rev = env.ctx(orientation=-1)
    zero = cs.FreqCoeffs.zeros(env.grid)
    res = abs(sy.g_product(ctx, zero, zero))
    for _ in range(env.n):
        xi, ze = env.real_field(), env.real_field()
        gxx = sy.g_product(ctx, xi, xi)
        if not gxx > 0:
            res += 1.0
        g = sy.g_product(ctx, xi, ze)
        scale = env.gscale(ctx, xi, ze)
        res = max(
            res,
            abs(g - sy.g_product(ctx, ze, xi)) / scale,
            abs(g - sy.g_product(rev, xi, ze)) / scale,
            abs(g - 2 * sy.symplectic_form(ctx, xi, cs.apply_j_freq(ze))) / scale,
        )
    return CheckOutcome(res)


@check("inner_product_consistency", 1e-12)
def inner_product_consistency(env):
    """<.,.> = g + 2i omega and is J-sesquilinear, on both orientations."""
    res = 0.0
    for ori in (1, -1):
        ctx = env.ctx(orientation=ori)
        for _ in range(env.n_small):
            xi, ze = env.real_field(), env.real_field()
            ip = sy.complex_inner_product(ctx, xi, ze)
            scale = env.gscale(ctx, xi, ze)
            g, w = sy.g_product(ctx, xi, ze), sy.symplectic_form(ctx, xi, ze)
            x, y = env.rng.standard_normal(2)
            lhs1 = sy.complex_inner_product(ctx, x * xi + y * ctx.apply_j(xi), ze)
            lhs2 = sy.complex_inner_product(ctx, xi, x * ze + y * ctx.apply_j(ze))
            res = max(
                res,
                abs(ip - (g + 2j * w)) / scale,
                abs(lhs1 - (x - 1j * y) * ip) / scale,
                abs(lhs2 - (x + 1j * y) * ip) / scale,
                abs(sy.complex_inner_product(ctx, xi, xi).imag) / scale,
            )
    return CheckOutcome(res)


# ---------------------------------------------------------------- projectors


@check("projector_algebra", 1e-10)
def projector_algebra(env):
    """P_M, P_N are complementary idempotents with images vanishing on the leaf
    (P_M) or with vanishing leaf derivative (P_N)."""
    per_mode = np.zeros(len(env.grid))
    eye = np.eye(2)
    for tau in env.taus:
        s = env.sample(tau)
        PM, PN = cs.projectors_mn(env.spec, s)
        nrm = np.maximum(np.linalg.norm(PM, axis=(-2, -1)), np.linalg.norm(PN, axis=(-2, -1))) ** 2
        for r in (PM @ PM - PM, PN @ PN - PN, PM + PN - eye, PM @ PN):
            per_mode = np.maximum(per_mode, np.max(np.abs(r), axis=(-2, -1)) / nrm)
        U, dU = cs.upsilon(env.spec, s)
        for _ in range(5):
            f = env.real_field()
            m, n = cs.apply_projector(PM, f), cs.apply_projector(PN, f)
            scale = np.sqrt(nrm) * np.maximum(np.abs(f.p), np.abs(f.q))
            per_mode = np.maximum(per_mode, np.abs(m.p * U + m.q * np.conj(U)) / (scale * np.abs(U)))
            per_mode = np.maximum(per_mode, np.abs(n.p * dU + n.q * np.conj(dU)) / (scale * np.abs(dU)))
    r, worst, table = _worst(env, per_mode)
    return CheckOutcome(r, worst, table)


WITNESS_SPEC = cs.VacuumSpec.constant(1.0, 1.0 - 1.0j, name="witness")


@check("projector_oblique", 0.0)
def projector_oblique(env):
    """P_M is not self-adjoint and N differs from J M for a tilted witness vacuum.

    Uses ``(ca, cb) = (1, 1 - i)``; residual is ``1e-3 - gap``.
    """
    ctx = env.ctx(spec=WITNESS_SPEC)
    s = ctx.sample
    PM, PN = cs.projectors_mn(WITNESS_SPEC, s)
    xi = cs.FreqCoeffs(np.ones(len(env.grid)), np.ones(len(env.grid)), env.grid)
    ze = cs.apply_j_freq(xi) + xi * 0.5
    lhs = sy.complex_inner_product(ctx, cs.apply_projector(PM, xi), ze)
    rhs = sy.complex_inner_product(ctx, xi, cs.apply_projector(PM, ze))
    gap = abs(lhs - rhs) / env.gscale(ctx, xi, ze)
    n = cs.apply_projector(PN, xi)
    U, _ = ctx.upsilon
    jm_gap = cs.jm_condition_residual(WITNESS_SPEC, s, n) / (n.norm() * np.max(np.abs(U)))
    g = min(gap, jm_gap)
    return CheckOutcome(1e-3 - g, note=f"self-adjointness gap {gap:.3e}, N vs JM gap {jm_gap:.3e}")


@check("mn_isotropy", 1e-12)
def mn_isotropy(env):
    """omega vanishes on M x M and on N x N."""
    res = 0.0
    for tau in env.taus:
        ctx = env.ctx(tau)
        PM, PN = cs.projectors_mn(env.spec, ctx.sample)
        for _ in range(5):
            xi, ze = env.real_field(), env.real_field()
            for P in (PM, PN):
                a, b = cs.apply_projector(P, xi), cs.apply_projector(P, ze)
                res = max(res, abs(sy.symplectic_form(ctx, a, b)) / env.gscale(ctx, a, b))
    return CheckOutcome(res)


# ---------------------------------------------------------------- coefficients


def leaf_data_condition(spec, sample):
    """Per-mode condition number of ``(p, q) -> (phi, d_tau phi)``, at least 1."""
    U, dU = cs.upsilon(spec, sample)
    E = np.moveaxis(np.array([[U, np.conj(U)], [dU, np.conj(dU)]]), (0, 1), (-2, -1))
    return np.maximum(1.0, np.linalg.cond(E))


@check("round_trips", 1e-12)
def round_trips(env):
    """real <-> frequency, leaf data <-> coefficients, j-map restriction, Xi Xi^-1.

    The leaf-data round trip is measured per mode relative to the condition
    number of the leaf-data map, which is large for rod modes at small radius.
    """
    res = 0.0
    spec = env.spec
    leaf_cond = {tau: leaf_data_condition(spec, env.sample(tau)) for tau in env.taus}
    for _ in range(env.n_small):
        f = rf.random_complex_freq(env.rng, env.grid)
        res = max(res, co.real_to_freq(spec, co.freq_to_real(spec, f)).max_abs_diff(f) / f.norm())
        r = rf.random_real_coeffs(env.rng, env.grid)
        res = max(res, co.freq_to_real(spec, co.real_to_freq(spec, r)).max_abs_diff(r) / r.norm())
        for tau in env.taus:
            s = env.sample(tau)
            back = co.recover_from_initial_data(spec, s, co.initial_data(spec, s, f))
            err = np.maximum(np.abs(back.p - f.p), np.abs(back.q - f.q))
            size = np.maximum(np.abs(f.p), np.abs(f.q))
            res = max(res, float(np.max(err / (leaf_cond[tau] * size))))
            kappa = rf.random_config(env.rng, env.grid)
            lift = cs.j_sigma_map(spec, s, kappa)
            res = max(res, np.max(np.abs(co.restrict_to_leaf(spec, s, lift) - kappa)) / np.max(np.abs(kappa)))
    X, Xinv = bd.xi_matrices(spec, env.grid)
    res = max(res, float(np.max(np.abs(X @ Xinv - np.eye(2)))), float(np.max(np.abs(Xinv @ X - np.eye(2)))))
    return CheckOutcome(res)


@check("tau_transport", 1e-10)
def tau_transport(env):
    """Recovering coefficients after evolving leaf data to another leaf returns them."""
    res = 0.0
    for _ in range(env.n_small):
        d = rf.random_initial_data(env.rng, env.grid, env.tau0)
        f = co.recover_from_initial_data(env.spec, env.sample(), d)
        for tau in env.taus[1:]:
            s = env.sample(tau)
            again = co.recover_from_initial_data(env.spec, s, co.initial_data(env.spec, s, f))
            res = max(res, again.max_abs_diff(f) / f.norm())
    return CheckOutcome(res)


# ---------------------------------------------------------------- boundary fields


@check("interval_decomposition", 1e-12)
def interval_decomposition(env):
    """(zeta, xi) = (lamR + J lamI, lamR - J lamI); splice = lamR - i lamI; parts real."""
    res = 0.0
    for _ in range(env.n_small):
        ze, xi = env.real_field(), env.real_field()
        lr, li = bd.decompose_interval(env.spec, ze, xi)
        z2, x2 = bd.recompose_interval(lr, li)
        lam = bd.asymptotic_field_interval(env.spec, ze, xi)
        scale = max(ze.norm(), xi.norm())
        res = max(
            res,
            z2.max_abs_diff(ze) / scale,
            x2.max_abs_diff(xi) / scale,
            lam.max_abs_diff(bd.asymptotic_field_interval_from_parts(lr, li)) / scale,
            lr.reality_residual() / scale,
            li.reality_residual() / scale,
        )
    return CheckOutcome(res)


@check("rod_asymptotic_field", 1e-12, applies=_is_rod)
def rod_asymptotic_field(env):
    """Rod asymptotic field: both routes agree, it is regular, and p = -(conj cb / cb) q."""
    res = 0.0
    ca, cb = env.spec.values(env.grid)
    for _ in range(env.n_small):
        r = rf.random_real_coeffs(env.rng, env.grid)
        b = bd.RodBoundaryField(r)
        scale = r.norm()
        lam1 = bd.asymptotic_field_rod(env.spec, b)
        lam2 = bd.asymptotic_field_rod_from_parts(env.spec, b)
        xr, xi = bd.decompose_rod(env.spec, b)
        back = bd.recompose_rod(env.spec, xr, xi, env.grid)
        lf = bd.rod_asymptotic_freq(env.spec, b)
        full = co.real_to_freq(env.spec, r)
        lab = co.freq_to_real(env.spec, lf)
        res = max(
            res,
            np.max(np.abs(lam1 - lam2)) / scale,
            back.max_abs_diff(r) / scale,
            np.max(np.abs(lf.p + (np.conj(cb) / cb) * lf.q)) / lf.norm(),
            np.max(np.abs(lf.q - full.q)) / full.norm(),
            np.max(np.abs(lab.b)) / lab.norm(),
        )
    return CheckOutcome(res)


# ---------------------------------------------------------------- states and amplitudes


@check("kd_invariance", 1e-10)
def kd_invariance(env):
    """K^D is positive and independent of the leaf."""
    k0 = env.ctx().kd
    per_mode = np.zeros(len(env.grid))
    for tau in env.taus:
        k = env.ctx(tau).kd
        per_mode = np.maximum(per_mode, np.abs(k - k0) / k0)
        per_mode += k <= 0
    r, worst, table = _worst(env, per_mode)
    return CheckOutcome(r, worst, table)


@check("vacuum_correspondence", 1e-10)
def vacuum_correspondence(env):
    """g(j phi, j chi) - i[j phi, j chi] reproduces the vacuum operator; the
    correspondence kernel at xi = 0 is the conjugate vacuum exponent."""
    res = 0.0
    zero = cs.FreqCoeffs.zeros(env.grid)
    for tau in env.taus:
        ctx = env.ctx(tau)
        a = amp.vacuum_operator_eig(env.spec, ctx.sample)
        for _ in range(5):
            phi = rf.random_config(env.rng, env.grid, real=True)
            chi = rf.random_config(env.rng, env.grid, real=True)
            scale = np.sum(env.grid.weights * np.abs(a) * np.abs(phi) * np.abs(chi[env.grid.reflect]))
            two = amp.omega_vacuum_form(ctx, phi, chi)
            direct = amp.vacuum_form_direct(ctx, phi, chi)
            k0 = amp.correspondence_kernel_log(ctx, zero, phi)
            scale_pp = np.sum(env.grid.weights * np.abs(a) * np.abs(phi) ** 2)
            res = max(
                res,
                abs(two - direct) / scale,
                abs(np.conj(k0) - amp.schrodinger_vacuum_log(ctx, phi)) / scale_pp,
            )
    return CheckOutcome(res)


@check("coherent_correspondence", 1e-10)
def coherent_correspondence(env):
    """Kernel exponent at eta^D minus the vacuum one is the Schroedinger coherent exponent."""
    res = 0.0
    zero = cs.FreqCoeffs.zeros(env.grid)
    for tau in env.taus:
        ctx = env.ctx(tau)
        for _ in range(5):
            eta = env.scaled_config(ctx)
            phi = rf.random_config(env.rng, env.grid, real=True)
            xi = amp.characterizing_solution(ctx, eta)
            lhs = np.conj(amp.correspondence_kernel_log(ctx, xi, phi) - amp.correspondence_kernel_log(ctx, zero, phi))
            rhs = amp.schrodinger_coherent_log(ctx, eta, phi)
            res = max(res, abs(lhs - rhs) / max(1.0, abs(rhs)))
            res = max(res, xi.reality_residual() / xi.norm())
    return CheckOutcome(res)


@check("coherent_unitarity", 1e-10)
def coherent_unitarity(env):
    """Schroedinger and holomorphic coherent overlaps agree under eta -> eta^D."""
    ctx = env.ctx()
    res = 0.0
    for _ in range(env.n):
        eta, kap = env.scaled_config(ctx), env.scaled_config(ctx)
        s = amp.coherent_inner_product_schrodinger(ctx, eta, kap)
        h = amp.coherent_inner_product_holomorphic(ctx, amp.characterizing_solution(ctx, kap), amp.characterizing_solution(ctx, eta))
        res = max(res, abs(h - s) / abs(s))
        if abs(s) > 1 + 1e-12:
            res = max(res, abs(s) - 1)
    one = amp.coherent_inner_product_schrodinger(ctx, eta, eta)
    return CheckOutcome(max(res, abs(one - 1)))


@check("amplitude_interval", 1e-10, applies=_not_rod)
def amplitude_interval(env):
    """SFQ and HQ interval amplitudes agree on random coherent states."""
    ctx = env.ctx()
    res = 0.0
    for _ in range(env.n):
        eta, kap = env.scaled_config(ctx), env.scaled_config(ctx)
        s = amp.amplitude_sfq_interval(ctx, eta, kap).value
        ze, xi = amp.characterizing_solution(ctx, eta), amp.characterizing_solution(ctx, kap)
        h1 = amp.amplitude_hq_interval(ctx, ze, xi).value
        h2 = amp.amplitude_hq_interval(ctx, ze, xi, route="asymptotic").value
        res = max(res, abs(h1 - s) / abs(s), abs(h2 - s) / abs(s))
        if abs(h1) > 1 + 1e-12:
            res = max(res, abs(h1) - 1)
    same = amp.amplitude_sfq_interval(ctx, eta, eta).value
    return CheckOutcome(max(res, abs(same - 1)))


@check("amplitude_rod", 1e-10, applies=_is_rod)
def amplitude_rod(env):
    """SFQ and HQ rod amplitudes agree on random coherent states."""
    ctx = env.ctx()
    res = 0.0
    for _ in range(env.n):
        kap = env.scaled_config(ctx)
        s = amp.amplitude_sfq_rod(ctx, kap).value
        b = bd.RodBoundaryField(co.freq_to_real(env.spec, amp.characterizing_solution(ctx, kap)))
        h1 = amp.amplitude_hq_rod(ctx, b).value
        h2 = amp.amplitude_hq_rod(ctx, b, route="asymptotic").value
        res = max(res, abs(h1 - s) / abs(s), abs(h2 - s) / abs(s))
    reg = rf.random_real_coeffs(env.rng, env.grid)
    reg = cs.RealCoeffs(reg.a, np.zeros(len(env.grid)), env.grid)
    return CheckOutcome(max(res, abs(amp.amplitude_hq_rod(ctx, bd.RodBoundaryField(reg)).value - 1)))


# ---------------------------------------------------------------- phase space


@check("phase_space_conjugation", 1e-12)
def phase_space_conjugation(env):
    """F [[A, B], [D, C]] = diag(-i, i) F, normalized by |F||M|.

    Negative control: shifting C by ``0.1 max(1, |M|)`` must push every
    unnormalized residual above 1e-2.
    """
    per_mode = np.zeros(len(env.grid))
    control = np.inf
    for tau in env.taus:
        s = env.sample(tau)
        per_mode = np.maximum(per_mode, ps.conjugation_residuals(env.spec, s, normalized=True))
        M = ps.abdc_operators(env.spec, s).matrix()
        shift = 0.1 * np.maximum(1.0, np.linalg.norm(M, axis=(-2, -1)))
        control = min(control, float(np.min(ps.conjugation_residuals(env.spec, s, perturb_C=shift))))
    r, worst, table = _worst(env, per_mode)
    if not control > 1e-2:
        r = max(r, 1.0)
    return CheckOutcome(r, worst, table, note=f"negative control min {control:.3e}")


@check("phase_space_algebra", 1e-12)
def phase_space_algebra(env):
    """A^2 + BD = -1, C^2 + DB = -1, AB + BC = 0, DA + CD = 0, A = -C."""
    per_mode = np.zeros(len(env.grid))
    for tau in env.taus:
        e = ps.abdc_operators(env.spec, env.sample(tau))
        scale = np.maximum(1.0, np.maximum(e.A**2, np.abs(e.B * e.D)))
        for x in (e.A**2 + e.B * e.D + 1, e.C**2 + e.D * e.B + 1, e.A * e.B + e.B * e.C, e.D * e.A + e.C * e.D, e.A + e.C):
            per_mode = np.maximum(per_mode, np.abs(x) / scale)
    r, worst, table = _worst(env, per_mode)
    return CheckOutcome(r, worst, table)


@check("phase_subspaces", 1e-10)
def phase_subspaces(env):
    """Images of A, B lie in N and images of D, C lie in M."""
    res = 0.0
    for tau in env.taus:
        s = env.sample(tau)
        for _ in range(5):
            pt = ps.PhasePoint(
                rf.random_config(env.rng, env.grid, real=True), rf.random_config(env.rng, env.grid, real=True), env.grid
            )
            res = max(res, max(ps.phase_subspace_relations(env.spec, s, pt).values()))
    return CheckOutcome(res)


@check("phase_symplectic_compat", 1e-10)
def phase_symplectic_compat(env):
    """omega on phase space is J-invariant and matches omega of the F-images."""
    res = 0.0
    for tau in env.taus:
        ctx = env.ctx(tau)
        s = ctx.sample
        for _ in range(5):
            x = ps.to_freq(env.spec, s, ps.PhasePoint(*(rf.random_config(env.rng, env.grid, real=True) for _ in range(2)), env.grid))
            y = ps.to_freq(env.spec, s, ps.PhasePoint(*(rf.random_config(env.rng, env.grid, real=True) for _ in range(2)), env.grid))
            px = ps.PhasePoint(*co.evaluate_solution(env.spec, s, x), env.grid)
            py = ps.PhasePoint(*co.evaluate_solution(env.spec, s, y), env.grid)
            px = ps.PhasePoint(px.vph, s.wtilde * px.pi, env.grid)
            py = ps.PhasePoint(py.vph, s.wtilde * py.pi, env.grid)
            w = ps.symplectic_form_phase(ctx.sigma, px, py)
            wj = ps.symplectic_form_phase(ctx.sigma, ps.apply_j_phase(env.spec, s, px), ps.apply_j_phase(env.spec, s, py))
            scale = env.gscale(ctx, x, y)
            res = max(res, abs(wj - w) / scale, abs(w - sy.symplectic_form(ctx, x, y)) / scale)
    return CheckOutcome(res)


def applicable_ids(family):
    return [cid for cid, d in REGISTRY.items() if d.applies(family)]
