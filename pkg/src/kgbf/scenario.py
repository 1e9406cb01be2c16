"""Scenario descriptions: what to build and which checks to run.

Scenarios are TOML files::

    name = "interval-default"
    seed = 20240611
    n_random = 1000
    checks = "all"            # or a list of check ids

    [family]
    id = "minkowski_interval" # minkowski_rod, minkowski_tube, closure
    mass = 0.0
    sigma = 1

    [grid]
    n_radial = 16             # interval; rod uses omegas / lmax
    kmin = 0.1
    kmax = 10.0
    weights = "unit"

    [vacuum]
    preset = "standard"       # constant, gauge-scaled, table, random

    [samples]
    taus = [0.0, 0.4, 1.1, 2.5, -1.7]

    [tolerances]
    j_squared = 1e-12
"""

import hashlib
import importlib
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .complex_structure import VacuumSpec
from .errors import ConfigError, KGBFError
from .modes import (
    ROD,
    TUBE,
    ClosureFamily,
    IntervalMode,
    MinkowskiInterval,
    MinkowskiRadial,
    ModeGrid,
    RodMode,
    interval_grid,
    rod_grid,
)
from .randomfields import random_spec

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

SCENARIO_DIR_ENV = "KGBF_SCENARIO_DIR"

_TOP_KEYS = {"name", "seed", "n_random", "checks", "family", "grid", "vacuum", "samples", "tolerances", "output"}


@dataclass
class Scenario:
    """A fully resolved scenario.

    ``config`` keeps the plain-data description (used for hashing and
    reports); ``family``, ``grid`` and ``spec`` are the built objects.
    """

    name: str
    family: object
    grid: object
    spec: VacuumSpec
    taus: list
    seed: int = 0
    n_random: int = 1000
    checks: list = None
    tolerances: dict = field(default_factory=dict)
    tolerance_scale: float = 1.0
    output: dict = field(default_factory=dict)
    config: dict = field(default_factory=dict)

    @property
    def hash(self):
        blob = json.dumps(self.config, sort_keys=True, separators=(",", ":"), default=str)
        return hashlib.sha256(blob.encode()).hexdigest()

    def with_overrides(self, seed=None, tolerance_scale=None):
        """Rebuilt scenario with a new seed and/or tolerance scale."""
        cfg = dict(self.config)
        if seed is not None:
            cfg["seed"] = int(seed)
        if tolerance_scale is not None:
            cfg["tolerances"] = {**cfg.get("tolerances", {}), "scale": float(tolerance_scale)}
        return build_scenario(cfg)


def resolve_path(path):
    """Find a scenario file directly or inside ``$KGBF_SCENARIO_DIR``."""
    p = Path(path)
    if p.is_file():
        return p
    base = os.environ.get(SCENARIO_DIR_ENV)
    if base:
        for cand in (Path(base) / p, Path(base) / (str(p) + ".toml")):
            if cand.is_file():
                return cand
    raise ConfigError(f"scenario file not found: {path}")


def load_scenario(path):
    """Parse and build a scenario from a TOML file."""
    p = resolve_path(path)
    try:
        with open(p, "rb") as fh:
            cfg = tomllib.load(fh)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{p}: {exc}") from None
    cfg.setdefault("name", p.stem)
    return build_scenario(cfg)


def parse_scenario(text):
    try:
        cfg = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(str(exc)) from None
    return build_scenario(cfg)


def build_scenario(cfg):
    """Build a :class:`Scenario` from plain configuration data."""
    if not isinstance(cfg, dict):
        raise ConfigError("scenario must be a table")
    unknown = set(cfg) - _TOP_KEYS
    if unknown:
        raise ConfigError(f"unknown scenario keys: {sorted(unknown)}")
    try:
        seed = int(cfg.get("seed", 0))
        n_random = int(cfg.get("n_random", 1000))
    except (TypeError, ValueError):
        raise ConfigError("seed and n_random must be integers") from None
    if not 0 <= seed < 2**64:
        raise ConfigError("seed must be a 64-bit unsigned integer")
    if n_random < 1:
        raise ConfigError("n_random must be positive")
    try:
        family = _build_family(cfg.get("family", {}))
        grid = _build_grid(cfg.get("grid", {}), family)
        spec = _build_spec(cfg.get("vacuum", {}), grid, seed)
    except KGBFError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from None
    taus = _build_taus(cfg.get("samples", {}), family)
    checks = cfg.get("checks", "all")
    if checks != "all":
        if not isinstance(checks, list) or not all(isinstance(c, str) for c in checks):
            raise ConfigError("checks must be 'all' or a list of check ids")
    if not isinstance(cfg.get("tolerances", {}), dict):
        raise ConfigError("[tolerances] must be a table")
    tolerances = dict(cfg.get("tolerances", {}))
    try:
        tolerances = {k: float(v) for k, v in tolerances.items()}
    except (TypeError, ValueError):
        raise ConfigError("tolerances must be numbers") from None
    scale = tolerances.pop("scale", 1.0)
    if not scale > 0:
        raise ConfigError("tolerance scale must be positive")
    return Scenario(
        name=str(cfg.get("name", "scenario")),
        family=family,
        grid=grid,
        spec=spec,
        taus=taus,
        seed=seed,
        n_random=n_random,
        checks=None if checks == "all" else list(checks),
        tolerances=tolerances,
        tolerance_scale=scale,
        output=dict(cfg.get("output", {})),
        config=cfg,
    )


def _build_family(fc):
    fid = fc.get("id", "minkowski_interval")
    mass = float(fc.get("mass", 0.0))
    sigma = int(fc.get("sigma", 1))
    if sigma not in (1, -1):
        raise ConfigError("sigma must be +1 or -1")
    if fid == "minkowski_interval":
        return MinkowskiInterval(mass=mass, sigma=sigma)
    if fid in ("minkowski_rod", "minkowski_tube"):
        return MinkowskiRadial(mass=mass, sigma=sigma, region=ROD if fid == "minkowski_rod" else TUBE)
    if fid == "closure":
        target = fc.get("evaluator")
        if not isinstance(target, str) or ":" not in target:
            raise ConfigError("closure family needs evaluator = 'module:callable'")
        mod, _, attr = target.partition(":")
        try:
            evaluator = getattr(importlib.import_module(mod), attr)
        except (ImportError, AttributeError) as exc:
            raise ConfigError(f"cannot import closure evaluator {target}: {exc}") from None
        lo, hi = fc.get("tau_domain", [-np.inf, np.inf])
        return ClosureFamily(evaluator, region=fc.get("region", "interval"), sigma=sigma, tau_domain=(float(lo), float(hi)))
    raise ConfigError(f"unknown family id {fid!r}")


def _build_grid(gc, family):
    weights = gc.get("weights", "unit")
    if family.label_kind() == "interval":
        if "modes" in gc:
            modes = [IntervalMode(*map(float, m)) for m in gc["modes"]]
            return ModeGrid(modes, gc.get("mode_weights"))
        return interval_grid(
            n_radial=int(gc.get("n_radial", 16)),
            kmin=float(gc.get("kmin", 0.1)),
            kmax=float(gc.get("kmax", 10.0)),
            axis=tuple(gc.get("axis", (1.0, 0.0, 0.0))),
            weights=weights,
        )
    if "modes" in gc:
        return ModeGrid([RodMode(float(m[0]), int(m[1]), int(m[2])) for m in gc["modes"]], gc.get("mode_weights"))
    if "omegas" in gc:
        omegas = [float(x) for x in gc["omegas"]]
    else:
        step = float(gc.get("omega_step", 0.5))
        omax = float(gc.get("omega_max", 4.0))
        omegas = list(np.arange(1, int(round(omax / step)) + 1) * step)
    return rod_grid(omegas=omegas, lmax=int(gc.get("lmax", 4)), weights=weights)


def _complex(value, what):
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, list) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    raise ConfigError(f"{what} must be a number or [re, im]")


def _build_spec(vc, grid, seed):
    preset = vc.get("preset", "standard")
    if preset == "standard":
        return VacuumSpec.standard()
    if preset == "constant":
        return VacuumSpec.constant(_complex(vc.get("ca"), "ca"), _complex(vc.get("cb"), "cb"))
    if preset == "gauge-scaled":
        base = _build_spec(dict(vc.get("base", {"preset": "standard"})), grid, seed)
        return base.gauge_scaled(_complex(vc.get("f", 1.0), "f"))
    if preset == "table":
        rows = vc.get("table", [])
        table = {}
        for row in rows:
            m = row["mode"]
            idx = IntervalMode(*map(float, m)) if grid.kind == "interval" else RodMode(float(m[0]), int(m[1]), int(m[2]))
            table[idx] = (_complex(row["ca"], "ca"), _complex(row["cb"], "cb"))
        return VacuumSpec.from_table(table)
    if preset == "random":
        rng = np.random.default_rng([int(vc.get("seed", seed)), 0x5EC])
        return random_spec(rng, grid)
    raise ConfigError(f"unknown vacuum preset {preset!r}")


def _build_taus(sc, family):
    if "taus" in sc:
        taus = [float(t) for t in sc["taus"]]
    elif family.label_kind() == "rod":
        taus = [2.5, 4.0, 6.0, 9.0, 14.0]
    else:
        taus = [0.0, 0.37, 1.1, 2.5, -1.7]
    if len(taus) < 2:
        raise ConfigError("need at least two leaf parameters in [samples] taus")
    for t in taus:
        try:
            family.check_tau(t)
        except KGBFError as exc:
            raise ConfigError(str(exc)) from None
    return taus
