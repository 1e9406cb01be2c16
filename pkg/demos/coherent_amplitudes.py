"""Compute a coherent-state amplitude two ways on the interval and the rod.

The Schroedinger-picture amplitude is built from boundary configurations;
the holomorphic one from their characterizing solutions. The two agree.
"""

import numpy as np

from kgbf import (
    MinkowskiInterval,
    MinkowskiRadial,
    PairingContext,
    RodBoundaryField,
    VacuumSpec,
    amplitude_hq_interval,
    amplitude_hq_rod,
    amplitude_sfq_interval,
    amplitude_sfq_rod,
    characterizing_solution,
    freq_to_real,
    interval_grid,
    rod_grid,
)
from kgbf import randomfields as rf


def scaled(rng, ctx):
    return rf.random_config(rng, ctx.grid) / np.sqrt(ctx.kd * np.sum(ctx.grid.weights))


def main():
    rng = np.random.default_rng(11)
    ictx = PairingContext(MinkowskiInterval(), interval_grid(), VacuumSpec.standard(), 0.3)
    eta, kap = scaled(rng, ictx), scaled(rng, ictx)
    sfq = amplitude_sfq_interval(ictx, eta, kap).value
    hq = amplitude_hq_interval(ictx, characterizing_solution(ictx, eta), characterizing_solution(ictx, kap)).value
    print(f"interval  SFQ {sfq:.15f}\n          HQ  {hq:.15f}")

    rctx = PairingContext(MinkowskiRadial(), rod_grid(omegas=[0.5, 1.0, 1.5], lmax=2), VacuumSpec.standard(), 4.0)
    kap = scaled(rng, rctx)
    sfq = amplitude_sfq_rod(rctx, kap).value
    hq = amplitude_hq_rod(rctx, RodBoundaryField(freq_to_real(rctx.spec, characterizing_solution(rctx, kap)))).value
    print(f"rod r=4   SFQ {sfq:.15f}\n          HQ  {hq:.15f}")


if __name__ == "__main__":
    main()
