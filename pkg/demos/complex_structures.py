"""Compare the standard and a gauge-rotated vacuum on the interval family.

Prints, per mode, the frequency-basis matrix of J, the vacuum eigenvalue on
a leaf, and the gauge invariants; then checks that J squares to -1 and that
the symplectic form is the same on several leaves.
"""

import numpy as np

from kgbf import MinkowskiInterval, PairingContext, VacuumSpec, interval_grid, jab_matrix, symplectic_form, vacuum_invariants
from kgbf import randomfields as rf
from kgbf import vacuum_operator_eig


def main():
    fam, grid = MinkowskiInterval(), interval_grid()
    rng = np.random.default_rng(7)
    std = VacuumSpec.standard()
    rotated = std.gauge_scaled(0.6 + 1.3j)
    s = fam.sample(grid, 0.5)
    J = jab_matrix(std, grid)
    print("mode         J[0,0]      J[0,1]        a(tau=0.5)          |Q|  phase")
    for idx, j, a in list(zip(grid.modes, J, vacuum_operator_eig(std, s)))[:6]:
        q, d = vacuum_invariants(std, idx)
        print(f"k={idx[0]:+.4f}    {j[0, 0].real:+.4f} {j[0, 1].real:+.4f}  {a:+.4f}  {q:.4f} {d:+.4f}")
    print("gauge rotation changes J by", np.max(np.abs(jab_matrix(rotated, grid) - J)))
    print("max |J^2 + 1| =", np.max(np.abs(J @ J + np.eye(2))))
    xi, ze = rf.random_real_freq(rng, grid), rf.random_real_freq(rng, grid)
    for tau in (-1.0, 0.0, 2.0):
        print(f"omega on leaf tau={tau:+.1f}: {symplectic_form(PairingContext(fam, grid, std, tau), xi, ze):+.15f}")


if __name__ == "__main__":
    main()
