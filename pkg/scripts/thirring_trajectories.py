"""EoF trajectories under the two-mode Thirring Hamiltonian, plus the symmetry residual vs coupling."""

import argparse
import sys

import numpy as np

from twofermion import frames as fr
from twofermion import states as st
from twofermion import thirring as th


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m", type=float, default=1.0)
    ap.add_argument("--frames", type=int, default=200)
    args = ap.parse_args()

    print("lambda,max_symmetry_residual")
    for lam in np.linspace(-args.m, args.m, 9):
        p = th.ThirringParams(args.m, lam)
        r = max(th.check_symmetry(p, fr.random_group_element(k)) for k in range(args.frames))
        print(f"{lam:.17g},{r:.17g}")
    s = st.random_state(1)
    traj = th.entanglement_trajectory(s, th.ThirringParams(args.m, 0.3), np.linspace(0, 20, 11))
    print("t,E")
    for t, e in traj:
        print(f"{t:.17g},{e:.17g}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
