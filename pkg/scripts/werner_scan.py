"""Entanglement of formation vs Wootters concurrence along the Werner line, as CSV."""

import argparse
import sys

import numpy as np

from twofermion import entanglement as ent
from twofermion import states as st


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--points", type=int, default=41)
    ap.add_argument("--oracle", action="store_true", help="add the numerical minimum column")
    ap.add_argument("--restarts", type=int, default=8)
    args = ap.parse_args()

    cfg = ent.OracleConfig(restarts=args.restarts)
    header = ["gamma", "eof_closed_form", "concurrence"] + (["eof_oracle"] if args.oracle else [])
    print(",".join(header))
    for g in np.linspace(-1 / 3, 1, args.points):
        w = st.werner(g)
        row = [g, ent.eof_closed_form(w).total, ent.wootters_concurrence(w.to_matrix())]
        if args.oracle:
            row.append(ent.eof_oracle(w, cfg).minimum)
        print(",".join(f"{x:.17g}" for x in row))
    return 0


if __name__ == "__main__":
    sys.exit(main())
