"""Command line interface.

Exit codes: 0 success, 2 bad input, 3 physics violation (superselection or
not a state), 4 numerical failure. Errors are reported on stderr as a single
JSON object ``{"error": ..., "message": ...}``.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import entanglement as ent
from . import frames as fr
from . import selftest
from . import states as st
from . import thirring as th
from .errors import InputError, NonConvergence, TwoFermionError


def _num(x: float) -> str:
    return f"{x:.17g}"


def _short(x: float) -> str:
    return f"{x:.6g}"


def parse_grid(text: str) -> np.ndarray:
    """``start:stop:steps``; endpoints may be fractions such as ``-1/3``."""
    try:
        start, stop, steps = text.split(":")
        a, b, n = float(Fraction(start)), float(Fraction(stop)), int(steps)
    except ValueError as exc:
        raise InputError(f"grid must look like start:stop:steps, got {text!r}") from exc
    if n < 1:
        raise InputError("grid needs at least one point")
    return np.linspace(a, b, n) if n > 1 else np.array([a])


def _read(path: str) -> str:
    try:
        return sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def _load_state(args) -> st.SSRState:
    return st.loads(_read(args.state), tol=args.tol if args.tol is not None else st.STATE_TOL)


def _json(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _csv(header: list[str], rows) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(_num(x) for x in row) + "\n")
    return buf.getvalue()


def _sector_doc(s: ent.SectorAnalysis) -> dict:
    return {"weight": s.weight, "xi": s.xi, "entropy": s.entropy, "degenerate": s.degenerate}


# --------------------------------------------------------------------------
# commands; each returns (text, exit code)
# --------------------------------------------------------------------------


def cmd_validate(args):
    state = _load_state(args)
    tol = args.tol if args.tol is not None else st.STATE_TOL
    t1, t2 = st.partial_trace(state, 1), st.partial_trace(state, 2)
    doc = {
        "valid": True,
        "separable": st.is_separable(state, tol),
        "superseparable": st.is_superseparable(state, tol),
        "partial_trace_1": [t1.p0, t1.p1],
        "partial_trace_2": [t2.p0, t2.p1],
        "state": state.to_dict(),
    }
    if args.format == "json":
        return _json(doc), 0
    lines = [
        "valid: true",
        f"separable: {str(doc['separable']).lower()}, superseparable: {str(doc['superseparable']).lower()}",
        f"partial trace 1: ({_short(t1.p0)}, {_short(t1.p1)})",
        f"partial trace 2: ({_short(t2.p0)}, {_short(t2.p1)})",
    ]
    return "\n".join(lines) + "\n", 0


def _oracle_config(args) -> ent.OracleConfig:
    return ent.OracleConfig(
        restarts=args.restarts,
        ensemble_size_per_sector=args.ensemble_size,
        seed=args.seed,
        max_iters=args.max_iters,
    )


def cmd_eof(args):
    state = _load_state(args)
    res = ent.eof_closed_form(state)
    doc = {"closed_form": res.total, "sectors": [_sector_doc(s) for s in res.sectors]}
    code = 0
    if args.oracle:
        o = ent.eof_oracle(state, _oracle_config(args))
        doc.update(oracle=o.minimum, gap=o.gap, disagrees=o.disagrees, converged=o.converged)
        code = 0 if o.converged else NonConvergence.exit_code
    if args.format == "json":
        return _json(doc), code
    lines = [f"closed form: {_short(res.total)}"]
    for i, s in enumerate(res.sectors, 1):
        xi = "undefined" if s.xi is None else _short(s.xi)
        lines.append(f"sector {i}: weight {_short(s.weight)}, xi {xi}, S {_short(s.entropy)}")
    if args.oracle:
        lines.append(f"oracle: {_short(doc['oracle'])}, gap {_short(doc['gap'])}")
        if doc["disagrees"]:
            lines.append("DISAGREES: oracle found an ensemble below the closed form")
        if not doc["converged"]:
            lines.append("warning: best local search did not report convergence")
    return "\n".join(lines) + "\n", code


def cmd_oracle(args):
    state = _load_state(args)
    o = ent.eof_oracle(state, _oracle_config(args))
    doc = {
        "minimum": o.minimum,
        "closed_form": o.closed_form,
        "gap": o.gap,
        "disagrees": o.disagrees,
        "converged": o.converged,
        "reconstruction_error": o.ensemble.reconstruction_error(state),
        "ensemble": [
            {"weight": m.weight, "sector": m.sector, "amplitudes": [[z.real, z.imag] for z in m.amplitudes]}
            for m in o.ensemble.members
        ],
    }
    return _json(doc), 0 if o.converged else NonConvergence.exit_code


def cmd_concurrence(args):
    state = _load_state(args)
    c = ent.wootters_concurrence(state.to_matrix())
    if args.format == "json":
        return _json({"concurrence": c}), 0
    return f"concurrence: {_short(c)}\n", 0


def cmd_werner_scan(args):
    rows = []
    for g in parse_grid(args.gamma_grid):
        w = st.werner(float(g))
        rows.append((g, ent.eof_closed_form(w).total, ent.wootters_concurrence(w.to_matrix())))
    return _csv(["gamma", "eof", "concurrence"], rows), 0


def cmd_transform(args):
    state = _load_state(args)
    params = fr.loads(_read(args.params))
    return st.dumps(fr.transform_state(params, state)), 0


def cmd_find_frame(args):
    state = _load_state(args)
    f = fr.find_separable_frame(state)
    doc = {
        "params": f.params.to_dict(),
        "diagonal": f.diagonal.to_dict(),
        "eof_before": ent.eof_closed_form(state).total,
        "eof_after": ent.eof_closed_form(f.diagonal).total,
    }
    return _json(doc), 0


def cmd_superseparable_check(args):
    state = _load_state(args)
    tol = args.tol if args.tol is not None else st.STATE_TOL
    worst, witness = 0.0, None
    for k in range(args.samples):
        params = fr.random_group_element(args.seed + k)
        moved = fr.transform_state(params, state)
        coh = max(abs(moved.b1), abs(moved.b2))
        if coh > worst:
            worst, witness = coh, params
    doc = {
        "superseparable": st.is_superseparable(state, tol),
        "separable": st.is_separable(state, tol),
        "samples": args.samples,
        "max_coherence_over_frames": worst,
        "witness": witness.to_dict() if witness is not None and worst > tol else None,
    }
    return _json(doc), 0


def cmd_evolve(args):
    state = _load_state(args)
    p = th.ThirringParams(m=args.m, lam=args.lam)
    return _csv(["t", "E"], th.entanglement_trajectory(state, p, parse_grid(args.t_grid))), 0


def cmd_selftest(args):
    buf = io.StringIO()
    ok = selftest.run(seed=args.seed, write=lambda line: buf.write(line + "\n"))
    return buf.getvalue(), 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twofermion", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, state=True, fmt=False, oracle=False):
        p = sub.add_parser(name)
        p.set_defaults(func=func)
        if state:
            p.add_argument("state", help="state JSON file ('-' for stdin)")
            p.add_argument("--tol", type=float, default=None)
        if fmt:
            p.add_argument("--format", choices=("text", "json"), default="text")
        if oracle:
            p.add_argument("--restarts", type=int, default=32)
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--ensemble-size", type=int, default=4)
            p.add_argument("--max-iters", type=int, default=500)
        p.add_argument("--output", "-o", default=None)
        return p

    add("validate", cmd_validate, fmt=True)
    p = add("eof", cmd_eof, fmt=True, oracle=True)
    p.add_argument("--oracle", action="store_true", help="also run the numerical search")
    add("oracle", cmd_oracle, oracle=True)
    add("concurrence", cmd_concurrence, fmt=True)
    p = add("werner-scan", cmd_werner_scan, state=False)
    p.add_argument("--gamma-grid", default="-1/3:1:13")
    p = add("transform", cmd_transform)
    p.add_argument("params", help="frame parameters JSON file")
    add("find-frame", cmd_find_frame)
    p = add("superseparable-check", cmd_superseparable_check)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p = add("evolve", cmd_evolve)
    p.add_argument("--m", type=float, required=True)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--t-grid", default="0:10:11")
    p = add("selftest", cmd_selftest, state=False)
    p.add_argument("--seed", type=int, default=0)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text, code = args.func(args)
    except TwoFermionError as exc:
        sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return exc.exit_code
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
