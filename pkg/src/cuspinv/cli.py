"""Command-line front end.

Subcommands
-----------
decompose    Brieskorn pair of a polynomial density (+ quadrature cross-check)
actions      action chart over a base grid, CSV or JSON
compare      equivalence verdict for two systems under a supplied base map
invariants   phi-independent invariant report of a system
lattice      period lattice at a base point, with flow verification
transport    flow-based transport of phase points between two systems

Exit codes: 0 success, 1 computation failure, 2 input error.  Data goes to
stdout (or --out); diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import brieskorn, equivalence, flows
from .model import Density, FibrationModel, Poly2
from .quadrature import action_chart
from .specfun import puiseux_constants


class InputError(Exception):
    pass


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _load_density(path: str) -> Density:
    data = _load_json(path)
    try:
        return Density.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad density file {path}: {exc}") from exc


def _load_model(path: str) -> FibrationModel:
    data = _load_json(path)
    try:
        return FibrationModel.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad model file {path}: {exc}") from exc


def _load_phi(path: str | None):
    if path is None:
        return None
    data = _load_json(path)
    try:
        return Poly2.from_json(data["Ht"]), Poly2.from_json(data["Ft"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad base-map file {path}: {exc}") from exc


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _parse_grid(spec: str) -> tuple[int, int]:
    try:
        nh, nl = spec.lower().split("x")
        return int(nh), int(nl)
    except ValueError as exc:
        raise InputError(f"bad grid spec {spec!r}; expected like 9x7") from exc


def _trim_zeros(coeffs: list) -> list:
    out = list(coeffs)
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def cmd_decompose(args) -> int:
    density = _load_density(args.density)
    pair = brieskorn.reduce(density)
    payload = pair.to_json()
    payload["alpha"] = _trim_zeros(payload["alpha"])
    payload["beta"] = _trim_zeros(payload["beta"])
    if not args.no_cross_check:
        c = puiseux_constants()
        triple, report = equivalence.fitted_pair(
            density.restrict_lambda0(), h_max=0.05, n_samples=32
        )
        payload["cross_check"] = {
            "a0_fit": float(triple.a.coeffs[0]),
            "a0_algebraic": c["C0"] * float(pair.alpha.coeffs[0]),
            "b0_fit": float(triple.b.coeffs[0]),
            "b0_algebraic": c["C1"] * float(pair.beta.coeffs[0]),
            "fit_cond": report.cond,
        }
    _emit(_json_dumps(payload), args.out)
    return 0


def cmd_actions(args) -> int:
    model = _load_model(args.model)
    nh, nl = _parse_grid(args.grid)
    h_lo, h_hi = args.h_range
    l_lo, l_hi = args.l_range
    chart = action_chart(
        model,
        np.linspace(h_lo, h_hi, nh),
        np.linspace(l_lo, l_hi, nl),
        mu_shift=args.mu_shift,
        stratum_filter=args.stratum,
    )
    if args.format == "csv":
        _emit(chart.to_csv(), args.out)
    else:
        rows = [
            {
                "H": r.H,
                "lambda": r.lam,
                "stratum": r.stratum,
                "Pi": r.Pi,
                "Pi_circ": r.Pi_circ,
                "I": r.I,
                "I_circ": r.I_circ,
                "I_mu": r.I_mu,
            }
            for r in chart.rows
        ]
        _emit(_json_dumps({"mu_shift": chart.mu_shift, "rows": rows}), args.out)
    return 0


def cmd_compare(args) -> int:
    sys1 = _load_model(args.sys1)
    sys2 = _load_model(args.sys2)
    phi = _load_phi(args.phi)
    if sys1.kind == "cusp_compact" and sys2.kind == "cusp_compact":
        lo, hi = args.k_range
        verdict = equivalence.cusp_torus_equivalent(
            sys1, sys2, phi, k_range=(lo, hi), action_rtol=args.tol
        )
    else:
        verdict = equivalence.parabolic_equivalent(sys1, sys2, phi, action_rtol=args.tol)
    _emit(_json_dumps(verdict.to_json()), args.out)
    return 0


def cmd_invariants(args) -> int:
    sys1 = _load_model(args.sys)
    report = equivalence.invariant_report(sys1)
    _emit(_json_dumps(report.to_json()), args.out)
    return 0


def cmd_lattice(args) -> int:
    sys1 = _load_model(args.sys)
    sm = flows.SymplecticModel(sys1)
    h, lam = args.at
    lattice = flows.period_lattice(sm, h, lam, stratum=args.stratum, k=args.mu_shift)
    payload = lattice.to_json()
    if args.verify:
        start = _start_point(sm, h, lam, args.stratum)
        checks = []
        for row in lattice.basis:
            dist = flows.verify_lattice(sm, start, row[0], row[1])
            checks.append(
                {"t1": row[0], "t2": row[1], "distance": dist, "returned": dist < args.tol}
            )
        half = lattice.basis[1] / 2.0
        dist = flows.verify_lattice(sm, start, half[0], half[1])
        checks.append(
            {"t1": half[0], "t2": half[1], "distance": dist, "returned": dist < args.tol}
        )
        payload["verification"] = checks
        payload["start_point"] = list(start)
    _emit(_json_dumps(payload), args.out)
    return 0


def _start_point(sm: flows.SymplecticModel, h: float, lam: float, stratum: str):
    from .quadrature import oval_bounds

    a, b = oval_bounds(sm.model, h, lam, stratum)
    y_mid = 0.5 * (a + b)
    wc = sm.model.potential_coeffs(lam)
    x = float(np.sqrt(max(h - np.polyval(wc, y_mid), 0.0)))
    return np.array([x, y_mid, lam, 0.0])


def cmd_transport(args) -> int:
    sys1 = flows.SymplecticModel(_load_model(args.sys1))
    sys2 = flows.SymplecticModel(_load_model(args.sys2))
    pts = _load_json(args.points)
    out = []
    for p in pts:
        if not isinstance(p, list) or len(p) < 3:
            raise InputError("points file must hold [x, y, lambda(, phi)] lists")
        q = np.array([p[0], p[1], p[2], p[3] if len(p) > 3 else 0.0], dtype=float)
        res = flows.pullback_residual(sys1, sys2, q)
        out.append(
            {
                "point": list(map(float, q)),
                "image": res["image"],
                "xy_residual": res["xy_residual"],
                "fiber_drift": res["fiber_drift"],
            }
        )
    _emit(_json_dumps({"points": out}), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cuspinv",
        description="Symplectic invariants of parabolic orbits and cuspidal tori",
    )
    parser.add_argument(
        "--config", help="JSON file whose entries override the given flags"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="Brieskorn pair of a density")
    p.add_argument("--density", required=True)
    p.add_argument("--no-cross-check", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("actions", help="action chart over a base grid")
    p.add_argument("--model", required=True)
    p.add_argument("--grid", default="7x7")
    p.add_argument("--h-range", type=float, nargs=2, default=(-0.01, 0.01))
    p.add_argument("--l-range", type=float, nargs=2, default=(-0.06, 0.02))
    p.add_argument("--stratum", choices=["narrow", "wide", "outside"])
    p.add_argument("--mu-shift", type=int, default=0)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_actions)

    p = sub.add_parser("compare", help="equivalence verdict for two systems")
    p.add_argument("--sys1", required=True)
    p.add_argument("--sys2", required=True)
    p.add_argument("--phi")
    p.add_argument("--k-range", type=int, nargs=2, default=(-3, 3))
    p.add_argument("--tol", type=float, default=1e-5)
    p.add_argument("--out")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("invariants", help="phi-independent invariant report")
    p.add_argument("--sys", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("lattice", help="period lattice at a base point")
    p.add_argument("--sys", required=True)
    p.add_argument("--at", type=float, nargs=2, required=True, metavar=("H", "LAMBDA"))
    p.add_argument("--stratum", choices=["narrow", "wide"], default="narrow")
    p.add_argument("--mu-shift", type=int, default=0)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--out")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("transport", help="transport phase points between systems")
    p.add_argument("--sys1", required=True)
    p.add_argument("--sys2", required=True)
    p.add_argument("--points", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_transport)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "config", None):
            # opt-in config file; its entries override the parsed flags
            overrides = _load_json(args.config)
            if not isinstance(overrides, dict):
                raise InputError(f"config {args.config} must hold a JSON object")
            for key, value in overrides.items():
                setattr(args, key.replace("-", "_"), value)
        return args.func(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # computation failure
        print(f"computation failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
