"""Command-line front end: one JSON report per invocation on stdout.

Exit codes: 0 success, 2 invalid input, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from functools import lru_cache
from pathlib import Path

from . import __version__
from .census import L_BASIS_CONVENTION, c_class, census, total_boundary
from .curves import PlanarCurve
from .errors import InvalidInputError, NumericalError
from .fibration import (
    EPS_CRIT,
    TOL_TAU,
    FibreParams,
    critical_values,
    enclosed_criticals,
    round_limit,
    same_hamiltonian_class,
    tau,
)
from .pairing import (
    PAIRING_SIGN_RULE,
    PuncturedSurface,
    geometric_pair,
    hf_sphere_rank_bounds,
    normalize,
    pair,
    paper_pairing,
    representative_arc,
    rotate_arc,
    rotate_class,
    RelClass,
    exact_lagrangian_verdict,
)
from .pearl import PD_CONVENTION, build_pearl_complex, quotient_hf, symplectic_cohomology_nonzero, transfer_check
from .quotient import (
    QuotientParams,
    bpq_diagram,
    cover_diagram,
    determinant,
    handle_homology,
    hj_expansion,
    lens_boundary,
    plumbing_matrix,
)

EXIT_OK, EXIT_INVALID, EXIT_NUMERICAL = 0, 2, 3
TOL_ENV = "MILNORKIT_TOL"
EXACT = "exact"
FLOAT_REPR = 1e-15


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INVALID)


def _tol_tau(cli_value: float | None) -> float:
    if cli_value is not None:
        tol = cli_value
    elif os.environ.get(TOL_ENV):
        try:
            tol = float(os.environ[TOL_ENV])
        except ValueError:
            raise InvalidInputError(f"{TOL_ENV} must be a number, got {os.environ[TOL_ENV]!r}") from None
    else:
        tol = TOL_TAU
    if not tol > 0:
        raise InvalidInputError("tolerance must be positive")
    return tol


def _cplx(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _params(n: int) -> FibreParams:
    return FibreParams(n)


def cmd_critvals(args):
    vals = critical_values(_params(args.n))
    return {"n": args.n}, {"critical_values": [_cplx(z) for z in vals]}, {"critical_values": FLOAT_REPR}


def cmd_tau(args):
    tol = _tol_tau(args.tol)
    params = _params(args.n)
    curve = PlanarCurve.load(args.curve)
    mc = tau(curve, params, tol)
    results = {
        "tau": mc.tau,
        "area_term": mc.area_term,
        "fibre_term": mc.fibre_term,
        "round_limit": round_limit(params),
        "enclosed": sorted(enclosed_criticals(curve, params)),
        "input_orientation": curve.orientation,
    }
    tols = {"tau": tol, "area_term": tol / 2, "fibre_term": tol / 2, "round_limit": FLOAT_REPR, "enclosed": EXACT,
            "input_orientation": EXACT}
    return {"n": args.n, "curve": args.curve, "vertices": len(curve)}, results, tols


def cmd_classify(args):
    tol = _tol_tau(args.tol)
    params = _params(args.n)
    ca, cb = PlanarCurve.load(args.curve_a), PlanarCurve.load(args.curve_b)
    verdict = same_hamiltonian_class(ca, cb, params, tol)
    ta, tb = tau(ca, params, tol / 100).tau, tau(cb, params, tol / 100).tau
    results = {
        "verdict": verdict.value,
        "tau_a": ta,
        "tau_b": tb,
        "enclosed_a": sorted(enclosed_criticals(ca, params)),
        "enclosed_b": sorted(enclosed_criticals(cb, params)),
    }
    tols = {"tau_a": tol / 100, "tau_b": tol / 100, "verdict": tol, "enclosed_a": EXACT, "enclosed_b": EXACT}
    return {"n": args.n, "curve_a": args.curve_a, "curve_b": args.curve_b}, results, tols


def cmd_census(args):
    c = census(args.n)
    total = total_boundary(c)
    cl = c_class(c)
    results = {
        "entries": c.to_json(),
        "total_count": c.total_count(),
        "total_boundary": {"V": total.kV, "L": total.lL},
        "c_class": {"V": cl.kV, "L": cl.lL},
    }
    if args.mod2:
        mod2: dict[str, int] = {}
        for k, v in c.entries.items():
            key = str(k.mod2())
            mod2[key] = (mod2.get(key, 0) + v) % 2
        results["entries_mod2"] = mod2
    return {"n": args.n, "mod2": args.mod2}, results, {k: EXACT for k in results}


def cmd_hf(args):
    if args.n is not None:
        if args.p is not None or args.q is not None:
            raise InvalidInputError("give either --n or --p/--q")
        pc = build_pearl_complex(census(args.n))
        ranks = pc.ranks()
        results = {
            "ranks": ranks.to_json(),
            "dichotomy_completed": pc.metadata["dichotomy_completed"],
            "d_squared_zero": pc.is_differential(),
        }
        return {"n": args.n}, results, {k: EXACT for k in results}
    if args.p is None or args.q is None:
        raise InvalidInputError("hf needs --n N or both --p and --q")
    ranks = quotient_hf(args.p, args.q)
    results = {
        "ranks": ranks.to_json(),
        "transfer_check": transfer_check(args.p, args.q),
        "nonempty": symplectic_cohomology_nonzero(args.p, args.q),
        "nonempty_status": "derived",
    }
    return {"p": args.p, "q": args.q}, results, {k: EXACT for k in results}


def cmd_quotient(args):
    params = QuotientParams(args.p, args.q)
    g = hj_expansion(params)
    mat = plumbing_matrix(g)
    bh = handle_homology(bpq_diagram(params))
    ch = handle_homology(cover_diagram(params))
    order, (lp, lq) = lens_boundary(params)
    results = {
        "hj": g.b,
        "euler_numbers": list(g.euler_numbers),
        "plumbing_matrix": mat,
        "det": determinant(mat),
        "H1": str(bh.H1),
        "H2": bh.to_json()["H2"],
        "chi": bh.chi,
        "cover": ch.to_json(),
        "lens": {"order": order, "type": [lp, lq]},
    }
    return {"p": args.p, "q": args.q}, results, {k: EXACT for k in results}


def _parse_coeffs(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise InvalidInputError(f"--coeffs must be comma-separated integers, got {text!r}") from None


def cmd_pairing(args):
    s = PuncturedSurface(args.p, args.q)
    raw = _parse_coeffs(args.coeffs)
    c = normalize(s, args.kappa, raw)
    if list(c.a) != raw:
        raise InvalidInputError("coefficients must satisfy a_kappa = a_{kappa+r} = 0")
    symmetric = all(c.a[j] == -c.a[(j + s.r) % s.p] for j in range(s.p))
    c = RelClass(c.kappa, c.a, symmetric)
    rc = rotate_class(s, c)
    arc = representative_arc(s, c)
    lower, upper = hf_sphere_rank_bounds(s, c, rc, arc, rotate_arc(s, arc))
    value = pair(s, c, rc)
    results = {
        "pair": value,
        "paper_pairing": paper_pairing(s, c.kappa, c.a) if symmetric else None,
        "odd": value % 2 == 1,
        "symmetric": symmetric,
        "rotated": rc.to_json(),
        "geometric_pair": geometric_pair(s, c, rc),
        "hf_rank_bounds": [lower, upper],
    }
    inputs = {"p": args.p, "q": args.q, "kappa": args.kappa, "coeffs": raw}
    return inputs, results, {k: EXACT for k in results}


def cmd_verdict(args):
    v = exact_lagrangian_verdict(args.p, args.q)
    results = v.to_json()
    return {"p": args.p, "q": args.q}, results, {k: EXACT for k in results}


def cmd_render(args):
    from .plotting import SvgScene, render_svg, svg_ids

    params = _params(args.n)
    curves = [PlanarCurve.load(args.curve)] if args.curve else []
    plumbing = None
    if args.p is not None or args.q is not None:
        if args.p is None or args.q is None:
            raise InvalidInputError("render needs both --p and --q for the plumbing panel")
        plumbing = hj_expansion(QuotientParams(args.p, args.q))
    svg = render_svg(SvgScene(params.n, curves, plumbing))
    out = Path(args.out)
    try:
        out.write_text(svg)
    except OSError as exc:
        raise InvalidInputError(f"cannot write {out}: {exc}") from None
    results = {
        "out": str(args.out),
        "punctures": len(svg_ids(svg, "puncture-")),
        "plumbing_nodes": len(svg_ids(svg, "plumbing-")),
        "sha256": hashlib.sha256(svg.encode()).hexdigest(),
    }
    inputs = {"n": args.n, "curve": args.curve, "p": args.p, "q": args.q}
    return inputs, results, {k: EXACT for k in results}


@lru_cache(maxsize=1)
def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="milnorkit", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("critvals", help="critical values of the fibration")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_critvals)

    p = sub.add_parser("tau", help="monotonicity constant of a curve")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--curve", required=True)
    p.add_argument("--tol", type=float)
    p.set_defaults(func=cmd_tau)

    p = sub.add_parser("classify", help="Hamiltonian isotopy verdict for two curves")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--curve-a", required=True)
    p.add_argument("--curve-b", required=True)
    p.add_argument("--tol", type=float)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("census", help="Maslov 2 disk census")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mod2", action="store_true")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("hf", help="Floer cohomology ranks over Z/2")
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.set_defaults(func=cmd_hf)

    p = sub.add_parser("quotient", help="continued fraction, plumbing and handle data of B_{p,q}")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("pairing", help="intersection pairing of an arc class with its rotation")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--kappa", type=int, required=True)
    p.add_argument("--coeffs", required=True)
    p.set_defaults(func=cmd_pairing)

    p = sub.add_parser("verdict", help="exact Lagrangian verdict for B_{p,q}")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=cmd_verdict)

    p = sub.add_parser("render", help="SVG of the base, critical values and plumbing chain")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--curve")
    p.add_argument("--out", required=True)
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.set_defaults(func=cmd_render)
    return ap


def _metadata(tolerances: dict) -> dict:
    return {
        "version": __version__,
        "tolerances": tolerances,
        "defaults": {"tol_tau": TOL_TAU, "eps_crit": EPS_CRIT},
        "conventions": {
            "l_basis": L_BASIS_CONVENTION,
            "pairing_sign_rule": PAIRING_SIGN_RULE,
            "poincare_duality": PD_CONVENTION,
        },
    }


def run(argv: list[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        inputs, results, tols = args.func(args)
    except InvalidInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (NumericalError, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    report = {"command": args.command, "inputs": inputs, "results": results, "metadata": _metadata(tols)}
    stdout.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    return EXIT_OK


def main() -> None:
    raise SystemExit(run())
