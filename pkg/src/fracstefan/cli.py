"""Command-line front end: ``frac-stefan {solve,verify,equiv,limit,sweep}``.

Exit codes: 0 success, 2 invalid parameters, 3 solver failure,
4 a verification bound was exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .equivalence import (
    dirichlet_from_convective,
    dirichlet_from_flux,
    flux_from_convective,
    printed_parameter,
    verify_equivalence,
)
from .errors import DomainError, InvalidParameter
from .special_fn import SERIES_TOL_ENV, SeriesControl
from .stefan import (
    DEFAULT_TOL,
    Convective,
    Dirichlet,
    Flux,
    ProblemSpec,
    evaluate_s,
    sample_profile,
    solve,
    target_for,
    trans_function,
)
from .verification import classical_root, limit_study, pde_convergence, residual_report

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_SOLVER = 3
EXIT_BOUND = 4

BC_PARAMS = {"dirichlet": ("B",), "flux": ("q",), "convective": ("m", "h", "D")}


# {{{ deterministic output

def fmt(x) -> str:
    return format(float(x), ".17g")


def _json(obj, indent: int = 0) -> str:
    pad = "  " * (indent + 1)
    end = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{pad}{_json(str(k))}: {_json(v, indent + 1)}' for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        return "[\n" + ",\n".join(pad + _json(v, indent + 1) for v in obj) + "\n" + end + "]"
    if isinstance(obj, bool) or obj is None:
        return {True: "true", False: "false", None: "null"}[obj]
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        if not math.isfinite(obj):
            return "null"
        return fmt(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj) -> str:
    """JSON text with every float printed at 17 significant digits."""
    return _json(obj) + "\n"


def _emit(text: str, path: str | None) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()

# }}}


# {{{ argument handling

def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


def _add_problem_args(p: argparse.ArgumentParser, *, problem_default=None, lists=False, alpha=True) -> None:
    kind = _floats if lists else float
    p.add_argument("--problem", choices=sorted(BC_PARAMS), default=problem_default,
                   required=problem_default is None, help="boundary condition at x=0")
    if alpha:
        p.add_argument("--alpha", type=kind, required=True, help="Caputo order, in (0,1)")
    p.add_argument("--lambda", dest="lam", type=kind, default=[1.0] if lists else 1.0,
                   help="diffusivity scale lambda > 0")
    p.add_argument("--k", type=kind, default=[1.0] if lists else 1.0, help="Stefan constant k > 0")
    p.add_argument("--C", type=kind, default=[0.0] if lists else 0.0, help="front temperature C")
    p.add_argument("--B", type=kind, help="wall temperature (dirichlet), B > C")
    p.add_argument("--q", type=kind, help="flux intensity (flux), q > 0")
    p.add_argument("--m", type=kind, help="conductivity factor (convective), m > 0")
    p.add_argument("--h", type=kind, help="transfer coefficient (convective), h > 0")
    p.add_argument("--D", type=kind, help="ambient temperature (convective), D > C")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="relative tolerance on the root equation")


def _bc_values(args) -> dict:
    needed = BC_PARAMS[args.problem]
    missing = [n for n in needed if getattr(args, n) is None]
    extra = [n for kind, names in BC_PARAMS.items() if kind != args.problem
             for n in names if getattr(args, n) is not None]
    if missing:
        raise InvalidParameter(f"{args.problem} problem needs --{' --'.join(missing)}")
    if extra:
        raise InvalidParameter(f"{args.problem} problem does not take --{' --'.join(extra)}")
    return {n: getattr(args, n) for n in needed}


def _make_bc(kind: str, values: dict):
    if kind == "dirichlet":
        return Dirichlet(values["B"])
    if kind == "flux":
        return Flux(values["q"])
    return Convective(values["m"], values["h"], values["D"])


def _spec_from_args(args) -> ProblemSpec:
    if args.tol <= 0.0:
        raise InvalidParameter("tol > 0 required")
    return ProblemSpec(args.alpha, args.lam, args.k, args.C, _make_bc(args.problem, _bc_values(args)))


def _check_grid(args) -> None:
    if not args.dt > 0.0:
        raise InvalidParameter(f"dt > 0 required, got {args.dt}")
    if not 0.0 < getattr(args, "x_frac", 0.5) < 1.0:
        raise InvalidParameter(f"x_frac in (0,1) required, got {args.x_frac}")
    if not getattr(args, "t_final", 1.0) > 0.0 or any(t <= 0.0 for t in getattr(args, "t_values", [])):
        raise InvalidParameter("times must be > 0")


def _bc_record(spec: ProblemSpec) -> dict:
    return {"type": spec.kind, **{n: getattr(spec.bc, n) for n in BC_PARAMS[spec.kind]}}


def _spec_record(spec: ProblemSpec) -> dict:
    return {"alpha": spec.alpha, "lambda": spec.lam, "k": spec.k, "C": spec.C, "bc": _bc_record(spec)}


def _metadata(args, ctl: SeriesControl) -> dict:
    return {
        "version": __version__,
        "series_abs_tol": ctl.abs_tol,
        "series_max_terms": ctl.max_terms,
        "series_tol_env": SERIES_TOL_ENV,
        "root_tol": args.tol,
    }

# }}}


# {{{ subcommands

def cmd_solve(args, ctl: SeriesControl) -> int:
    spec = _spec_from_args(args)
    if args.profile and (args.nx < 2 or not args.x_extent > 0.0 or any(t <= 0.0 for t in args.t_values)):
        raise InvalidParameter("profile needs nx >= 2, x_extent > 0 and t > 0")
    sol = solve(spec, args.tol, ctl)
    target = target_for(spec)
    record = {
        **_spec_record(spec),
        "root": sol.root,
        "which": target.which,
        "target": target.value,
        "a": sol.a,
        "b": sol.b,
        "residual_of_transcendental": abs(trans_function(spec, ctl)(sol.root) - target.value),
        "metadata": _metadata(args, ctl),
    }
    if args.profile:
        rows = []
        for t in args.t_values:
            s_t = evaluate_s(sol, t)
            x = np.linspace(0.0, args.x_extent * s_t, args.nx)
            u, flag = sample_profile(sol, x, t)
            rows.extend((t, xi, ui, s_t, int(fi)) for xi, ui, fi in zip(x, u, flag))
        Path(args.profile).write_text(
            _csv_text(("t", "x", "u", "s_of_t", "in_domain"), rows), encoding="utf-8"
        )
        record["metadata"]["profile"] = {
            "path": str(args.profile), "t_values": args.t_values, "nx": args.nx, "x_extent": args.x_extent,
        }
    _emit(dumps(record), args.output)
    return EXIT_OK


def cmd_verify(args, ctl: SeriesControl) -> int:
    spec = _spec_from_args(args)
    _check_grid(args)
    sol = solve(spec, args.tol, ctl)
    rep = residual_report(sol, spec, x_frac=args.x_frac, t_final=args.t_final, dt=args.dt, t_values=args.t_values)
    conv = pde_convergence(sol, args.x_frac, args.t_final, dts=(4 * args.dt, 2 * args.dt, args.dt))
    checks = {
        "pde_relative": rep.pde_relative <= args.max_pde_rel,
        "stefan_relative": rep.stefan_relative <= args.max_stefan_rel,
        "boundary": rep.boundary_residual <= args.max_boundary,
        "front": rep.front_residual <= args.max_boundary,
    }
    record = {
        **_spec_record(spec),
        "root": sol.root,
        "residuals": {
            "pde": rep.pde_residual,
            "pde_relative": rep.pde_relative,
            "stefan": rep.stefan_residual,
            "stefan_relative": rep.stefan_relative,
            "boundary": rep.boundary_residual,
            "front": rep.front_residual,
        },
        "grid": rep.grid,
        "pde_convergence": {
            "dts": conv.dts, "grading": conv.grading, "relative": conv.relative, "orders": conv.orders,
        },
        "bounds": {
            "max_pde_rel": args.max_pde_rel,
            "max_stefan_rel": args.max_stefan_rel,
            "max_boundary": args.max_boundary,
        },
        "checks": checks,
        "passed": all(checks.values()),
        "metadata": _metadata(args, ctl),
    }
    _emit(dumps(record), args.output)
    return EXIT_OK if record["passed"] else EXIT_BOUND


def _equiv_record(name: str, source: ProblemSpec, mapped: ProblemSpec, ctl) -> dict:
    rep = verify_equivalence(source, mapped, ctl=ctl)
    printed = printed_parameter(name, source, ctl)
    return {
        "mapping": name,
        "source": _spec_record(source),
        "mapped": _spec_record(mapped),
        "mapped_parameter": rep.mapped_parameter,
        "printed_parameter": printed,
        "printed_differs": abs(printed - rep.mapped_parameter) > 1e-12 * max(1.0, abs(printed)),
        "source_root": rep.source_root,
        "target_root": rep.target_root,
        "root_difference": rep.root_difference,
        "max_u_difference": rep.max_u_difference,
        "grid": {"t_values": rep.t_values, "n_x": rep.n_x},
        "passed": rep.passed(),
    }


def cmd_equiv(args, ctl: SeriesControl) -> int:
    spec = _spec_from_args(args)
    wanted = args.mapping
    reports = []
    if spec.kind == "convective":
        if wanted in ("all", "dirichlet_from_convective"):
            reports.append(_equiv_record("dirichlet_from_convective", spec, dirichlet_from_convective(spec, ctl), ctl))
        if wanted in ("all", "flux_from_convective", "dirichlet_from_flux"):
            flux = flux_from_convective(spec, ctl)
            if wanted != "dirichlet_from_flux":
                reports.append(_equiv_record("flux_from_convective", spec, flux, ctl))
            if wanted in ("all", "dirichlet_from_flux"):
                reports.append(_equiv_record("dirichlet_from_flux", flux, dirichlet_from_flux(flux, ctl), ctl))
    elif spec.kind == "flux" and wanted in ("all", "dirichlet_from_flux"):
        reports.append(_equiv_record("dirichlet_from_flux", spec, dirichlet_from_flux(spec, ctl), ctl))
    else:
        raise InvalidParameter(f"mapping {wanted!r} does not apply to a {spec.kind} problem")

    record = {"reports": reports}
    if spec.kind == "convective" and wanted == "all":
        b_direct = reports[0]["mapped"]["bc"]["B"]
        b_composed = reports[2]["mapped"]["bc"]["B"]
        record["composition_closure"] = {
            "B_direct": b_direct, "B_composed": b_composed, "difference": abs(b_direct - b_composed),
        }
    record["passed"] = all(r["passed"] for r in reports)
    record["metadata"] = _metadata(args, ctl)
    _emit(dumps(record), args.output)
    return EXIT_OK


def cmd_limit(args, ctl: SeriesControl) -> int:
    spec = _spec_from_args(args)
    study = limit_study(spec, args.alphas)
    bc = spec.bc
    rows = [
        (a, r, study.classical_root, fe, fl)
        for a, r, fe, fl in zip(study.alphas, study.roots, study.front_errors, study.field_errors)
    ]
    _emit(_csv_text(("alpha", "eta_frac", "eta_classical", "front_error", "field_error_max"), rows), args.output)
    if args.summary:
        summary = {
            **_spec_record(spec),
            "alphas": study.alphas,
            "classical_root": study.classical_root,
            "classical_root_printed_equation": classical_root(
                bc.m, bc.h, spec.lam, spec.k, bc.D, spec.C, printed=True
            ),
            "x_points": study.x_points,
            "front_errors": study.front_errors,
            "field_errors": study.field_errors,
            "front_monotone": study.front_monotone,
            "field_monotone": study.field_monotone,
            "monotone_decrease": study.monotone,
            "metadata": _metadata(args, ctl),
        }
        Path(args.summary).write_text(dumps(summary), encoding="utf-8")
    return EXIT_OK


def cmd_sweep(args, ctl: SeriesControl) -> int:
    names = ["alpha", "lam", "k", "C", *BC_PARAMS[args.problem]]
    _bc_values(args)
    if args.tol <= 0.0:
        raise InvalidParameter("tol > 0 required")
    _check_grid(args)
    axes = [getattr(args, n) for n in names]
    header = [("lambda" if n == "lam" else n) for n in names] + [
        "status", "root", "a", "b", "stefan_relative", "boundary", "front", "pde_relative",
    ]
    rows = []
    for case in itertools.product(*axes):
        values = dict(zip(names, case))
        try:
            spec = ProblemSpec(values["alpha"], values["lam"], values["k"], values["C"],
                               _make_bc(args.problem, values))
            sol = solve(spec, args.tol, ctl)
            rep = residual_report(sol, spec, dt=args.dt)
            rows.append([*case, "ok", sol.root, sol.a, sol.b, rep.stefan_relative,
                         rep.boundary_residual, rep.front_residual, rep.pde_relative])
        except (InvalidParameter, ArithmeticError) as exc:
            rows.append([*case, f"error: {exc}", "", "", "", "", "", "", ""])
    _emit(_csv_text(header, rows), args.output)
    return EXIT_OK

# }}}


def build_parser() -> argparse.ArgumentParser:
    fmt_cls = argparse.ArgumentDefaultsHelpFormatter
    parser = argparse.ArgumentParser(
        prog="frac-stefan",
        description="Closed-form one-phase fractional Stefan problems: solve, verify, map, take alpha->1.",
        epilog=f"Environment: {SERIES_TOL_ENV} overrides the Wright-series tolerance (default 1e-14). "
        "Exit codes: 0 ok, 2 invalid parameters, 3 solver failure, 4 verification bound exceeded.",
        formatter_class=fmt_cls,
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="similarity root and (a, b) coefficients as JSON", formatter_class=fmt_cls)
    _add_problem_args(p)
    p.add_argument("--output", default="-", help="JSON path, '-' for stdout")
    p.add_argument("--profile", help="optional CSV of u over (t, x)")
    p.add_argument("--t-values", type=_floats, default=[0.25, 1.0, 4.0], help="profile times")
    p.add_argument("--nx", type=int, default=11, help="profile points per time")
    p.add_argument("--x-extent", type=float, default=1.25, help="profile spans [0, x_extent*s(t)]")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="PDE / Stefan / boundary residual report", formatter_class=fmt_cls)
    _add_problem_args(p)
    p.add_argument("--output", default="-", help="JSON path, '-' for stdout")
    p.add_argument("--x-frac", type=float, default=0.5, help="PDE probe at x = x_frac*s(t_final)")
    p.add_argument("--t-final", type=float, default=1.0, help="PDE probe time")
    p.add_argument("--dt", type=float, default=1e-3, help="uniform L1 step for the PDE residual")
    p.add_argument("--t-values", type=_floats, default=[0.1, 1.0, 10.0], help="times for Stefan/boundary checks")
    p.add_argument("--max-pde-rel", type=float, default=1e-3, help="bound on relative PDE residual")
    p.add_argument("--max-stefan-rel", type=float, default=1e-10, help="bound on relative Stefan residual")
    p.add_argument("--max-boundary", type=float, default=1e-10, help="bound on boundary and front defects")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("equiv", help="equivalence maps between the three problems", formatter_class=fmt_cls)
    _add_problem_args(p)
    p.add_argument("--mapping", default="all",
                   choices=["all", "dirichlet_from_convective", "flux_from_convective", "dirichlet_from_flux"])
    p.add_argument("--output", default="-", help="JSON path, '-' for stdout")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("limit", help="alpha -> 1 study against the classical solution", formatter_class=fmt_cls)
    _add_problem_args(p, problem_default="convective", alpha=False)
    p.add_argument("--alphas", type=_floats, default=[0.9, 0.99, 0.999], help="increasing orders in (0,1)")
    p.add_argument("--output", default="-", help="CSV path, '-' for stdout")
    p.add_argument("--summary", help="optional JSON summary path")
    p.set_defaults(func=cmd_limit)

    p = sub.add_parser("sweep", help="Cartesian parameter sweep to CSV", formatter_class=fmt_cls)
    _add_problem_args(p, lists=True)
    p.add_argument("--dt", type=float, default=1e-3, help="uniform L1 step for the PDE residual")
    p.add_argument("--output", default="-", help="CSV path, '-' for stdout")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "limit":
            # the ladder's last order stands in for alpha during validation
            args.alpha = args.alphas[-1] if args.alphas else None
        ctl = SeriesControl.from_env()
        return args.func(args, ctl)
    except (InvalidParameter, DomainError) as exc:
        print(f"frac-stefan: invalid parameters: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ArithmeticError as exc:
        print(f"frac-stefan: solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
