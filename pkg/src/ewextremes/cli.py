"""Command-line surface: eval, check, scenario, majorize, conditions.

Exit codes: 0 ok / order holds, 2 usage error, 3 order fails with witness,
4 inconclusive.  Set EOC_GRID_POINTS to override the default grid size.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import archimedean as arch
from . import majorization as maj
from . import stochastic_orders as so
from .errors import ContractError, ConvergenceError, DomainError
from .ew_marginal import EwParams
from .extremes import CoupledSystem, Coupling, Statistic, dist_handle, marginal_handle
from .grids import GridSpec
from .scenarios import builtin_scenarios, run_all, run_scenario, scenario_curves, _write_curve_csv
from .verdicts import Status

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_FAILS = 3
EXIT_INCONCLUSIVE = 4

_FMT = ".12g"


def _fmt(v: float) -> str:
    return format(float(v), _FMT)


def load_system(path: str) -> CoupledSystem:
    """Read a system spec: {marginals:[{alpha,lambda,k}], generator:{family,theta}, coupling}."""
    with open(path) as fh:
        raw = json.load(fh)
    margs = tuple(
        EwParams(float(m["alpha"]), float(m["lambda"]), float(m["k"])) for m in raw["marginals"]
    )
    gspec = raw["generator"]
    fam = gspec["family"]
    if fam == "independence":
        gen = arch.independence()
    elif fam == "gumbel_variant":
        gen = arch.gumbel_variant(float(gspec["theta"]))
    elif fam == "exp_reciprocal":
        gen = arch.exp_reciprocal(float(gspec["theta"]))
    else:
        raise DomainError(f"unknown generator family {fam!r}")
    coupling = Coupling.COPULA if raw["coupling"] == "copula" else Coupling.SURVIVAL_COPULA
    if raw["coupling"] not in ("copula", "survival"):
        raise DomainError(f"unknown coupling {raw['coupling']!r}")
    return CoupledSystem(margs, gen, coupling)


def _grid_from_args(args) -> GridSpec:
    kwargs = {}
    if getattr(args, "points", None):
        kwargs["points"] = args.points
    if getattr(args, "lo_q", None) is not None:
        kwargs["lo_quantile"] = args.lo_q
    if getattr(args, "hi_q", None) is not None:
        kwargs["hi_quantile"] = args.hi_q
    return GridSpec(**kwargs)


def _add_grid_flags(p: argparse.ArgumentParser):
    p.add_argument("--points", type=int, default=0, help="grid points (default 2048)")
    p.add_argument("--lo-q", type=float, default=None, help="lower quantile of the grid")
    p.add_argument("--hi-q", type=float, default=None, help="upper quantile of the grid")


def cmd_eval(args) -> int:
    which = Statistic.MAX if args.max else Statistic.MIN
    if args.system:
        system = load_system(args.system)
        handle = dist_handle(system, which)
    else:
        if args.alpha is None or args.lam is None or args.k is None:
            print("eval: need --system or all of --alpha/--lambda/--k", file=sys.stderr)
            return EXIT_USAGE
        handle = marginal_handle(EwParams(args.alpha, args.lam, args.k))
    wanted = [nm for nm in ("cdf", "sf", "pdf", "hazard", "quantile") if getattr(args, nm)]
    if not wanted:
        wanted = ["cdf"]
    values = {}
    for nm in wanted:
        if nm == "quantile":
            if args.u is None:
                print("eval: --quantile needs --u", file=sys.stderr)
                return EXIT_USAGE
            values[nm] = float(handle.quantile(args.u))
        else:
            if args.x is None:
                print(f"eval: --{nm} needs --x", file=sys.stderr)
                return EXIT_USAGE
            if nm == "hazard":
                values[nm] = float(handle.hazard_values(np.asarray([args.x]))[0])
            else:
                values[nm] = float(getattr(handle, nm)(args.x))
    if args.json:
        print(json.dumps({k: v for k, v in values.items()}))
    else:
        for nm in wanted:
            print(f"{nm} = {_fmt(values[nm])}")
    return EXIT_OK


def _verdict_exit(status: Status) -> int:
    if status is Status.HOLDS:
        return EXIT_OK
    if status is Status.FAILS_AT:
        return EXIT_FAILS
    return EXIT_INCONCLUSIVE


def cmd_check(args) -> int:
    which = Statistic.MAX if args.max else Statistic.MIN
    sys_a = load_system(args.systems[0])
    sys_b = load_system(args.systems[1])
    ha = dist_handle(sys_a, which, label="A")
    hb = dist_handle(sys_b, which, label="B")
    checker = {
        "st": so.check_usual_st,
        "hr": so.check_hazard_rate,
        "rh": so.check_reversed_hazard,
        "disp": so.check_dispersive,
        "star": so.check_star,
        "lorenz": so.check_lorenz,
    }[args.order]
    verdict = checker(ha, hb, _grid_from_args(args))
    payload = verdict.to_dict()
    payload["order"] = args.order
    payload["direction"] = "A <= B"
    if args.json:
        print(json.dumps(payload))
    else:
        print(f"A <=_{args.order} B: {verdict.status.value}")
        if verdict.witness_x is not None:
            print(f"witness x = {_fmt(verdict.witness_x)}  gap = {_fmt(verdict.gap)}")
        if verdict.crossing_x is not None:
            print(f"crossing x = {_fmt(verdict.crossing_x)}")
    return _verdict_exit(verdict.status)


def cmd_scenario(args) -> int:
    grid = _grid_from_args(args)
    if args.all:
        report = run_all(report_path=args.out, grid=grid, csv_dir=args.csv_dir)
        for block in report["scenarios"]:
            status = block["verdict"]["status"]
            print(
                f"{block['name']}: expected={block['expected']} verdict={status} "
                f"consistent={block['consistent']} match={block['expected_match']}"
            )
        print(f"all consistent: {report['all_consistent']}")
        return EXIT_OK if report["all_consistent"] else EXIT_FAILS
    byname = {s.name: s for s in builtin_scenarios()}
    if args.name not in byname:
        print(f"unknown scenario {args.name!r}; valid: {', '.join(sorted(byname))}", file=sys.stderr)
        return EXIT_USAGE
    s = byname[args.name]
    check = run_scenario(s, grid)
    if args.csv:
        x, fx, fy = scenario_curves(s, grid)
        _write_curve_csv(args.csv, x, {"F_X": fx, "F_Y": fy})
    payload = check.to_dict()
    payload["name"] = s.name
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    print(json.dumps(payload))
    return EXIT_OK if check.consistent else EXIT_FAILS


def _parse_vector(raw: str) -> list[float]:
    try:
        return [float(tok) for tok in raw.split(",") if tok != ""]
    except ValueError:
        raise DomainError(f"bad vector {raw!r}")


def cmd_majorize(args) -> int:
    c = _parse_vector(args.c)
    d = _parse_vector(args.d)
    fn = {"m": maj.majorizes, "subw": maj.weak_submajorizes, "supw": maj.weak_supermajorizes}[
        args.rel
    ]
    asc = fn(d, c, convention="ascending")
    desc = fn(d, c, convention="descending")
    if args.json:
        print(json.dumps({"relation": args.rel, "ascending": asc, "descending": desc}))
    else:
        print(f"c {args.rel}-ordered below d [ascending-definition]: {asc}")
        print(f"c {args.rel}-ordered below d [descending-convention]: {desc}")
    return EXIT_OK


def _gen_from_flags(family: str, theta: float | None):
    if family == "independence":
        return arch.independence()
    if theta is None:
        raise DomainError(f"--theta required for family {family}")
    if family == "gumbel_variant":
        return arch.gumbel_variant(theta)
    if family == "exp_reciprocal":
        return arch.exp_reciprocal(theta)
    raise DomainError(f"unknown family {family!r}")


def cmd_conditions(args) -> int:
    g1 = _gen_from_flags(args.family, args.theta)
    if args.check == "superadd":
        g2 = _gen_from_flags(args.family2 or args.family, args.theta2)
        verdict = arch.check_superadditive(g1, g2)
    elif args.check == "log-concave":
        verdict = arch.check_log_concave_psi(g1)
    elif args.check == "phi":
        verdict = arch.check_phi_condition(g1, args.c, args.alpha)
    elif args.check == "psi-ratio":
        verdict = arch.check_psi_ratio(g1)
    elif args.check == "star-max":
        verdict = arch.check_star_condition_max(g1, args.alpha)
    else:
        verdict = arch.check_star_condition_min(g1, args.alpha)
    payload = verdict.to_dict()
    payload["check"] = args.check
    print(json.dumps(payload))
    return _verdict_exit(verdict.status)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ewextremes", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate cdf/sf/pdf/hazard/quantile")
    p.add_argument("--alpha", type=float)
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--k", type=float)
    p.add_argument("--system", help="system spec JSON file")
    p.add_argument("--max", action="store_true", help="use the maximum of the system")
    p.add_argument("--min", action="store_true", help="use the minimum of the system")
    for nm in ("cdf", "sf", "pdf", "hazard", "quantile"):
        p.add_argument(f"--{nm}", action="store_true")
    p.add_argument("--x", type=float)
    p.add_argument("--u", type=float)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("check", help="check a stochastic order between two systems")
    p.add_argument("systems", nargs=2, metavar="SYSTEM_JSON")
    p.add_argument("--order", required=True, choices=["st", "hr", "rh", "disp", "star", "lorenz"])
    p.add_argument("--max", action="store_true")
    p.add_argument("--min", action="store_true")
    _add_grid_flags(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("scenario", help="run builtin scenarios")
    p.add_argument("name", nargs="?", help="scenario name")
    p.add_argument("--all", action="store_true")
    p.add_argument("--out", help="write JSON report here")
    p.add_argument("--csv", help="write x,F_X,F_Y curves CSV (single scenario)")
    p.add_argument("--csv-dir", help="write per-scenario curve CSVs here (--all)")
    _add_grid_flags(p)
    p.set_defaults(func=cmd_scenario)

    p = sub.add_parser("majorize", help="vector preorder verdicts (both conventions)")
    p.add_argument("--c", required=True, help="comma-separated vector")
    p.add_argument("--d", required=True, help="comma-separated vector")
    p.add_argument("--rel", required=True, choices=["m", "subw", "supw"])
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_majorize)

    p = sub.add_parser("conditions", help="generator side-condition checkers")
    p.add_argument(
        "--check",
        required=True,
        choices=["superadd", "log-concave", "phi", "psi-ratio", "star-max", "star-min"],
    )
    p.add_argument("--family", required=True,
                   choices=["independence", "gumbel_variant", "exp_reciprocal"])
    p.add_argument("--theta", type=float)
    p.add_argument("--family2",
                   choices=["independence", "gumbel_variant", "exp_reciprocal"])
    p.add_argument("--theta2", type=float)
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--alpha", type=float, default=1.0)
    p.set_defaults(func=cmd_conditions)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors already
        return int(exc.code) if exc.code else EXIT_OK
    if getattr(args, "max", False) and getattr(args, "min", False):
        print("choose one of --max/--min", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (DomainError, ContractError, FileNotFoundError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE


if __name__ == "__main__":
    sys.exit(main())
