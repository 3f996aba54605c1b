"""Command line entry point: ``qzrp <command> ...``.

Exit status: 0 pass, 1 an identity failed, 2 the state-space budget was
exceeded, 3 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import platform
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import __version__
from . import macdonald as mac
from . import multiline as ml
from . import observables as obs
from . import suites
from . import tabchain as tc
from . import tableaux as tb
from . import zrp
from .budget import BudgetExceeded, current_budget
from .shapes import Partition, compress

EXIT_PASS, EXIT_FAIL, EXIT_BUDGET, EXIT_USAGE = 0, 1, 2, 3

log = logging.getLogger("qzrp")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- argument helpers --------------------------------------------------------------

def _shape(text: str) -> Partition:
    try:
        return Partition.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an exact number: {text!r}") from None


def _fraction_list(text: str) -> list:
    return [_fraction(v) for v in text.split(",") if v]


def _parse_at(tokens, n: int) -> zrp.ZrpParams | None:
    """``x=2,3,5 t=1/3`` -> exact parameters."""
    if not tokens:
        return None
    fields = {}
    for tok in tokens:
        for part in tok.split():
            if "=" not in part:
                raise UsageError(f"expected key=value, got {part!r}")
            key, val = part.split("=", 1)
            fields[key.strip()] = val.strip()
    try:
        x = _fraction_list(fields["x"]) if "x" in fields else suites.default_point(n).x
        t = _fraction(fields.get("t", "1/3"))
    except argparse.ArgumentTypeError as exc:
        raise UsageError(str(exc)) from None
    if len(x) != n:
        raise UsageError(f"--at gives {len(x)} site parameters but n={n}")
    try:
        return zrp.ZrpParams.exact(x, t)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _params_json(p: zrp.ZrpParams | None):
    if p is None:
        return None
    return {"x": [str(v) for v in p.x], "t": str(p.t)}


# -- commands -------------------------------------------------------------------------

def cmd_enumerate(args) -> tuple:
    if args.what == "configs":
        items = [str(w) for w in zrp.enumerate_configs(args.shape, args.n)]
    else:
        from .budget import check_budget
        check_budget(args.n ** args.shape.size, args.budget, f"Tab({args.shape},{args.n})")
        items = [s.to_text().replace("\n", " / ") for s in tb.enumerate_fillings(args.shape, args.n)]
    return {"count": len(items), "items": items}, True


def cmd_macdonald(args) -> tuple:
    form = {"tableaux": lambda: mac.htilde_q1_tableaux(args.shape, args.n, args.budget),
            "factorized": lambda: mac.htilde_q1_factorized(args.shape, args.n),
            "monomial": lambda: mac.htilde_q1_monomial(args.shape, args.n)}[args.form]()
    out = form.to_json_obj()
    out["pretty"] = form.poly.pretty()
    return out, True


def cmd_weights(args) -> tuple:
    weights = zrp.tazrp_weights(args.shape, args.n, args.budget)
    return {"shape": list(args.shape.parts), "n": args.n,
            "weights": {str(w): p.to_json_obj() for w, p in weights.items()}}, True


def _run_one(job):
    name, shape, n, budget, at = job
    return suites.run_suite(name, Partition(shape), n, budget, at)


def cmd_verify(args) -> tuple:
    at = _parse_at(args.at, args.n)
    names = list(suites.SUITES) if args.suite == "all" else [args.suite]
    jobs = [(name, args.shape.parts, args.n, args.budget, at) for name in names]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_run_one, jobs))
    else:
        results = [_run_one(j) for j in jobs]
    checks = [c for r in results for c in r]
    ok = all(c["passed"] for c in checks)
    for c in checks:
        log.info("%-10s %-55s %s (%d)", c["suite"], c["name"], "pass" if c["passed"] else "FAIL",
                 c["count"])
    return {"suite": args.suite, "shape": list(args.shape.parts), "n": args.n,
            "at": _params_json(at), "passed": ok, "checks": checks}, ok


def _species_map(shape: Partition) -> dict:
    return dict(zip(shape.parts, compress(shape).parts))


def cmd_simulate(args) -> tuple:
    try:
        x = [float(v) for v in args.x.split(",")]
        t = float(Fraction(args.t))
        params = zrp.ZrpParams(tuple(x), t)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if len(x) != args.n:
        raise UsageError(f"--x gives {len(x)} values but n={args.n}")
    horizon = args.horizon
    if horizon is None:
        exact = zrp.ZrpParams.exact([Fraction(v) for v in args.x.split(",")], Fraction(args.t))
        horizon = float(Fraction(args.events) / zrp.expected_event_rate(args.shape, args.n, exact))
    traj = zrp.simulate(args.shape, args.n, params, args.seed, horizon,
                        record_events=args.trajectory)
    lc = compress(args.shape)
    relabel = _species_map(args.shape)
    rows = []
    ok = True
    for si, sp in enumerate(traj.species):
        for i in range(args.n):
            if args.report == "density":
                est, se = traj.density()[i, si], traj.density_se()[i, si]
                pred = obs.density_formula(lc, args.n, relabel[sp], i + 1).evaluate(
                    Fraction(args.t), [Fraction(v) for v in args.x.split(",")])
            else:
                est, se = traj.current()[i, si], traj.current_se()[i, si]
                pred = obs.current_formula(lc, args.n, relabel[sp]).evaluate(
                    Fraction(args.t), [Fraction(v) for v in args.x.split(",")])
            z = (est - float(pred)) / se if se > 0 else 0.0
            ok = ok and bool(abs(z) <= 4)
            rows.append({"species": sp, "site": i + 1, "estimate": float(est), "se": float(se),
                         "exact": float(pred), "z": float(z)})
    out = {"report": args.report, "horizon": horizon, "events": traj.n_events,
           "seed": args.seed, "tolerance_se": 4, "within_tolerance": ok, "rows": rows}
    if args.trajectory:
        out["trajectory_csv"] = traj.to_csv()
    return out, ok


def cmd_conjecture(args) -> tuple:
    if args.which == "compressed":
        ev = mac.check_conjecture_compressed(args.shape, args.n, args.trials, args.seed, args.budget)
        evidence = [ev]
    else:
        if args.sigma:
            sigma = tb.Filling.from_text(args.sigma.replace("/", "\n"), args.n)
            evidence = [mac.check_conjecture_refined(args.shape, args.n, sigma)]
        elif args.all_sigma:
            evidence = mac.refined_all(args.shape, args.n, stop_on_failure=False)
        else:
            raise UsageError("refined needs --sigma or --all-sigma")
    ok = all(e.holds for e in evidence)
    return {"which": args.which, "evidence": [e.to_json_obj() for e in evidence],
            "all_hold": ok}, ok


def cmd_multiline(args) -> tuple:
    sigma = tb.Filling.from_text(args.filling.replace("/", "\n"), args.n)
    m = ml.to_multiline(sigma)
    out = {"diagram": m.to_text().splitlines()}
    if m.is_strict():
        out.update(refusals=ml.refusals_by_row(m), weight=ml.multiline_weight(m).pretty(),
                   tableau_weight=tb.weight(sigma).pretty())
        ok = ml.multiline_weight(m) == tb.weight(sigma)
    else:
        out.update(fiber_weight=ml.fiber_weight(m).pretty())
        ok = True
    return out, ok


def cmd_export(args) -> tuple:
    if args.kind == "generator":
        lines = [tr.to_json() for tr in tc.build_generator(args.shape, args.n, args.budget)]
        return {"format": "jsonl", "text": "\n".join(lines) + "\n", "count": len(lines)}, True
    params = _parse_at(args.at, args.n) or suites.default_point(args.n)
    pi = zrp.stationary_exact(args.shape, args.n, params, args.budget)
    text = "config,probability\n" + "".join(f"{w},{p}\n" for w, p in pi.items())
    return {"format": "csv", "text": text, "count": len(pi), "at": _params_json(params)}, True


def cmd_observables(args) -> tuple:
    lc = compress(args.shape)
    relabel = _species_map(args.shape)
    if args.species not in relabel:
        raise UsageError(f"species {args.species} is not a part of {args.shape}")
    if args.kind == "density":
        if not 1 <= args.site <= args.n:
            raise UsageError(f"site must lie in 1..{args.n}")
        r = obs.density_formula(lc, args.n, relabel[args.species], args.site)
    else:
        r = obs.current_formula(lc, args.n, relabel[args.species])
    at = _parse_at(args.at, args.n)
    out = {"kind": args.kind, "species": args.species, "site": args.site}
    if at is not None:
        out["value"] = str(r.evaluate(at.t, at.x))
        out["at"] = _params_json(at)
    else:
        out.update(r.to_json_obj())
    return out, True


COMMANDS = {
    "enumerate": cmd_enumerate, "macdonald": cmd_macdonald, "weights": cmd_weights,
    "verify": cmd_verify, "simulate": cmd_simulate, "conjecture": cmd_conjecture,
    "multiline": cmd_multiline, "export": cmd_export, "observables": cmd_observables,
}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qzrp", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"qzrp {__version__}")
    common = _Parser(add_help=False)
    common.add_argument("--shape", type=_shape, required=True, help="e.g. 3,1,1")
    common.add_argument("--n", type=int, required=True, help="number of sites")
    common.add_argument("--budget", type=int, default=None,
                        help="state-count guard (default: QZRP_BUDGET or 200000)")
    common.add_argument("--out", type=Path, default=None, help="directory for outputs")
    common.add_argument("-q", "--quiet", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("enumerate", parents=[common], help="list tableaux or configurations")
    s.add_argument("--what", choices=["tableaux", "configs"], default="configs")

    s = sub.add_parser("macdonald", parents=[common], help="H~ at q=1")
    s.add_argument("--form", choices=["tableaux", "factorized", "monomial"], default="factorized")

    sub.add_parser("weights", parents=[common], help="stationary weights of every configuration")

    s = sub.add_parser("verify", parents=[common], help="run an identity suite")
    s.add_argument("--suite", choices=[*suites.SUITES, "all"], default="all")
    s.add_argument("--at", nargs="+", default=None, help="x=2,3,5 t=1/3")
    s.add_argument("--jobs", type=int, default=1)

    s = sub.add_parser("simulate", parents=[common], help="Gillespie simulation of the ZRP")
    s.add_argument("--x", required=True, help="site parameters, e.g. 2,3,5")
    s.add_argument("--t", default="0")
    s.add_argument("--seed", type=int, default=0)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--horizon", type=float, default=None)
    g.add_argument("--events", type=int, default=100_000, help="expected number of jumps")
    s.add_argument("--report", choices=["density", "current"], default="density")
    s.add_argument("--trajectory", action="store_true", help="also emit the event CSV")

    s = sub.add_parser("conjecture", parents=[common], help="gather conjecture evidence")
    s.add_argument("which", choices=["compressed", "refined"])
    s.add_argument("--trials", type=int, default=8)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--sigma", default=None, help="filling rows top to bottom, '/'-separated")
    s.add_argument("--all-sigma", action="store_true")

    s = sub.add_parser("multiline", parents=[common], help="multiline diagram of a filling")
    s.add_argument("--filling", required=True, help="rows top to bottom, '/'-separated")

    s = sub.add_parser("export", parents=[common], help="export the generator or stationary law")
    s.add_argument("kind", choices=["generator", "stationary"])
    s.add_argument("--at", nargs="+", default=None)

    s = sub.add_parser("observables", parents=[common], help="density or current formulas")
    s.add_argument("kind", choices=["density", "current"])
    s.add_argument("--species", type=int, required=True)
    s.add_argument("--site", type=int, default=1)
    s.add_argument("--at", nargs="+", default=None)
    return p


def _manifest(args, argv, outcome: dict) -> dict:
    import numpy
    import scipy

    return {
        "command": args.command,
        "argv": list(argv),
        "shape": list(args.shape.parts),
        "n": args.n,
        "at": getattr(args, "at", None),
        "seed": getattr(args, "seed", None),
        "budget": current_budget(args.budget),
        "versions": {"qzrp": __version__, "python": platform.python_version(),
                     "numpy": numpy.__version__, "scipy": scipy.__version__},
        "outcome": outcome,
    }


def _write_outputs(args, result: dict, manifest: dict) -> None:
    text = result.pop("text", None)
    csv = result.pop("trajectory_csv", None)
    body = json.dumps(result, sort_keys=True, indent=1)
    if args.out is None:
        sys.stdout.write(text if text is not None else body + "\n")
        sys.stderr.write(json.dumps({"manifest": manifest}, sort_keys=True) + "\n")
        return
    args.out.mkdir(parents=True, exist_ok=True)
    (args.out / f"{args.command}.json").write_text(body + "\n")
    if text is not None:
        ext = "jsonl" if result.get("format") == "jsonl" else "csv"
        (args.out / f"{args.command}.{ext}").write_text(text)
    if csv is not None:
        (args.out / "trajectory.csv").write_text(csv)
    (args.out / "manifest.json").write_text(json.dumps(manifest, sort_keys=True, indent=1) + "\n")


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO,
                        format="%(message)s", stream=sys.stderr)
    if args.n < 1:
        parser.error("--n must be positive")
    try:
        result, ok = COMMANDS[args.command](args)
        status = EXIT_PASS if ok else EXIT_FAIL
        outcome = {"status": status, "passed": ok}
    except UsageError as exc:
        print(f"qzrp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"qzrp: {exc}", file=sys.stderr)
        result, status = {"error": str(exc), "required": exc.required}, EXIT_BUDGET
        outcome = {"status": status, "required_budget": exc.required}
    except ValueError as exc:
        print(f"qzrp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _write_outputs(args, result, _manifest(args, argv, outcome))
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
