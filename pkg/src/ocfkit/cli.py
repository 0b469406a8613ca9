"""Command-line interface: ``ocfkit <subcommand> [options]``.

Every JSON output echoes the run configuration; ``--deterministic`` drops the
timestamp so identical configurations give byte-identical output.
Exit codes: 0 success, 1 property violation found by ``verify``, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone
from fractions import Fraction

import numpy as np

from . import cayley, core, estimators, experiments, ocf, testers, verify
from .harness import run_trials


class UsageError(Exception):
    pass


def _common(p: argparse.ArgumentParser, *, eps: bool = False, trials: bool = False) -> None:
    src = p.add_mutually_exclusive_group()
    src.add_argument("--in", dest="infile", metavar="PATH", help="function file")
    src.add_argument("--gen", metavar="KIND:PARAMS", help="generator spec, e.g. allOnes:n=8")
    p.add_argument("--seed", type=int, default=0, help="64-bit seed (default 0)")
    p.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--deterministic", action="store_true", help="omit the timestamp")
    if eps:
        p.add_argument("--eps", type=float, default=0.125)
    if trials:
        p.add_argument("--trials", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ocfkit", description="Odd-cycle-freeness tools for Boolean functions on F_2^n.")
    sub = parser.add_subparsers(dest="command", required=True)

    _common(sub.add_parser("check", help="exact OCF predicate with certificate or witness"))
    _common(sub.add_parser("distance", help="exact distance to OCF and to linearity"))
    _common(sub.add_parser("spectrum", help="dump the integer Walsh-Hadamard spectrum"))
    _common(sub.add_parser("bipdist", help="exact bipartiteness distance of the Cayley graph (n <= 4)"))

    for name in ("estimate-distance", "estimate-minfourier", "estimate-linearity"):
        p = sub.add_parser(name, help="sampling estimator")
        _common(p, eps=True, trials=True)
        if name == "estimate-distance":
            p.add_argument("--method", choices=("partition", "induced"), default="partition")
            p.add_argument("--k", type=int, help="sample size t for --method induced")

    p = sub.add_parser("test", help="run a one-sided tester")
    p.add_argument("kind", choices=("edge", "subspace"))
    _common(p, eps=True, trials=True)
    p.add_argument("--k", type=int, help="override the schedule's sample count")
    p.add_argument("--schedule", choices=("practical", "paper"), default="practical")
    p.add_argument("--budget", type=int, default=testers.DEFAULT_QUERY_BUDGET)

    p = sub.add_parser("experiment", help="concentration experiments and power curves")
    p.add_argument("kind", choices=("coeffdev", "momentdev", "power"))
    _common(p, trials=True)
    p.add_argument("--k", type=int, default=10)
    p.add_argument("--eta", type=float, default=0.1)
    p.add_argument("--alpha", type=lambda s: int(s, 0), help="coefficient index (default: argmin)")
    p.add_argument("--eps-list", default="0.25,0.125")
    p.add_argument("--test", choices=("edge", "subspace"), default="edge")

    p = sub.add_parser("gen", help="write a generated function file")
    _common(p)
    p.add_argument("--sparse", action="store_true")

    p = sub.add_parser("verify", help="run the oracle-equivalence suite")
    _common(p)
    p.add_argument("--n-max", type=int, default=4)
    p.add_argument("--samples", type=int, default=200)
    return parser


def _config(args) -> dict:
    cfg = {k: v for k, v in vars(args).items() if k not in ("out", "deterministic", "jobs")}
    return dict(sorted(cfg.items()))


def _load_function(args) -> core.BooleanFunction:
    if args.infile:
        return core.load(args.infile)
    if args.gen:
        kind, n, params = core.parse_gen_spec(args.gen)
        return core.generate(kind, n, args.seed, **params)
    raise UsageError("one of --in or --gen is required")


def _frac(x: Fraction) -> dict:
    return {"exact": str(x), "value": float(x)}


def _emit(args, payload, csv_rows=None) -> None:
    if args.format == "csv":
        if csv_rows is None:
            raise UsageError(f"--format csv is not available for '{args.command}'")
        text = experiments.rows_to_csv(csv_rows) if csv_rows else ""
    else:
        doc = {"config": _config(args), "result": payload}
        if not args.deterministic:
            doc["timestamp"] = datetime.now(timezone.utc).isoformat()
        text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# Subcommands


def cmd_check(args):
    f = _load_function(args)
    spec = core.wht(f)
    is_ocf, alpha = ocf.is_ocf_spectral(f, spec)
    out = {"n": f.n, "support_size": f.support_size, "ocf": is_ocf}
    if is_ocf:
        out["certificate_alpha"] = core.to_binary(alpha, f.n)
    elif f.n <= ocf.WITNESS_MAX_DIM:
        w = ocf.shortest_odd_witness(f)
        out["witness"] = w.to_dict()
    _emit(args, out)
    return 0


def cmd_distance(args):
    f = _load_function(args)
    spec = core.wht(f)
    out = {
        "n": f.n,
        "density": _frac(spec.density),
        "min_fourier": _frac(spec.min_coefficient()),
        "argmin_alpha": core.to_binary(spec.argmin(), f.n),
        "ocf_distance": _frac(ocf.exact_distance(f, spec)),
        "linearity_distance": _frac(ocf.linearity_distance(f, spec)),
    }
    _emit(args, out)
    return 0


def cmd_spectrum(args):
    f = _load_function(args)
    spec = core.wht(f)
    rows = [{"alpha": core.to_binary(a, f.n), "w": int(v)} for a, v in enumerate(spec.w)]
    _emit(args, {"n": f.n, "support_size": spec.support_size, "w": spec.w.tolist()}, rows)
    return 0


def cmd_bipdist(args):
    f = _load_function(args)
    dist, part = cayley.best_bipartition(f)
    _emit(args, {"n": f.n, "bipartiteness_distance": _frac(dist),
                 "ocf_distance": _frac(ocf.exact_distance(f)),
                 "side": part.side.tolist()})
    return 0


def _estimate_one(f, name, eps, method, t, seed):
    if name == "estimate-distance":
        return estimators.estimate_ocf_distance(f, eps, seed, t=t, method=method).to_dict()
    if name == "estimate-minfourier":
        return estimators.estimate_min_fourier(f, eps, seed).to_dict()
    return estimators.estimate_linearity_distance(f, eps, seed).to_dict()


def cmd_estimate(args):
    f = _load_function(args)
    from functools import partial
    fn = partial(_estimate_one, f, args.command, args.eps,
                 getattr(args, "method", None), getattr(args, "k", None))
    if args.trials == 1:
        results = [fn(args.seed)]
    else:
        results = run_trials(fn, args.seed, args.trials, args.jobs)
    values = [r["value"] for r in results]
    out = {"estimates": results, "mean": float(np.mean(values))}
    _emit(args, out, [{"trial": i, "value": r["value"], "queries": r["queries"], "seed": r["seed"]}
                      for i, r in enumerate(results)])
    return 0


def _test_one(f, kind, eps, k, schedule, budget, seed):
    if kind == "edge":
        return testers.edge_sampling_test(f, eps, seed, k=k).to_dict()
    return testers.subspace_restriction_test(f, eps, seed, schedule=schedule, k=k, budget=budget).to_dict()


def cmd_test(args):
    f = _load_function(args)
    from functools import partial
    fn = partial(_test_one, f, args.kind, args.eps, args.k, args.schedule, args.budget)
    if args.trials == 1:
        reports = [fn(args.seed)]
    else:
        reports = run_trials(fn, args.seed, args.trials, args.jobs)
    rejects = [r for r in reports if r["verdict"] == "reject"]
    out = {
        "trials": len(reports),
        "rejects": len(rejects),
        "reject_rate": len(rejects) / len(reports),
        "mean_queries": float(np.mean([r["queries"] for r in reports])),
        "max_queries": max(r["queries"] for r in reports),
        "schedule": reports[0]["schedule"],
        "first_reject": rejects[0] if rejects else None,
    }
    if args.trials == 1:
        out["report"] = reports[0]
    _emit(args, out, [{"trial": i, "verdict": r["verdict"], "queries": r["queries"], "seed": r["seed"]}
                      for i, r in enumerate(reports)])
    return 0


def cmd_experiment(args):
    if args.kind == "power":
        if not args.gen:
            raise UsageError("experiment power needs --gen")
        eps_list = [float(x) for x in args.eps_list.split(",") if x]
        rows = experiments.power_curve(args.gen, eps_list, args.trials, args.test, args.seed,
                                       jobs=args.jobs)
        _emit(args, {"rows": rows}, rows)
        return 0
    f = _load_function(args)
    if args.kind == "coeffdev":
        alpha = args.alpha if args.alpha is not None else core.wht(f).argmin()
        rep = experiments.coeff_deviation_experiment(f, alpha, args.k, args.eta, args.trials,
                                                     args.seed, jobs=args.jobs)
    else:
        rep = experiments.moment_deviation_experiment(f, args.k, args.eta, args.trials,
                                                      args.seed, jobs=args.jobs)
    d = rep.to_dict()
    _emit(args, d, [{k: v for k, v in d.items() if k != "extra"}])
    return 0


def cmd_gen(args):
    f = _load_function(args)
    text = core.serialize_sparse(f) if args.sparse else core.serialize(f)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_verify(args):
    results = verify.full_suite(args.n_max, args.samples, args.seed)
    ok = all(r.ok for r in results)
    _emit(args, {"ok": ok, "sweeps": [r.to_dict() for r in results]},
          [{"name": r.name, "checked": r.checked, "violations": len(r.violations)} for r in results])
    return 0 if ok else 1


COMMANDS = {
    "check": cmd_check,
    "distance": cmd_distance,
    "spectrum": cmd_spectrum,
    "bipdist": cmd_bipdist,
    "estimate-distance": cmd_estimate,
    "estimate-minfourier": cmd_estimate,
    "estimate-linearity": cmd_estimate,
    "test": cmd_test,
    "experiment": cmd_experiment,
    "gen": cmd_gen,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ValueError, OSError) as exc:
        print(f"ocfkit {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
