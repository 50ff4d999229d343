"""Batch front-end: graphs, weights, verification suites, reports.

Exit codes: 0 success, 1 a verification suite failed, 2 usage errors.
All reports are UTF-8 JSON, stable for a fixed configuration except
for the "timings" field.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import __version__
from .series import DEFAULT_CAP, TruncatedSeries
from .polyvector import PolyVectorField
from .graphs import AdmissibleGraph, enumerate_graphs, gamma0, opposite_wheel
from .weights import mc_weight, mc_weight_cached, wheel_weight_closed
from .formality import (MaurerCartanData, closed_form_map,
                        tilde_todd_series, todd_series, exp_half_series,
                        twisted_first_taylor)
from . import suites as suites_mod

DEFAULT_CACHE = "weights.jsonl"


def _load_config(path):
    if not path:
        return {}
    with open(path, "r", encoding="utf-8") as fh:
        cfg = json.load(fh)
    if not isinstance(cfg, dict):
        raise ValueError("config must be a JSON object")
    return cfg


def _emit(report, out_path):
    text = json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _base_report(kind, config):
    return {"schema": 1, "toolkit": __version__, "kind": kind,
            "config": config}


def _eta_operator_json(op):
    return {",".join(map(str, eta)) or "-": payload.to_json()
            for eta, payload in sorted(op.parts.items())}


def _standard_pair(d, s, cap):
    """omega_alpha = t_{alpha%d+1} t_{(alpha+1)%d+1} d/dt_alpha."""
    if s > d:
        raise ValueError("need s <= d for the standard twisting family")
    fields = []
    for alpha in range(1, s + 1):
        a = alpha % d + 1
        b = (alpha + 1) % d + 1
        coeff = (TruncatedSeries.variable(d, a, cap)
                 * TruncatedSeries.variable(d, b, cap))
        fields.append(PolyVectorField(d, 0, {(alpha,): coeff}))
    return MaurerCartanData(fields)


def _cmd_graphs(args, config):
    try:
        graphs = enumerate_graphs(args.n, args.m, args.epsilon)
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    report = _base_report("graphs", {"n": args.n, "m": args.m,
                                     "epsilon": args.epsilon})
    report["count"] = len(graphs)
    report["graphs"] = [g.to_json() for g in graphs]
    _emit(report, args.out)
    return 0


def _resolve_graph(args):
    picks = [args.wheel is not None, args.gamma0 is not None,
             bool(args.graph)]
    if sum(picks) != 1:
        raise ValueError("choose exactly one of --wheel, --gamma0, --graph")
    if args.wheel is not None:
        return opposite_wheel(args.wheel)
    if args.gamma0 is not None:
        return gamma0(args.gamma0)
    with open(args.graph, "r", encoding="utf-8") as fh:
        return AdmissibleGraph.from_json(json.load(fh))


def _warn_on_corrupt_cache(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            bad = 0
            for line in fh:
                if not line.strip():
                    continue
                try:
                    json.loads(line)
                except json.JSONDecodeError:
                    bad += 1
        if bad:
            print("warning: %d unreadable cache line(s) in %s ignored; "
                  "missing entries will be recomputed" % (bad, path),
                  file=sys.stderr)
    except OSError:
        pass


def _cmd_weights(args, config):
    if args.mode == "closed":
        table = {"W_%d" % l: str(wheel_weight_closed(l))
                 for l in range(1, args.order + 1)}
        report = _base_report("weights-closed", {"order": args.order})
        report["weights"] = table
        _emit(report, args.out)
        return 0
    try:
        graph = _resolve_graph(args)
    except (ValueError, OSError, KeyError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    samples = args.samples or int(config.get("samples", 200_000))
    seed = args.seed if args.seed is not None else int(config.get("seed", 0))
    workers = args.workers or int(config.get("workers", 1))
    started = time.time()
    if args.no_cache:
        est, cached = mc_weight(graph, samples, seed=seed,
                                workers=workers), False
    else:
        _warn_on_corrupt_cache(args.cache)
        est, cached = mc_weight_cached(graph, samples, seed=seed,
                                       workers=workers,
                                       cache_path=args.cache)
    report = _base_report("weights-mc", {
        "samples": samples, "seed": seed, "workers": workers,
        "graph": graph.to_json()})
    report["estimate"] = est.to_json()
    report["served_from_cache"] = cached
    report["timings"] = {"seconds": round(time.time() - started, 3)}
    _emit(report, args.out)
    return 0


def _cmd_formality(args, config):
    d = args.d or int(config.get("dimension", 3))
    s = args.s or int(config.get("eta_generators", 2))
    cap = args.cap or int(config.get("cap", DEFAULT_CAP))
    try:
        axes = tuple(int(a) for a in args.gamma.split(","))
        mc = _standard_pair(d, s, cap)
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    gamma = PolyVectorField.from_wedge(d, axes)
    started = time.time()
    lhs = twisted_first_taylor(mc, gamma)
    rhs = closed_form_map(mc, gamma)
    agree = lhs.agrees_with(rhs, cap - 3)
    report = _base_report("formality", {
        "dimension": d, "eta_generators": s, "cap": cap,
        "gamma": list(axes)})
    report["graph_side"] = _eta_operator_json(lhs)
    report["closed_side"] = _eta_operator_json(rhs)
    report["agree"] = agree
    report["timings"] = {"seconds": round(time.time() - started, 3)}
    _emit(report, args.out)
    return 0 if agree else 1


def _cmd_twist(args, config):
    report = _base_report("twist", {})
    result = suites_mod.suite_twisting()
    report["result"] = result
    _emit(report, args.out)
    return 0 if result["passed"] else 1


def _cmd_todd(args, config):
    order = args.order
    q = todd_series(order)
    qt = tilde_todd_series(order)
    prod = q * exp_half_series(order, sign=-1)
    report = _base_report("todd", {"order": order})
    report["todd"] = [str(c) for c in q.coeffs]
    report["modified_todd"] = [str(c) for c in qt.coeffs]
    ok = prod.truncate(order).coeffs == qt.truncate(order).coeffs
    report["modified_equals_todd_times_exp_minus_half"] = ok
    _emit(report, args.out)
    return 0 if ok else 1


def _cmd_verify(args, config):
    name = args.suite
    names = sorted(suites_mod.SUITES) if name == "all" else [name]
    if name != "all" and name not in suites_mod.SUITES:
        print("error: unknown suite %r; known: %s"
              % (name, ", ".join(sorted(suites_mod.SUITES) + ["all"])),
              file=sys.stderr)
        return 2
    seed = args.seed if args.seed is not None else int(config.get("seed",
                                                                  suites_mod.DEFAULT_SEED))
    results = []
    started = time.time()
    for suite_name in names:
        kwargs = {}
        if suite_name in ("gerstenhaber", "derivation"):
            kwargs["seed"] = seed
            if args.trials:
                kwargs["trials"] = args.trials
        if suite_name == "mc-weights":
            small = args.samples or int(config.get("samples", 100_000))
            kwargs.update(samples_small=small,
                          samples_mid=10 * small,
                          samples_big=100 * small,
                          seed=seed,
                          workers=args.workers or int(config.get("workers", 1)))
            if not args.no_cache:
                kwargs["cache_path"] = args.cache
        results.append(suites_mod.run_suite(suite_name, **kwargs))
    report = _base_report("verify", {"suites": names, "seed": seed})
    report["results"] = results
    report["passed"] = all(r["passed"] for r in results)
    report["timings"] = {"seconds": round(time.time() - started, 3)}
    _emit(report, args.out)
    return 0 if report["passed"] else 1


def build_parser():
    p = argparse.ArgumentParser(
        prog="formaldisk",
        description="graphs, weights and verification suites for the "
                    "formal-disk toolkit")
    p.add_argument("--config", help="JSON file with default run settings")
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("graphs", help="enumerate admissible graphs")
    g.add_argument("n", type=int)
    g.add_argument("m", type=int)
    g.add_argument("epsilon", type=int, nargs="?", default=0)

    w = sub.add_parser("weights", help="closed-form or Monte-Carlo weights")
    w.add_argument("mode", choices=["closed", "mc"])
    w.add_argument("order", type=int, nargs="?", default=4,
                   help="closed mode: highest wheel size")
    w.add_argument("--wheel", type=int, help="mc mode: wheel size k")
    w.add_argument("--gamma0", type=int,
                   help="mc mode: corolla with this many ground vertices")
    w.add_argument("--graph", help="mc mode: path to a graph JSON file")
    w.add_argument("--samples", type=int)
    w.add_argument("--seed", type=int)
    w.add_argument("--workers", type=int)
    w.add_argument("--cache", default=DEFAULT_CACHE)
    w.add_argument("--no-cache", action="store_true")

    f = sub.add_parser("formality",
                       help="twisted first Taylor coefficient, both routes")
    f.add_argument("--d", type=int)
    f.add_argument("--s", type=int)
    f.add_argument("--cap", type=int)
    f.add_argument("--gamma", default="1,2",
                   help="comma-separated axes of the wedge, e.g. 1,2,3")

    sub.add_parser("twist", help="run the Maurer-Cartan twisting suite")

    t = sub.add_parser("todd", help="Todd series table and identity")
    t.add_argument("--order", type=int, default=10)

    v = sub.add_parser("verify", help="run a named verification suite")
    v.add_argument("suite")
    v.add_argument("--trials", type=int)
    v.add_argument("--samples", type=int,
                   help="mc-weights: smallest sample count (scales 1/10/100)")
    v.add_argument("--seed", type=int)
    v.add_argument("--workers", type=int)
    v.add_argument("--cache", default=DEFAULT_CACHE)
    v.add_argument("--no-cache", action="store_true")
    return p


_HANDLERS = {
    "graphs": _cmd_graphs,
    "weights": _cmd_weights,
    "formality": _cmd_formality,
    "twist": _cmd_twist,
    "todd": _cmd_todd,
    "verify": _cmd_verify,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_config(args.config)
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print("error: cannot read config: %s" % exc, file=sys.stderr)
        return 2
    return _HANDLERS[args.command](args, config)


if __name__ == "__main__":
    sys.exit(main())
