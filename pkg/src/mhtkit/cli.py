"""Command line front end.

Subcommands: bump-verify, transform, gowers, vn-check, tree-stats, curve,
norm-search. Every run embeds its resolved configuration and seed in the
emitted JSON/CSV so outputs are self-describing, and reruns with the same
arguments are byte-identical (no timestamps, sorted keys, repr floats).

Exit codes: 0 all asserted contracts passed, 1 a contract was violated (the
violating instance is dumped as JSON to stderr), 2 configuration or usage
error. A YAML config file (--config) may hold a stream of documents, each a
mapping of long option names to values; documents run in sequence.
"""

import argparse
import json
import math
import sys

import numpy as np
import yaml

from . import backend, bumps as bumps_mod, dyadic, extremal, gowers, mht
from .signals import CyclicSignal, HolderExponents, IndicatorSet, Signal

TOLERANCES = {
    "duality": 1e-10,
    "gowers_agree": 1e-9,
    "vn": 1e-9,
    "curve_normalized": 1e-9,
    "reverify": 1e-9,
    "trace_monotone": 1e-12,
}


class ContractViolation(Exception):
    def __init__(self, message, instance):
        super().__init__(message)
        self.instance = instance


def _signal_json(sig):
    return {"offset": sig.offset,
            "re": [float(v) for v in sig.values.real],
            "im": [float(v) for v in sig.values.imag]}


def _emit(payload, out, fmt, csv_rows=None, csv_header=None):
    if fmt == "csv":
        lines = ["# config: " + json.dumps(payload["config"], sort_keys=True)]
        lines.append(",".join(csv_header))
        for row in csv_rows:
            lines.append(",".join(repr(c) if isinstance(c, float) else str(c)
                                  for c in row))
        text = "\n".join(lines) + "\n"
    else:
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _config_dict(args, keys):
    cfg = {"command": args.command, "seed": getattr(args, "seed", None)}
    for key in keys:
        cfg[key] = getattr(args, key)
    return cfg


def _tolerances(args):
    tol = dict(TOLERANCES)
    for item in args.tolerance or []:
        name, _, value = item.partition("=")
        if name not in tol or not value:
            raise ValueError(f"unknown tolerance override {item!r}")
        tol[name] = float(value)
    return tol


def _random_signal(rng, n, bounded=False):
    vals = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    if bounded:
        vals /= np.maximum(1.0, np.abs(vals).max())
    return Signal(1, vals)


def _cmd_bump_verify(args):
    cfg = _config_dict(args, ["sharpness", "grid_points", "format", "out"])
    try:
        bp = bumps_mod.build_bumps(step_sharpness=args.sharpness,
                                   grid_points=args.grid_points)
    except bumps_mod.CertificationError as exc:
        raise ContractViolation(str(exc), {"config": cfg})
    payload = {
        "config": cfg,
        "residuals": bp.residuals,
        "constants": {"psi_sup": bp.psi_sup, "phi_sup": bp.phi_sup,
                      "psi_hat_l1": bp.psi_hat_l1, "phi_hat_l1": bp.phi_hat_l1},
    }
    _emit(payload, args.out, "json")
    return 0


def _cmd_transform(args):
    cfg = _config_dict(args, ["k", "r", "R", "n_domain", "format", "out"])
    tol = _tolerances(args)
    params = mht.TruncationParams(r=args.r, R=args.R, k=args.k)
    rng = np.random.default_rng(np.random.SeedSequence([args.seed, 0]))
    fs = [_random_signal(rng, args.n_domain) for _ in range(args.k)]
    out_sig = mht.truncated_transform(fs, params)
    f0 = _random_signal(rng, args.n_domain)
    lhs = sum(f0(x) * out_sig(x) for x in range(1, args.n_domain + 1))
    rhs = mht.dual_form([f0] + fs, params)
    scale = max(abs(lhs), abs(rhs), 1.0)
    if abs(lhs - rhs) > tol["duality"] * scale:
        raise ContractViolation("transform/dual-form pairing mismatch",
                                {"config": cfg, "lhs": repr(lhs), "rhs": repr(rhs)})
    payload = {"config": cfg,
               "inputs": [_signal_json(f) for f in fs],
               "output": _signal_json(out_sig)}
    if args.format == "csv":
        rows = [(x, float(out_sig(x).real), float(out_sig(x).imag))
                for x in range(out_sig.offset, out_sig.offset + out_sig.values.size)]
        _emit(payload, args.out, "csv", csv_rows=rows, csv_header=("x", "re", "im"))
    else:
        _emit(payload, args.out, "json")
    return 0


def _cmd_gowers(args):
    cfg = _config_dict(args, ["n_domain", "degree", "input_kind", "frequency",
                              "format", "out"])
    tol = _tolerances(args)
    n, d = args.n_domain, args.degree
    if args.input_kind == "ones":
        f = CyclicSignal.constant(n)
    elif args.input_kind == "delta":
        f = CyclicSignal.delta(n)
    elif args.input_kind == "character":
        f = CyclicSignal.character(n, args.frequency)
    else:
        rng = np.random.default_rng(np.random.SeedSequence([args.seed, 1]))
        vals = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        vals /= np.maximum(1.0, np.abs(vals).max())
        f = CyclicSignal(n, vals)
    res = gowers.gowers_norm_cyclic(f, d, method="recursive")
    payload = {"config": cfg,
               "value": res.value, "raw_power": res.raw_power, "degree": d}
    if n <= 32 and d <= 4:
        ref = gowers.gowers_norm_cyclic(f, d, method="direct")
        payload["direct_value"] = ref.value
        if abs(ref.value - res.value) > tol["gowers_agree"] * max(ref.value, res.value, 1e-30):
            raise ContractViolation("direct and recursive norms disagree",
                                    {"config": cfg, "recursive": res.value,
                                     "direct": ref.value})
    _emit(payload, args.out, "json")
    return 0


def _cmd_vn_check(args):
    cfg = _config_dict(args, ["k", "trials", "format", "out"])
    tol = _tolerances(args)
    rng = np.random.default_rng(np.random.SeedSequence([args.seed, 2]))
    primes = [p for p in range(17, 102) if mht._is_prime(p)]
    results = []
    for trial in range(args.trials):
        n = int(primes[rng.integers(0, len(primes))])
        fs = []
        for _ in range(args.k + 1):
            vals = rng.uniform(-1, 1, n) + 1j * rng.uniform(-1, 1, n)
            vals /= np.maximum(1.0, np.abs(vals).max())
            fs.append(CyclicSignal(n, vals))
        lhs, rhs = gowers.von_neumann_check(fs)
        results.append({"trial": trial, "modulus": n, "lhs": lhs, "rhs": rhs})
        if lhs > rhs + tol["vn"]:
            raise ContractViolation("von Neumann comparison failed",
                                    {"config": cfg, "trial": trial,
                                     "modulus": n, "lhs": lhs, "rhs": rhs})
    payload = {"config": cfg, "results": results,
               "max_ratio": max((r["lhs"] / r["rhs"] for r in results
                                 if r["rhs"] > 0), default=0.0)}
    _emit(payload, args.out, "json")
    return 0


def _cmd_tree_stats(args):
    cfg = _config_dict(args, ["k", "r", "R", "n_domain", "delta", "eps",
                              "a_max", "density", "format", "out"])
    rng = np.random.default_rng(np.random.SeedSequence([args.seed, 3]))
    bp = bumps_mod.build_bumps()
    size = max(1, int(args.density * args.n_domain))
    sets = [IndicatorSet(rng.choice(args.n_domain, size=size, replace=False) + 1)
            for _ in range(args.k + 1)]
    report = dyadic.epsdel_report(sets, args.r, args.R, args.delta, bp)
    bad = dyadic.bad_intervals(sets, args.r, args.R, args.delta, bp)
    trees = dyadic.greedy_tree_cover(bad, sets, args.delta, args.eps,
                                     args.a_max, bp)
    seen = set()
    for tree in trees:
        for member in tree.members:
            if member in seen or not tree.top.contains(member):
                raise ContractViolation(
                    "tree structural check failed",
                    {"config": cfg, "top": (tree.top.n, tree.top.j),
                     "member": (member.n, member.j)})
            seen.add(member)
    for itv in bad:
        if itv not in seen:
            raise ContractViolation("bad interval left uncovered",
                                    {"config": cfg, "interval": (itv.n, itv.j)})
    payload = {"config": cfg,
               "report": {
                   "bad_count": report.bad_count,
                   "bad_length_sum": report.bad_length_sum,
                   "mass_sum": report.mass_sum,
                   "trivial_reference": report.trivial_reference,
                   "mass_ratio": report.mass_ratio,
                   "bad_length_ratio": report.bad_length_ratio},
               "trees": [{"top": [t.top.n, t.top.j], "A": t.A,
                          "members": len(t.members)} for t in trees]}
    _emit(payload, args.out, "json")
    return 0


def _parse_floats(text):
    return [float(x) for x in str(text).split(",") if x != ""]


def _resolve_exponents(args, k):
    if args.exponents:
        plist = _parse_floats(args.exponents)
        if len(plist) != k + 1:
            raise ValueError("curve/norm-search expect k+1 dual exponents")
        return HolderExponents.dual(plist)
    return HolderExponents.balanced_dual(k)


def _cmd_curve(args):
    cfg = _config_dict(args, ["k", "exponents", "ratios", "n_domain", "trials",
                              "max_iter", "restarts", "workers", "format", "out"])
    tol = _tolerances(args)
    exps = _resolve_exponents(args, args.k)
    ratios = _parse_floats(args.ratios)
    points = extremal.growth_curve(exps, ratios, args.n_domain, seed=args.seed,
                                   trials=args.trials, max_iter=args.max_iter,
                                   restarts=args.restarts, workers=args.workers)
    for pt in points:
        if pt.normalized > 1.0 + tol["curve_normalized"] \
                or pt.lower_bound > pt.trivial + tol["curve_normalized"] * max(1.0, pt.trivial):
            raise ContractViolation("curve point exceeds the trivial bound",
                                    {"config": cfg, "ratio": pt.ratio,
                                     "lower_bound": pt.lower_bound,
                                     "trivial": pt.trivial})
    payload = {"config": cfg,
               "points": [{"ratio": p.ratio, "lower_bound": p.lower_bound,
                           "trivial": p.trivial, "normalized": p.normalized,
                           "method": p.method, "seed": p.seed,
                           "iterations": p.iterations} for p in points]}
    rows = [(p.ratio, p.lower_bound, p.trivial, p.normalized, p.method,
             p.seed, p.iterations) for p in points]
    header = ("ratio", "lower_bound", "trivial", "normalized", "method",
              "seed", "iterations")
    _emit(payload, args.out, args.format, csv_rows=rows, csv_header=header)
    return 0


def _cmd_norm_search(args):
    cfg = _config_dict(args, ["k", "exponents", "r", "R", "n_domain", "trials",
                              "max_iter", "format", "out"])
    tol = _tolerances(args)
    exps = _resolve_exponents(args, args.k)
    params = mht.TruncationParams(r=args.r, R=args.R, k=args.k)
    est = extremal.alternating_maximize(exps, params, args.n_domain,
                                        seed=args.seed, max_iter=args.max_iter,
                                        restarts=args.trials)
    trace = est.objective_trace
    for i in range(len(trace) - 1):
        if trace[i + 1] < trace[i] - tol["trace_monotone"] * max(1.0, trace[i]):
            raise ContractViolation("objective decreased across a slot update",
                                    {"config": cfg, "index": i,
                                     "before": trace[i], "after": trace[i + 1]})
    re_bound = est.reverify()
    if abs(re_bound - est.lower_bound) > tol["reverify"] * max(1.0, est.lower_bound):
        raise ContractViolation("stored bound failed re-verification",
                                {"config": cfg, "stored": est.lower_bound,
                                 "recomputed": re_bound})
    payload = {"config": cfg,
               "lower_bound": est.lower_bound,
               "trivial": mht.kernel_mass(params),
               "iterations": est.iterations,
               "converged": est.converged,
               "method": est.method,
               "restart_scores": list(est.restart_scores),
               "extremizers": [_signal_json(f) for f in est.extremizers]}
    _emit(payload, args.out, "json")
    return 0


def _build_parser():
    epilog = "tolerance defaults: " + ", ".join(
        f"{k}={v:g}" for k, v in sorted(TOLERANCES.items()))
    parser = argparse.ArgumentParser(
        prog="mhtkit",
        description="Cancellation experiments for truncated multilinear "
                    "Hilbert-type pattern sums.",
        epilog=epilog)
    parser.add_argument("--config", help="YAML file with one mapping per document; "
                                         "each document is one run")
    sub = parser.add_subparsers(dest="command")

    def common(sp, seed=True):
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--out", default=None)
        sp.add_argument("--format", choices=["json", "csv"], default="json")
        sp.add_argument("--tolerance", action="append", metavar="NAME=VALUE",
                        help="override a named tolerance")

    sp = sub.add_parser("bump-verify", help="certify the bump pair")
    sp.add_argument("--sharpness", type=float, default=1.0)
    sp.add_argument("--grid-points", type=int, default=100_000)
    common(sp)

    sp = sub.add_parser("transform", help="dump a transform of seeded signals")
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--r", type=float, default=1.0)
    sp.add_argument("--R", type=float, default=16.0)
    sp.add_argument("--n-domain", type=int, default=32)
    common(sp)

    sp = sub.add_parser("gowers", help="Gowers norm of a generated signal")
    sp.add_argument("--n-domain", type=int, default=64)
    sp.add_argument("--degree", type=int, default=3)
    sp.add_argument("--input-kind", choices=["ones", "random", "delta", "character"],
                    default="ones")
    sp.add_argument("--frequency", type=int, default=1)
    common(sp)

    sp = sub.add_parser("vn-check", help="von Neumann comparison on random tuples")
    sp.add_argument("--k", type=int, default=2)
    sp.add_argument("--trials", type=int, default=20)
    common(sp)

    sp = sub.add_parser("tree-stats", help="bad-interval decomposition stats")
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--r", type=float, default=1.0)
    sp.add_argument("--R", type=float, default=32.0)
    sp.add_argument("--n-domain", type=int, default=64)
    sp.add_argument("--delta", type=float, default=0.05)
    sp.add_argument("--eps", type=float, default=0.5)
    sp.add_argument("--a-max", type=float, default=64.0)
    sp.add_argument("--density", type=float, default=0.3)
    common(sp)

    sp = sub.add_parser("curve", help="lower-bound growth curve over ratios")
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--exponents", default=None, help="comma list p_0,..,p_k")
    sp.add_argument("--ratios", default="2,4,8,16")
    sp.add_argument("--n-domain", type=int, default=48)
    sp.add_argument("--trials", type=int, default=32)
    sp.add_argument("--max-iter", type=int, default=40)
    sp.add_argument("--restarts", type=int, default=2)
    sp.add_argument("--workers", type=int, default=1)
    common(sp)
    sp.set_defaults(format="csv")

    sp = sub.add_parser("norm-search", help="alternating maximization search")
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--exponents", default=None, help="comma list p_0,..,p_k")
    sp.add_argument("--r", type=float, default=1.0)
    sp.add_argument("--R", type=float, default=16.0)
    sp.add_argument("--n-domain", type=int, default=48)
    sp.add_argument("--trials", type=int, default=2, help="random restarts")
    sp.add_argument("--max-iter", type=int, default=60)
    common(sp)
    return parser


_COMMANDS = {
    "bump-verify": _cmd_bump_verify,
    "transform": _cmd_transform,
    "gowers": _cmd_gowers,
    "vn-check": _cmd_vn_check,
    "tree-stats": _cmd_tree_stats,
    "curve": _cmd_curve,
    "norm-search": _cmd_norm_search,
}


def _run_one(argv):
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.config:
        return _run_config(args.config)
    if not args.command:
        parser.print_help()
        return 2
    try:
        return _COMMANDS[args.command](args)
    except ContractViolation as exc:
        sys.stderr.write(json.dumps(
            {"violation": str(exc), "instance": exc.instance},
            sort_keys=True, default=str) + "\n")
        return 1
    except (ValueError, ArithmeticError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


def _run_config(path):
    with open(path) as fh:
        docs = [d for d in yaml.safe_load_all(fh) if d]
    worst = 0
    for doc in docs:
        if not isinstance(doc, dict) or "command" not in doc:
            sys.stderr.write("error: each config document needs a 'command'\n")
            return 2
        argv = [str(doc["command"])]
        for key, value in doc.items():
            if key == "command":
                continue
            flag = "--" + str(key).replace("_", "-")
            if isinstance(value, list):
                value = ",".join(str(v) for v in value)
            argv.extend([flag, str(value)])
        worst = max(worst, _run_one(argv))
    return worst


def main(argv=None):
    return _run_one(list(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    sys.exit(main())
