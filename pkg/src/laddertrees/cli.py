"""Command-line front end.

One executable, one subcommand per capability, machine-readable output:
JSON on stdout by default, CSV where the data is tabular.  Exit codes:
0 success, 1 bad input, 2 numeric failure.
"""

import argparse
import csv
import json
import math
import os
import sys
from fractions import Fraction

import numpy as np

from . import chain as chain_mod
from . import electrical, kernel, sampling, transfer
from . import verify as verify_mod
from .graphs import FAMILY_KINDS, GraphFamily, LADDER, normalize_kind

SCHEMA = "laddertrees.v1"


class CliError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(message)


def _parse_weight(text, name):
    """Weights come in as '2', '1/2', '2.5', or 'inf'."""
    if text is None:
        return None
    if text == "inf":
        return math.inf
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(f"cannot parse --{name} value {text!r}") from exc


def _family(args, default_c=1):
    kind = normalize_kind(args.family)
    c = _parse_weight(getattr(args, "c", None), "c")
    d = _parse_weight(getattr(args, "d", None), "d")
    return GraphFamily(kind, default_c if c is None else c, 0 if d is None else d)


def _sites(text):
    try:
        sites = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise CliError(f"cannot parse site list {text!r}") from exc
    if not sites:
        raise CliError("empty site list")
    if len(set(sites)) != len(sites):
        raise CliError("sites must be distinct")
    return sites


def _resolve_seed(args):
    env = os.environ.get("SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise CliError(f"SEED environment value {env!r} is not an integer") from exc
    return args.seed


def _round_floats(obj, digits):
    if isinstance(obj, float):
        return float(f"{obj:.{digits}g}")
    if isinstance(obj, complex):
        return [_round_floats(obj.real, digits), _round_floats(obj.imag, digits)]
    if isinstance(obj, Fraction):
        if obj.denominator == 1:
            return int(obj) if abs(obj) < 2 ** 53 else str(obj.numerator)
        return str(obj)
    if isinstance(obj, (np.floating,)):
        return _round_floats(float(obj), digits)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, dict):
        return {k: _round_floats(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v, digits) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_round_floats(v, digits) for v in obj.tolist()]
    return obj


def _emit(payload, args, rows=None, header=None):
    """Write JSON (default) or CSV (when rows are given and csv asked)."""
    out = sys.stdout
    close = False
    if args.out:
        out = open(args.out, "w", newline="")
        close = True
    try:
        if args.format == "csv":
            if rows is None:
                raise CliError("this subcommand has no CSV form; use --format json")
            w = csv.writer(out)
            w.writerow(header)
            w.writerows(rows)
        else:
            doc = {"schema": SCHEMA}
            doc.update(_round_floats(payload, args.precision))
            json.dump(doc, out, indent=2)
            out.write("\n")
    finally:
        if close:
            out.close()


# ---------------------------------------------------------------- verbs

def _cmd_count(args):
    fam = _family(args)
    n = args.n
    if args.route == "value":
        val = transfer.count_value(fam, n)
    elif args.route == "recursion":
        val = transfer.count_by_recursion(fam, n)
    elif args.route == "closed":
        val = transfer.count_closed_form(fam, n)
    else:
        val = transfer.TransferSystem(fam).count_spectral(n)
    if isinstance(val, Fraction):
        val = str(val)  # counts outgrow 64-bit integers fast
    payload = {"family": fam.kind, "c": fam.c, "d": fam.d, "n": n,
               "route": args.route, "count": val}
    _emit(payload, args)
    return 0


def _cmd_prob(args):
    fam = _family(args)
    sites = _sites(args.sites)
    spec = kernel.build_kernel(fam, p=args.p)
    val = kernel.window_probability(spec, sites)
    _emit({"family": fam.kind, "c": fam.c, "d": fam.d, "p": args.p,
           "sites": sites, "probability": val}, args)
    return 0


def _cmd_kernel(args):
    fam = _family(args)
    spec = kernel.build_kernel(fam, p=args.p, phase=args.phase)
    if args.kverb == "entry":
        val = kernel.kernel_entry(spec, args.m)
        _emit({"family": fam.kind, "m": args.m, "entry": val.real,
               "entry_imag": val.imag}, args)
    elif args.kverb == "window":
        sites = _sites(args.sites)
        _emit({"family": fam.kind, "sites": sites,
               "probability": kernel.window_probability(spec, sites)}, args)
    elif args.kverb == "density":
        x = args.x
        _emit({"family": fam.kind, "x": x,
               "f": float(kernel.spectral_density(spec, np.array([x]))[0])}, args)
    else:  # order
        _emit({"family": fam.kind, "p": args.p,
               "order": kernel.regenerative_order(spec)}, args)
    return 0


def _cmd_density(args):
    fam = _family(args)
    if args.grid < 16:
        raise CliError(f"need at least 16 grid points, got {args.grid}")
    spec = kernel.build_kernel(fam, p=args.p)
    xs = np.linspace(0.0, 1.0, args.grid, endpoint=False)
    fx = kernel.spectral_density(spec, xs)
    rows = [(f"{x:.{args.precision}g}", f"{f:.{args.precision}g}")
            for x, f in zip(xs, fx)]
    if args.format == "json":
        _emit({"family": fam.kind, "c": fam.c, "d": fam.d, "p": args.p,
               "grid": [{"x": float(x), "f": float(f)} for x, f in zip(xs, fx)]},
              args)
    else:
        _emit(None, args, rows=rows, header=("x", "f"))
    return 0


def _cmd_electric(args):
    c = _parse_weight(args.c, "c")
    prof = electrical.effective_resistance(args.family,
                                           c=1.0 if c is None else float(c))
    payload = prof.to_json_dict()
    if args.everb == "current":
        mmax = args.m if args.m is not None else 10
        payload["currents"] = [electrical.transfer_current(prof, m)
                               for m in range(mmax + 1)]
    _emit(payload, args)
    return 0


def _cmd_chain(args):
    spec = chain_mod.build_chain()
    if args.cverb == "info":
        _emit({"symbols": [list(s) for s in chain_mod.SYMBOLS],
               "classes": {str(k): list(v) for k, v in chain_mod.GROUPS.items()},
               "entropy": spec.entropy,
               "class_transition": spec.Rbar,
               "stationary": spec.pi_R}, args)
        return 0
    if args.cverb == "prob":
        toks = [t.strip() for t in args.pattern.split(",")]
        pattern = []
        for t in toks:
            if t in ("1", "0"):
                pattern.append(int(t))
            elif t in ("-", ".", "None", ""):
                pattern.append(None)
            else:
                raise CliError(f"pattern tokens must be 1, 0 or -; got {t!r}")
        val = chain_mod.query_probability(spec, tuple(pattern))
        _emit({"pattern": [t if t is not None else None for t in pattern],
               "probability": val}, args)
        return 0
    # sample
    seed = _resolve_seed(args)
    path = chain_mod.sample_path(spec, args.n, seed=seed)
    h, z, cls = chain_mod.decode_path(path)
    if args.chain_format == "symbols":
        _emit({"seed": seed, "symbols": [int(s) for s in path]}, args)
    elif args.chain_format == "edges":
        _emit({"seed": seed, "edges": list(chain_mod.decoded_edges(path, 0))}, args)
    else:
        rows = [(i, int(path[i]), int(h[i]), int(z[i]), int(cls[i]))
                for i in range(len(path))]
        args.format = "csv"
        _emit(None, args, rows=rows, header=("step", "symbol", "h", "z", "class"))
    return 0


def _cmd_sample(args):
    fam = _family(args)
    seed = _resolve_seed(args)
    n = args.window
    if n < 1:
        raise CliError("window must be positive")
    sampler = args.sampler
    if sampler == "auto":
        if fam.kind == LADDER:
            sampler = "renewal"
        elif fam.kind == "helix3" and fam.c == 1 and fam.d == 0:
            sampler = "chain"
        else:
            sampler = "dpp"
    rows = []
    header = ("sample_id", "index", "x")
    tree_cols = sampler == "renewal"
    if tree_cols:
        header = header + ("h0", "h1", "z")
    cspec = chain_mod.build_chain() if sampler == "chain" else None
    kspec = kernel.build_kernel(fam, p=args.p) if sampler == "dpp" else None
    for i in range(args.n_samples):
        sub = np.random.default_rng((seed, i)) if seed is not None \
            else np.random.default_rng()
        if sampler == "renewal":
            if fam.kind != LADDER:
                raise CliError("the renewal sampler is ladder-only")
            path = sampling.ladder_renewal_sample(
                float(fam.c) if fam.c != math.inf else math.inf, n, rng=sub)
            if args.p < 1.0:
                path = sampling.thin(path, args.p, rng=sub)
        elif sampler == "chain":
            syms = chain_mod.sample_path(cspec, n, rng=sub)
            _, z, _ = chain_mod.decode_path(syms)
            path = sampling.SamplePath(fam.kind, 0, n - 1,
                                       z.astype(np.int8), None, {})
            if args.p < 1.0:
                path = sampling.thin(path, args.p, rng=sub)
        else:
            path = sampling.dpp_window_sample(kspec, n, rng=sub)
        edges = set(path.tree_edges or ())
        for m in path.indices:
            row = [i, m, path.at(m)]
            if tree_cols:
                row += ["" if m == path.lo else int(f"h0_{m}" in edges),
                        "" if m == path.lo else int(f"h1_{m}" in edges),
                        int(f"z{m}" in edges)]
            rows.append(tuple(row))
    args.format = "csv"
    _emit(None, args, rows=rows, header=header)
    return 0


def _cmd_classify(args):
    res = kernel.classify_renewal_dpp(args.q0, args.q1, phase=args.phase)
    payload = {"accepted": res.accepted, "phase": res.phase, "reason": res.reason}
    if res.accepted:
        payload.update({"alpha": res.alpha, "p": res.p, "c": res.c})
    _emit(payload, args)
    return 0


def _cmd_verify(args):
    results = verify_mod.run_suite(args.suite)
    if args.format == "json":
        _emit({"suite": args.suite,
               "results": [{"name": r.name, "passed": r.passed, "detail": r.detail}
                           for r in results],
               "passed": all(r.passed for r in results)}, args)
    else:
        width = max(len(r.name) for r in results)
        for r in results:
            print(f"{'PASS' if r.passed else 'FAIL'}  {r.name:{width}}  {r.detail}")
        n_ok = sum(r.passed for r in results)
        print(f"{n_ok}/{len(results)} checks passed")
    return 0 if all(r.passed for r in results) else 2


# ------------------------------------------------------------- dispatch

def _build_parser():
    p = _Parser(prog="laddertrees",
                description="spanning-tree rung processes on ladder-like graphs")
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=None,
                        help="RNG seed (SEED env variable overrides)")
    common.add_argument("--out", default=None, help="write output to this path")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--precision", type=int, default=12,
                        help="significant digits for floating output")
    sub = p.add_subparsers(dest="cmd", required=True)

    def fam_flags(sp, with_p=True):
        sp.add_argument("--family", required=True, choices=sorted(FAMILY_KINDS))
        sp.add_argument("--c", default=None, help="rung weight (fraction ok)")
        sp.add_argument("--d", default=None, help="chord weight (enhanced only)")
        if with_p:
            sp.add_argument("--p", type=float, default=1.0, help="thinning probability")

    sp = sub.add_parser("count", parents=[common], help="weighted spanning-tree count of a window")
    fam_flags(sp, with_p=False)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--route", choices=("value", "recursion", "closed", "spectral"),
                    default="value")
    sp.set_defaults(fn=_cmd_count)

    sp = sub.add_parser("prob", parents=[common], help="P[rungs at the listed sites all in the tree]")
    fam_flags(sp)
    sp.add_argument("--sites", required=True, help="comma-separated integers")
    sp.set_defaults(fn=_cmd_prob)

    sp = sub.add_parser("kernel", help="determinantal kernel queries")
    ksub = sp.add_subparsers(dest="kverb", required=True)
    for verb in ("entry", "window", "density", "order"):
        ks = ksub.add_parser(verb, parents=[common])
        fam_flags(ks)
        ks.add_argument("--phase", type=float, default=0.0)
        if verb == "entry":
            ks.add_argument("--m", type=int, required=True)
        elif verb == "window":
            ks.add_argument("--sites", required=True)
        elif verb == "density":
            ks.add_argument("--x", type=float, required=True)
        ks.set_defaults(fn=_cmd_kernel)

    sp = sub.add_parser("density", parents=[common], help="spectral density on a grid (CSV-friendly)")
    fam_flags(sp)
    sp.add_argument("--grid", type=int, default=256)
    sp.set_defaults(fn=_cmd_density)

    sp = sub.add_parser("electric", help="effective resistance and transfer currents")
    esub = sp.add_subparsers(dest="everb", required=True)
    for verb in ("resistance", "current"):
        es = esub.add_parser(verb, parents=[common])
        es.add_argument("--family", required=True, choices=("ladder", "zigzag"))
        es.add_argument("--c", default=None)
        if verb == "current":
            es.add_argument("--m", type=int, default=None,
                            help="emit currents for offsets 0..m")
        es.set_defaults(fn=_cmd_electric)

    sp = sub.add_parser("chain", help="maximal-entropy symbol chain")
    csub = sp.add_subparsers(dest="cverb", required=True)
    cs = csub.add_parser("info", parents=[common])
    cs.set_defaults(fn=_cmd_chain)
    cs = csub.add_parser("sample", parents=[common])
    cs.add_argument("--n", type=int, required=True)
    cs.add_argument("--chain-format", choices=("edges", "symbols", "csv"),
                    default="csv")
    cs.set_defaults(fn=_cmd_chain)
    cs = csub.add_parser("prob", parents=[common])
    cs.add_argument("--pattern", required=True,
                    help="comma list of 1/0/- rung constraints")
    cs.set_defaults(fn=_cmd_chain)

    sp = sub.add_parser("sample", parents=[common], help="batch path samples to CSV")
    fam_flags(sp)
    sp.add_argument("--window", type=int, required=True)
    sp.add_argument("--n-samples", type=int, default=1)
    sp.add_argument("--sampler", choices=("auto", "renewal", "dpp", "chain"),
                    default="auto")
    sp.set_defaults(fn=_cmd_sample)

    sp = sub.add_parser("classify", parents=[common], help="invert an order-1 reciprocal density")
    sp.add_argument("--q0", type=float, required=True)
    sp.add_argument("--q1", type=float, required=True)
    sp.add_argument("--phase", type=float, default=0.0)
    sp.set_defaults(fn=_cmd_classify)

    sp = sub.add_parser("verify", parents=[common], help="run the cross-validation matrix")
    sp.add_argument("--suite", default="all", choices=verify_mod.SUITES)
    sp.set_defaults(fn=_cmd_verify, format="table")
    return p


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.fn(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ArithmeticError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
