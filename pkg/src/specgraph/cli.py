"""Command-line entry point: spectrum, verify and ranges subcommands.

Exit codes: 0 success, 1 verification failure or oracle mismatch, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction


from . import conjectures as cj
from . import ranges as rg
from .algebraic import power_graph, zero_divisor_graph
from .errors import ConnectivityError, ParameterError, ParseError, PreconditionError, CapacityError
from .graph import (FAMILIES, FamilySpec, build_named, enumerate_graphs, from_edge_list,
                    read_graph6_file, to_graph6)
from .quotient import dsq_joined_union_spectrum, nl_joined_union_spectrum
from .spectra import as_fraction, build_matrix, eigenvalues, same_multiset, spectrum
from .trees import enumerate_trees

MATRIX_NAMES = {
    "a": "A", "l": "L", "nl": "NL", "q": "Q", "dist": "Dist", "distl": "DistL",
    "dsq": "DistQ", "distq": "DistQ", "dalpha": "Dalpha", "tr": "Tr",
}
INT_PARAMS = ("n", "a", "b", "p", "q", "omega", "r", "s", "t", "c", "m", "s1", "s2")


class UsageError(Exception):
    pass


def fmt(x) -> str:
    return cj.fmt_num(x)


def _num(x):
    """JSON-ready number at 12 significant digits; rationals become "p/q" strings."""
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return float(f"{float(x):.12g}")


def _alpha_arg(text: str | None):
    if text is None:
        return None
    try:
        return as_fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(f"bad alpha {text!r}") from e


# ---------------------------------------------------------------- inputs

def _family_params(args) -> dict:
    if args.family not in FAMILIES:
        raise UsageError(f"unknown family {args.family!r}; choose from {sorted(FAMILIES)}")
    names = FAMILIES[args.family][1]
    params = {}
    for name in names:
        if name in ("sizes", "leaves"):
            val = getattr(args, name, None)
            if val is None:
                raise UsageError(f"--{name} is required for {args.family}")
            params[name] = [int(x) for x in val.split(",")]
        else:
            val = getattr(args, name, None)
            if val is None:
                raise UsageError(f"--{name} is required for {args.family}")
            params[name] = val
    return params


def load_inputs(args) -> list[tuple[str, object, object]]:
    """(label, graph, decomposition or None) triples from exactly one input source."""
    chosen = [s for s in ("family", "graph6_file", "edge_list_file", "zero_divisor", "power_graph")
              if getattr(args, s, None) is not None]
    if len(chosen) != 1:
        raise UsageError("give exactly one input source")
    src = chosen[0]
    if src == "family":
        spec = FamilySpec(args.family, _family_params(args))
        return [(spec.label(), build_named(spec), None)]
    if src == "graph6_file":
        return [(to_graph6(g), g, None) for g in read_graph6_file(args.graph6_file)]
    if src == "edge_list_file":
        with open(args.edge_list_file) as fh:
            g = from_edge_list(fh.read())
        return [(args.edge_list_file, g, None)]
    if src == "zero_divisor":
        g, dec = zero_divisor_graph(args.zero_divisor)
        return [(f"zero_divisor({args.zero_divisor})", g, dec)]
    g, dec = power_graph(args.power_graph)
    return [(f"power_graph({args.power_graph})", g, dec)]


# ---------------------------------------------------------------- spectrum

def _spectrum_record(label, g, dec, kind, alpha, args) -> tuple[dict, bool]:
    ok = True
    if args.via == "quotient":
        if dec is None:
            raise UsageError("--via quotient needs an algebraic input (--zero-divisor or --power-graph)")
        if kind == "NL":
            sc = nl_joined_union_spectrum(dec.spec())
        elif kind == "DistQ":
            sc = dsq_joined_union_spectrum(dec.spec())
        else:
            raise UsageError("--via quotient supports --matrix nl and --matrix dsq")
        spec = sc.spectrum
        rec = {
            "input": label, "kind": kind, "via": "quotient",
            "inherited": [[_num(v), m] for v, m in sc.inherited_pairs()],
            "quotient": [[_num(x) for x in row] for row in sc.quotient],
            "quotient_eigenvalues": [_num(x) for x in sc.quotient_values],
            "pairs": [[_num(v), m] for v, m in spec.pairs],
        }
        if kind == "DistQ":
            rec["quotient_charpoly"] = sc.quotient_charpoly().to_string()
        if args.check:
            dense = eigenvalues(build_matrix(dec.build(), kind, alpha))
            ok = same_multiset(spec, dense, 1e-8)
            rec["check"] = "match" if ok else "mismatch"
        return rec, ok
    spec = spectrum(g, kind, alpha)
    rec = {"input": label, "kind": kind, "via": "dense", "pairs": [[_num(v), m] for v, m in spec.pairs]}
    if alpha is not None:
        rec["alpha"] = _num(alpha)
    return rec, ok


def run_spectrum(args) -> int:
    kind = MATRIX_NAMES.get(args.matrix.lower())
    if kind is None:
        raise UsageError(f"unknown matrix {args.matrix!r}")
    alpha = _alpha_arg(args.alpha)
    if (kind == "Dalpha") != (alpha is not None):
        raise UsageError("--alpha is required with --matrix dalpha and not allowed otherwise")
    records, all_ok = [], True
    for label, g, dec in load_inputs(args):
        rec, ok = _spectrum_record(label, g, dec, kind, alpha, args)
        records.append(rec)
        all_ok &= ok
    if args.format == "csv":
        lines = ["input,kind,value,multiplicity"]
        lines += [f"{r['input']},{r['kind']},{v},{m}" for r in records for v, m in r["pairs"]]
        text = "\n".join(lines) + "\n"
    else:
        text = "\n".join(json.dumps(r, sort_keys=True) for r in records) + "\n"
    _emit(text, args.output)
    if not all_ok:
        print("shortcut spectrum disagrees with the dense eigensolver", file=sys.stderr)
    return 0 if all_ok else 1


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------- verify

def _verify_items(args):
    if args.graph6_file is not None:
        return [(None, g) for g in read_graph6_file(args.graph6_file)]
    if args.predicate == "le-trees":
        if args.n_max is None:
            raise UsageError("le-trees needs --n-max or --graph6-file")
        return [(None, t) for n in range(2, args.n_max + 1) for t in enumerate_trees(n)]
    if args.all_connected is None:
        raise UsageError("give --all-connected N or --graph6-file")
    lo = 2 if args.predicate == "dalpha-bounds" else 1
    return [(None, g) for n in range(lo, args.all_connected + 1)
            for g in enumerate_graphs(n, connected_only=True)]


def run_verify(args) -> int:
    kwargs = {}
    if args.predicate == "dalpha-bounds":
        kwargs["alpha"] = float(_alpha_arg(args.alpha if args.alpha is not None else "1/2"))
    elif args.alpha is not None:
        raise UsageError("--alpha only applies to dalpha-bounds")
    items = _verify_items(args)
    groups, summary = cj.run_sweep(args.predicate, items, jobs=args.jobs, **kwargs)
    if args.csv:
        _emit(cj.reports_csv(groups), args.csv)
    if args.details and summary.failed:
        _emit(cj.failure_details(groups), args.details)
    for reps in groups:
        for r in reps:
            if not r.passed:
                print(f"FAIL {r.instance} {r.predicate} k={r.worst_k} margin={fmt(r.margin)}", file=sys.stderr)
    print(summary.line())
    return 0 if summary.failed == 0 else 1


# ---------------------------------------------------------------- ranges

def _cross_check(thm: str, kr, params: dict, a_max: int | None) -> list[tuple[str, bool, int]]:
    """(instance, passed, number of k checked) for generated graphs matching the theorem."""
    out = []

    def check(label, g, krange):
        ks = krange.covered(g.n)
        if ks:
            out.append((label, cj.brouwer_check(g, label, ks).passed, len(ks)))

    if thm in ("thm3.1", "thm3.8"):
        omega, c = params["omega"], params["c"]
        for a in range(1, (a_max or 3) + 1):
            krange = (rg.range_clique_family(omega, a, c) if thm == "thm3.8"
                      else rg.range_clique_cyclic(omega, omega, c))
            for i, g in enumerate(rg.clique_family(omega, a, c)):
                check(f"C_{omega}(a={a},c={c})#{i}", g, krange)
    elif thm == "thm4":
        for a in range(2, (a_max or 4) + 1):
            g = rg.split_cycle_graph(params["omega"], a, params["t"])
            check(f"S_{params['omega']}(a={a},t={params['t']})", g, kr)
    elif thm in ("thm2", "thm3"):
        n = params["n"]
        if n > 8:
            raise UsageError("cross-check enumerates graphs, so needs n <= 8")
        for g in enumerate_graphs(n, connected_only=True):
            if g.m != params["m"]:
                continue
            degs = g.degrees()
            if degs.count(params["r"]) != params["p"]:
                continue
            if thm == "thm3" and degs.count(params["s"]) != params["q"]:
                continue
            check(to_graph6(g), g, kr)
    return out


def run_ranges(args) -> int:
    fn, names = rg.THEOREMS[args.theorem]
    params = {}
    for name in names:
        val = getattr(args, name, None)
        if val is None:
            raise UsageError(f"{args.theorem} needs --{name}")
        params[name] = val
    kr = rg.brouwer_guaranteed_ranges(args.theorem, params)
    if not kr.hypothesis_ok:
        print(f"{args.theorem}: hypothesis violated: {kr.reason}", file=sys.stderr)
        return 2
    print(f"{args.theorem} {' '.join(f'{k}={v}' for k, v in params.items())}: {kr.label(args.size)}")
    if not args.cross_check:
        return 0
    if args.theorem == "thm3.10":
        print("cross-check: no instance generator for this theorem")
        return 0
    results = _cross_check(args.theorem, kr, params, args.a_max)
    failed = [r for r in results if not r[1]]
    for label, _, _ in failed:
        print(f"FAIL {label}", file=sys.stderr)
    print(f"cross-check: instances {len(results)}, failed {len(failed)}")
    return 1 if failed else 0


# ---------------------------------------------------------------- parser

def _add_inputs(p):
    p.add_argument("--family", help="named family, e.g. star, cycle, complete_bipartite")
    p.add_argument("--graph6-file")
    p.add_argument("--edge-list-file")
    p.add_argument("--zero-divisor", type=int, metavar="N", help="zero-divisor graph of Z_N")
    p.add_argument("--power-graph", type=int, metavar="N", help="power graph of Z_N")
    for name in INT_PARAMS:
        p.add_argument(f"--{name.replace('_', '-')}", dest=name, type=int)
    p.add_argument("--sizes", help="comma-separated part sizes")
    p.add_argument("--leaves", help="comma-separated leaf counts")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="specgraph", description="Graph spectra and spectral bound checks")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="spectrum of one matrix kind")
    _add_inputs(sp)
    sp.add_argument("--matrix", required=True, help="a, l, nl, q, dist, distl, dsq, dalpha, tr")
    sp.add_argument("--alpha")
    sp.add_argument("--via", choices=("dense", "quotient"), default="dense")
    sp.add_argument("--check", action="store_true", help="diff the shortcut against the dense eigensolver")
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.add_argument("--output")

    vp = sub.add_parser("verify", help="sweep a predicate over many graphs")
    vp.add_argument("predicate", choices=sorted(cj.PREDICATES))
    vp.add_argument("--all-connected", type=int, metavar="N", help="all connected graphs with 1..N vertices")
    vp.add_argument("--n-max", type=int, help="all trees with 2..N vertices (le-trees)")
    vp.add_argument("--graph6-file")
    vp.add_argument("--alpha")
    vp.add_argument("--jobs", type=int, default=None, help=f"worker processes (default ${cj.JOBS_ENV} or 1)")
    vp.add_argument("--csv", help="write the full per-predicate report here")
    vp.add_argument("--details", help="write JSON details for failures here")

    rp = sub.add_parser("ranges", help="guaranteed k-ranges for Brouwer's inequality")
    rp.add_argument("theorem", choices=sorted(rg.THEOREMS))
    for name in ("omega", "r", "c", "s", "n", "m", "p", "q", "t", "a"):
        rp.add_argument(f"--{name}", type=int)
    rp.add_argument("--size", type=int, help="resolve the open end of each interval at this order")
    rp.add_argument("--cross-check", action="store_true")
    rp.add_argument("--a-max", type=int)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    handlers = {"spectrum": run_spectrum, "verify": run_verify, "ranges": run_ranges}
    try:
        return handlers[args.command](args)
    except (UsageError, ParameterError, ParseError, ConnectivityError, PreconditionError,
            CapacityError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
