"""Command-line front end: ``immred <command> [options]``.

Exit status is 0 when the command succeeds and every checked identity holds,
1 when an identity is violated, and 2 on usage or input errors.

File formats
  digraph      first line "n m", then m lines "u v [weight]"; weight is an
               integer, x, or a JSON coefficient list such as [0,2]
  graph        first line "n m", then m lines "u v"; ports follow input order
  matrix       first line n, then n rows of integers
  JSON objects {"n":..,"arcs":[[u,v,w],..]} and {"n":..,"edges":[[u,v],..]}
               are accepted in place of the text forms.
  Gadget output writes a digraph file plus FILE.labels.json with vertex
  labels and construction metadata.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import random
import sys
from typing import Optional, Sequence

from . import io
from .characters import character_table, chi, chi_nonrecursive
from .gadgets import (
    Construction1Params,
    Construction2Params,
    ConstructionError,
    EnumerationBudgetExceeded,
    build_construction1,
    build_construction2,
    validate_census,
    validate_lemma1,
    validate_match_gadget,
)
from .graphs import (
    GraphError,
    WeightedDigraph,
    count_cycle_covers,
    count_perfect_matchings,
    cover_census,
    matching_counts,
)
from .immanant import bareiss_determinant, imm_naive, imm_poly_in_x, imm_via_covers, ryser_permanent
from .poly import UniPoly
from .reductions import (
    ReductionError,
    recover_matchings_interpolation,
    recover_matchings_modular,
    recover_matchings_symbolic,
    recover_pm_via_immanant,
    matching_shape,
)
from .shapes import PartitionError, SkewShape, as_partition, domino_tilings, horizontal_parity, partitions
from .tableaux import enumerate_bst

DEFAULT_SEED = 0


class UsageError(Exception):
    pass


class Outcome:
    """What a command produced: a JSON-able payload, text, and pass/fail."""

    def __init__(self, payload, text: str, ok: bool = True):
        self.payload = payload
        self.text = text
        self.ok = ok


def _shape(text: str, flag: str):
    try:
        return as_partition(text)
    except PartitionError as exc:
        raise UsageError(f"{flag}: {exc}") from None


def _jsonable(w):
    return list(w.coeffs) if isinstance(w, UniPoly) else w


# ---------------------------------------------------------------- commands

def cmd_char(args) -> Outcome:
    lam = _shape(args.shape, "--shape")
    rho = _shape(args.type, "--type")
    value = chi_nonrecursive(lam, rho) if args.nonrecursive else chi(lam, rho)
    payload = {"shape": list(lam), "type": list(rho), "chi": value}
    text = str(value)
    if args.list_bst:
        tabs = enumerate_bst(lam, rho)
        payload["tableaux"] = [dict(t.to_json(), height=t.height) for t in tabs]
        text += "\n" + json.dumps(payload["tableaux"])
    return Outcome(payload, text)


def cmd_bst(args) -> Outcome:
    lam = _shape(args.shape, "--shape")
    rho = _shape(args.type, "--type")
    tabs = enumerate_bst(lam, rho)
    payload = {"shape": list(lam), "type": list(rho), "count": len(tabs),
               "heights": [t.height for t in tabs],
               "tableaux": [t.to_json() for t in tabs]}
    blocks = [f"{len(tabs)} tableaux"]
    for i, t in enumerate(tabs, 1):
        blocks.append(f"#{i} height {t.height}\n{t.pretty()}")
    return Outcome(payload, "\n\n".join(blocks))


def cmd_tile(args) -> Outcome:
    outer = _shape(args.shape, "--shape")
    inner = _shape(args.inner, "--inner") if args.inner else as_partition(())
    try:
        shape = SkewShape(outer, inner)
    except PartitionError as exc:
        raise UsageError(f"--inner: {exc}") from None
    tilings = domino_tilings(shape)
    parities = sorted({horizontal_parity(t) for t in tilings})
    payload = {"shape": list(outer), "inner": list(inner), "count": len(tilings),
               "parities": parities, "tilings": [t.to_json() for t in tilings]}
    text = f"{len(tilings)} tilings; horizontal parities {parities}"
    return Outcome(payload, text)


def cmd_imm(args) -> Outcome:
    lam = _shape(args.shape, "--shape")
    if args.matrix:
        matrix = io.read_matrix(args.matrix)
        if args.naive:
            value = imm_naive(lam, matrix)
        else:
            value = imm_via_covers(lam, WeightedDigraph.from_matrix(matrix))
    else:
        g = io.read_digraph(args.graph)
        if args.symbolic_x:
            value = imm_poly_in_x(lam, g)
        elif g.is_symbolic():
            raise UsageError("--graph: the graph has x-weighted arcs; pass --symbolic-x")
        else:
            value = imm_via_covers(lam, g)
    payload = {"shape": list(lam), "immanant": _jsonable(value)}
    return Outcome(payload, str(value) if not isinstance(value, UniPoly)
                   else json.dumps(list(value.coeffs)))


def cmd_covers(args) -> Outcome:
    g = io.read_digraph(args.graph)
    payload: dict = {"n": g.n, "covers": count_cycle_covers(g)}
    text = f"{payload['covers']} cycle covers"
    if args.census:
        census = cover_census(g, modulus=args.modulus, keep_zero=True)
        payload["census"] = [{"type": list(t), "weight": _jsonable(w)} for t, w in census.items()]
        text = json.dumps(payload["census"])
    return Outcome(payload, text)


def _write_gadget(g: WeightedDigraph, out: Optional[str]) -> str:
    if out:
        io.write_digraph(g, out)
        return f"wrote {g.n} vertices, {len(g.arcs)} arcs to {out}"
    return io.digraph_to_text(g).rstrip("\n")


def cmd_gadget(args) -> Outcome:
    h = io.read_undirected(args.graph)
    if args.construction == "c1":
        params = Construction1Params(args.w, _shape(args.lambda_d, "--lambda-d"), args.n)
        g = build_construction1(h, params)
    else:
        if args.p is None and args.n is None:
            raise UsageError("gadget c2: one of --p or --n is required")
        params = Construction2Params(args.p) if args.p is not None else Construction2Params.from_n(h, args.n)
        g = build_construction2(h, params)
    text = _write_gadget(g, args.output)
    payload = {"n": g.n, "arcs": len(g.arcs), "meta": g.meta, "output": args.output}
    return Outcome(payload, text)


def cmd_verify_thm1(args) -> Outcome:
    h = io.read_undirected(args.graph)
    lam_d = _shape(args.lambda_d, "--lambda-d")
    result = recover_pm_via_immanant(h, args.w, lam_d, args.n)
    payload = result.to_dict()
    checks = {"pm_equals_brute_force": result.pm == count_perfect_matchings(h),
              "offtype_characters_vanish": not result.nonzero_offtype}
    if args.expect_pm is not None:
        checks["pm_equals_expected"] = result.pm == args.expect_pm
    if args.lemma:
        g = build_construction1(h, Construction1Params(args.w, lam_d, args.n))
        rep = validate_lemma1(g, h, budget=args.budget)
        payload["lemma"] = rep.to_dict()
        checks["lemma"] = rep.ok
    payload["checks"] = checks
    ok = all(checks.values())
    text = f"pm={result.pm} imm={result.immanant} divisor={result.divisor} " \
           f"shape={result.shape.compact()} cover_type={result.cover_type.compact()}\n" + \
           "\n".join(f"{'PASS' if v else 'FAIL'} {k}" for k, v in checks.items())
    return Outcome(payload, text, ok)


def cmd_verify_thm2(args) -> Outcome:
    h = io.read_undirected(args.graph)
    lam_d = _shape(args.lambda_d, "--lambda-d")
    params = Construction2Params(args.p)
    n = params.n_for(h)
    lam = matching_shape(lam_d, n)
    truth = matching_counts(h)
    truth = (truth + [0] * (h.n // 2 + 1))[: h.n // 2 + 1]
    payload: dict = {"shape": list(lam), "n": n, "p": args.p, "brute_force": truth, "pipelines": {}}
    checks = {}
    wanted = ["symbolic", "interp", "crt"] if args.pipeline == "all" else [args.pipeline]
    for name in wanted:
        if name == "symbolic":
            counts = recover_matchings_symbolic(h, args.p, lam)
            payload["pipelines"][name] = {"counts": counts}
        elif name == "interp":
            counts = recover_matchings_interpolation(h, args.p, lam, workers=args.threads)
            payload["pipelines"][name] = {"counts": counts}
        else:
            run = recover_matchings_modular(h, args.p, lam, workers=args.threads)
            counts = run.counts
            payload["pipelines"][name] = run.to_dict()
        checks[f"{name}_equals_brute_force"] = counts == truth
    if args.census:
        rep = validate_census(build_construction2(h, params), h, budget=args.budget)
        payload["census"] = rep.to_dict()
        checks["census"] = rep.ok
    payload["checks"] = checks
    ok = all(checks.values())
    lines = [f"shape={lam.compact()} n={n} brute_force={truth}"]
    lines += [f"{k}: {v['counts']}" for k, v in payload["pipelines"].items()]
    lines += [f"{'PASS' if v else 'FAIL'} {k}" for k, v in checks.items()]
    return Outcome(payload, "\n".join(lines), ok)


def cmd_verify_gadget(args) -> Outcome:
    rep = validate_match_gadget()
    text = "\n".join(f"{'PASS' if v else 'FAIL'} {k}" for k, v in rep.items.items())
    return Outcome(rep.to_dict(), text, rep.ok)


def _random_matrix(rng: random.Random, n: int, density: float = 1.0, lo: int = -3, hi: int = 3):
    return [[rng.randint(lo, hi) if rng.random() < density else 0 for _ in range(n)] for _ in range(n)]


def cmd_verify_oracles(args) -> Outcome:
    """Randomized cross-checks of the exact engines against independent oracles."""
    rng = random.Random(args.seed)
    failures = []
    for _ in range(args.count):
        n = rng.randint(1, 7)
        parts = list(partitions(n))
        lam, rho = rng.choice(parts), rng.choice(parts)
        if chi(lam, rho) != chi_nonrecursive(lam, rho):
            failures.append(f"chi {lam} {rho}")
        n = rng.randint(1, 6)
        a = _random_matrix(rng, n)
        if imm_naive((1,) * n, a) != bareiss_determinant(a):
            failures.append(f"det {a}")
        if imm_naive((n,), a) != ryser_permanent(a):
            failures.append(f"per {a}")
        b = _random_matrix(rng, n, density=0.4)
        lam = rng.choice(list(partitions(n)))
        if imm_via_covers(lam, WeightedDigraph.from_matrix(b)) != imm_naive(lam, b):
            failures.append(f"covers {lam} {b}")
    payload = {"seed": args.seed, "count": args.count, "failures": failures}
    text = f"{args.count} rounds, {len(failures)} failures" + "".join("\n" + f for f in failures)
    return Outcome(payload, text, not failures)


def cmd_table(args) -> Outcome:
    if not 0 <= args.n <= 9:
        raise UsageError(f"--n: must be between 0 and 9, got {args.n}")
    shapes, table = character_table(args.n)
    payload = {"n": args.n, "shapes": [list(s) for s in shapes], "table": table}
    names = [s.compact() for s in shapes]
    widths = [max([len(nm)] + [len(str(row[j])) for row in table]) for j, nm in enumerate(names)]
    label_w = max(len(nm) for nm in names)
    lines = [" " * label_w + " " + " ".join(nm.rjust(w) for nm, w in zip(names, widths))]
    for nm, row in zip(names, table):
        lines.append(nm.ljust(label_w) + " " + " ".join(str(v).rjust(w) for v, w in zip(row, widths)))
    return Outcome(payload, "\n".join(lines))


# ---------------------------------------------------------------- parser

def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="print a JSON report instead of text")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help=f"seed for randomized checks (default {DEFAULT_SEED})")
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS,
                        help="worker processes for per-point and per-prime runs (default 1)")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="immred", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--json", action="store_true", help="print a JSON report instead of text")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    parser.add_argument("--threads", type=int, default=1)
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("char", parents=[common], help="character value chi_shape(type)")
    p.add_argument("--shape", required=True, help='partition, e.g. "(2^2,1^3)"')
    p.add_argument("--type", required=True, help="cycle type, same grammar")
    p.add_argument("--list-bst", action="store_true", help="also dump the border-strip tableaux")
    p.add_argument("--nonrecursive", action="store_true", help="sum over tableaux instead of recursing")
    p.set_defaults(func=cmd_char)

    p = sub.add_parser("bst", parents=[common], help="enumerate border-strip tableaux")
    p.add_argument("--shape", required=True)
    p.add_argument("--type", required=True)
    p.set_defaults(func=cmd_bst)

    p = sub.add_parser("tile", parents=[common], help="domino tilings of a (skew) shape")
    p.add_argument("--shape", required=True)
    p.add_argument("--inner", help="inner shape for a skew diagram")
    p.set_defaults(func=cmd_tile)

    p = sub.add_parser("imm", parents=[common], help="immanant of a matrix or digraph")
    p.add_argument("--shape", required=True)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--matrix", help="dense matrix file")
    src.add_argument("--graph", help="digraph file")
    p.add_argument("--symbolic-x", action="store_true", help="keep x symbolic; print coefficients")
    p.add_argument("--naive", action="store_true", help="sum over all permutations (n <= 9)")
    p.set_defaults(func=cmd_imm)

    p = sub.add_parser("covers", parents=[common], help="cycle covers of a digraph")
    p.add_argument("--graph", required=True)
    p.add_argument("--census", action="store_true", help="weight summed per cycle type")
    p.add_argument("--modulus", type=int, help="reduce census weights modulo this")
    p.set_defaults(func=cmd_covers)

    p = sub.add_parser("gadget", parents=[common], help="build a reduction digraph")
    p.add_argument("construction", choices=["c1", "c2"])
    p.add_argument("--graph", required=True, help="undirected input graph")
    p.add_argument("--w", type=int)
    p.add_argument("--lambda-d")
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("-o", "--output", help="digraph file to write (plus FILE.labels.json)")
    p.set_defaults(func=cmd_gadget)

    p = sub.add_parser("verify", parents=[common], help="check a reduction identity")
    vsub = p.add_subparsers(dest="target", required=True, metavar="target")
    v = vsub.add_parser("thm1", parents=[common], help="perfect matchings via Construction 1")
    v.add_argument("--graph", required=True)
    v.add_argument("--w", type=int, required=True)
    v.add_argument("--lambda-d", required=True)
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--expect-pm", type=int)
    v.add_argument("--lemma", action="store_true", help="also validate the cover-structure lemma")
    v.add_argument("--budget", type=int, help="cap on enumerated covers for --lemma")
    v.set_defaults(func=cmd_verify_thm1)
    v = vsub.add_parser("thm2", parents=[common], help="k-matchings via Construction 2")
    v.add_argument("--graph", required=True)
    v.add_argument("--p", type=int, required=True)
    v.add_argument("--lambda-d", required=True)
    v.add_argument("--pipeline", choices=["symbolic", "interp", "crt", "all"], default="all")
    v.add_argument("--census", action="store_true", help="also validate the cycle-type census")
    v.add_argument("--budget", type=int)
    v.set_defaults(func=cmd_verify_thm2)
    v = vsub.add_parser("match-gadget", parents=[common], help="local census of the match gadget")
    v.set_defaults(func=cmd_verify_gadget)
    v = vsub.add_parser("oracles", parents=[common], help="randomized oracle cross-checks")
    v.add_argument("--count", type=int, default=50)
    v.set_defaults(func=cmd_verify_oracles)

    p = sub.add_parser("table", parents=[common], help="character table of S_n (n <= 9)")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_table)
    return parser


def _check_gadget_args(args) -> None:
    if getattr(args, "command", None) != "gadget":
        return
    if args.construction == "c1":
        missing = [f for f, v in (("--w", args.w), ("--lambda-d", args.lambda_d), ("--n", args.n)) if v is None]
        if missing:
            raise UsageError(f"gadget c1: missing {', '.join(missing)}")


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.threads < 1:
        print("immred: --threads: must be at least 1", file=err)
        return 2
    try:
        _check_gadget_args(args)
        outcome = args.func(args)
    except UsageError as exc:
        print(f"immred: {exc}", file=err)
        return 2
    except (PartitionError, GraphError, ConstructionError, OSError, ValueError) as exc:
        print(f"immred: {exc}", file=err)
        return 2
    except (ReductionError, EnumerationBudgetExceeded) as exc:
        if args.json:
            print(json.dumps({"ok": False, "error": str(exc)}, indent=2), file=out)
        else:
            print(f"FAIL {exc}", file=out)
        return 1
    if args.json:
        report = {"command": args.command, "ok": outcome.ok, "result": outcome.payload}
        print(json.dumps(report, indent=2), file=out)
    else:
        print(outcome.text, file=out)
    return 0 if outcome.ok else 1


def main() -> None:
    sys.exit(run())
