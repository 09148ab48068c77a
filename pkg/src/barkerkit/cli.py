"""Command-line front end: ``barkerkit {analyze,verify,search,lengths}``.

Exit codes: 0 success, 1 an identity was falsified, 2 usage or input error.
Standard output carries only deterministic results unless ``--timing`` is
given; diagnostics go to standard error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .correlation import acf_direct, t_vector
from .predicates import barker_even_structure, barker_odd_structure, symmetry_report
from .search import CONSTRAINTS, BudgetError, SearchConfig, known_barker_lengths, search_barker
from .seqcore import BinarySequence, SequenceError, deltas, parse_sequence
from .verify import (
    DEFAULT_BUDGET,
    REGISTRY,
    UnknownIdentityError,
    verify_identity,
    verify_lemma7,
    verify_theorem1,
)

EXIT_OK = 0
EXIT_FALSIFIED = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _emit_json(payload) -> None:
    sys.stdout.write(json.dumps(payload, indent=2, sort_keys=False) + "\n")


def _parse_range(text: str) -> tuple[int, int]:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return int(lo), int(hi)
        n = int(text)
        return n, n
    except ValueError:
        raise UsageError(f"invalid length range {text!r}; use N or LO..HI") from None


# -- analyze ----------------------------------------------------------------

def analyze_payload(a: BinarySequence) -> dict:
    c = acf_direct(a)
    rep = symmetry_report(a)
    structure = None
    if rep.is_barker and a.n % 2 == 1:
        structure = {"kind": "odd", **barker_odd_structure(a).to_dict()}
    elif rep.is_barker and a.n >= 4:
        structure = {"kind": "even", **barker_even_structure(a).to_dict()}
    return {
        "sequence": a.render(),
        "n": a.n,
        "acf": list(c.values),
        "t": list(t_vector(a).values),
        "delta": list(deltas(a)),
        "symmetry": rep.to_dict(),
        "structure": structure,
    }


def _fmt_vec(v) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def _print_analysis(p: dict) -> None:
    out = sys.stdout
    out.write(f"sequence  {p['sequence']}  (n={p['n']})\n")
    out.write(f"acf       {_fmt_vec(p['acf'])}\n")
    out.write(f"T         {_fmt_vec(p['t'])}\n")
    out.write(f"delta     {_fmt_vec(p['delta'])}\n")
    for key, val in p["symmetry"].items():
        if key == "first_violation":
            continue
        out.write(f"{key:<26}{'n/a' if val is None else str(val).lower()}\n")
    fv = p["symmetry"]["first_violation"]
    if fv:
        out.write(f"first_violation           {fv['property']} at k={fv['k']}: "
                  f"expected {fv['expected']}, got {fv['actual']}\n")
    if p["structure"]:
        s = p["structure"]
        out.write(f"{s['kind']}-length Barker structure: {'ok' if s['ok'] else 'VIOLATED'}\n")


def cmd_analyze(args) -> int:
    if args.file:
        lines = [ln.strip() for ln in Path(args.file).read_text().splitlines()]
        texts = [ln for ln in lines if ln and not ln.startswith("#")]
    elif args.sequence:
        texts = [args.sequence]
    else:
        raise UsageError("analyze needs a sequence argument or --file")
    payloads = [analyze_payload(parse_sequence(t)) for t in texts]
    if args.format == "json":
        _emit_json(payloads[0] if len(payloads) == 1 and not args.file else payloads)
    else:
        for i, p in enumerate(payloads):
            if i:
                sys.stdout.write("\n")
            _print_analysis(p)
    return EXIT_OK


# -- verify -----------------------------------------------------------------

_TABLE_HEAD = f"{'identity':<12} {'lengths':<9} {'checked':>10} {'passed':>10}  result"


def _table_row(r) -> str:
    span = f"{r.lengths[0]}..{r.lengths[-1]}" if r.lengths else "-"
    return f"{r.identity_id:<12} {span:<9} {r.checked:>10} {r.passed:>10}  {'PASS' if r.ok else 'FAIL'}"


def cmd_verify(args) -> int:
    target = args.identity
    special = ("theorem1", "lemma7")
    if target not in REGISTRY and target != "all" and target not in special:
        raise UnknownIdentityError(target)
    default_range = "4..24" if target in special else "2..12"
    lo, hi = _parse_range(args.range or default_range)

    if target in special:
        return _verify_special(target, lo, hi, args)

    if args.mode == "random" and args.seed is None:
        raise UsageError("random mode requires --seed")
    ids = list(REGISTRY) if target == "all" else [target]
    reports = [
        verify_identity(i, lo, hi, args.mode, samples=args.samples, seed=args.seed,
                        population=args.population, workers=args.workers,
                        budget=args.budget if args.budget is not None else DEFAULT_BUDGET)
        for i in ids
    ]
    if args.format == "json":
        _emit_json([r.to_dict(args.timing) for r in reports])
    else:
        sys.stdout.write(_TABLE_HEAD + "\n")
        for r in reports:
            sys.stdout.write(_table_row(r) + "\n")
            if r.first_counterexample:
                ce = r.first_counterexample
                sys.stdout.write(f"  counterexample n={ce['n']} {ce['sequence']}: {ce['detail']}\n")
            if args.timing:
                sys.stdout.write(f"  elapsed {r.elapsed:.3f}s\n")
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FALSIFIED


def _verify_special(target: str, lo: int, hi: int, args) -> int:
    step = 2 if target == "theorem1" else 4
    first = lo + (-lo) % step
    lengths = [n for n in range(max(first, 4), hi + 1, step)]
    if not lengths:
        raise UsageError(f"no admissible lengths for {target} in {lo}..{hi}")
    fn = verify_theorem1 if target == "theorem1" else verify_lemma7
    reports = [fn(n, workers=args.workers, max_n=args.budget) for n in lengths]
    if args.format == "json":
        _emit_json([r.to_dict(args.timing) for r in reports])
    elif target == "theorem1":
        sys.stdout.write(f"{'n':>4} {'barker':>8} {'matching':>9}  result\n")
        for r in reports:
            sys.stdout.write(f"{r.n:>4} {r.barker_count:>8} {r.match_count:>9}  {'PASS' if r.ok else 'FAIL'}\n")
    else:
        sys.stdout.write(f"{'n':>4} {'population':>11} {'checked':>8} {'passed':>7}  result\n")
        for r in reports:
            tag = "PASS (vacuous)" if r.ok and r.vacuous else ("PASS" if r.ok else "FAIL")
            sys.stdout.write(f"{r.n:>4} {r.population:>11} {r.checked:>8} {r.passed:>7}  {tag}\n")
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FALSIFIED


# -- search / lengths -------------------------------------------------------

def cmd_search(args) -> int:
    config = SearchConfig(
        n=args.n,
        prune=not args.no_prune,
        canonicalize=args.canonical,
        max_results=args.max_results,
        workers=args.workers,
        max_n=args.budget,
        constraint=args.constraint,
    )
    res = search_barker(config)
    if args.format == "json":
        _emit_json(res.to_dict(args.timing))
    else:
        for s in res.sequences:
            sys.stdout.write(s.render() + "\n")
        tail = f"# n={res.n} count={len(res.sequences)} nodes={res.nodes_visited} pruned={res.pruned}"
        if args.timing:
            tail += f" elapsed={res.elapsed:.3f}s"
        sys.stdout.write(tail + "\n")
    return EXIT_OK


def cmd_lengths(args) -> int:
    lengths = sorted(known_barker_lengths())
    if args.format == "json":
        _emit_json(lengths)
    else:
        sys.stdout.write(" ".join(str(n) for n in lengths) + "\n")
    return EXIT_OK


# -- parser -----------------------------------------------------------------

def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--workers", type=_positive, default=1)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--budget", type=_positive, default=None,
                        help="verify: max evaluations per identity; search: max length")
    common.add_argument("--timing", action="store_true", help="include elapsed times in the output")

    parser = argparse.ArgumentParser(prog="barkerkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="correlations and symmetry of one sequence")
    p.add_argument("sequence", nargs="?", help='"+-" string or comma-separated 1/-1 list')
    p.add_argument("--file", help="file with one sequence per line")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", parents=[common], help="check identities over sequence populations")
    p.add_argument("identity", help="identity id, 'all', 'theorem1' or 'lemma7'")
    p.add_argument("range", nargs="?", help="length range N or LO..HI")
    p.add_argument("--mode", choices=("exhaustive", "random"), default="exhaustive")
    p.add_argument("--samples", type=_positive, default=1000, help="sequences per length in random mode")
    p.add_argument("--population", choices=("all", "halves"), default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", parents=[common], help="find Barker sequences of length n")
    p.add_argument("n", type=int)
    p.add_argument("--no-prune", action="store_true", help="plain enumeration instead of pruned search")
    p.add_argument("--canonical", action="store_true", help="one representative per symmetry orbit")
    p.add_argument("--max-results", type=int, default=None)
    p.add_argument("--constraint", choices=CONSTRAINTS, default=None)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("lengths", parents=[common], help="print the known Barker lengths")
    p.set_defaults(func=cmd_lengths)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UnknownIdentityError as exc:
        known = ", ".join(list(REGISTRY) + ["all", "theorem1", "lemma7"])
        print(f"error: unknown identity {exc.args[0]!r}; known: {known}", file=sys.stderr)
    except (UsageError, SequenceError, BudgetError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
