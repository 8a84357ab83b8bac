"""Command-line front-end: ``dispset validate|display-set|equiv|gen|bench``.

Exit codes: 0 yes/ok, 1 no, 2 usage or parse error, 3 precondition
violation, 4 the fast check and the oracle disagree.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .analysis import is_normal, is_tree_child
from .bench import DEFAULT_SIZES, run_bench
from .equivalence import same_display_set
from .errors import (
    GenerationExhausted,
    HybridArityError,
    InvalidNetwork,
    LeafSetMismatch,
    NetworkError,
    NewickSyntaxError,
    TooManyReticulations,
)
from .generate import NORMAL, TREE_CHILD, GenSpec, random_network
from .network import Network
from .newick import parse_arclist, parse_enewick, serialize_enewick
from .ops import delete_leaf
from .oracle import display_sets_equal_bruteforce, enumerate_display_set, max_reticulations_default

OK, NO, USAGE, PRECONDITION, DISAGREE = 0, 1, 2, 3, 4

ENEWICK_SUFFIXES = {".nwk", ".enwk", ".newick", ".tree", ".tre"}
ARCLIST_SUFFIXES = {".arcs", ".tsv"}


class _Fail(Exception):
    def __init__(self, code, message):
        self.code = code
        super().__init__(message)


def detect_format(path: str, text: str, override: str | None = None) -> str:
    if override:
        return override
    suffix = Path(path).suffix.lower()
    if suffix in ARCLIST_SUFFIXES:
        return "arclist"
    if suffix in ENEWICK_SUFFIXES:
        return "enewick"
    return "arclist" if "\t" in text else "enewick"


def load_network(path: str, fmt: str | None = None) -> Network:
    """Read a network file; parse problems become exit code 2, invalid graphs 3."""
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise _Fail(USAGE, f"error: cannot read {path}: {e.strerror}")
    try:
        if detect_format(path, text, fmt) == "arclist":
            return parse_arclist(text)
        return parse_enewick(text.strip())
    except (NewickSyntaxError, HybridArityError) as e:
        raise _Fail(USAGE, f"error: {path}: {e}")
    except InvalidNetwork as e:
        lines = [f"invalid; violations={len(e.report.violations)}"]
        lines += [f"violation rule={v.rule} where={v.where}" for v in e.report.violations]
        raise _Fail(PRECONDITION, "\n".join(lines))


def cmd_validate(args) -> int:
    net = load_network(args.file, args.format)
    parts = ["valid"]
    if is_tree_child(net):
        parts.append("tree-child")
        parts.append("normal" if is_normal(net) else "not-normal")
    else:
        parts.append("not-tree-child")
    parts += [f"leaves={net.n_leaves}", f"reticulations={len(net.reticulations)}"]
    print("; ".join(parts))
    return OK


def cmd_display_set(args) -> int:
    net = load_network(args.file, args.format)
    bound = args.max_ret if args.max_ret is not None else max_reticulations_default()
    try:
        trees = enumerate_display_set(net, bound)
    except TooManyReticulations as e:
        raise _Fail(PRECONDITION, f"error: {e}")
    for t in sorted(trees):
        print(t)
    print(f"count={len(trees)}")
    return OK


def minimize_disagreement(n: Network, n2: Network) -> tuple[Network, Network]:
    """Greedily delete leaves from both networks while the two checks still disagree."""

    def disagree(a, b):
        try:
            return same_display_set(a, b).equivalent != display_sets_equal_bruteforce(a, b)
        except NetworkError:
            # a deletion outside a cherry can leave the first network non-normal
            return False

    changed = True
    while changed and n.n_leaves > 2:
        changed = False
        for leaf in sorted(n.leaf_labels):
            a, b = delete_leaf(n, leaf), delete_leaf(n2, leaf)
            if disagree(a, b):
                n, n2, changed = a, b, True
                break
    return n, n2


def cmd_equiv(args) -> int:
    n = load_network(args.first, args.format)
    n2 = load_network(args.second, args.format)
    if n.leaf_labels != n2.leaf_labels:
        raise _Fail(PRECONDITION, "error: the two networks have different leaf sets")
    bound = max_reticulations_default()
    try:
        if args.oracle:
            verdict = display_sets_equal_bruteforce(n, n2, bound)
            print("YES" if verdict else "NO (display sets differ)")
            return OK if verdict else NO
        decision = same_display_set(n, n2)
        if args.both_oracle_check:
            expected = display_sets_equal_bruteforce(n, n2, bound)
            if expected != decision.equivalent:
                small, small2 = minimize_disagreement(n, n2)
                print(f"DISAGREEMENT fast={decision.equivalent} oracle={expected}")
                print(f"reproducer_first={serialize_enewick(small)}")
                print(f"reproducer_second={serialize_enewick(small2)}")
                return DISAGREE
    except (NetworkError, TooManyReticulations) as e:
        raise _Fail(PRECONDITION, f"error: {e}")
    if args.json:
        payload = {
            "equivalent": decision.equivalent,
            "reason": decision.reason,
            "removed_shortcuts": [list(a) for a in decision.removed_shortcuts],
            "trace": [r.to_dict() for r in decision.trace],
        }
        print(json.dumps(payload, indent=2))
    else:
        if args.trace:
            for a in decision.removed_shortcuts:
                print(f"removed_trivial_shortcut={a[0]},{a[1]}")
            for record in decision.trace:
                print(record.describe())
        print("YES" if decision.equivalent else f"NO ({decision.reason})")
    return OK if decision.equivalent else NO


def cmd_gen(args) -> int:
    try:
        spec = GenSpec(args.n, args.r, args.seed, args.network_class)
    except ValueError as e:
        raise _Fail(USAGE, f"error: {e}")
    try:
        net = random_network(spec)
    except GenerationExhausted as e:
        raise _Fail(PRECONDITION, f"error: {e}")
    print(serialize_enewick(net))
    return OK


def _sizes(text: str) -> list[int]:
    try:
        sizes = [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of integers: {text!r}")
    if not sizes or min(sizes) < 2:
        raise argparse.ArgumentTypeError("sizes must be integers >= 2")
    return sizes


def cmd_bench(args) -> int:
    try:
        result = run_bench(args.sizes, args.seed, args.repeats)
    except ValueError as e:
        raise _Fail(USAGE, f"error: {e}")
    for row in result.rows:
        print(f"n={row.n} mean_ms={row.mean_ms:.3f} max_ms={row.max_ms:.3f} equivalent={row.equivalent}")
    if result.exponent is not None:
        print(f"exponent={result.exponent:.3f}")
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dispset", description="Display-set equivalence of phylogenetic networks.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    fmt = dict(choices=["enewick", "arclist"], default=None, help="input format (default: by file extension)")

    v = sub.add_parser("validate", help="check the network axioms and classify")
    v.add_argument("file")
    v.add_argument("--format", **fmt)
    v.set_defaults(func=cmd_validate)

    d = sub.add_parser("display-set", help="list every displayed tree")
    d.add_argument("file")
    d.add_argument("--format", **fmt)
    d.add_argument("--max-ret", type=int, default=None, help="reticulation bound (default: $DISPSET_MAX_RET or 20)")
    d.set_defaults(func=cmd_display_set)

    e = sub.add_parser("equiv", help="decide whether a normal and a tree-child network display the same trees")
    e.add_argument("first", help="normal network")
    e.add_argument("second", help="tree-child network")
    e.add_argument("--format", **fmt)
    e.add_argument("--oracle", action="store_true", help="use brute-force enumeration only")
    e.add_argument("--trace", action="store_true", help="print one line per iteration")
    e.add_argument("--json", action="store_true", help="print the verdict and trace as JSON")
    e.add_argument("--both-oracle-check", action="store_true", help="cross-check against the oracle")
    e.set_defaults(func=cmd_equiv)

    g = sub.add_parser("gen", help="print a random network")
    g.add_argument("n", type=int, help="number of leaves")
    g.add_argument("r", type=int, help="number of reticulations")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--class", dest="network_class", choices=[NORMAL, TREE_CHILD], default=NORMAL)
    g.set_defaults(func=cmd_gen)

    b = sub.add_parser("bench", help="time the fast check on equivalent pairs")
    b.add_argument("--sizes", type=_sizes, default=list(DEFAULT_SIZES))
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--repeats", type=int, default=3)
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code else OK
    try:
        return args.func(args)
    except _Fail as f:
        stream = sys.stdout if f.code == PRECONDITION and str(f).startswith("invalid") else sys.stderr
        print(str(f), file=stream)
        return f.code
    except LeafSetMismatch as e:
        print(f"error: {e}", file=sys.stderr)
        return PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
