"""
Command-line surface.

Exit codes: 0 success / decided true, 1 decided false (iso) or failed
verification, 2 invalid input or usage, 3 reconstruction Undefined.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import cells as _cells
from . import delta as _delta
from . import forms as _forms
from . import oracle as _oracle
from . import tree as _tree


def _read_text(path):
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _load_tree(path):
    try:
        return _tree.parse_tree(_read_text(path))
    except (OSError, ValueError) as exc:
        raise SystemExit(_fail("cannot read tree %r: %s" % (path, exc)))


def _load_delta(path):
    try:
        return _delta.DeltaGraph.from_json(json.loads(_read_text(path)))
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise SystemExit(_fail("cannot read delta %r: %s" % (path, exc)))


def _fail(msg):
    print("error: %s" % msg, file=sys.stderr)
    return 2


def cmd_subdivide(args):
    t = _load_tree(args.tree)
    print(_tree.to_text(_tree.subdivide_for(t, args.n)))
    return 0


def cmd_cells(args):
    t = _tree.subdivide_for(_load_tree(args.tree), args.n)
    for c in _cells.enumerate_reduced_1cells(t, args.n):
        if args.critical and not _cells.is_critical(c):
            continue
        print(json.dumps(c.to_json(), sort_keys=True))
    return 0


def cmd_betti(args):
    t = _oracle.subdivide_exact(_load_tree(args.tree), args.n)
    try:
        cx = _oracle.build_complex(t, args.n, max_dim=3)
    except _oracle.BudgetExceeded as exc:
        return _fail(str(exc))
    print(" ".join(str(b) for b in _oracle.betti(cx)))
    return 0


def cmd_radial_rank(args):
    print(_cells.radial_rank(args.n, args.degree))
    return 0


def cmd_delta(args):
    t = _tree.subdivide_for(_load_tree(args.tree), args.n)
    dg = _delta.build_delta(t, args.n)
    if args.format == "dot":
        print(dg.to_dot())
    else:
        print(_delta.delta_to_json_text(dg))
    return 0


def cmd_reconstruct(args):
    dg = _load_delta(args.delta)
    n = args.n if args.n is not None else dg.n
    if n is None:
        n = _delta.detect_n(dg)
        if n == "unknown":
            return _fail("cannot determine n; pass --n")
    try:
        t = _delta.reconstruct_tree(dg, n)
    except _delta.Undefined as exc:
        print("undefined: %s" % exc, file=sys.stderr)
        return 3
    print(_tree.to_text(t))
    return 0


def cmd_detect_n(args):
    print(_delta.detect_n(_load_delta(args.delta)))
    return 0


def cmd_iso(args):
    if args.delta:
        spec_a, spec_b = _load_delta(args.a), _load_delta(args.b)
    else:
        na = args.n if args.n is not None else args.na
        nb = args.n if args.n is not None else args.nb
        if na is None or nb is None:
            return _fail("iso requires --n or both --na and --nb")
        spec_a = (_load_tree(args.a), na)
        spec_b = (_load_tree(args.b), nb)
    try:
        same = _delta.decide_isomorphic(spec_a, spec_b)
    except _delta.Undefined as exc:
        print("undefined: %s" % exc, file=sys.stderr)
        return 3
    except ValueError as exc:
        return _fail(str(exc))
    print("isomorphic" if same else "not isomorphic")
    return 0 if same else 1


def cmd_verify(args):
    t = _load_tree(args.tree)
    report = {
        "counts": _oracle.verify_morse_counts(t, args.n),
        "coboundary": _oracle.verify_d_equals_delta(
            t, args.n, args.forms_sample),
    }
    print(json.dumps(report, indent=2, sort_keys=True))
    ok = all(r["pass"] is not False for r in report.values())
    return 0 if ok else 1


def cmd_presentation(args):
    t = _tree.subdivide_for(_load_tree(args.tree), args.n)
    n = args.n
    kverts, edges = _forms.build_complex_K(t, n)
    index = {c: i for i, c in enumerate(kverts)}
    out = {
        "vertices": [c.to_json() for c in kverts],
        "edges": sorted(sorted((index[a], index[b])) for a, b in
                        (tuple(e) for e in edges)),
        "relations": [],
    }
    # coboundary support chains of the necessary 0- and 1-forms
    all_cells = _cells.enumerate_reduced_1cells(t, n)
    seen = set()
    for c in all_cells:
        if _cells.is_critical(c) or (c.a, c.x) in seen:
            continue
        seen.add((c.a, c.x))
        form = _forms.BasicForm((c.a, c.x), ())
        if _forms.is_necessary(form, t, n) is None:
            continue
        terms = _forms.differential_0form(t, c.a, c.x).terms
        out["relations"].append({
            "form": str(form),
            "support": sorted(str(u) for u in terms),
        })
    criticals = [c for c in all_cells if _cells.is_critical(c)]
    for c in all_cells:
        for c1 in criticals:
            if c.a == c1.a:
                continue
            form = _forms.BasicForm((c.a, c.x), (c1,))
            if _forms.is_necessary(form, t, n) is None:
                continue
            support = _forms.differential(form, t).terms
            out["relations"].append({
                "form": str(form),
                "support": sorted(str(u) for u in support),
            })
    out["relations"].sort(key=lambda r: r["form"])
    print(json.dumps(out, indent=2, sort_keys=True))
    return 0


def build_parser():
    p = argparse.ArgumentParser(
        prog="treebraid",
        description="Discrete-Morse invariants of tree braid groups.")
    sub = p.add_subparsers(dest="verb", required=True)

    def add(name, fn, tree_arg=True, n_default=4):
        sp = sub.add_parser(name)
        if tree_arg:
            sp.add_argument("tree", help="plane-tree file ('-' for stdin)")
        sp.add_argument("--n", type=int, default=n_default)
        sp.set_defaults(fn=fn)
        return sp

    add("subdivide", cmd_subdivide)
    sp = add("cells", cmd_cells)
    sp.add_argument("--critical", action="store_true")
    add("betti", cmd_betti)
    sp = add("radial-rank", cmd_radial_rank, tree_arg=False)
    sp.add_argument("--degree", type=int, required=True)
    sp = add("delta", cmd_delta)
    sp.add_argument("--format", choices=("json", "dot"), default="json")
    sp = sub.add_parser("reconstruct")
    sp.add_argument("--delta", required=True)
    sp.add_argument("--n", type=int, default=None)
    sp.set_defaults(fn=cmd_reconstruct)
    sp = sub.add_parser("detect-n")
    sp.add_argument("--delta", required=True)
    sp.set_defaults(fn=cmd_detect_n)
    sp = sub.add_parser("iso")
    sp.add_argument("a")
    sp.add_argument("b")
    sp.add_argument("--n", type=int, default=None)
    sp.add_argument("--na", type=int, default=None)
    sp.add_argument("--nb", type=int, default=None)
    sp.add_argument("--delta", action="store_true",
                    help="inputs are Delta JSON files, not trees")
    sp.set_defaults(fn=cmd_iso)
    sp = add("verify", cmd_verify)
    sp.add_argument("--forms-sample", type=int, default=50)
    add("presentation", cmd_presentation)
    return p


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
