"""
Brute-force construction of the discretized configuration space UD_nT
and its Z/2 homology.

This is deliberately independent of the Morse-theoretic modules: cells
are enumerated directly as sets of n pairwise-disjoint closed vertices
and edges of a subdivided tree, boundary matrices are assembled from the
face maps (replace each edge by either endpoint), and Betti numbers come
from sparse GF(2) elimination.  Used to validate the critical-cell
counts and the d = delta identity.
"""

from __future__ import annotations

from itertools import combinations
from math import comb

from . import tree as _tree
from .cells import ExplicitCell


class BudgetExceeded(RuntimeError):
    def __init__(self, estimate, budget):
        super().__init__(
            "estimated %d cells exceeds budget %d" % (estimate, budget))
        self.estimate = estimate
        self.budget = budget


class CubeComplex:
    """Cells of UD_nT by dimension, with face maps.

    cells_by_dim[k] is a list of ExplicitCell; index[k] maps cell ->
    position; faces[k][i] lists the 2k codim-1 face indices of cell i.
    """

    def __init__(self, t, n, cells_by_dim):
        self.tree = t
        self.n = n
        self.cells_by_dim = cells_by_dim
        self.index = [
            {c: i for i, c in enumerate(cells)} for cells in cells_by_dim]
        self.faces = [None] * len(cells_by_dim)
        for k in range(1, len(cells_by_dim)):
            fk = []
            for c in cells_by_dim[k]:
                row = []
                for e in c.edges:
                    rest = c.edges - {e}
                    for endpoint in (e, t.parent[e]):
                        face = ExplicitCell(c.vertices | {endpoint}, rest)
                        row.append(self.index[k - 1][face])
                fk.append(row)
            self.faces[k] = fk

    def boundary_columns(self, k):
        """Mod-2 boundary columns of dimension-k cells as sets of row
        indices (faces appearing an even number of times cancel)."""
        cols = []
        for row in self.faces[k]:
            col = set()
            for f in row:
                col.symmetric_difference_update({f})
            cols.append(col)
        return cols


def subdivide_exact(t, n):
    """Minimal subdivision sufficient for n strands (Abrams' condition:
    every essential path has >= n-1 edges).  The oracle needs only this,
    not the Morse modules' n+2."""
    if _tree.is_sufficiently_subdivided(t, n):
        return t
    return _tree._subdivide(t, n - 1)


def _estimate_cells(t, n, max_dim):
    V = len(t)
    E = V - 1
    return sum(
        comb(E, k) * comb(max(V - 2 * k, 0), n - k)
        for k in range(0, min(max_dim, n) + 1))


def build_complex(t, n, max_dim=3, budget=5_000_000):
    """Enumerate all cells of UD_nT up to dimension max_dim.

    t must be sufficiently subdivided for n strands.
    """
    if not _tree.is_sufficiently_subdivided(t, n):
        raise ValueError("tree is not sufficiently subdivided for n strands")
    est = _estimate_cells(t, n, max_dim)
    if est > budget:
        raise BudgetExceeded(est, budget)
    V = len(t)
    edges = list(t.edges())
    cells_by_dim = []
    for k in range(0, min(max_dim, n) + 1):
        cells = []
        for esub in combinations(edges, k):
            blocked = set()
            ok = True
            for e in esub:
                if e in blocked or t.parent[e] in blocked:
                    ok = False
                    break
                blocked.add(e)
                blocked.add(t.parent[e])
            if not ok:
                continue
            free = [v for v in range(V) if v not in blocked]
            eset = frozenset(esub)
            for vsub in combinations(free, n - k):
                cells.append(ExplicitCell(frozenset(vsub), eset))
        cells_by_dim.append(cells)
    return CubeComplex(t, n, cells_by_dim)


def _rank_gf2(columns):
    """Rank of a sparse GF(2) matrix given as columns (sets of row ids),
    by persistence-style column reduction."""
    pivots = {}
    rank = 0
    for col in columns:
        col = set(col)
        while col:
            low = max(col)
            piv = pivots.get(low)
            if piv is None:
                pivots[low] = col
                rank += 1
                break
            col ^= piv
    return rank


def _rank_incidence(t_complex):
    """Rank of d_1 (2 entries per column): #0-cells minus #components of
    the 1-skeleton, via union-find."""
    n0 = len(t_complex.cells_by_dim[0])
    parent = list(range(n0))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    merges = 0
    for row in t_complex.faces[1]:
        a, b = find(row[0]), find(row[1])
        if a != b:
            parent[a] = b
            merges += 1
    return merges, n0 - merges  # (rank d_1, #components)


def betti(complex_):
    """(b_0, b_1, b_2) over GF(2).

    Requires the complex built through dimension min(3, n) so that the
    image of d_3 is available for b_2 (d_3 is zero when absent).
    """
    dims = [len(c) for c in complex_.cells_by_dim]
    if len(dims) < 2:
        return (1 if dims[0] else 0), 0, 0
    rank1, components = _rank_incidence(complex_)
    rank2 = _rank_gf2(complex_.boundary_columns(2)) if len(dims) > 2 else 0
    rank3 = _rank_gf2(complex_.boundary_columns(3)) if len(dims) > 3 else 0
    b0 = components
    b1 = dims[1] - rank1 - rank2
    b2 = (dims[2] - rank2 - rank3) if len(dims) > 2 else 0
    return b0, b1, b2


def check_dd_zero(complex_):
    """ddc = 0 over Z/2 for every cell of dimension >= 2."""
    for k in range(2, len(complex_.cells_by_dim)):
        cols = complex_.boundary_columns(k)
        lower = complex_.boundary_columns(k - 1) if k >= 2 else None
        for col in cols:
            acc = set()
            for f in col:
                acc ^= lower[f]
            if acc:
                return False
    return True


def verify_morse_counts(t, n, budget=5_000_000):
    """Compare oracle Betti numbers against the Morse-theoretic critical
    cell counts.  Returns a JSON-ready report dict; on budget overflow
    the report says skipped."""
    from . import cells as _cells

    t_oracle = subdivide_exact(t, n)
    t_morse = _tree.subdivide_for(t, n)
    c1, c2 = _cells.count_critical_cells(t_morse, n)
    report = {
        "tree": _tree.to_text(t),
        "n": n,
        "morse": [c1, c2],
    }
    try:
        cx = build_complex(t_oracle, n, max_dim=3, budget=budget)
    except BudgetExceeded as exc:
        report["skipped"] = str(exc)
        report["pass"] = None
        return report
    b0, b1, b2 = betti(cx)
    report["b"] = [b0, b1, b2]
    report["cells"] = [len(c) for c in cx.cells_by_dim]
    report["pass"] = (b0 == 1 and b1 == c1 and b2 == c2)
    return report


def verify_d_equals_delta(t, n, forms_sample, rng=None):
    """Check d(omega) = delta(omega) for sampled basic forms.

    t is the base (unsubdivided) tree; the complex is built on the
    n+2-subdivided tree so that form and complex vertices agree.
    forms_sample is the number of basic 1-forms to sample (all basic
    0-forms over essential vertices are always checked).  Returns a
    report dict.
    """
    import random

    from . import cells as _cells
    from . import forms as _forms

    rng = rng or random.Random(0)
    ts = _tree.subdivide_for(t, n)
    cx = build_complex(ts, n, max_dim=2)
    all_cells = _cells.enumerate_reduced_1cells(ts, n)
    checked = 0
    failures = []

    def check(form):
        nonlocal checked
        ok = _forms.coboundary_oracle_check(form, ts, n, complex_=cx)
        checked += 1
        if not ok:
            failures.append(form)

    seen = set()
    for c in all_cells:  # all basic 0-forms f(a, x)
        if (c.a, c.x) in seen:
            continue
        seen.add((c.a, c.x))
        check(_forms.BasicForm((c.a, c.x), ()))
    pairs = [
        (c, c1) for c in all_cells for c1 in all_cells if c.a != c1.a]
    rng.shuffle(pairs)
    for c, c1 in pairs[:forms_sample]:
        check(_forms.BasicForm((c.a, c.x), (c1,)))
    return {
        "tree": _tree.to_text(t),
        "n": n,
        "checked": checked,
        "pass": not failures,
        "failures": [str(f) for f in failures[:5]],
    }
