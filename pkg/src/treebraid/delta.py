"""
The simplicial complex Delta carrying the exterior-face-algebra
structure of H*(B_nT), CUB data of critical cells, the neighborhood
hierarchy, reconstruction of the defining tree from Delta, strand-count
detection, and the isomorphism decision for n in {4, 5}.
"""

from __future__ import annotations

import json
from typing import NamedTuple, Optional

from . import cells as _cells
from . import forms as _forms
from . import tree as _tree
from .cells import ReducedOneCell


class Undefined(Exception):
    """The tree T_Delta is undefined for this complex; carries the
    failing condition.  Signals invalid input, not an internal error."""


# ---------------------------------------------------------------------------
# the complex Delta


class DeltaGraph:
    """A 1-dimensional simplicial complex.

    vertices are indices 0..m-1; cells[i] optionally labels vertex i
    with the critical 1-cell c of its class Mc*; edges is a set of
    frozenset index pairs.  n is the strand count when known.
    """

    def __init__(self, num_vertices, edges, cells=None, n=None):
        self.num_vertices = num_vertices
        self.edges = {frozenset(e) for e in edges}
        for e in self.edges:
            if len(e) != 2 or not all(0 <= v < num_vertices for v in e):
                raise ValueError("bad edge %r" % (sorted(e),))
        self.cells = list(cells) if cells is not None else [None] * num_vertices
        self.n = n

    def neighborhoods(self):
        """List of frozensets: the vertex neighborhood of each vertex."""
        nb = [set() for _ in range(self.num_vertices)]
        for e in self.edges:
            i, j = sorted(e)
            nb[i].add(j)
            nb[j].add(i)
        return [frozenset(s) for s in nb]

    def to_json(self):
        out = {"vertices": [], "edges": sorted(sorted(e) for e in self.edges)}
        if self.n is not None:
            out["n"] = self.n
        for i in range(self.num_vertices):
            v = {"id": i}
            if self.cells[i] is not None:
                v["cell"] = self.cells[i].to_json()
            out["vertices"].append(v)
        return out

    @classmethod
    def from_json(cls, obj):
        verts = obj["vertices"]
        ids = [v["id"] for v in verts]
        if sorted(ids) != list(range(len(ids))):
            raise ValueError("vertex ids must be 0..m-1")
        cells = [None] * len(ids)
        for v in verts:
            if "cell" in v:
                cells[v["id"]] = ReducedOneCell.from_json(v["cell"])
        return cls(len(ids), [frozenset(e) for e in obj["edges"]],
                   cells=cells, n=obj.get("n"))

    def to_dot(self, name="Delta"):
        lines = ["graph %s {" % name]
        for i in range(self.num_vertices):
            label = "" if self.cells[i] is None else \
                ' [label="%d,%d,%s"]' % (
                    self.cells[i].a, self.cells[i].d, list(self.cells[i].x))
            lines.append("  v%d%s;" % (i, label))
        for e in sorted(sorted(x) for x in self.edges):
            lines.append("  v%d -- v%d;" % (e[0], e[1]))
        lines.append("}")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# cup constants and the edge test


def cup_constant(c, dprime, n):
    """epsilon_c(d'): 0 if d' = 0 or d' > d; 0 if 0 < d' < d and some
    other index in (0, d) is occupied; 0 if c is exceptional of Type I;
    else 1."""
    if dprime == 0 or dprime > c.d:
        return 0
    if 0 < dprime < c.d and any(
            c.x[i] > 0 for i in range(1, c.d) if i != dprime):
        return 0
    if n == 5 and _forms.classify_exceptional(c, n) == "I":
        return 0
    return 1


def _r_key(c):
    # cross-vertex <_r comparisons are unaffected by the Type I/II swap,
    # and same-vertex pairs never have an upper bound, so the plain
    # lexicographic key suffices here
    return (c.a, -c.x[0], c.d, c.x)


def m_cup_adjacent(c, cp, t, n):
    """Whether Mc* cup M(cp)* is nonzero, by the combinatorial
    characterization: keyed to the <_r-smaller cell s of the pair,
    (1) s not Type I/II and the least upper bound is critical,
    (2) s Type I and the least upper bound is noncritical,
    (3) s Type II, critical least upper bound, and the direction toward
    the other cell is not s's smallest occupied direction."""
    if c == cp or c.a == cp.a or not _cells.upper_bound_exists(c, cp, t):
        return False
    small, other = sorted((c, cp), key=_r_key)
    s_critical = _cells.lub_is_critical(c, cp, t)
    kind = _forms.classify_exceptional(small, n) if n == 5 else None
    if kind == "I":
        return not s_critical
    if kind == "II":
        alpha = _tree.direction(t, small.a, other.a)
        smallest = next(i for i, v in enumerate(small.x) if v != 0)
        return s_critical and alpha != smallest
    return s_critical


def build_delta(t, n):
    """Delta for (t, n): one vertex per critical 1-cell (in <_r order),
    edges the pairs whose M-classes cup nontrivially."""
    order = _forms.ROrder(t, n)
    crit = order.critical
    index = {c: i for i, c in enumerate(crit)}
    edges = set()
    for i in range(len(crit)):
        for j in range(i + 1, len(crit)):
            if m_cup_adjacent(crit[i], crit[j], t, n):
                edges.add(frozenset((i, j)))
    dg = DeltaGraph(len(crit), edges, cells=crit, n=n)
    dg._index = index
    return dg


# ---------------------------------------------------------------------------
# CUB data


class CubData(NamedTuple):
    direction: int        # d_c
    number: int           # CUB(c)
    constant: int         # epsilon_c = epsilon_c(d_c)


def m_cup_neighborhood(c, t, n, delta=None):
    """All critical 1-cells c1 with Mc* cup Mc1* nonzero."""
    if delta is None:
        delta = build_delta(t, n)
    return [c1 for c1 in delta.cells
            if c1 is not None and c1 != c and m_cup_adjacent(c, c1, t, n)]


def cub_data(c, t, n, delta=None):
    """CUB direction, number and cup constant of c, or None when the
    M-cup neighborhood is empty.  The direction toward every neighbor is
    asserted unique."""
    partners = m_cup_neighborhood(c, t, n, delta)
    if not partners:
        return None
    dirs = {_tree.direction(t, c.a, c1.a) for c1 in partners}
    assert len(dirs) == 1, "CUB direction is not unique: %r" % (dirs,)
    d_c = dirs.pop()
    eps = cup_constant(c, d_c, n)
    return CubData(d_c, c.x[d_c] - eps, eps)


def neighborhood_structure_test(c, cp, t, n, data_c=None, data_cp=None):
    """Structural adjacency test: distinct vertices, each lying in the
    other's CUB direction, and CUB(c) + CUB(c') >= n.  Agrees with
    m_cup_adjacent whenever both neighborhoods are nonempty."""
    data_c = data_c or cub_data(c, t, n)
    data_cp = data_cp or cub_data(cp, t, n)
    if data_c is None or data_cp is None:
        raise ValueError("both cells must have nonempty neighborhoods")
    return (c.a != cp.a
            and _tree.direction(t, c.a, cp.a) == data_c.direction
            and _tree.direction(t, cp.a, c.a) == data_cp.direction
            and data_c.number + data_cp.number >= n)


# ---------------------------------------------------------------------------
# the neighborhood hierarchy


class Hierarchy:
    """Equivalence classes of Delta-vertices with nonempty, equal
    neighborhoods, ordered by neighborhood inclusion.

    classes[i] is a sorted list of vertex ids; ns[i] their common
    neighborhood.  maximal lists the <=_N-maximal class indices.
    """

    def __init__(self, delta):
        self.delta = delta
        neigh = delta.neighborhoods()
        by_ns = {}
        for v in range(delta.num_vertices):
            if neigh[v]:
                by_ns.setdefault(neigh[v], []).append(v)
        items = sorted(by_ns.items(), key=lambda kv: kv[1])
        self.ns = [ns for ns, _ in items]
        self.classes = [sorted(members) for _, members in items]
        m = len(self.ns)
        self.maximal = [
            i for i in range(m)
            if not any(j != i and self.ns[i] < self.ns[j] for j in range(m))]

    def descendants(self, i):
        """Class indices j with N_j a subset of N_i (including i)."""
        return [j for j in range(len(self.ns)) if self.ns[j] <= self.ns[i]]

    def children(self, i, within=None):
        """Hasse children of class i (strict inclusion, nothing between),
        optionally restricted to the class indices in `within`."""
        pool = set(range(len(self.ns))) if within is None else set(within)
        out = []
        for j in sorted(pool):
            if not (self.ns[j] < self.ns[i]):
                continue
            if any(self.ns[j] < self.ns[k] < self.ns[i] for k in pool):
                continue
            out.append(j)
        return out


def hierarchy(delta):
    return Hierarchy(delta)


def _neighborhood_size(h, i):
    """|N_v| for any member v of class i."""
    return len(h.ns[i])


def _h_prime(h, root):
    """Vertices and edges of H': the descendants of the root class plus
    the auxiliary node p_1 (represented as the string "p1")."""
    desc = h.descendants(root)
    edges = {frozenset(("p1", root))}
    for i in desc:
        for j in h.children(i, within=desc):
            edges.add(frozenset((i, j)))
    return ["p1"] + desc, edges


def _solve_Y(m, target):
    """The unique x > 2 with Y_m(x) == target, or None (Y_m is strictly
    increasing in x for x >= 3)."""
    for x in range(3, 65):
        v = _cells.radial_rank(m, x)
        if v == target:
            return x
        if v > target:
            return None
    return None


def _grow_tree(children_of, pdeg, pdeg_root):
    """Plane tree text: * - p_1 - (H subtrees + leaves), each vertex
    padded with leaf edges up to its target degree."""

    def emit(v, parent_edges=1):
        subs = [emit(u) for u in children_of.get(v, [])]
        pad = pdeg[v] - parent_edges - len(subs)
        return "(" + "".join(subs) + "()" * pad + ")"

    root_subs = [emit(u) for u in children_of["p1"]]
    pad = pdeg_root - 1 - len(root_subs)
    return "(" + "(" + "".join(root_subs) + "()" * pad + ")" + ")"


def reconstruct_tree(delta, n, root=None):
    """The tree T_Delta grown from the neighborhood hierarchy of a
    maximal class, following the Y-degree equations.  root selects the
    <=_N-maximal class (default: the first, deterministically); raises
    Undefined when the complex is not a tree braid Delta.
    """
    if n not in (4, 5):
        raise ValueError("n must be 4 or 5")
    h = hierarchy(delta)
    if not h.ns:  # every neighborhood empty: radial (free group) case
        deg = _solve_Y(n, delta.num_vertices)
        if deg is None:
            raise Undefined(
                "no radial tree: |Delta| = %d is not a Y_%d value"
                % (delta.num_vertices, n))
        return _tree.parse_tree("((" + "()" * (deg - 1) + "))")
    root = h.maximal[0] if root is None else root
    if root not in h.maximal:
        raise ValueError("root must be a <=_N-maximal class")
    desc = h.descendants(root)
    root_children = h.children(root, within=desc)

    kept = list(desc)
    if n == 5:
        full = set(desc)
        candidate = None
        for j in root_children:
            dj = set(h.descendants(j))
            if 2 * len(dj) != len(full):
                continue
            ok = True
            for u in root_children:
                for v in root_children:
                    if u >= v:
                        continue
                    common = set(h.descendants(u)) & set(h.descendants(v))
                    if common and u not in dj and v not in dj:
                        ok = False
            if ok:
                candidate = j
                break
        if candidate is None:
            raise Undefined("no pruning child exists (n = 5)")
        pruned = set(h.descendants(candidate))
        kept = [i for i in desc if i not in pruned]

    # the exceptional three-vertex case (n = 5): H = {p1, [v0], [u]}
    if n == 5 and len(kept) == 2:
        if len(desc) != 4:
            raise Undefined("three-vertex H without a five-vertex H'")
        others = [i for i in desc if i != root and i not in
                  h.children(root, within=desc)]
        if len(others) != 1:
            raise Undefined("three-vertex H without a unique joint child")
        w = others[0]
        a = _solve_Y(2, len(h.classes[root]))
        yb = next(
            (x for x in range(3, 65)
             if _cells.radial_rank(3, x) - _cells.radial_rank(2, x)
             == len(h.classes[w])), None)
        cdeg = _solve_Y(2, _neighborhood_size(h, w))
        if a is None or yb is None or cdeg is None:
            raise Undefined("no degrees solve the exceptional equations")
        mid = "(" + "()" * (cdeg - 1) + ")" + "()" * (yb - 2)
        return _tree.parse_tree("((" + "(" + mid + ")" + "()" * (a - 2) + "))")

    # H must be a tree; root it at p1
    kept_set = set(kept)
    children_of = {"p1": [root]}
    parent = {root: "p1"}
    queue = [root]
    edge_count = 1
    while queue:
        i = queue.pop()
        # children are taken in the full hierarchy H', then restricted to
        # the surviving vertices (pruning removes vertices and their edges)
        kids = [j for j in h.children(i, within=desc) if j in kept_set]
        for j in kids:
            if j in parent:
                raise Undefined("H is not a tree")
            parent[j] = i
            queue.append(j)
            edge_count += 1
        children_of[i] = kids
    if len(parent) != len(kept):
        raise Undefined("H is not a tree")

    pdeg = {}
    for i in kept:
        kids = children_of[i]
        if not kids:  # leaf of H
            pdeg[i] = _solve_Y(n - 2, _neighborhood_size(h, i))
        else:
            sizes = {len(h.classes[j]) for j in kids}
            if len(sizes) != 1:
                pdeg[i] = None
            else:
                pdeg[i] = _solve_Y(2, sizes.pop())
        if pdeg[i] is None:
            raise Undefined("pdeg undefined for a class of H")
        if kids and len(kids) > pdeg[i] - 1:
            raise Undefined("class has more children than its degree allows")
    pdeg_root = _solve_Y(2, len(h.classes[root]))
    if pdeg_root is None:
        raise Undefined("pdeg_1 undefined")
    return _tree.parse_tree(_grow_tree(children_of, pdeg, pdeg_root))


def detect_n(delta):
    """4, 5, or "unknown": 5 iff two children of a maximal class share a
    common child; unknown iff all neighborhoods are empty (free group)."""
    h = hierarchy(delta)
    if not h.ns:
        return "unknown"
    root = h.maximal[0]
    desc = h.descendants(root)
    kids = h.children(root, within=desc)
    for ii in range(len(kids)):
        down_i = set(h.children(kids[ii], within=desc))
        for jj in range(ii + 1, len(kids)):
            if down_i & set(h.children(kids[jj], within=desc)):
                return 5
    return 4


# ---------------------------------------------------------------------------
# the isomorphism decision


def _as_delta(spec):
    """Normalize a (tree, n) pair or DeltaGraph to (DeltaGraph, tree?)."""
    if isinstance(spec, DeltaGraph):
        return spec, None
    t, n = spec
    ts = _tree.subdivide_for(t, n)
    if n in (4, 5):
        return build_delta(ts, n), t
    # outside {4,5} only the free case is decidable; Delta degenerates
    # to isolated vertices when there are no critical 2-cells
    c1, c2 = _cells.count_critical_cells(ts, n)
    if c2 != 0:
        raise ValueError("isomorphism decision requires n in {4, 5} "
                         "for non-free groups")
    return DeltaGraph(c1, set(), n=n), t


def decide_isomorphic(spec1, spec2):
    """Whether the two tree braid groups are isomorphic.

    Each spec is a (PlaneTree, n) pair or a DeltaGraph.  Free groups
    (edgeless Delta) compare by rank; a free and a non-free group are
    never isomorphic; otherwise the defining trees are compared up to
    homeomorphism, reconstructing from Delta where no tree was given.
    Raises Undefined when an alleged Delta admits no tree.
    """
    d1, t1 = _as_delta(spec1)
    d2, t2 = _as_delta(spec2)
    free1, free2 = not d1.edges, not d2.edges
    if free1 != free2:
        return False
    if free1:
        return d1.num_vertices == d2.num_vertices
    if t1 is None:
        n1 = d1.n if d1.n in (4, 5) else detect_n(d1)
        if n1 not in (4, 5):
            raise ValueError("cannot determine n for the first input")
        t1 = reconstruct_tree(d1, n1)
    if t2 is None:
        n2 = d2.n if d2.n in (4, 5) else detect_n(d2)
        if n2 not in (4, 5):
            raise ValueError("cannot determine n for the second input")
        t2 = reconstruct_tree(d2, n2)
    return _tree.trees_homeomorphic(t1, t2)


# ---------------------------------------------------------------------------
# DOT exports


def hierarchy_to_dot(delta, pruned=False, n=None, name="H"):
    """DOT text for H' (or H when pruned=True, which requires n)."""
    h = hierarchy(delta)
    if not h.ns:
        return "graph %s {\n}" % name
    root = h.maximal[0]
    desc = h.descendants(root)
    verts, edges = _h_prime(h, root)
    lines = ["graph %s {" % name, '  p1 [label="p_1"];']
    keep = set(verts)
    if pruned and n == 5:
        for j in h.children(root, within=desc):
            dj = set(h.descendants(j))
            if 2 * len(dj) == len(desc):
                keep -= dj
                break
    for v in verts:
        if v == "p1" or v not in keep:
            continue
        lines.append('  c%d [label="[%s]"];' % (v, h.classes[v][0]))
    for e in edges:
        a, b = sorted(e, key=str)
        if a in keep and b in keep:
            na = "p1" if a == "p1" else "c%d" % a
            nb = "p1" if b == "p1" else "c%d" % b
            lines.append("  %s -- %s;" % (na, nb))
    lines.append("}")
    return "\n".join(lines)


def tree_to_dot(t, name="T"):
    lines = ["graph %s {" % name]
    for v in range(len(t)):
        shape = "doublecircle" if v == 0 else (
            "circle" if t.degree(v) >= 3 else "point")
        lines.append("  v%d [shape=%s];" % (v, shape))
    for e in t.edges():
        lines.append("  v%d -- v%d;" % (t.parent[e], e))
    lines.append("}")
    return "\n".join(lines)


def delta_to_json_text(delta):
    return json.dumps(delta.to_json(), indent=2, sort_keys=True)
