"""
Reduced and critical 1-cells of the discretized configuration space
UD_nT, upper bounds of pairs, and Morse-theoretic Betti counts.

A reduced 1-cell is written (a, d, x) where a is an essential vertex, d
a direction at a with d >= 1, and x the a-vector: x[i] counts strands in
direction i from a, with the edge of the cell counted once in direction
d (so x[d] >= 1 and sum(x) = n).  Non-extraneous means some strand lies
off directions {0, d}.

Explicit cells name each occupied edge by its endpoint farther from *
(see tree.py); occupied vertices and edge closures are pairwise
disjoint.
"""

from __future__ import annotations

from math import comb
from typing import NamedTuple

from . import tree as _tree


class ReducedOneCell(NamedTuple):
    a: int
    d: int
    x: tuple

    @property
    def n(self):
        return sum(self.x)

    def to_json(self):
        return {"a": self.a, "d": self.d, "x": list(self.x)}

    @classmethod
    def from_json(cls, obj):
        return cls(int(obj["a"]), int(obj["d"]), tuple(int(v) for v in obj["x"]))


class ExplicitCell(NamedTuple):
    vertices: frozenset
    edges: frozenset

    @property
    def n(self):
        return len(self.vertices) + len(self.edges)

    @property
    def dim(self):
        return len(self.edges)


def is_valid_reduced(c, t):
    """Structural validity of a reduced 1-cell triple (non-extraneous)."""
    if c.a >= len(t) or t.degree(c.a) < 3:
        return False
    deg = t.degree(c.a)
    if len(c.x) != deg or not (1 <= c.d <= deg - 1):
        return False
    if any(v < 0 for v in c.x) or c.x[c.d] < 1:
        return False
    return any(c.x[i] >= 1 for i in range(deg) if i not in (0, c.d))


def is_critical(c):
    """True iff the cell's edge is disrespectful: some strand lies in a
    direction strictly between 0 and d."""
    return any(c.x[i] >= 1 for i in range(1, c.d))


def _compositions(total, parts):
    """All tuples of `parts` nonnegative ints summing to `total`."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_reduced_1cells(t, n):
    """All non-extraneous reduced 1-cells of UD_nT.

    Requires t sufficiently subdivided for n+2 strands.
    """
    if not _tree.is_sufficiently_subdivided(t, n + 2):
        raise ValueError("tree is not sufficiently subdivided for n+2 strands")
    out = []
    for a in _tree.essential_vertices(t):
        deg = t.degree(a)
        for d in range(1, deg):
            for x in _compositions(n, deg):
                if x[d] < 1:
                    continue
                if not any(x[i] >= 1 for i in range(deg) if i not in (0, d)):
                    continue
                out.append(ReducedOneCell(a, d, x))
    return out


def _walk_chain(t, start, count):
    """Collect `count` vertices along the degree-2 chain starting at
    `start` (inclusive), walking away from the root."""
    out = []
    u = start
    for _ in range(count):
        out.append(u)
        if len(t.children[u]) != 1:
            break
        u = t.children[u][0]
    if len(out) != count:
        raise ValueError("insufficient subdivision for stacking")
    return out


def _stack(t, a, d, x):
    """Explicit occupancy of the (possibly partial) reduced cell (a,d,x):
    returns (vertex set, edge set).  sum(x) need not equal n (used for
    the upper-bound construction)."""
    verts = []
    edges = []
    deg = t.degree(a)
    # direction 0: stack x[0] strands at * and upward toward a
    if x[0] > 0:
        path = []
        u = a
        while t.parent[u] is not None:
            u = t.parent[u]
            path.append(u)
        path.reverse()  # from * toward a
        verts.extend(path[: x[0]])
        if len(path) < x[0]:
            raise ValueError("insufficient subdivision near *")
    for i in range(1, deg):
        if i == d:
            # the edge itself, plus x[d]-1 vertices stacked beyond iota(e)
            iota = t.children[a][d - 1]
            edges.append(iota)
            if x[d] - 1 > 0:
                first = t.children[iota][0]
                verts.extend(_walk_chain(t, first, x[d] - 1))
        elif x[i] > 0:
            first = t.children[a][i - 1]
            verts.extend(_walk_chain(t, first, x[i]))
    return verts, edges


def to_explicit(c, t, n):
    """Concrete blocked cell of UD_nT realizing the reduced 1-cell c."""
    assert sum(c.x) == n
    verts, edges = _stack(t, c.a, c.d, c.x)
    cell = ExplicitCell(frozenset(verts), frozenset(edges))
    assert cell.n == n
    return cell


def from_explicit(cell, t):
    """Invert to_explicit: recover (a, d, x) from a one-edge reduced cell."""
    if len(cell.edges) != 1:
        raise ValueError("expected a 1-cell")
    iota = next(iter(cell.edges))
    a = t.parent[iota]
    deg = t.degree(a)
    x = [0] * deg
    x[_tree.direction(t, a, iota)] += 1  # the edge
    for v in cell.vertices:
        x[_tree.direction(t, a, v)] += 1
    return ReducedOneCell(a, _tree.direction(t, a, iota), tuple(x))


def _ordered(c1, c2):
    """Return (c1, c2, swapped) with the vertex-order-smaller cell first."""
    if c1.a <= c2.a:
        return c1, c2, False
    return c2, c1, True


def upper_bound_exists(c1, c2, t):
    """Upper Bound Lemma test: with a <= b, alpha the direction from a to
    b, the pair {[c1],[c2]} has an upper bound iff a != b and
    x[alpha] + y[0] >= n + eps, eps = 1 iff d == alpha."""
    c1, c2, _ = _ordered(c1, c2)
    if c1.a == c2.a:
        return False
    n = c1.n
    assert n == c2.n
    alpha = _tree.direction(t, c1.a, c2.a)
    eps = 1 if c1.d == alpha else 0
    return c1.x[alpha] + c2.x[0] >= n + eps


def lub_reduced(c1, c2, t, n):
    """Least upper bound 2-cell: s1 = c1 with x[alpha] reduced by
    n - y[0], union s2 = c2 minus its direction-0 vertices."""
    c1, c2, _ = _ordered(c1, c2)
    if not upper_bound_exists(c1, c2, t):
        raise ValueError("no upper bound")
    alpha = _tree.direction(t, c1.a, c2.a)
    x1 = list(c1.x)
    x1[alpha] -= n - c2.x[0]
    v1, e1 = _stack(t, c1.a, c1.d, x1)
    y2 = list(c2.x)
    y2[0] = 0
    v2, e2 = _stack(t, c2.a, c2.d, y2)
    verts = frozenset(v1) | frozenset(v2)
    edges = frozenset(e1) | frozenset(e2)
    assert len(verts) == len(v1) + len(v2) and len(edges) == 2
    cell = ExplicitCell(verts, edges)
    assert cell.n == n
    return cell


def edge_disrespectful_in_lub(c1, c2, t):
    """Disrespect flags (for the edge of c1, the edge of c2) in the
    reduced representative of the least upper bound of {c1, c2}.

    c1 is taken to be the cell over the vertex-order-smaller vertex; the
    flags are returned in the argument order given.
    """
    a, b, swapped = _ordered(c1, c2)
    if not upper_bound_exists(a, b, t):
        raise ValueError("no upper bound")
    n = a.n
    alpha = _tree.direction(t, a.a, b.a)
    y0 = b.x[0]
    clause_a = 0 < alpha < a.d and a.x[alpha] + y0 > n
    clause_b = any(
        a.x[i] > 0 for i in range(1, a.d) if i != alpha)
    e_flag = clause_a or clause_b
    f_flag = is_critical(b)
    return (f_flag, e_flag) if swapped else (e_flag, f_flag)


def lub_is_critical(c1, c2, t):
    """True iff both edges are disrespectful in the reduced
    representative of the least upper bound."""
    e_flag, f_flag = edge_disrespectful_in_lub(c1, c2, t)
    return e_flag and f_flag


def count_critical_cells(t, n):
    """(number of critical 1-cells, number of critical 2-cells); these
    are the Betti numbers b_1, b_2 of B_nT."""
    cells = [c for c in enumerate_reduced_1cells(t, n) if is_critical(c)]
    count_1 = len(cells)
    count_2 = 0
    for i in range(len(cells)):
        for j in range(i + 1, len(cells)):
            c1, c2 = cells[i], cells[j]
            if c1.a == c2.a:
                continue
            if upper_bound_exists(c1, c2, t) and lub_is_critical(c1, c2, t):
                count_2 += 1
    return count_1, count_2


def radial_rank(n, x):
    """Y_n(x): the first Betti number of B_n of a radial tree whose
    essential vertex has degree x (a free group of this rank)."""
    if n < 2 or x < 3:
        raise ValueError("radial_rank requires n >= 2 and x >= 3")
    return sum(
        comb(n + x - 2, n - 1) - comb(n + x - i - 1, n - 1)
        for i in range(2, x))
