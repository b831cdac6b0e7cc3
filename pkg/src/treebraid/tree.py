"""
Plane trees with a Morse embedding.

A tree is stored rooted at a degree-1 basepoint * with an ordered
(clockwise) child list at every vertex.  Vertex ids are always the ranks
of the clockwise depth-first traversal from *, so the basepoint is 0 and
``a <= b`` as integers is exactly the order on vertices induced by the
embedding.

Directions at a vertex v are numbered 0..deg(v)-1: direction 0 is the
edge toward * (a vertex lies in direction 0 from itself), and the edge
to the i-th child (0-based) has direction i+1.  At * itself the unique
edge is labelled 1.

Edges are named by their endpoint farther from * (the initial endpoint
iota(e)); the terminal endpoint tau(e) is its parent.
"""

from __future__ import annotations


class TreeSyntaxError(ValueError):
    """Malformed plane-tree text; carries the offending position."""

    def __init__(self, message, position):
        super().__init__("%s (at position %d)" % (message, position))
        self.position = position


class PlaneTree:
    """Immutable plane tree rooted at the basepoint (vertex 0)."""

    __slots__ = ("parent", "children", "_subtree_end", "_hash")

    def __init__(self, parent, children):
        self.parent = tuple(parent)
        self.children = tuple(tuple(c) for c in children)
        n = len(self.parent)
        if n == 0 or self.parent[0] is not None:
            raise ValueError("vertex 0 must be the root basepoint")
        if len(self.children[0]) != 1 and n > 1:
            raise ValueError("basepoint must have degree exactly 1")
        # preorder-id invariant: children of v all have ids > v, consecutive
        # subtree blocks; _subtree_end[v] is one past the last id in v's subtree
        end = [0] * n
        for v in range(n - 1, -1, -1):
            e = v + 1
            for c in self.children[v]:
                if c <= v:
                    raise ValueError("vertex ids must be preorder ranks")
                e = max(e, end[c])
            end[v] = e
        self._subtree_end = tuple(end)
        self._hash = hash((self.parent, self.children))

    def __len__(self):
        return len(self.parent)

    def __eq__(self, other):
        return (isinstance(other, PlaneTree)
                and self.parent == other.parent
                and self.children == other.children)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "PlaneTree(%r)" % (to_text(self),)

    @property
    def basepoint(self):
        return 0

    def degree(self, v):
        return len(self.children[v]) + (0 if self.parent[v] is None else 1)

    def neighbors(self, v):
        """Neighbors of v in direction order (parent first if present)."""
        if self.parent[v] is None:
            return list(self.children[v])
        return [self.parent[v]] + list(self.children[v])

    def in_subtree(self, v, u):
        """True iff u lies in the subtree rooted at v (u == v counts)."""
        return v <= u < self._subtree_end[v]

    def edges(self):
        """All edges, named by the endpoint farther from * (iota)."""
        return range(1, len(self.parent))


def parse_tree(text):
    """Parse plane-tree text ``( child child ... )`` into a PlaneTree.

    The outermost node is the basepoint * and must contain exactly one
    child.  Whitespace is insignificant.
    """
    parent = []
    children = []
    stack = []
    pos = 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch == "(":
            vid = len(parent)
            if stack:
                parent.append(stack[-1])
                children[stack[-1]].append(vid)
            else:
                if parent:
                    raise TreeSyntaxError("multiple top-level trees", pos)
                parent.append(None)
            children.append([])
            stack.append(vid)
        elif ch == ")":
            if not stack:
                raise TreeSyntaxError("unmatched ')'", pos)
            stack.pop()
        else:
            raise TreeSyntaxError("unexpected character %r" % ch, pos)
        pos += 1
    if stack:
        raise TreeSyntaxError("unmatched '('", n)
    if not parent:
        raise TreeSyntaxError("empty input", 0)
    if len(children[0]) != 1:
        raise TreeSyntaxError(
            "basepoint must have exactly one child, got %d" % len(children[0]), 0)
    return PlaneTree(parent, children)


def to_text(t):
    """Inverse of parse_tree."""
    out = []

    def emit(v):
        out.append("(")
        for c in t.children[v]:
            emit(c)
        out.append(")")

    emit(0)
    return "".join(out)


def direction(t, frm, to):
    """Direction label at ``frm`` of the first edge on the path frm -> to.

    A vertex lies in direction 0 from itself; at * the unique edge is
    labelled 1.
    """
    if frm == to:
        return 0
    for i, c in enumerate(t.children[frm]):
        if t.in_subtree(c, to):
            return i + 1
    return 0  # toward the parent, i.e. toward *


def subdivide_for(t, n):
    """Subdivide ``t`` minimally so it is sufficiently subdivided for n+2
    strands: every path between distinct vertices of degree != 2 has at
    least (n+2)-1 edges.  Plane order and homeomorphism type preserved.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    need = (n + 2) - 1
    return _subdivide(t, need)


def is_sufficiently_subdivided(t, n):
    """True iff every path between distinct degree-!=2 vertices has at
    least n-1 edges (Abrams' condition for n strands)."""
    for v, k in _chains(t):
        if k < n - 1:
            return False
    return True


def _chains(t):
    """Yield (top_vertex, edge_count) for every maximal chain between
    consecutive degree-!=2 vertices, walking downward from the top."""
    for v in range(len(t)):
        if t.degree(v) == 2:
            continue
        for c in t.children[v]:
            k = 1
            u = c
            while t.degree(u) == 2:
                u = t.children[u][0]
                k += 1
            yield v, k


def _subdivide(t, need):
    parent = []
    children = []

    def add(par):
        vid = len(parent)
        parent.append(par)
        children.append([])
        if par is not None:
            children[par].append(vid)
        return vid

    def walk(old_v, new_par):
        v = add(new_par)
        for c in t.children[old_v]:
            # measure the old chain from old_v down to the next deg!=2 vertex
            k = 1
            u = c
            while t.degree(u) == 2:
                u = t.children[u][0]
                k += 1
            extra = max(0, need - k)
            # rebuild the chain with `extra` fresh degree-2 vertices inserted
            cur = v
            for _ in range(extra + k - 1):
                cur = add(cur)
            walk(u, cur)

    walk(0, None)
    return PlaneTree(parent, children)


def vertex_order(t):
    """Map vertex id -> rank in the clockwise DFS traversal from *.

    With the preorder-id invariant this is the identity; kept as an
    explicit object for callers that want it by name.
    """
    return {v: v for v in range(len(t))}


def essential_vertices(t):
    """Vertices of degree >= 3, in vertex order."""
    return [v for v in range(len(t)) if t.degree(v) >= 3]


def _essential_adjacency(t):
    """Map essential vertex -> list of essential vertices adjacent to it
    (connected by a path crossing no other essential vertex)."""
    ess = essential_vertices(t)
    adj = {v: [] for v in ess}
    for v in ess:
        # walk down each child chain to the next essential vertex, if any
        for c in t.children[v]:
            u = c
            while t.degree(u) < 3 and t.children[u]:
                u = t.children[u][0]
            if t.degree(u) >= 3:
                adj[v].append(u)
                adj[u].append(v)
    return adj


def is_extremal(t, v):
    """True iff v is essential and adjacent to exactly one other
    essential vertex."""
    adj = _essential_adjacency(t)
    return v in adj and len(adj[v]) == 1


def is_linear(t):
    """True iff some embedded segment contains every essential vertex."""
    adj = _essential_adjacency(t)
    return all(len(nb) <= 2 for nb in adj.values())


def is_radial(t):
    """True iff t has exactly one essential vertex."""
    return len(essential_vertices(t)) == 1


# ---------------------------------------------------------------------------
# homeomorphism canonicalization (degree-2 suppression + centroid AHU)


def _suppressed_adjacency(t):
    """Undirected adjacency of t with all degree-2 vertices suppressed.

    The basepoint is an ordinary leaf of the tree (it is part of the
    homeomorphism type); only the choice of which leaf is the basepoint
    is forgotten.
    """
    keep = [v for v in range(len(t)) if t.degree(v) != 2]
    if len(keep) <= 1:  # single-vertex tree (a tree always keeps its leaves)
        return {0: []}
    index = {v: i for i, v in enumerate(keep)}
    adj = {i: [] for i in range(len(keep))}
    for v in keep:
        for c in t.children[v]:
            u = c
            while t.degree(u) == 2:
                u = t.children[u][0]
            adj[index[v]].append(index[u])
            adj[index[u]].append(index[v])
    return adj


def _ahu_code(adj, root):
    """AHU canonical code of the rooted tree (children codes sorted)."""

    def code(v, par):
        subs = sorted(code(u, v) for u in adj[v] if u != par)
        return "(" + "".join(subs) + ")"

    return code(root, None)


def _centroids(adj):
    n = len(adj)
    if n == 1:
        return [0]
    size = {}
    order = []
    seen = {0}
    stack = [(0, None)]
    parent = {0: None}
    while stack:
        v, p = stack.pop()
        order.append(v)
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                parent[u] = v
                stack.append((u, v))
    for v in reversed(order):
        size[v] = 1 + sum(size[u] for u in adj[v] if parent.get(u) == v)
    best, cents = None, []
    for v in order:
        heavy = max(
            [n - size[v]] + [size[u] for u in adj[v] if parent.get(u) == v],
            default=0)
        if best is None or heavy < best:
            best, cents = heavy, [v]
        elif heavy == best:
            cents.append(v)
    return cents


def canonical_form(t):
    """Canonical code of the degree-2-suppressed tree: AHU rooted at the
    centroid (minimum over both centroids when there are two).  Equal
    codes iff homeomorphic."""
    adj = _suppressed_adjacency(t)
    return min(_ahu_code(adj, c) for c in _centroids(adj))


def trees_homeomorphic(t1, t2):
    """True iff t1 and t2 are homeomorphic as (unbased) trees."""
    return canonical_form(t1) == canonical_form(t2)
