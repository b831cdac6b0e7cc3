"""
Z/2 cochain machinery on UD_nT: direction counters D / D-bar, basic
forms f(a,x)dc_1...dc_k and their differentials, necessary forms,
annihilators, the <_r order on reduced 1-cells, the change-of-basis
matrices M_omega / M_c / Ms / Mt / M, the flag complex K, and normal
forms for cup products of 1-classes.

GF(2) matrices are stored as lists of columns, each column an int
bitmask of row indices (bit i of cols[j] is the (i, j) entry).
"""

from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple, Optional

from . import cells as _cells
from . import tree as _tree
from .cells import ReducedOneCell


# ---------------------------------------------------------------------------
# direction counters


@lru_cache(maxsize=1 << 20)
def _profile(t, a, cell, bar):
    """Tuple of D_{a,i}(cell) (or D-bar) over all directions i at a.

    Each vertex counts in its direction from a; each edge counts in the
    direction of its endpoint farther from * (D) or closer to * (D-bar).
    """
    prof = [0] * t.degree(a)
    for v in cell.vertices:
        prof[_tree.direction(t, a, v)] += 1
    for e in cell.edges:
        endpoint = t.parent[e] if bar else e
        prof[_tree.direction(t, a, endpoint)] += 1
    return tuple(prof)


def count_D(t, a, i, cell):
    """Number of vertices or edges of the cell in direction i from a."""
    return _profile(t, a, cell, False)[i]


def count_Dbar(t, a, i, cell):
    """Like count_D, but each edge counts in the direction of its
    terminal (root-side) endpoint."""
    return _profile(t, a, cell, True)[i]


# ---------------------------------------------------------------------------
# basic forms


class BasicForm(NamedTuple):
    """f(a,x) dc_1 ^ ... ^ dc_k.

    base is (a, x) for the 0-form factor, or None for the constant 1;
    factors is the tuple of reduced 1-cells c_i.  A form with repeated
    factors is identically zero.
    """

    base: Optional[tuple]
    factors: tuple

    @property
    def k(self):
        return len(self.factors)

    def __str__(self):
        parts = []
        if self.base is not None:
            parts.append("f(%d,%s)" % (self.base[0], list(self.base[1])))
        parts.extend("d(%d,%d,%s)" % (c.a, c.d, list(c.x)) for c in self.factors)
        return "^".join(parts) or "1"


class FormSum(NamedTuple):
    """Z/2 formal sum of basic forms (set semantics)."""

    terms: frozenset

    def __str__(self):
        return " + ".join(sorted(str(f) for f in self.terms)) or "0"


def eval_form(form, cell, t):
    """Value of the form on an explicit cell, in Z/2.

    The 0-form factor f(a,x) is 1 iff the D- or the D-bar-profile of the
    cell at a equals x.  Each dc factor is the characteristic function
    of the 1-cell class of c: 1 iff the cell contains c's edge and its
    D-profile at c.a equals c.x.
    """
    if len(set(form.factors)) != len(form.factors):
        return 0
    if form.base is not None:
        a, x = form.base
        if _profile(t, a, cell, False) != x and _profile(t, a, cell, True) != x:
            return 0
    for c in form.factors:
        iota = t.children[c.a][c.d - 1]
        if iota not in cell.edges:
            return 0
        if _profile(t, c.a, cell, False) != c.x:
            return 0
    return 1


def _differential_terms(t, a, x, include_extraneous):
    """Reduced 1-cells whose dc appears in df(a,x).

    Terms are d(a,d',x) for every direction d' with x[d'] >= 1, plus
    d(a,d',x - e_0 + e_d') for every d' when x[0] >= 1.  No two terms
    coincide, so there is no mod-2 cancellation.  Extraneous terms exist
    as cochains but vanish in the quotient complex; they are kept only
    when requested (for raw-coboundary checks against the oracle).
    """
    deg = t.degree(a)
    out = []
    for dp in range(1, deg):
        if x[dp] >= 1:
            out.append(ReducedOneCell(a, dp, tuple(x)))
        if x[0] >= 1:
            y = list(x)
            y[0] -= 1
            y[dp] += 1
            out.append(ReducedOneCell(a, dp, tuple(y)))
    if include_extraneous:
        return out
    return [c for c in out if _cells.is_valid_reduced(c, t)]


def differential_0form(t, a, x, include_extraneous=False):
    """df(a,x) as a FormSum of pure dc terms."""
    return FormSum(frozenset(
        BasicForm(None, (c,))
        for c in _differential_terms(t, a, x, include_extraneous)))


def differential(form, t, include_extraneous=False):
    """d(f(a,x) dc_1 ... dc_k) = df(a,x) ^ dc_1 ^ ... ^ dc_k."""
    if form.base is None:
        return FormSum(frozenset())
    a, x = form.base
    return FormSum(frozenset(
        BasicForm(None, (c,) + form.factors)
        for c in _differential_terms(t, a, x, include_extraneous)))


def coboundary_oracle_check(form, t, n, complex_=None):
    """True iff d(form) agrees with the cochain coboundary of form on
    every 2-cell of the oracle complex for (t, n).

    The complex must be built on t itself (so that vertex ids agree);
    pass one in to amortize construction.
    """
    from . import oracle as _oracle

    if complex_ is None:
        complex_ = _oracle.build_complex(t, n, max_dim=2)
    dform = differential(form, t, include_extraneous=True)
    one_cells = complex_.cells_by_dim[1]
    # every term of either side contains the edge of every dc factor, so
    # 2-cells missing one of those edges contribute 0 = 0
    required = frozenset(
        t.children[c.a][c.d - 1] for c in form.factors)
    for s, faces in zip(complex_.cells_by_dim[2], complex_.faces[2]):
        if not required <= s.edges:
            continue
        lhs = 0
        for term in dform.terms:
            lhs ^= eval_form(term, s, t)
        rhs = 0
        for f in faces:
            rhs ^= eval_form(form, one_cells[f], t)
        if lhs != rhs:
            return False
    return True


# ---------------------------------------------------------------------------
# necessary forms and annihilators


def is_necessary(form, t, n):
    """The necessary reduced 1-cell of the form, or None.

    k=0: f(a,x) is necessary iff (a,d*,x), d* the smallest direction
    with x[d*] >= 1, is a reduced noncritical 1-cell; that cell is the
    necessary cell.  k=1: f(a,x)dc_1 is necessary iff there is a cell
    (a,d,x) whose class has an upper bound with [c_1] such that its edge
    is the unique respectful edge in the reduced representative of the
    least upper bound; uniqueness of d is asserted.
    """
    if form.base is None:
        return None
    a, x = form.base
    if a >= len(t) or t.degree(a) != len(x):
        return None
    if form.k == 0:
        d = next((i for i in range(1, len(x)) if x[i] >= 1), None)
        if d is None:
            return None
        c = ReducedOneCell(a, d, tuple(x))
        if _cells.is_valid_reduced(c, t) and not _cells.is_critical(c):
            return c
        return None
    if form.k != 1:
        raise ValueError("only 0- and 1-forms are in scope")
    c1 = form.factors[0]
    if c1.a == a:
        return None
    found = []
    for d in range(1, len(x)):
        if x[d] < 1:
            continue
        c = ReducedOneCell(a, d, tuple(x))
        if c == c1 or not _cells.is_valid_reduced(c, t):
            continue
        if not _cells.upper_bound_exists(c, c1, t):
            continue
        own_flag, other_flag = _cells.edge_disrespectful_in_lub(c, c1, t)
        if not own_flag and other_flag:  # e is the unique respectful edge
            found.append(c)
    assert len(found) <= 1, "necessary 1-cell is not unique: %r" % (found,)
    return found[0] if found else None


def annihilate(c_factors, s, t):
    """A_{c_1..c_k}(s): keep the terms dc of s whose class is distinct
    from every [c_i] and such that {[c_1],..,[c_k],[c]} has an upper
    bound (pairwise tests suffice for k <= 1)."""
    kept = set()
    for term in s.terms:
        (c,) = term.factors
        if any(c == ci for ci in c_factors):
            continue
        if all(_cells.upper_bound_exists(c, ci, t) for ci in c_factors):
            kept.add(term)
    return FormSum(frozenset(kept))


# ---------------------------------------------------------------------------
# exceptional critical cells (n = 5 only)


def _exceptional_dirs(c):
    """(dir1, dir2, dir3) for a 5-strand cell with two directions of
    weight >= 2, else None."""
    big = [i for i, v in enumerate(c.x) if v >= 2]
    if len(big) != 2:
        return None
    dir1, dir2 = big
    if c.x[dir1] == 3:
        dir3 = dir1
    elif c.x[dir2] == 3:
        dir3 = dir2
    else:
        dir3 = next(i for i, v in enumerate(c.x) if v == 1)
    return dir1, dir2, dir3


def classify_exceptional(c, n):
    """"I", "II", "III", or None.  Exceptional cells exist only at n=5."""
    if n != 5 or sum(c.x) != 5 or not _cells.is_critical(c):
        return None
    dirs = _exceptional_dirs(c)
    if dirs is None:
        return None
    dir1, dir2, dir3 = dirs
    if 0 < dir1 < dir2 < dir3:
        if c.d == dir2:
            return "I"
        if c.d == dir3:
            return "II"
    if 0 == dir3 < dir1 < dir2 and c.d == dir2:
        return "III"
    return None


def corresponding_cell(c, n):
    """The Type II cell matching a Type I cell and vice versa (same a
    and x; the edge moves between directions dir2 and dir3)."""
    kind = classify_exceptional(c, n)
    if kind not in ("I", "II"):
        raise ValueError("cell has no corresponding exceptional partner")
    dir1, dir2, dir3 = _exceptional_dirs(c)
    return ReducedOneCell(c.a, dir3 if kind == "I" else dir2, c.x)


# ---------------------------------------------------------------------------
# the <_r order


class ROrder:
    """Total order on all non-extraneous reduced 1-cells.

    Lexicographic on (a, -x_0, d), ties broken lexicographically on x;
    then each corresponding Type I/II pair (n=5) switches places so that
    the Type II cell is the smaller.  ri indexes all cells, si the
    critical ones, ti the noncritical ones (all 0-based).
    """

    def __init__(self, t, n):
        self.tree = t
        self.n = n
        cells = sorted(
            _cells.enumerate_reduced_1cells(t, n),
            key=lambda c: (c.a, -c.x[0], c.d, c.x))
        if n == 5:
            pos = {c: i for i, c in enumerate(cells)}
            for c in list(cells):
                if classify_exceptional(c, n) == "I":
                    c2 = corresponding_cell(c, n)
                    i, j = pos[c], pos[c2]
                    cells[i], cells[j] = cells[j], cells[i]
                    pos[c], pos[c2] = j, i
        self.cells = cells
        self.ri = {c: i for i, c in enumerate(cells)}
        self.critical = [c for c in cells if _cells.is_critical(c)]
        self.noncritical = [c for c in cells if not _cells.is_critical(c)]
        self.si = {c: i for i, c in enumerate(self.critical)}
        self.ti = {c: i for i, c in enumerate(self.noncritical)}
        self.rm = len(cells)
        self.sm = len(self.critical)
        self.tm = len(self.noncritical)


# ---------------------------------------------------------------------------
# GF(2) matrices (columns as int bitmasks)


def identity_matrix(m):
    return [1 << j for j in range(m)]


def mat_vec(cols, v):
    """Matrix-vector product over GF(2); v an int bitmask."""
    out = 0
    while v:
        low = v & -v
        out ^= cols[low.bit_length() - 1]
        v ^= low
    return out


def mat_mul(a_cols, b_cols):
    return [mat_vec(a_cols, col) for col in b_cols]


def is_lower_triangular(cols):
    return all(col & ((1 << j) - 1) == 0 for j, col in enumerate(cols))


def is_invertible(cols):
    """GF(2) invertibility by column elimination."""
    cols = list(cols)
    m = len(cols)
    used = [False] * m
    for row in range(m):
        bit = 1 << row
        piv = next(
            (j for j in range(m) if not used[j] and cols[j] & bit), None)
        if piv is None:
            return False
        used[piv] = True
        for j in range(m):
            if j != piv and cols[j] & bit:
                cols[j] ^= cols[piv]
    return True


def matrix_to_bitstrings(cols):
    """Debug dump: one string of 0/1 per row."""
    m = len(cols)
    return [
        "".join("1" if cols[j] >> i & 1 else "0" for j in range(m))
        for i in range(m)]


# ---------------------------------------------------------------------------
# the matrices M_omega, M_c, Ms, Mt, M


def u_vector(form, t, n, order):
    """u_omega: indicator bitmask of the nonzero terms of
    A_{c_1..c_k}(df(a,x)) in ROrder coordinates."""
    a, x = form.base
    ann = annihilate(form.factors, differential_0form(t, a, x), t)
    u = 0
    for term in ann.terms:
        u |= 1 << order.ri[term.factors[0]]
    return u


def matrix_M_omega(form, t, n, order):
    """Identity with column ri(c) replaced by u_omega, c the necessary
    cell of the (necessary) form."""
    c = is_necessary(form, t, n)
    if c is None:
        raise ValueError("form is not necessary")
    cols = identity_matrix(order.rm)
    cols[order.ri[c]] = u_vector(form, t, n, order)
    return cols


def necessary_witnesses(c, t, n, order):
    """All necessary 1-forms f(a,x)dc_1, c_1 critical, whose necessary
    cell is c."""
    out = []
    for c1 in order.critical:
        if c1.a == c.a or not _cells.upper_bound_exists(c, c1, t):
            continue
        form = BasicForm((c.a, c.x), (c1,))
        if is_necessary(form, t, n) == c:
            out.append(form)
    return out


def _column_M_c(c, t, n, order):
    """The ri(c)-th column of M_c (all other columns are identity).

    noncritical: u_omega of the 0-form f(a,x) with the diagonal bit
    cleared.  critical necessary (non-exceptional): u_omega of any
    witness 1-form.  Type II: identity bit plus a 1 in the row of the
    corresponding Type I cell.  Type III: 1s at c and at (a,d,y_i) for
    y_i = x - e_0 + e_i, i != d.  Otherwise the identity column.
    """
    j = order.ri[c]
    if not _cells.is_critical(c):
        u = u_vector(BasicForm((c.a, c.x), ()), t, n, order)
        return u & ~(1 << j)
    kind = classify_exceptional(c, n)
    if kind == "I":
        return 1 << j
    if kind == "II":
        return (1 << j) | (1 << order.ri[corresponding_cell(c, n)])
    if kind == "III":
        u = 1 << j
        for i in range(1, t.degree(c.a)):
            if i == c.d:
                continue
            y = list(c.x)
            y[0] -= 1
            y[i] += 1
            u |= 1 << order.ri[ReducedOneCell(c.a, c.d, tuple(y))]
        return u
    witnesses = necessary_witnesses(c, t, n, order)
    if not witnesses:
        return 1 << j
    return u_vector(witnesses[0], t, n, order)


def matrix_M_c(c, t, n, order):
    cols = identity_matrix(order.rm)
    cols[order.ri[c]] = _column_M_c(c, t, n, order)
    return cols


def build_M(t, n, order=None):
    """(Ms, Mt, M): Ms the product of critical M_c (<_r-largest
    rightmost), Mt of noncritical M_c (<_r-smallest rightmost),
    M = Mt * Ms."""
    order = order or ROrder(t, n)
    # right-multiplying by a matrix that is identity off column j
    # replaces column j of the accumulator with accumulator * u
    ms = identity_matrix(order.rm)
    for c in order.cells:  # increasing <_r; leftmost factor first
        if _cells.is_critical(c):
            j = order.ri[c]
            ms[j] = mat_vec(ms, _column_M_c(c, t, n, order))
    mt = identity_matrix(order.rm)
    for c in reversed(order.cells):  # decreasing <_r
        if not _cells.is_critical(c):
            j = order.ri[c]
            mt[j] = mat_vec(mt, _column_M_c(c, t, n, order))
    return ms, mt, mat_mul(mt, ms)


# ---------------------------------------------------------------------------
# the flag complex K


def build_complex_K(t, n):
    """K for n in {4,5}: vertices are all non-extraneous reduced
    1-cells, edges the pairs of classes with an upper bound."""
    cells = _cells.enumerate_reduced_1cells(t, n)
    edges = set()
    for i in range(len(cells)):
        for j in range(i + 1, len(cells)):
            if _cells.upper_bound_exists(cells[i], cells[j], t):
                edges.add(frozenset((cells[i], cells[j])))
    return cells, edges


# ---------------------------------------------------------------------------
# cup product normal forms


def cup_normal_form(c1, c2, t, n, order=None):
    """Expansion of [dc1 ^ dc2] over the critical-2-cell basis.

    Returns a frozenset of frozenset pairs of critical 1-cells, each
    pair naming the critical 2-cell that is the least upper bound of its
    classes.  Pairs whose least upper bound has a noncritical reduced
    representative are rewritten away using the relations of the
    presentation: the coboundary support chain of the necessary 1-form
    witnessing the respectful edge, or of the necessary 0-form of a
    noncritical member.  Each rewrite replaces a cell by strictly
    <_r-larger cells over the same vertex, so the loop terminates.
    """
    order = order or ROrder(t, n)

    def rank(c):
        return order.ri[c]

    work = set()
    if c1 != c2 and _cells.upper_bound_exists(c1, c2, t):
        work.add(frozenset((c1, c2)))
    for _ in range(order.rm * order.rm):
        target = None
        for pair in sorted(
                work, key=lambda p: sorted(rank(c) for c in p)):
            p, q = sorted(pair, key=rank)
            if not _cells.lub_is_critical(p, q, t):
                target = pair
                break
        if target is None:
            return frozenset(work)
        p, q = sorted(target, key=lambda c: c.a)  # vertex-order
        own_flag, other_flag = _cells.edge_disrespectful_in_lub(p, q, t)
        replacements = set()
        if not own_flag and other_flag:
            # p is the necessary cell of the necessary 1-form f(p)dq;
            # its coboundary support chain rewrites {p,q}
            chain = annihilate(
                [q], differential_0form(t, p.a, p.x), t)
            for term in chain.terms:
                (cell,) = term.factors
                if cell != p:
                    replacements.add(frozenset((cell, q)))
        else:
            # the respectful edge belongs to q, which is then
            # noncritical; rewrite dq via its necessary 0-form
            bad = q if not other_flag else p
            assert not _cells.is_critical(bad)
            other = p if bad is q else q
            for cell in _differential_terms(t, bad.a, bad.x, False):
                if cell == bad or cell == other:
                    continue
                if _cells.upper_bound_exists(cell, other, t):
                    replacements.add(frozenset((cell, other)))
        work.symmetric_difference_update({target})
        work.symmetric_difference_update(replacements)
    raise RuntimeError("cup product rewriting did not terminate")
