import pytest

from treebraid import cells as C, forms as F, tree as T

from conftest import T_MIN, path_tree, radial_tree


@pytest.fixture(scope="module")
def tmin4():
    t = T.subdivide_for(T.parse_tree(T_MIN), 4)
    return t, C.enumerate_reduced_1cells(t, 4)


@pytest.fixture(scope="module")
def mixed5():
    # a degree-4 / degree-3 tree: exercises all three exceptional types
    t = T.subdivide_for(T.parse_tree(path_tree([4, 3])), 5)
    return t, C.enumerate_reduced_1cells(t, 5)


class TestEval:
    def test_dc_on_own_cell(self, tmin4):
        t, cells = tmin4
        for c in cells:
            ex = C.to_explicit(c, t, 4)
            assert F.eval_form(F.BasicForm(None, (c,)), ex, t) == 1

    def test_dc_distinguishes(self, tmin4):
        t, cells = tmin4
        for c in cells[:10]:
            ex = C.to_explicit(c, t, 4)
            hits = [c2 for c2 in cells
                    if F.eval_form(F.BasicForm(None, (c2,)), ex, t)]
            assert hits == [c]

    def test_repeated_factor_is_zero(self, tmin4):
        t, cells = tmin4
        c = cells[0]
        ex = C.to_explicit(c, t, 4)
        assert F.eval_form(F.BasicForm(None, (c, c)), ex, t) == 0

    def test_profiles_differ_by_edge(self, tmin4):
        t, cells = tmin4
        for c in cells[:20]:
            ex = C.to_explicit(c, t, 4)
            d = list(F._profile(t, c.a, ex, False))
            dbar = list(F._profile(t, c.a, ex, True))
            d[c.d] -= 1
            d[0] += 1
            assert d == dbar


class TestDifferential:
    def test_terms_valid_and_over_a(self, tmin4):
        t, cells = tmin4
        seen = set()
        for c in cells:
            if (c.a, c.x) in seen:
                continue
            seen.add((c.a, c.x))
            for term in F.differential_0form(t, c.a, c.x).terms:
                (u,) = term.factors
                assert u.a == c.a
                assert C.is_valid_reduced(u, t)

    def test_formal_dd_zero(self, tmin4):
        t, cells = tmin4
        for c in cells[:20]:
            df = F.differential(F.BasicForm((c.a, c.x), ()), t)
            for term in df.terms:
                assert not F.differential(term, t).terms

    def test_annihilate_subset(self, tmin4):
        t, cells = tmin4
        c0 = cells[0]
        s = F.differential_0form(t, c0.a, c0.x)
        other = next(c for c in cells if c.a != c0.a)
        ann = F.annihilate([other], s, t)
        assert ann.terms <= s.terms


class TestNecessary:
    def test_zero_form_cells_noncritical(self, tmin4):
        t, cells = tmin4
        seen = set()
        for c in cells:
            if (c.a, c.x) in seen:
                continue
            seen.add((c.a, c.x))
            nec = F.is_necessary(F.BasicForm((c.a, c.x), ()), t, 4)
            if nec is not None:
                assert not C.is_critical(nec)
                assert (nec.a, nec.x) == (c.a, c.x)

    def test_one_form_unique_respectful(self, mixed5):
        t, cells = mixed5
        crit = [c for c in cells if C.is_critical(c)]
        hits = 0
        for c in cells:
            for c1 in crit:
                if c1.a == c.a:
                    continue
                nec = F.is_necessary(F.BasicForm((c.a, c.x), (c1,)), t, 5)
                if nec is None:
                    continue
                hits += 1
                own, other = C.edge_disrespectful_in_lub(nec, c1, t)
                assert not own and other
            if hits >= 25:
                break
        assert hits > 0


class TestExceptional:
    def test_only_at_n5(self, tmin4):
        t, cells = tmin4
        assert all(F.classify_exceptional(c, 4) is None for c in cells)

    def test_all_types_present(self, mixed5):
        t, cells = mixed5
        kinds = {}
        for c in cells:
            k = F.classify_exceptional(c, 5)
            if k:
                kinds[k] = kinds.get(k, 0) + 1
        assert set(kinds) == {"I", "II", "III"}
        assert kinds["I"] == kinds["II"]

    def test_correspondence_involution(self, mixed5):
        t, cells = mixed5
        for c in cells:
            k = F.classify_exceptional(c, 5)
            if k in ("I", "II"):
                c2 = F.corresponding_cell(c, 5)
                assert (c2.a, c2.x) == (c.a, c.x)
                assert c2.d != c.d
                assert F.corresponding_cell(c2, 5) == c
                assert {k, F.classify_exceptional(c2, 5)} == {"I", "II"}

    def test_exceptional_are_critical(self, mixed5):
        t, cells = mixed5
        for c in cells:
            if F.classify_exceptional(c, 5):
                assert C.is_critical(c)


class TestROrder:
    def test_partition(self, mixed5):
        t, _ = mixed5
        order = F.ROrder(t, 5)
        assert order.rm == order.sm + order.tm
        assert sorted(order.ri.values()) == list(range(order.rm))

    def test_type_ii_precedes_type_i(self, mixed5):
        t, _ = mixed5
        order = F.ROrder(t, 5)
        for c in order.cells:
            if F.classify_exceptional(c, 5) == "II":
                assert order.ri[c] < order.ri[F.corresponding_cell(c, 5)]

    def test_sorted_off_exceptional(self, tmin4):
        t, _ = tmin4
        order = F.ROrder(t, 4)
        keys = [(c.a, -c.x[0], c.d, c.x) for c in order.cells]
        assert keys == sorted(keys)


class TestMatrices:
    def test_gf2_helpers(self):
        ident = F.identity_matrix(5)
        assert F.is_lower_triangular(ident)
        assert F.is_invertible(ident)
        cols = [0b00011, 0b00110, 0b01100, 0b11000, 0b10000]
        assert F.mat_mul(ident, cols) == cols
        assert not F.is_lower_triangular([0b11] * 2)
        assert not F.is_invertible([0b1, 0b1])

    def test_m_properties_tmin_n4(self, tmin4):
        t, _ = tmin4
        order = F.ROrder(t, 4)
        ms, mt, m = F.build_M(t, 4, order)
        assert F.is_lower_triangular(ms)
        assert F.is_lower_triangular(mt)
        assert F.is_lower_triangular(m)
        assert F.is_invertible(ms)
        crit_mask = 0
        for c in order.critical:
            crit_mask |= 1 << order.ri[c]
        for c in order.critical:
            # M maps critical classes into the span of critical classes
            assert m[order.ri[c]] & ~crit_mask == 0

    def test_ms_acts_as_mc_on_criticals(self, tmin4):
        t, _ = tmin4
        order = F.ROrder(t, 4)
        ms, _, _ = F.build_M(t, 4, order)
        for c in order.critical:
            assert ms[order.ri[c]] == F._column_M_c(c, t, 4, order)

    def test_witness_independence(self, mixed5):
        t, _ = mixed5
        order = F.ROrder(t, 5)
        for c in order.critical:
            if F.classify_exceptional(c, 5):
                continue
            vecs = {F.u_vector(w, t, 5, order)
                    for w in F.necessary_witnesses(c, t, 5, order)}
            assert len(vecs) <= 1


class TestCup:
    def test_radial_cup_empty(self):
        t = T.subdivide_for(T.parse_tree(radial_tree(4)), 4)
        cells = [c for c in C.enumerate_reduced_1cells(t, 4)
                 if C.is_critical(c)]
        for i, c1 in enumerate(cells):
            for c2 in cells[i + 1:]:
                assert F.cup_normal_form(c1, c2, t, 4) == frozenset()

    def test_normal_form_pairs_critical(self, tmin4):
        t, cells = tmin4
        crit = [c for c in cells if C.is_critical(c)]
        order = F.ROrder(t, 4)
        for i, c1 in enumerate(crit):
            for c2 in crit[i + 1:]:
                nf = F.cup_normal_form(c1, c2, t, 4, order)
                assert nf == F.cup_normal_form(c2, c1, t, 4, order)
                for pair in nf:
                    p, q = tuple(pair)
                    assert C.is_critical(p) and C.is_critical(q)
                    assert C.lub_is_critical(p, q, t)
