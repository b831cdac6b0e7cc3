import pytest

from treebraid import cells as C, oracle as O, tree as T

from conftest import T_MIN, path_tree, radial_tree


class TestComplex:
    def test_cell_counts_small(self):
        # 2 strands on the 3-vertex path: 1 way to place 2 disjoint
        # vertices... enumerate explicitly
        t = O.subdivide_exact(T.parse_tree(radial_tree(3)), 2)
        cx = O.build_complex(t, 2, max_dim=2)
        v = len(t)
        assert len(cx.cells_by_dim[0]) == v * (v - 1) // 2

    def test_faces_are_faces(self):
        t = O.subdivide_exact(T.parse_tree(radial_tree(3)), 3)
        cx = O.build_complex(t, 3, max_dim=2)
        for k in (1, 2):
            for i, c in enumerate(cx.cells_by_dim[k]):
                assert len(cx.faces[k][i]) == 2 * k
                for f in cx.faces[k][i]:
                    face = cx.cells_by_dim[k - 1][f]
                    assert face.edges < c.edges or face.edges == set()

    def test_dd_zero(self):
        for text, n in [(radial_tree(4), 4), (path_tree([3, 3]), 4)]:
            t = O.subdivide_exact(T.parse_tree(text), n)
            cx = O.build_complex(t, n, max_dim=3)
            assert O.check_dd_zero(cx)

    def test_budget(self):
        t = O.subdivide_exact(T.parse_tree(T_MIN), 5)
        with pytest.raises(O.BudgetExceeded):
            O.build_complex(t, 5, max_dim=3, budget=10)


class TestBetti:
    def test_connected(self):
        t = O.subdivide_exact(T.parse_tree(radial_tree(3)), 4)
        b0, _, _ = O.betti(O.build_complex(t, 4, max_dim=3))
        assert b0 == 1

    @pytest.mark.parametrize("deg,n", [(3, 4), (4, 4), (3, 5)])
    def test_radial_free(self, deg, n):
        t = O.subdivide_exact(T.parse_tree(radial_tree(deg)), n)
        b0, b1, b2 = O.betti(O.build_complex(t, n, max_dim=3))
        assert (b0, b1, b2) == (1, C.radial_rank(n, deg), 0)

    def test_two_essential(self):
        rep = O.verify_morse_counts(T.parse_tree(path_tree([3, 3])), 4)
        assert rep["pass"] is True
        assert rep["b"][0] == 1

    def test_report_skips_over_budget(self):
        rep = O.verify_morse_counts(
            T.parse_tree(T_MIN), 5, budget=100)
        assert rep["pass"] is None
        assert "skipped" in rep


class TestCoboundary:
    def test_two_essential_forms(self):
        rep = O.verify_d_equals_delta(T.parse_tree(path_tree([3, 3])), 4, 20)
        assert rep["pass"] is True
        assert rep["checked"] > 20
