import json

import pytest

from treebraid import cli, tree as T

from conftest import T_MIN, path_tree, radial_tree


@pytest.fixture
def tmin_file(tmp_path):
    p = tmp_path / "tmin.tree"
    p.write_text(T_MIN)
    return str(p)


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestVerbs:
    def test_radial_rank(self, capsys):
        code, out, _ = run(capsys, "radial-rank", "--n", "5", "--degree", "5")
        assert (code, out.strip()) == (0, "155")

    def test_subdivide(self, capsys, tmin_file):
        code, out, _ = run(capsys, "subdivide", tmin_file, "--n", "4")
        assert code == 0
        t = T.parse_tree(out)
        assert T.is_sufficiently_subdivided(t, 6)
        assert T.trees_homeomorphic(t, T.parse_tree(T_MIN))

    def test_cells_counts(self, capsys, tmin_file):
        code, out, _ = run(capsys, "cells", tmin_file, "--n", "4")
        assert code == 0 and len(out.splitlines()) == 48
        code, out, _ = run(capsys, "cells", tmin_file, "--n", "4",
                           "--critical")
        assert code == 0 and len(out.splitlines()) == 24

    def test_betti(self, capsys, tmin_file):
        code, out, _ = run(capsys, "betti", tmin_file, "--n", "4")
        assert code == 0 and out.split() == ["1", "24", "6"]

    def test_delta_json_and_dot(self, capsys, tmin_file):
        code, out, _ = run(capsys, "delta", tmin_file, "--n", "4")
        obj = json.loads(out)
        assert code == 0
        assert len(obj["vertices"]) == 24 and len(obj["edges"]) == 6
        code, out, _ = run(capsys, "delta", tmin_file, "--n", "4",
                           "--format", "dot")
        assert code == 0 and out.startswith("graph Delta {")

    def test_delta_reconstruct_file_round_trip(self, capsys, tmp_path,
                                               tmin_file):
        _, out, _ = run(capsys, "delta", tmin_file, "--n", "4")
        dpath = tmp_path / "d.json"
        dpath.write_text(out)
        code, out, _ = run(capsys, "reconstruct", "--delta", str(dpath))
        assert code == 0
        assert T.trees_homeomorphic(T.parse_tree(out),
                                    T.parse_tree(T_MIN))

    def test_reconstruct_detects_n(self, capsys, tmp_path, tmin_file):
        _, out, _ = run(capsys, "delta", tmin_file, "--n", "5")
        obj = json.loads(out)
        obj.pop("n")
        for v in obj["vertices"]:
            v.pop("cell", None)
        dpath = tmp_path / "anon.json"
        dpath.write_text(json.dumps(obj))
        code, out, _ = run(capsys, "reconstruct", "--delta", str(dpath))
        assert code == 0
        assert T.trees_homeomorphic(T.parse_tree(out),
                                    T.parse_tree(T_MIN))

    def test_reconstruct_undefined_exit_3(self, capsys, tmp_path):
        dpath = tmp_path / "bad.json"
        dpath.write_text(json.dumps(
            {"n": 4, "vertices": [{"id": 0}, {"id": 1}], "edges": []}))
        code, _, err = run(capsys, "reconstruct", "--delta", str(dpath))
        assert code == 3 and "undefined" in err

    def test_detect_n(self, capsys, tmp_path, tmin_file):
        _, out, _ = run(capsys, "delta", tmin_file, "--n", "5")
        dpath = tmp_path / "d.json"
        dpath.write_text(out)
        code, out, _ = run(capsys, "detect-n", "--delta", str(dpath))
        assert (code, out.strip()) == (0, "5")

    def test_iso_true_false(self, capsys, tmp_path, tmin_file):
        other = tmp_path / "lin.tree"
        other.write_text(path_tree([3, 3, 3]))
        sub = tmp_path / "sub.tree"
        sub.write_text(T.to_text(T.subdivide_for(T.parse_tree(T_MIN), 9)))
        code, out, _ = run(capsys, "iso", tmin_file, str(sub), "--n", "4")
        assert (code, out.strip()) == (0, "isomorphic")
        code, out, _ = run(capsys, "iso", tmin_file, str(other), "--n", "4")
        assert (code, out.strip()) == (1, "not isomorphic")

    def test_iso_mixed_strands(self, capsys, tmp_path):
        a = tmp_path / "a.tree"
        a.write_text(radial_tree(4))
        b = tmp_path / "b.tree"
        b.write_text(radial_tree(5))
        code, out, _ = run(capsys, "iso", str(a), str(b),
                           "--na", "4", "--nb", "3")
        assert code == 0

    def test_iso_requires_n(self, capsys, tmp_path):
        a = tmp_path / "a.tree"
        a.write_text(radial_tree(4))
        code, _, err = run(capsys, "iso", str(a), str(a))
        assert code == 2 and "error" in err

    def test_verify(self, capsys, tmp_path):
        p = tmp_path / "t.tree"
        p.write_text(path_tree([3, 3]))
        code, out, _ = run(capsys, "verify", str(p), "--n", "4",
                           "--forms-sample", "10")
        rep = json.loads(out)
        assert code == 0
        assert rep["counts"]["pass"] is True
        assert rep["coboundary"]["pass"] is True

    def test_presentation(self, capsys, tmp_path):
        p = tmp_path / "t.tree"
        p.write_text(path_tree([3, 3]))
        code, out, _ = run(capsys, "presentation", str(p), "--n", "4")
        rep = json.loads(out)
        assert code == 0
        assert rep["vertices"] and rep["edges"] and rep["relations"]
        for rel in rep["relations"]:
            assert rel["support"]


class TestErrors:
    def test_usage_exit_2(self, capsys):
        assert run(capsys, "no-such-verb")[0] == 2

    def test_missing_file_exit_2(self, capsys):
        code, _, err = run(capsys, "subdivide", "/nonexistent", "--n", "4")
        assert code == 2 and "error" in err

    def test_bad_tree_exit_2(self, capsys, tmp_path):
        p = tmp_path / "bad.tree"
        p.write_text("((")
        assert run(capsys, "cells", str(p), "--n", "4")[0] == 2

    def test_bad_delta_exit_2(self, capsys, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text("{not json")
        assert run(capsys, "detect-n", "--delta", str(p))[0] == 2


class TestDeterminism:
    def test_byte_identical(self, capsys, tmin_file):
        outs = {run(capsys, "delta", tmin_file, "--n", "5")[1]
                for _ in range(2)}
        assert len(outs) == 1
