import json
import subprocess
import sys

import numpy as np
import pytest

from conftest import COL3, G3, GRID22
from edmkit.cli import main
from edmkit.generators import manhattan_grid, path_edm
from edmkit.io import read_matrix, write_matrix

REPORT_KEYS = {
    "is_edm", "embedding_dim", "rank_D", "spherical", "regular",
    "radius_sq", "min_shift", "center", "diagnostics", "tolerance",
}
DIAGNOSTIC_KEYS = {"rank_test", "psd_shift_test", "center_residual"}


@pytest.fixture
def files(tmp_path):
    def make(name, M):
        path = tmp_path / name
        write_matrix(np.asarray(M, dtype=float), path)
        return str(path)
    return make


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def parse_text_report(out):
    return dict(line.split(": ", 1) for line in out.strip().splitlines() if ": " in line)


class TestGen:
    def test_path(self, capsys, tmp_path):
        out_file = tmp_path / "g3.txt"
        code, out, err = run(capsys, "gen", "path", "--n", "3", "--out", str(out_file))
        assert code == 0 and err == ""
        assert out_file.read_text() == "3\n0 1 2\n1 0 1\n2 1 0\n"

    def test_grid_stdout(self, capsys):
        code, out, _ = run(capsys, "gen", "grid", "--m", "2", "--n", "2")
        assert code == 0
        assert out == "4\n0 1 1 2\n1 0 2 1\n1 2 0 1\n2 1 1 0\n"

    def test_hypercube_at_size_cap(self, capsys, tmp_path):
        out_file = tmp_path / "q12.txt"
        code, _, _ = run(capsys, "--max-order", "4096", "gen", "hypercube", "--r", "12", "-o", str(out_file))
        assert code == 0
        assert read_matrix(out_file).shape == (4096, 4096)

    def test_hypercube_over_cap(self, capsys):
        code, out, err = run(capsys, "gen", "hypercube", "--r", "13")
        assert code == 2 and out == "" and "exceeds" in err

    def test_missing_param(self, capsys):
        code, _, err = run(capsys, "gen", "grid", "--n", "3")
        assert code == 2 and "--m" in err

    def test_bad_param(self, capsys):
        code, _, _ = run(capsys, "gen", "collinear", "--n", "2")
        assert code == 2

    def test_unknown_family(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["gen", "star", "--n", "3"])
        assert exc.value.code == 2

    def test_random_seeded(self, capsys):
        a = run(capsys, "gen", "random-spherical", "--n", "6", "--r", "2", "--seed", "9")[1]
        b = run(capsys, "--seed", "9", "gen", "random-spherical", "--n", "6", "--r", "2")[1]
        c = run(capsys, "gen", "random-spherical", "--n", "6", "--r", "2", "--seed", "10")[1]
        assert a == b != c

    def test_json_output(self, capsys):
        code, out, _ = run(capsys, "--json", "gen", "path", "--n", "2")
        assert code == 0 and json.loads(out) == {"order": 2, "entries": [0, 1, 1, 0]}


class TestClassify:
    def test_path(self, capsys, files):
        code, out, err = run(capsys, "classify", files("g3", G3))
        assert code == 0 and err == ""
        report = parse_text_report(out)
        assert report["spherical"] == "true"
        assert float(report["radius_sq"]) == pytest.approx(0.5, rel=1e-12)
        assert float(report["min_shift"]) == pytest.approx(1.0, rel=1e-12)

    def test_collinear(self, capsys, files):
        code, out, _ = run(capsys, "classify", files("c3", COL3))
        assert code == 0
        assert parse_text_report(out)["spherical"] == "false"

    def test_negative_entry(self, capsys, files):
        code, out, err = run(capsys, "classify", files("neg", [[0, -1], [-1, 0]]))
        assert code == 2 and out == "" and err

    def test_not_edm(self, capsys, files):
        code, out, _ = run(capsys, "classify", "--json", files("bad", [[0, 1, 9], [1, 0, 1], [9, 1, 0]]))
        assert code == 1
        report = json.loads(out)
        assert report["is_edm"] is False and set(report) == REPORT_KEYS

    def test_unparseable(self, capsys, tmp_path):
        path = tmp_path / "junk"
        path.write_text("3 0 1")
        assert run(capsys, "classify", str(path))[0] == 2

    def test_json_schema(self, capsys, files):
        code, out, _ = run(capsys, "classify", "--json", "--tol", "1e-9", files("grid", manhattan_grid(3, 4)))
        report = json.loads(out)
        assert code == 0
        assert set(report) == REPORT_KEYS and set(report["diagnostics"]) == DIAGNOSTIC_KEYS
        assert report["tolerance"] == 1e-9
        assert report["embedding_dim"] == 5 and report["rank_D"] == 6
        assert report["radius_sq"] == pytest.approx(1.25, rel=1e-10)
        assert len(report["center"]) == 5


class TestCompose:
    def test_two_paths(self, capsys, files, tmp_path):
        g2 = files("g2", path_edm(2).matrix)
        out_file = tmp_path / "c"
        code, out, err = run(capsys, "compose", g2, g2, "--out", str(out_file))
        assert code == 0 and err == ""
        assert np.array_equal(read_matrix(out_file), GRID22)
        assert float(parse_text_report(out)["radius_sq"]) == pytest.approx(0.5, rel=1e-12)

    def test_matches_grid_generator(self, capsys, files, tmp_path):
        out_file, grid_file = tmp_path / "c", tmp_path / "g"
        run(capsys, "compose", files("g3", G3), files("g4", path_edm(4).matrix), "-o", str(out_file))
        run(capsys, "gen", "grid", "--m", "3", "--n", "4", "-o", str(grid_file))
        assert out_file.read_text() == grid_file.read_text()

    def test_non_spherical_factor(self, capsys, files, tmp_path):
        code, out, _ = run(capsys, "--json", "compose", files("c3", COL3), files("g2", path_edm(2).matrix),
                           "-o", str(tmp_path / "c"))
        report = json.loads(out)
        assert code == 0 and report["embedding_dim"] == 2 and "radius_sq" not in report

    def test_non_edm(self, capsys, files, tmp_path):
        bad = files("bad", [[0, 1, 9], [1, 0, 1], [9, 1, 0]])
        code, _, err = run(capsys, "compose", bad, files("g2", path_edm(2).matrix), "-o", str(tmp_path / "c"))
        assert code == 1 and err

    def test_too_large(self, capsys, files, tmp_path):
        g = files("g", path_edm(5).matrix)
        assert run(capsys, "--max-order", "20", "compose", g, g, "-o", str(tmp_path / "c"))[0] == 2


class TestQap:
    @pytest.fixture
    def instance(self, files):
        return files("a", [[0, 1], [1, 0]]), files("d", path_edm(2).matrix)

    def test_bound(self, capsys, instance):
        code, out, err = run(capsys, "qap", *instance, "--bound")
        assert code == 0 and err == ""
        assert float(parse_text_report(out)["lower_bound"]) == pytest.approx(0.0, abs=1e-14)

    def test_solve(self, capsys, instance):
        code, out, _ = run(capsys, "--json", "qap", *instance, "--solve")
        report = json.loads(out)
        assert code == 0 and report["optimum"] == 2 and report["permutation"] == [1, 2]
        assert "lower_bound" not in report

    def test_non_spherical(self, capsys, files):
        code, _, err = run(capsys, "qap", files("a", np.eye(3)), files("d", COL3), "--bound")
        assert code == 1 and "not spherical" in err

    def test_order_mismatch(self, capsys, files):
        assert run(capsys, "qap", files("a", np.eye(2)), files("d", G3))[0] == 2

    def test_solve_too_large(self, capsys, files):
        assert run(capsys, "qap", files("a", np.eye(9)), files("d", path_edm(9).matrix), "--solve")[0] == 2


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "edmkit", "gen", "path", "--n", "3"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0 and proc.stdout.splitlines()[0] == "3"
