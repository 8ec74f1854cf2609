import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from gaussrenyi.cli import main, write_cm_document
from gaussrenyi.core import tmss_cm

TMSS53 = tmss_cm(np.arcsinh(4 / 3) / 2)


@pytest.fixture
def doc(tmp_path):
    def make(matrix, name="cm.json", overrides=None):
        path = tmp_path / name
        body = {"modes": len(matrix) // 2, "ordering": "q1p1", "matrix": np.asarray(matrix).tolist()}
        body.update(overrides or {})
        path.write_text(json.dumps(body))
        return str(path)

    return make


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestValidate:
    def test_vacuum(self, doc, capsys):
        code, out, _ = run(["validate", doc(np.eye(2))], capsys)
        assert code == 0
        assert "physical: true, nu_min: 1.0" in out

    def test_unphysical(self, doc, capsys):
        code, out, _ = run(["validate", doc(np.diag([0.5, 0.5]))], capsys)
        assert code == 1
        assert "physical: false" in out

    @pytest.mark.parametrize(
        "fields",
        [
            {"matrix": [[1, 0, 0], [0, 1, 0], [0, 0, 1]], "modes": 1},
            {"ordering": "qqpp"},
            {"matrix": "abc"},
            {"modes": 2},
        ],
    )
    def test_malformed(self, doc, capsys, fields):
        code, _, err = run(["validate", doc(np.eye(2), overrides=fields)], capsys)
        assert code == 2 and err

    def test_unreadable(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert run(["validate", str(bad)], capsys)[0] == 2
        assert run(["validate", str(tmp_path / "missing.json")], capsys)[0] == 2


class TestMeasure:
    def test_tmss_entanglement(self, doc, capsys):
        code, out, _ = run(["measure", doc(TMSS53), "--measure", "entanglement"], capsys)
        assert code == 0
        assert out.splitlines()[0] == "0.510825623766"

    def test_product_discord(self, doc, capsys):
        code, out, _ = run(["measure", doc(np.diag([2.0, 2, 3, 3])), "--measure", "discord"], capsys)
        assert code == 0
        assert out.splitlines()[0] == "0.000000000000"
        assert out.splitlines()[1] == "method: closed_form"

    def test_tmss_mutual(self, doc, capsys):
        code, out, _ = run(["measure", doc(TMSS53), "--measure", "mutual", "--partition", "0;1"], capsys)
        assert code == 0
        assert float(out) == pytest.approx(2 * np.log(5 / 3), abs=1e-12)

    def test_witness_line(self, doc, capsys):
        g = 1.2 * tmss_cm(0.6)
        _, out, _ = run(["measure", doc(g), "--measure", "classical", "--direction", "B|A"], capsys)
        lines = out.splitlines()
        assert lines[2].startswith("witness: ")
        assert json.loads(lines[2][len("witness: ") :])["branch"] in (1, 2)

    def test_ssa(self, doc, capsys):
        g = np.eye(6)
        code, out, _ = run(["measure", doc(g), "--measure", "ssa", "--partition", "0;1;2"], capsys)
        assert code == 0 and float(out) == 0

    @pytest.mark.parametrize("spec", ["0;x", "0;0", "0;5"])
    def test_bad_partition(self, doc, capsys, spec):
        assert run(["measure", doc(TMSS53), "--measure", "mutual", "--partition", spec], capsys)[0] == 2

    def test_ssa_requires_partition(self, doc, capsys):
        assert run(["measure", doc(np.eye(6)), "--measure", "ssa"], capsys)[0] == 2

    def test_unphysical(self, doc, capsys):
        assert run(["measure", doc(np.diag([0.5, 0.5])), "--measure", "renyi2"], capsys)[0] == 1

    def test_unknown_measure(self, doc, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["measure", doc(TMSS53), "--measure", "negativity"])
        assert exc.value.code == 2


class TestTripartite:
    def test_symmetric(self, capsys):
        code, out, _ = run(["tripartite", "--a1", "2", "--a2", "2", "--a3", "2"], capsys)
        assert code == 0
        rows = out.splitlines()[1:4]
        for row in rows:
            assert float(row.split()[4]) == pytest.approx(0.46355, abs=1e-4)
        assert "fully_inseparable: true" in out
        assert "invariant_residual: 0.4635458" in out

    def test_vacuum(self, capsys):
        code, out, _ = run(["tripartite", "--a1", "1", "--a2", "1", "--a3", "1"], capsys)
        assert code == 0
        for row in out.splitlines()[1:4]:
            assert all(float(v) == 0 for v in row.split()[1:])

    def test_outside_window(self, capsys):
        code, out, _ = run(["tripartite", "--a1", "3", "--a2", "2", "--a3", "2"], capsys)
        assert code == 0
        assert "fully_inseparable: false" in out
        assert "invariant_residual: n/a" in out

    def test_single_focus(self, capsys):
        _, out, _ = run(["tripartite", "--a1", "2", "--a2", "2.5", "--a3", "3", "--focus", "1"], capsys)
        assert len(out.splitlines()) == 5

    def test_triangle_violation(self, capsys):
        assert run(["tripartite", "--a1", "3", "--a2", "1.5", "--a3", "1.5"], capsys)[0] == 2


class TestRandom:
    def test_byte_identical(self, tmp_path, capsys):
        p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
        for p in (p1, p2):
            assert run(["random", "--modes", "3", "--seed", "42", "--out", str(p)], capsys)[0] == 0
        assert p1.read_bytes() == p2.read_bytes()

    def test_pure_and_valid(self, tmp_path, capsys):
        p = tmp_path / "p.json"
        run(["random", "--modes", "2", "--pure", "--squeeze-cap", "1.2", "--seed", "3", "--out", str(p)], capsys)
        mat = np.array(json.loads(p.read_text())["matrix"])
        assert np.linalg.det(mat) == pytest.approx(1, abs=1e-9)
        assert run(["validate", str(p)], capsys)[0] == 0

    def test_stdout(self, capsys):
        code, out, _ = run(["random", "--modes", "1", "--seed", "1"], capsys)
        assert code == 0 and json.loads(out)["ordering"] == "q1p1"

    @pytest.mark.parametrize("flags", [["--temp-cap", "0.5"], ["--squeeze-cap", "-1"], ["--modes", "0"]])
    def test_bad_flags(self, capsys, flags):
        argv = ["random", "--modes", "2"] + flags
        assert run(argv, capsys)[0] == 2


class TestVerify:
    def test_pass(self, capsys):
        code, out, _ = run(["verify", "--suite", "ssa", "--trials", "50", "--seed", "5"], capsys)
        rep = json.loads(out)
        assert code == 0
        assert rep["suite"] == "ssa" and rep["trials"] == 50 and rep["failures"] == 0

    def test_failure_exit(self, capsys):
        # an impossible tolerance turns every trial into a failure
        code, out, err = run(["verify", "--suite", "kw", "--trials", "2", "--tol", "-1"], capsys)
        assert code == 3
        assert json.loads(out)["failures"] == 2
        assert "--seed" in err

    def test_worst_seed_reproduces(self, capsys):
        _, out, _ = run(["verify", "--suite", "je", "--trials", "30", "--seed", "100"], capsys)
        rep = json.loads(out)
        _, again, _ = run(["verify", "--suite", "je", "--trials", "1", "--seed", str(rep["worst_seed"])], capsys)
        assert json.loads(again)["worst_value"] == rep["worst_value"]

    def test_bad_trials(self, capsys):
        assert run(["verify", "--suite", "ssa", "--trials", "0"], capsys)[0] == 2

    def test_unknown_suite(self):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "--suite", "nope"])
        assert exc.value.code == 2


class TestSweep:
    def _table(self, out):
        return list(csv.reader(io.StringIO(out)))

    def test_tmss(self, capsys):
        code, out, _ = run(["sweep", "--family", "tmss", "--param-range", "0:1:0.1", "--measures", "renyi2_A,entanglement"], capsys)
        rows = self._table(out)
        assert code == 0
        assert rows[0] == ["param", "renyi2_A", "entanglement"]
        assert len(rows) == 12
        for row in rows[1:]:
            assert float(row[1]) == pytest.approx(float(row[2]), abs=1e-11)

    def test_ghz(self, capsys):
        code, out, _ = run(["sweep", "--family", "ghz", "--param-range", "1.1:3:0.1", "--measures", "residual,residual_d2"], capsys)
        rows = self._table(out)
        assert code == 0 and len(rows) == 21
        row2 = next(r for r in rows[1:] if float(r[0]) == pytest.approx(2.0))
        assert float(row2[1]) == pytest.approx(0.46355, abs=1e-4)

    def test_squeezed_thermal_discord(self, capsys):
        _, out, _ = run(["sweep", "--family", "squeezed-thermal", "--param-range", "0:1.5:0.1", "--measures", "discord"], capsys)
        assert all(float(r[1]) >= 0 for r in self._table(out)[1:])

    def test_csv_file(self, tmp_path, capsys):
        p = tmp_path / "s.csv"
        run(["sweep", "--family", "tmss", "--param-range", "0:0.2:0.1", "--measures", "mutual", "--out", str(p)], capsys)
        data = p.read_bytes()
        assert b"\r" not in data and data.startswith(b"param,mutual\n")

    @pytest.mark.parametrize(
        "argv",
        [
            ["--family", "cat", "--param-range", "0:1:0.1", "--measures", "renyi2"],
            ["--family", "tmss", "--param-range", "1:0:0.1", "--measures", "renyi2"],
            ["--family", "tmss", "--param-range", "0:1", "--measures", "renyi2"],
            ["--family", "tmss", "--param-range", "0:1:0.5", "--measures", "residual"],
        ],
    )
    def test_usage_errors(self, capsys, argv):
        assert run(["sweep"] + argv, capsys)[0] == 2


def test_module_entry_point(tmp_path):
    path = tmp_path / "v.json"
    write_cm_document(np.eye(2), path)
    proc = subprocess.run([sys.executable, "-m", "gaussrenyi", "validate", str(path)], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "nu_min: 1.0" in proc.stdout
