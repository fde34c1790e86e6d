import json
import shutil
import subprocess

import pytest

from coxeterlab import algebras as alg
from coxeterlab import cli, tables


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestAnalyze:
    def test_extended_canonical(self, capsys):
        code, out, _ = run(capsys, "analyze", "--family", "extended-canonical", "--weights", "2,3,7")
        r = json.loads(out)
        assert code == 0 and r["factors"] == {"42": 1} and r["period"] == 42
        assert r["measures"]["certified"] is True

    def test_dynkin_e6(self, capsys):
        code, out, _ = run(capsys, "analyze", "--family", "dynkin", "--type", "E6")
        r = json.loads(out)
        assert r["factorization_text"] == "Phi_3*Phi_12" and r["coxeter_number"] == 12

    def test_quiver_file_measures(self, capsys, tmp_path):
        f = tmp_path / "q.json"
        f.write_text(json.dumps(alg.star_quiver([2, 3, 7]).to_json()))
        code, out, _ = run(capsys, "analyze", "--quiver", str(f), "--ops", "measures")
        r = json.loads(out)
        assert code == 0 and r["measures"]["mahler"].startswith("1.176280")
        assert "period" not in r

    def test_markdown_and_out(self, capsys, tmp_path):
        out_file = tmp_path / "r.md"
        code, _, _ = run(capsys, "analyze", "--family", "star", "--weights", "2,3,5", "--format", "md",
                         "--out", str(out_file))
        text = out_file.read_text()
        assert code == 0 and "Phi_30" in text and "**period**: 30" in text

    def test_symmetry_op(self, capsys, tmp_path):
        q = tmp_path / "q.json"
        q.write_text(json.dumps(alg.subspace_star_quiver(3).to_json()))
        a = alg.from_hereditary_quiver(alg.subspace_star_quiver(3))
        perm = alg.vertex_permutation(a, {"j1": "j2", "j2": "j3", "j3": "j1"})
        g = tmp_path / "g.json"
        g.write_text(json.dumps({"generators": [list(perm)]}))
        code, out, _ = run(capsys, "analyze", "--quiver", str(q), "--action", str(g), "--ops", "symmetry")
        r = json.loads(out)
        assert code == 0 and r["symmetry"]["restricted_text"] == "T^2 - T + 1"

    def test_quotient_family(self, capsys, tmp_path):
        q = tmp_path / "cover.json"
        q.write_text(json.dumps(alg.bipartite_cover_quiver(4, 3).to_json()))
        a = alg.from_hereditary_quiver(alg.bipartite_cover_quiver(4, 3))
        mapping = {f"{s}{k}": f"{s}{(k + 1) % 4}" for s in "ij" for k in range(4)}
        g = tmp_path / "g.json"
        g.write_text(json.dumps({"generators": [list(alg.vertex_permutation(a, mapping))]}))
        code, out, _ = run(capsys, "analyze", "--family", "quotient", "--base", str(q), "--action", str(g),
                           "--ops", "factorize")
        assert code == 0 and json.loads(out)["charpoly_text"] == "T^2 - 7*T + 1"

    def test_other_families(self, capsys):
        for argv in (["--family", "truncated", "--n", "5", "--r", "3"],
                     ["--family", "tensor", "--factors", "A2,A3"],
                     ["--family", "repetitive", "--type", "A3"],
                     ["--family", "canonical", "--weights", "2,3,4"],
                     ["--family", "extended-dynkin", "--type", "E~7"],
                     ["--family", "extended-dynkin", "--type", "A~", "--weights", "2,3"]):
            code, out, err = run(capsys, "analyze", *argv, "--ops", "factorize,periodicity,hform")
            assert code == 0, (argv, err)
            json.loads(out)

    def test_env_tolerance(self, capsys, monkeypatch):
        monkeypatch.setenv("COXETERLAB_TOL", "1e-9")
        code, out, _ = run(capsys, "analyze", "--family", "star", "--weights", "2,3,7", "--ops", "measures")
        assert code == 0 and json.loads(out)["measures"]["tolerance"] == 1e-9
        monkeypatch.setenv("COXETERLAB_TOL", "nope")
        code, _, err = run(capsys, "analyze", "--family", "star", "--weights", "2,3,7", "--ops", "measures")
        assert code == 2 and "COXETERLAB_TOL" in err


class TestAnalyzeErrors:
    def test_malformed_json(self, capsys, tmp_path):
        f = tmp_path / "bad.json"
        f.write_text('{"arrows": [["a", "b"]\n')
        code, _, err = run(capsys, "analyze", "--quiver", str(f))
        assert code == 2 and "line 2" in err

    def test_missing_field(self, capsys, tmp_path):
        f = tmp_path / "bad.json"
        f.write_text('{"covers": [["a", "b"]]}')
        code, _, err = run(capsys, "analyze", "--poset", str(f))
        assert code == 2 and "elements" in err

    def test_cyclic_quiver(self, capsys, tmp_path):
        f = tmp_path / "cyc.json"
        f.write_text(json.dumps({"vertices": ["a", "b"], "arrows": [["a", "b"], ["b", "a"]]}))
        code, _, _ = run(capsys, "analyze", "--quiver", str(f))
        assert code == 2

    def test_missing_weights(self, capsys):
        assert run(capsys, "analyze", "--family", "star")[0] == 2

    def test_bad_ops(self, capsys):
        assert run(capsys, "analyze", "--family", "dynkin", "--type", "A3", "--ops", "everything")[0] == 2

    def test_not_unimodular(self, capsys, tmp_path):
        f = tmp_path / "c.json"
        f.write_text(json.dumps({"cartan": [["1", "0"], ["0", "2"]]}))
        assert run(capsys, "analyze", "--spec", str(f))[0] == 2

    def test_computation_error_exit_code(self, capsys, monkeypatch):
        def boom(*a, **k):
            raise ArithmeticError("forced")

        monkeypatch.setattr(cli.spectral, "measures", boom)
        code, _, err = run(capsys, "analyze", "--family", "dynkin", "--type", "A3")
        assert code == 3 and "forced" in err


class TestTable:
    @pytest.mark.parametrize("name", tables.TABLES)
    def test_tables_pass_modulo_deviations(self, capsys, name):
        code, out, _ = run(capsys, "table", name)
        assert code == 0

    def test_weights_rows(self, capsys):
        code, out, _ = run(capsys, "table", "weights", "--format", "json")
        r = json.loads(out)
        assert len(r["rows"]) == 38
        inf = [row["weights"] for row in r["rows"] if row["period"] == "infinity"]
        assert inf == ["(3,3,3,3)", "(2,2,2,2,4)"]

    def test_deterministic(self, capsys):
        first = run(capsys, "table", "dynkin", "--format", "json")[1]
        assert run(capsys, "table", "dynkin", "--format", "json")[1] == first

    def test_mismatch_exit(self, capsys, monkeypatch):
        real = tables.load_data("weights")
        broken = {"columns": real["columns"], "rows": [dict(real["rows"][0], factorization="Phi_41")]}
        monkeypatch.setattr(tables, "load_data", lambda name: broken if name == "weights" else real)
        monkeypatch.setattr(tables, "expected_deviations", lambda table: {})
        code, _, err = run(capsys, "table", "weights")
        assert code == 1 and "Phi_41" in err


class TestBatch:
    def test_empty(self, capsys, tmp_path):
        code, out, _ = run(capsys, "batch", str(tmp_path))
        assert code == 0 and json.loads(out)["total"] == 0

    def test_one_bad_file(self, capsys, tmp_path):
        (tmp_path / "good.json").write_text(json.dumps({"weights": [2, 3, 7]}))
        (tmp_path / "bad.json").write_text("{")
        code, out, _ = run(capsys, "batch", str(tmp_path))
        s = json.loads(out)
        assert code == 1 and s["failed"] == 1 and "bad" in s["failures"]
        assert (tmp_path / "reports" / "good.report.json").exists()

    def test_corpus_counts_parallel(self, capsys, tmp_path):
        specs = {
            "e8": alg.dynkin_quiver("E8").to_json(),
            "wild": alg.star_quiver([2, 3, 7]).to_json(),
            "ext": {"weights": [3, 3, 3, 3]},
            "chain": alg.chain_poset(4).to_json(),
        }
        for k, v in specs.items():
            (tmp_path / f"{k}.json").write_text(json.dumps(v))
        code, out, _ = run(capsys, "batch", str(tmp_path), "--jobs", "2", "--out", str(tmp_path / "o"))
        s = json.loads(out)
        assert code == 0 and s["ok"] == 4 and s["cyclotomic"] == 3 and s["periodic"] == 2


def test_emitted_algebra_roundtrips(capsys):
    _, out, _ = run(capsys, "analyze", "--family", "extended-canonical", "--weights", "2,2,3,4", "--ops", "hform")
    spec = json.loads(out)["algebra"]
    a = alg.CartanAlgebra.from_json(spec)
    assert a == alg.extended_canonical([2, 2, 3, 4])


@pytest.mark.skipif(shutil.which("coxeterlab") is None, reason="console script not installed")
def test_console_script():
    p = subprocess.run(["coxeterlab", "table", "extended-dynkin"], capture_output=True, text=True)
    assert p.returncode == 0 and "E~8" in p.stdout
