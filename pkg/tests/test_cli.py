import json
import subprocess
import sys

import pytest

from tildea import Parameters, build_cycle, build_normal_form, write_quiver
from tildea.cli import main, seed_fixtures


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def nf_files(tmp_path):
    paths = {}
    for name, p in [
        ("nf_2110", Parameters(2, 1, 1, 0)),
        ("nf_0210", Parameters(0, 2, 1, 0)),
        ("nf_2334", Parameters(2, 3, 3, 4)),
    ]:
        f = tmp_path / f"{name}.json"
        f.write_bytes(write_quiver(build_normal_form(p)))
        paths[name] = str(f)
    cyc = tmp_path / "cycle_5_7.json"
    cyc.write_bytes(write_quiver(build_cycle(5, 7)))
    paths["cycle_5_7"] = str(cyc)
    tri = tmp_path / "oriented.json"
    tri.write_bytes(
        b'{"vertices":["1","2","3"],"arrows":[{"id":"a","from":"1","to":"2"},'
        b'{"id":"b","from":"2","to":"3"},{"id":"c","from":"3","to":"1"}]}')
    paths["oriented"] = str(tri)
    bad = tmp_path / "bad.json"
    bad.write_bytes(b'{"vertices":')
    paths["bad"] = str(bad)
    return paths


class TestCommands:
    def test_params_cycle(self, nf_files, capsys):
        code, out, _ = run_cli(["params", nf_files["cycle_5_7"]], capsys)
        assert code == 0
        assert json.loads(out) == {"r1": 5, "r2": 0, "s1": 7, "s2": 0,
                                   "r_bar": 5, "s_bar": 7}

    def test_mutate_round_trip(self, nf_files, tmp_path, capsys):
        out_file = tmp_path / "m.json"
        code, _, _ = run_cli(
            ["mutate", nf_files["nf_2334"], "--at", "c00", "-o", str(out_file)], capsys)
        assert code == 0
        doc = json.loads(out_file.read_bytes())
        assert set(doc) == {"vertices", "arrows"}

    def test_normal_form_and_ag(self, tmp_path, capsys):
        out_file = tmp_path / "nf.json"
        code, _, _ = run_cli(
            ["normal-form", "--r1", "2", "--r2", "3", "--s1", "3", "--s2", "4",
             "-o", str(out_file)], capsys)
        assert code == 0
        code, out, _ = run_cli(["ag", str(out_file), "--cluster-tilted"], capsys)
        assert code == 0
        assert json.loads(out)["pairs"] == [
            {"n": 0, "m": 3, "count": 7},
            {"n": 5, "m": 2, "count": 1},
            {"n": 7, "m": 3, "count": 1},
        ]

    def test_derived_eq_witness(self, nf_files, capsys):
        code, out, _ = run_cli(
            ["derived-eq", nf_files["nf_2110"], nf_files["nf_0210"]], capsys)
        assert code == 0
        doc = json.loads(out)
        assert doc["derived_equivalent"] is False and doc["consistent"] is True

    def test_mutation_eq_witness(self, nf_files, capsys):
        code, out, _ = run_cli(
            ["mutation-eq", nf_files["nf_2110"], nf_files["nf_0210"]], capsys)
        assert code == 0
        assert json.loads(out)["mutation_equivalent"] is True

    def test_reduce(self, nf_files, capsys):
        code, out, _ = run_cli(["reduce", nf_files["nf_2334"]], capsys)
        assert code == 0
        doc = json.loads(out)
        assert doc["steps"] == []
        assert set(doc["normal_form"]) == {"vertices", "arrows"}

    def test_recognize_failure_report(self, nf_files, capsys):
        code, out, _ = run_cli(["recognize", nf_files["oriented"]], capsys)
        assert code == 0
        doc = json.loads(out)
        assert doc["recognized"] is False and doc["reason"] == "NoNonOrientedCycle"

    def test_cartan_hereditary_relations(self, tmp_path, capsys):
        f = tmp_path / "arrow.json"
        f.write_bytes(b'{"vertices":["1","2"],"arrows":[{"id":"a","from":"1","to":"2"}]}')
        rel = tmp_path / "rel.json"
        rel.write_bytes(b'{"relations":[]}')
        code, out, _ = run_cli(["cartan", str(f), "--relations", str(rel)], capsys)
        assert code == 0
        assert json.loads(out) == {"order": ["1", "2"], "matrix": [[1, 1], [0, 1]]}

    def test_enumerate_ndjson(self, capsys):
        code, out, _ = run_cli(["enumerate", "--n", "4"], capsys)
        assert code == 0
        lines = [json.loads(line) for line in out.strip().splitlines()]
        assert [(l["r_bar"], l["s_bar"]) for l in lines] == [(1, 3), (2, 2)]
        assert all("census" in l for l in lines)


class TestExitCodes:
    def test_not_in_class_is_2(self, nf_files, capsys):
        code, _, err = run_cli(["params", nf_files["oriented"]], capsys)
        assert code == 2 and "NoNonOrientedCycle" in err

    def test_parse_error_is_3(self, nf_files, capsys):
        code, _, err = run_cli(["params", nf_files["bad"]], capsys)
        assert code == 3 and "ParseError" in err

    def test_missing_file_is_3(self, capsys):
        code, _, _ = run_cli(["params", "/nonexistent/x.json"], capsys)
        assert code == 3

    def test_json_error_format(self, nf_files, capsys):
        code, _, err = run_cli(["--json", "params", nf_files["oriented"]], capsys)
        assert code == 2
        doc = json.loads(err)
        assert doc["error"] == "NotInClass" and doc["reason"] == "NoNonOrientedCycle"

    def test_invalid_parameters_is_3(self, capsys):
        code, _, _ = run_cli(
            ["normal-form", "--r1", "0", "--r2", "0", "--s1", "1", "--s2", "0"], capsys)
        assert code == 3


class TestFixtures:
    def test_seed_fixtures(self, tmp_path):
        names = seed_fixtures(tmp_path / "fx")
        assert len(names) == 20
        index = json.loads((tmp_path / "fx" / "index.json").read_bytes())
        assert index["fixtures"] == names
        for name in names:
            assert (tmp_path / "fx" / f"{name}.json").is_file()
        # recognized fixtures carry golden panel documents
        assert (tmp_path / "fx" / "nf_2334.params.json").is_file()
        assert (tmp_path / "fx" / "nf_2334.phi.json").is_file()

    def test_seed_fixtures_flag(self, tmp_path, capsys):
        code, _, _ = run_cli(["--seed-fixtures", str(tmp_path / "fx2")], capsys)
        assert code == 0
        assert (tmp_path / "fx2" / "index.json").is_file()


class TestEntryPoint:
    def test_module_invocation(self, nf_files):
        proc = subprocess.run(
            [sys.executable, "-m", "tildea.cli", "params", nf_files["cycle_5_7"]],
            capture_output=True)
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["r_bar"] == 5

    def test_tal_log_env(self, nf_files):
        proc = subprocess.run(
            [sys.executable, "-m", "tildea.cli", "params", nf_files["cycle_5_7"]],
            capture_output=True, env={"TAL_LOG": "debug", "PATH": "/usr/bin:/bin"})
        assert proc.returncode == 0
