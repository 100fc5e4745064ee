import json
import urllib.error
import urllib.request

import pytest

from tildea import Parameters, build_normal_form, write_quiver
from tildea.cli import main as cli_main
from tildea.server import start_background


@pytest.fixture(scope="module")
def server():
    httpd, thread = start_background()
    yield f"http://127.0.0.1:{httpd.server_address[1]}"
    httpd.shutdown()


def post(base, path, doc):
    req = urllib.request.Request(
        base + path, data=json.dumps(doc).encode(),
        headers={"Content-Type": "application/json"})
    try:
        with urllib.request.urlopen(req) as resp:
            return resp.status, resp.read()
    except urllib.error.HTTPError as e:
        return e.code, e.read()


def get(base, path):
    try:
        with urllib.request.urlopen(base + path) as resp:
            return resp.status, resp.read()
    except urllib.error.HTTPError as e:
        return e.code, e.read()


PATH_DOC = {"vertices": ["1", "2", "3"],
            "arrows": [{"id": "a", "from": "1", "to": "2"},
                       {"id": "b", "from": "2", "to": "3"}]}
ORIENTED_DOC = {"vertices": ["1", "2", "3"],
                "arrows": [{"id": "a", "from": "1", "to": "2"},
                           {"id": "b", "from": "2", "to": "3"},
                           {"id": "c", "from": "3", "to": "1"}]}


class TestEndpoints:
    def test_mutate_path_to_triangle(self, server):
        status, body = post(server, "/api/mutate", {"quiver": PATH_DOC, "vertex": "2"})
        assert status == 200
        doc = json.loads(body)["quiver"]
        assert len(doc["arrows"]) == 3

    def test_analyze_oriented_cycle(self, server):
        status, body = post(server, "/api/analyze", {"quiver": ORIENTED_DOC})
        assert status == 200
        doc = json.loads(body)
        assert doc["recognized"] is False and doc["reason"] == "NoNonOrientedCycle"

    def test_analyze_recognized_fields(self, server):
        q = build_normal_form(Parameters(2, 3, 3, 4))
        status, body = post(server, "/api/analyze", {"quiver": json.loads(write_quiver(q))})
        assert status == 200
        doc = json.loads(body)
        assert doc["recognized"] is True
        assert doc["parameters"]["r_bar"] == 8
        assert {(p["n"], p["m"], p["count"]) for p in doc["phi"]["pairs"]} == {
            (0, 3, 7), (5, 2, 1), (7, 3, 1)}
        assert doc["decomposition"]["cycle"][0] == "c00"

    def test_normal_form_double_arrow(self, server):
        status, body = get(server, "/api/normal-form?r1=1&r2=0&s1=1&s2=0")
        assert status == 200
        doc = json.loads(body)["quiver"]
        assert len(doc["vertices"]) == 2 and len(doc["arrows"]) == 2

    def test_reduce(self, server):
        q = build_normal_form(Parameters(1, 1, 1, 0))
        status, body = post(server, "/api/reduce", {"quiver": json.loads(write_quiver(q))})
        assert status == 200
        doc = json.loads(body)
        assert set(doc) == {"steps", "normal_form"}

    def test_derived_eq(self, server):
        a = json.loads(write_quiver(build_normal_form(Parameters(2, 1, 1, 0))))
        b = json.loads(write_quiver(build_normal_form(Parameters(0, 2, 1, 0))))
        status, body = post(server, "/api/derived-eq", {"a": a, "b": b})
        assert status == 200
        assert json.loads(body)["derived_equivalent"] is False


class TestErrors:
    def test_malformed_json_400(self, server):
        req = urllib.request.Request(
            server + "/api/mutate", data=b"{nope",
            headers={"Content-Type": "application/json"})
        with pytest.raises(urllib.error.HTTPError) as err:
            urllib.request.urlopen(req)
        assert err.value.code == 400

    def test_invariant_violation_400(self, server):
        bad = {"vertices": ["1"], "arrows": [{"id": "a", "from": "1", "to": "1"}]}
        status, body = post(server, "/api/mutate", {"quiver": bad, "vertex": "1"})
        assert status == 400
        assert json.loads(body)["error"] == "InvariantViolation"

    def test_not_in_class_422(self, server):
        status, body = post(server, "/api/reduce", {"quiver": ORIENTED_DOC})
        assert status == 422
        assert json.loads(body)["error"] == "NotInClass"

    def test_unknown_endpoint_400(self, server):
        status, _ = post(server, "/api/unknown", {})
        assert status == 400


class TestParity:
    def test_stateless_replay(self, server):
        doc = {"quiver": PATH_DOC, "vertex": "2"}
        first = post(server, "/api/mutate", doc)
        second = post(server, "/api/mutate", doc)
        assert first == second

    def test_cli_and_server_bytes_match(self, server, tmp_path, capsys):
        q = build_normal_form(Parameters(2, 3, 3, 4))
        f = tmp_path / "q.json"
        f.write_bytes(write_quiver(q))
        assert cli_main(["params", str(f)]) == 0
        cli_params = capsys.readouterr().out.strip().encode()
        status, body = post(server, "/api/analyze", {"quiver": json.loads(write_quiver(q))})
        assert status == 200
        # the parameters block inside the analyze answer uses the same serializer
        from tildea.jsonio import dump_doc
        server_params = dump_doc(json.loads(body)["parameters"])
        assert server_params == cli_params

        assert cli_main(["ag", str(f), "--cluster-tilted"]) == 0
        cli_phi = capsys.readouterr().out.strip().encode()
        server_phi = dump_doc(json.loads(body)["phi"])
        assert server_phi == cli_phi
