import io
import json

from gkmkalc.cli import run
from gkmkalc.rankone import RankOneCase, small_graph


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


def small_p2(tmp_path):
    return write(tmp_path, "p2.json", small_graph(RankOneCase("P2")).to_json())


def klass(tmp_path, name, exps):
    return write(tmp_path, name, {"values": {v: {"terms": [{"exp": [e], "coeff": 1}]}
                                             for v, e in zip(["s12", "s23", "s13"], exps)}})


def test_toric_catalog():
    code, text = call("toric", "P2", "--window", "1")
    rep = json.loads(text)
    assert code == 0 and rep["pass"] and len(rep["gkm"]["edges"]) == 3


def test_toric_dot():
    code, text = call("toric", "P1xP1", "--window", "1", "--dot")
    assert code == 0 and text.startswith("graph")


def test_member_pass_and_fail(tmp_path):
    g = small_p2(tmp_path)
    assert call("member", g, klass(tmp_path, "a.json", [0, 1, -1]))[0] == 0
    code, text = call("member", g, klass(tmp_path, "b.json", [0, 1, 0]))
    assert code == 1 and not json.loads(text)["pass"]


def test_mul_and_rr(tmp_path):
    g = small_p2(tmp_path)
    f = klass(tmp_path, "a.json", [0, 1, -1])
    assert call("mul", g, f, f)[0] == 0
    code, text = call("rr", g, "--class", f)
    assert code == 0 and json.loads(text)["transport"]["pass"]


def test_input_errors(tmp_path):
    bad = write(tmp_path, "bad.json", '{"rank": 1,\n "vertices": [}')
    code, _ = call("member", bad, bad)
    assert code == 2
    assert call("toric", str(tmp_path / "missing.json"))[0] == 2
    assert call("catalog", "P7")[0] == 2
    assert call("nonsense")[0] == 2


def test_rankone_and_catalog():
    code, text = call("rankone", "Fn", "--n", "2", "--g-equivariant")
    rep = json.loads(text)
    assert code == 0 and rep["rs"]["extra_relation"]["text"] == "x1^2*x3^-2 = x2*x3^2*x4^-1"
    code, text = call("catalog", "Fn", "--n", "3", "--rankone", "--g-equivariant")
    assert code == 0 and json.loads(text)["g_equivariant"]["vertices"] == ["s12", "s23", "s14"]


def test_symmetric_and_schubert():
    code, text = call("symmetric", "build", "--instance", "A1xA1-swap", "--g-equivariant", "1")
    rep = json.loads(text)
    assert code == 0 and rep["structure"]["W_G/H"] == 2
    code, text = call("schubert", "A1", "--constants", "s1", "s1", "--window", "1")
    assert code == 0 and json.loads(text)["checks"][0]["pass"]


def test_invariants(tmp_path):
    g = small_p2(tmp_path)
    grp = write(tmp_path, "grp.json", [{"perm": ["s12", "s13", "s23"], "mat": [[1]]}])
    code, text = call("invariants", g, grp, "--no-strict", "--quotient", "-B", "1")
    rep = json.loads(text)
    assert code == 0 and rep["quotient"]["vertices"] == ["s12", "s13"]


def test_output_is_deterministic(tmp_path):
    a = call("symmetric", "build", "--instance", "A3-psp")[1]
    b = call("symmetric", "build", "--instance", "A3-psp")[1]
    assert a == b
    out = tmp_path / "r.json"
    assert call("toric", "P1", "--json", str(out))[0] == 0
    assert json.loads(out.read_text())["pass"]
