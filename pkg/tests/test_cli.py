import json

import pytest

from preadmissible import __version__
from preadmissible.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def envelope(out):
    data = json.loads(out)
    assert set(data) == {"command", "inputs", "result", "timing_ms", "version"}
    assert data["version"] == __version__
    return data


@pytest.fixture()
def s8_file(tmp_path, capsys):
    path = tmp_path / "s8.group"
    assert main(["sylow", "--l", "2", "--n", "3", "--out", str(path)]) == 0
    capsys.readouterr()
    return path


@pytest.fixture()
def s9_file(tmp_path, capsys):
    path = tmp_path / "s9.group"
    assert main(["sylow", "--l", "3", "--n", "2", "--out", str(path)]) == 0
    capsys.readouterr()
    return path


def test_sylow(capsys, tmp_path):
    path = tmp_path / "g.group"
    code, out, _ = run(capsys, "sylow", "--l", "2", "--n", "3", "--out", str(path))
    data = envelope(out)
    assert code == 0
    assert data["result"]["order"] == 128
    assert len(data["result"]["generators"]) == 3
    lines = [l for l in path.read_text().splitlines() if l and not l.startswith("#")]
    assert lines[0] == "degree 8" and len(lines) == 4
    code, out, _ = run(capsys, "sylow", "--l", "3", "--n", "2")
    assert envelope(out)["result"]["order"] == 81


def test_sylow_beyond_materialization(capsys):
    code, out, _ = run(capsys, "sylow", "--l", "2", "--n", "6")
    result = envelope(out)["result"]
    assert code == 0 and result["order"] == 2**63 and result["materialized"] is False


def test_sylow_not_prime(capsys):
    code, out, err = run(capsys, "sylow", "--l", "4", "--n", "2")
    assert code == 2 and out == ""
    line = json.loads(err)
    assert line["error"] == "input" and "not prime" in line["message"]
    assert err.count("\n") == 1


def test_verify_pass(capsys, s8_file):
    code, out, _ = run(capsys, "verify", "--group", str(s8_file), "--subgroup", "(1,2)")
    result = envelope(out)["result"]
    assert code == 0 and result["pass"] and result["failures"] == []


def test_verify_fail_with_witness(capsys, s9_file):
    code, out, _ = run(capsys, "verify", "--group", str(s9_file), "--subgroup", "(1,2,3)")
    result = envelope(out)["result"]
    assert code == 1 and not result["pass"]
    witnesses = [sorted(f["generators"]) for f in result["failures"] if f["split_count"] == 1]
    assert sorted(["(1,2,3)", "(4,5,6)"]) in witnesses


def test_verify_jobs_and_scope(capsys, s8_file):
    _, one, _ = run(capsys, "verify", "--group", str(s8_file), "--subgroup", "(1,2)")
    _, two, _ = run(capsys, "verify", "--group", str(s8_file), "--subgroup", "(1,2)", "--jobs", "2")
    assert json.loads(one)["result"] == json.loads(two)["result"]
    code, out, _ = run(capsys, "verify", "--group", str(s8_file), "--subgroup", "(1,2)", "--scope", "all-subgroups")
    assert code == 1 and json.loads(out)["result"]["scope"] == "all-subgroups"


def test_verify_generator_not_in_group(capsys, s8_file):
    code, _, err = run(capsys, "verify", "--group", str(s8_file), "--subgroup", "(1,3)")
    assert code == 2 and json.loads(err)["error"] == "precondition"


def test_input_errors(capsys, tmp_path, s8_file):
    code, _, err = run(capsys, "verify", "--group", str(tmp_path / "missing"), "--subgroup", "(1,2)")
    assert code == 2 and json.loads(err)["error"] == "input"
    code, _, err = run(capsys, "verify", "--group", str(s8_file), "--subgroup", "(1,1)")
    assert code == 2 and "repeated point" in json.loads(err)["message"]
    code, _, err = run(capsys, "verify", "--group", str(s8_file))
    assert code == 2 and "--subgroup" in json.loads(err)["message"]
    code, _, err = run(capsys, "nonsense")
    assert code == 2


def test_resource_cap(capsys, s8_file, monkeypatch):
    monkeypatch.setenv("PREADMISSIBLE_ORDER_CAP", "100")
    code, _, err = run(capsys, "verify", "--group", str(s8_file), "--subgroup", "(1,2)")
    assert code == 3 and json.loads(err)["error"] == "resource"


def test_gassmann_commands(capsys, tmp_path):
    s3 = tmp_path / "s3.group"
    s3.write_text("degree 3\n(1,2)\n(1,2,3)\n")
    _, out, _ = run(capsys, "gassmann", "--group", str(s3), "--h", "(1,2)", "--h2", "(1,3)")
    r = envelope(out)["result"]
    assert r["equivalent"] and r["conjugate"]
    _, out, _ = run(capsys, "gassmann", "--group", str(s3), "--h", "(1,2)", "--h2", "(1,2,3)")
    assert not json.loads(out)["result"]["equivalent"]


def test_gassmann_psl32(capsys):
    from preadmissible.gassmann import psl32_gassmann_pair

    G, H, H2 = psl32_gassmann_pair()
    gens = lambda K: ";".join(str(g) for g in K.generator_perms())
    code, out, _ = run(capsys, "gassmann", "--group", "builtin:psl32", "--h", gens(H), "--h2", gens(H2))
    r = envelope(out)["result"]
    assert code == 0 and r["orders"] == [24, 24]
    assert r["equivalent"] and not r["conjugate"] and r["cyclic_check"]
    code, _, err = run(capsys, "gassmann", "--group", "builtin:nothing", "--h", "()", "--h2", "()")
    assert code == 2


def test_padic(capsys, tmp_path):
    code, out, _ = run(capsys, "padic", "verify", "--m", "129", "--precision", "40")
    data = envelope(out)
    assert code == 0 and data["command"] == "padic verify"
    fact = data["result"]["factorization"]
    assert fact["x^32-m"] and fact["x^32-2^16*m"] and fact["precision"] == 40
    real = data["result"]["realizability"]
    assert real["counts"] == [2, 1] and real["verdict"] == "not equivalent by preadmissibility"

    fields = tmp_path / "k.json"
    fields.write_text(json.dumps([{"label": "a", "degree": 16, "roots_of_unity": 2}]))
    code, out, _ = run(capsys, "padic", "verify", "--m", "641", "--k-fields", str(fields), "--l-fields", str(fields))
    assert json.loads(out)["result"]["realizability"]["counts"] == [1, 1]

    code, _, err = run(capsys, "padic", "verify", "--m", "3")
    assert code == 2 and json.loads(err)["error"] == "precondition"
    fields.write_text("[{]")
    code, _, err = run(capsys, "padic", "verify", "--m", "129", "--k-fields", str(fields))
    assert code == 2


def test_padic_target_shape(capsys):
    _, out, _ = run(capsys, "padic", "verify", "--m", "129", "--target", "2")
    assert json.loads(out)["result"]["realizability"]["counts"] == [6, 6]
    code, _, _ = run(capsys, "padic", "verify", "--m", "129", "--target", "16^x")
    assert code == 2


def test_determinism(capsys, s9_file):
    argv = ("verify", "--group", str(s9_file), "--subgroup", "(1,2,3)")
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    strip = lambda s: {k: v for k, v in json.loads(s).items() if k != "timing_ms"}
    assert strip(a) == strip(b)


def test_text_format(capsys, s8_file):
    code, out, _ = run(capsys, "--format", "text", "verify", "--group", str(s8_file), "--subgroup", "(1,2)")
    assert code == 0 and out.startswith("verify") and "pass: true" in out


def test_suite_filter_and_fault(capsys):
    code, out, err = run(capsys, "paper-suite", "--filter", "s8")
    data = envelope(out)
    names = [c["name"] for c in data["result"]["claims"]]
    assert code == 0 and names and all(n.startswith(("s8", "hierarchy")) for n in names)
    assert all(l.startswith("PASS") for l in err.splitlines())
    code, _, _ = run(capsys, "paper-suite", "--filter", "padic", "--inject-fault")
    assert code == 1
    code, _, _ = run(capsys, "paper-suite", "--filter", "s8", "--inject-fault", "s8-generator")
    assert code == 1
    code, _, _ = run(capsys, "paper-suite", "--filter", "inequality", "--inject-fault", "threshold")
    assert code == 1
    code, _, err = run(capsys, "paper-suite", "--filter", "nothing-matches")
    assert code == 2
