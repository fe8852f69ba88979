import json

from osp12.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_list(capsys):
    code, out, _ = run(capsys, "list")
    assert code == 0 and "bch-order" in out


def test_defining_relations_exact(capsys):
    code, out, _ = run(capsys, "run", "defining-relations")
    rep = json.loads(out)
    assert code == 0 and rep["pass"] and rep["backend"] == "exact"
    assert {c["residual"] for c in rep["checks"]} == {"exact-zero"}
    assert set(rep) >= {"suite", "backend", "seed", "checks", "pass"}


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, "run", "bogus")[0] == 2
    assert run(capsys, "run", "unitarity", "--scales", "0.01,0.1")[0] == 2
    assert run(capsys, "run", "unitarity", "--samples", "0")[0] == 2
    assert run(capsys, "run", "bch-order", "--backend", "exact")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    code, _, err = run(capsys, "run", "reality-vector", "--params", str(bad))
    assert code == 2 and "not valid JSON" in err
    assert run(capsys)[0] == 2


def test_failures_exit_one(capsys):
    # a tolerance below rounding makes the float unitarity checks fail
    code, out, _ = run(capsys, "run", "unitarity", "--samples", "3", "--tolerance", "1e-30")
    assert code == 1 and json.loads(out)["pass"] is False


def test_determinism_and_out(capsys, tmp_path):
    args = ["run", "bch-order", "--samples", "6", "--seed", "11"]
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second
    target = tmp_path / "r.json"
    code, out, _ = run(capsys, *args, "--out", str(target))
    assert code == 0 and out == "" and target.read_text() == first


def test_text_format_and_params(capsys, tmp_path):
    p = tmp_path / "p.json"
    p.write_text(json.dumps({"epsilon": [0, 0, 0], "eta": [[1, 0], [0, 1]], "vartheta": [[1, 0], [0, 1]]}))
    code, out, _ = run(capsys, "run", "reality-vector", "--samples", "5", "--params", str(p), "--format", "text")
    assert code == 0 and out.startswith("reality-vector [exact] PASS")
