import json

import numpy as np
import pytest

from dualdec.cli import FIXTURES, load_spec, main, read_csv
from dualdec.codebook import encode_array
from dualdec.dualmine import load_checks, save_checks


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture(scope="module")
def checks_file(tmp_path_factory, bch_checks):
    p = tmp_path_factory.mktemp("c") / "bch.json"
    save_checks(bch_checks, p)
    return str(p)


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as e:
        main(["decode", "--spec", "bch63_24", "--bogus"])
    assert e.value.code == 1
    assert "usage" in capsys.readouterr().err
    with pytest.raises(SystemExit) as e:
        main([])
    assert e.value.code == 1


def test_runtime_failure_exit_code(capsys, tmp_path):
    code, out, err = run(capsys, "encode", "--spec", str(tmp_path / "missing.json"), "--info", "1")
    assert code == 2 and out == "" and "FileNotFoundError" in err


def test_worked_example_decode(capsys, checks_file):
    code, out, _ = run(capsys, "encode", "--spec", "bch63_24", "--info", "x^7+x^2+1")
    c = json.loads(out)["polynomial"]
    code, out, _ = run(capsys, "decode", "--spec", "bch63_24", "--checks", checks_file,
                       "--received", f"{c}+x^42+x^38+x^11")
    d = json.loads(out)
    assert code == 0
    assert d["report"]["status"] == "Corrected"
    assert d["report"]["error_polynomial"] == "x^42+x^38+x^11"
    assert {"version", "spec_hash", "checks_hash"} <= set(d["meta"])


@pytest.mark.parametrize("name", FIXTURES)
def test_round_trip_all_fixtures(capsys, name, rng):
    spec, _ = load_spec(name)
    info = rng.integers(0, spec.symbol_field.q, spec.k)
    code, out, _ = run(capsys, "encode", "--spec", name, "--info", ",".join(map(str, info)))
    word = json.loads(out)["codeword"]
    assert word == encode_array(spec, info).tolist()
    strategy = "reduce" if spec.is_binary else "nb-max"
    code, out, _ = run(capsys, "decode", "--spec", name, "--received", ",".join(map(str, word)),
                       "--strategy", strategy)
    rep = json.loads(out)["report"]
    assert code == 0 and rep["codeword"] == word and rep["iterations"] == 0


def test_mine_writes_loadable_checks(capsys, tmp_path):
    out_file = tmp_path / "rs.json"
    code, _, err = run(capsys, "mine", "--spec", "rs15_11", "--out", str(out_file))
    assert code == 0 and "L=31" in err
    spec, _ = load_spec("rs15_11")
    assert load_checks(out_file, spec).L == 31


def test_decode_soft(capsys, checks_file):
    y = np.ones(63)
    y[[4, 30]] = -0.2
    code, out, _ = run(capsys, "decode-soft", "--spec", "bch63_24", "--checks", checks_file,
                       "--y", ",".join(map(str, y)))
    assert json.loads(out)["report"]["error_support"] == [4, 30]


def test_analyze_csv(capsys, checks_file):
    code, out, _ = run(capsys, "analyze", "--spec", "bch63_24", "--checks", checks_file,
                       "--tau", "5..6", "--trials", "200", "--seed", "3")
    m, rows = read_csv(out)
    assert code == 0 and m["seed"] == "3" and m["L"] == "35"
    assert [r["tau"] for r in rows] == ["5", "6"]
    assert float(rows[0]["E_omega"]) == pytest.approx(25.2011, abs=1e-4)


def test_simulate_csv(capsys, checks_file, tmp_path):
    dest = tmp_path / "wer.csv"
    code, _, _ = run(capsys, "simulate", "--spec", "bch63_24", "--checks", checks_file,
                     "--p", "0.0:0.02:0.01", "--trials", "300", "--threads", "2", "--out", str(dest))
    m, rows = read_csv(dest.read_text())
    assert code == 0 and m["decoder"] == "reduce"
    assert list(rows[0])[:6] == ["param", "trials", "errors", "wer", "ci_lo", "ci_hi"]
    assert [float(r["param"]) for r in rows] == [0.0, 0.01, 0.02]


def test_simulate_needs_grid(capsys, checks_file):
    code, _, err = run(capsys, "simulate", "--spec", "bch63_24", "--checks", checks_file)
    assert code == 1 and "--p" in err


def test_polarize_and_plotkin(capsys):
    code, out, _ = run(capsys, "polarize", "--trials", "20000", "--seed", "1")
    m, rows = read_csv(out)
    assert [r["component"] for r in rows] == ["p0", "p4", "p3", "p2", "p1"] and m["seed"] == "1"
    code, out, _ = run(capsys, "plotkin", "--rm", "2,6")
    _, rows = read_csv(out)
    assert (rows[0]["n"], rows[0]["k"], rows[0]["d"]) == ("64", "22", "16")
    y = ",".join(["1"] * 7 + ["-0.5"])
    code, out, _ = run(capsys, "plotkin", "--rm", "1,3", "--decode", "hard", "--y", y)
    _, rows = read_csv(out)
    assert [r["bit"] for r in rows] == ["0"] * 8
