"""CLI contract: output formats, golden files, exit codes, a_p parsing."""

import json
from pathlib import Path

import pytest

from ikeda_hecke.cli import ApTable, ParseError, load_ap_table, main

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_eigenvalue_text(capsys):
    code, out, _ = run(capsys, "eigenvalue", "--n", "1", "--r", "1")
    assert code == 0
    assert out == "q + a + a^-1 + q^-1\n"


def test_eigenvalue_r_zero(capsys):
    code, out, _ = run(capsys, "eigenvalue", "--n", "1", "--r", "0")
    assert code == 0
    assert out == "1\n"


def test_eigenvalue_csv(capsys):
    code, out, _ = run(capsys, "eigenvalue", "--n", "1", "--r", "1",
                       "--format", "csv")
    assert code == 0
    assert out == "q,a,coeff\n1,0,1\n0,1,1\n0,-1,1\n-1,0,1\n"


@pytest.mark.parametrize(
    "golden,argv",
    [
        ("eigenvalue_n1r1.json", ["eigenvalue", "--n", "1", "--r", "1"]),
        ("eigenvalue_n2r1.json", ["eigenvalue", "--n", "2", "--r", "1"]),
        ("threshold_n2r1.json", ["threshold", "--n", "2", "--r", "1"]),
        ("verify_bounds_n1r3.json", ["verify", "bounds", "--n", "1", "--r", "3"]),
    ],
)
def test_golden_json(capsys, golden, argv):
    code, out, _ = run(capsys, *argv, "--format", "json", "--no-timestamp")
    assert code == 0
    assert out == (GOLDEN / golden).read_text()


def test_golden_table_csv(capsys):
    code, out, _ = run(
        capsys,
        "table", "--n", "1", "--r-max", "2",
        "--ap-file", str(GOLDEN / "delta_aps.txt"),
        "--format", "csv", "--no-timestamp",
    )
    assert code == 0
    assert out == (GOLDEN / "table_delta.csv").read_text()


def test_eigenvalue_json_shape(capsys):
    code, out, _ = run(
        capsys, "eigenvalue", "--n", "2", "--r", "1", "--format", "json",
        "--no-timestamp",
    )
    doc = json.loads(out)
    assert doc["terms"][0] == {"q": 4, "a": 0, "coeff": "1"}
    # terms sorted by (q desc, a desc)
    keys = [(t["q"], t["a"]) for t in doc["terms"]]
    assert keys == sorted(keys, key=lambda qa: (-qa[0], -qa[1]))
    # round trip: parsing and re-serializing is the identity
    assert json.dumps(doc, indent=2, sort_keys=True) + "\n" == out


def test_determinism_across_runs_and_threads(capsys):
    argv = ["positivity", "--n", "1", "--r", "1", "--primes", "2",
            "--grid", "51", "--format", "json", "--no-timestamp"]
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    threaded = run(capsys, *argv, "--threads", "4")
    assert first == second == threaded
    assert first[0] == 0


def test_timestamp_toggle(capsys):
    _, with_ts, _ = run(capsys, "threshold", "--n", "1", "--r", "1",
                        "--format", "json")
    _, without, _ = run(capsys, "threshold", "--n", "1", "--r", "1",
                        "--format", "json", "--no-timestamp")
    assert "timestamp" in json.loads(with_ts)["meta"]
    assert "timestamp" not in json.loads(without)["meta"]


def test_threshold_text(capsys):
    code, out, _ = run(capsys, "threshold", "--n", "1", "--r", "2")
    assert code == 0
    assert out == "threshold: 576\nfirst prime above threshold: 577\n"


def test_usage_errors_exit_two(capsys):
    assert run(capsys, "threshold", "--n", "1", "--r", "0")[0] == 2
    assert run(capsys, "positivity", "--n", "1", "--r", "1", "--grid", "2")[0] == 2
    assert run(capsys, "eigenvalue", "--n", "1")[0] == 2       # missing --r
    assert run(capsys, "eigenvalue", "--n", "0", "--r", "1")[0] == 2
    assert run(capsys, "verify", "nonsense", "--n", "1")[0] == 2
    assert run(capsys, "verify", "bounds", "--n", "1", "--format", "csv")[0] == 2
    assert run(capsys, "nosuchcommand")[0] == 2


def test_soft_limits_and_force(capsys):
    code, _, err = run(capsys, "eigenvalue", "--n", "5", "--r", "1")
    assert code == 2 and "--force" in err
    code, out, _ = run(capsys, "eigenvalue", "--n", "5", "--r", "0", "--force")
    assert code == 0 and out == "1\n"
    code, _, err = run(capsys, "verify", "vanishing", "--n", "4")
    assert code == 2 and "--force" in err


def test_verify_vanishing_records(capsys):
    code, out, _ = run(capsys, "verify", "vanishing", "--n", "2",
                       "--format", "json", "--no-timestamp")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["checks"]) == 24
    assert all(c["status"] == "pass" for c in doc["checks"])
    vanishing = [c for c in doc["checks"] if "zero_factor" in c["witness"]]
    assert len(vanishing) == 23


def test_verify_oracle_echoes_polynomials(capsys):
    code, out, _ = run(capsys, "verify", "oracle", "--n", "1", "--r", "2",
                       "--format", "json", "--no-timestamp")
    assert code == 0
    (check,) = json.loads(out)["checks"]
    assert check["status"] == "pass"
    assert check["witness"]["closed_form"] == check["witness"]["brute_force"]
    assert {"q": 2, "a": 0, "coeff": "1"} in check["witness"]["closed_form"]


def test_verify_all_passes(capsys):
    code, out, _ = run(capsys, "verify", "all", "--n", "1", "--r", "2")
    assert code == 0
    assert "fail" not in out.replace("0 fail", "")


def test_positivity_spec_example(capsys):
    code, out, _ = run(capsys, "positivity", "--n", "2", "--r", "1",
                       "--primes", "1", "--grid", "101", "--format", "json",
                       "--no-timestamp")
    assert code == 0
    (check,) = json.loads(out)["checks"]
    assert check["witness"]["prime"] == 25601
    assert check["witness"]["min"] > 0


def test_no_ansi_when_not_a_tty(capsys):
    _, out, _ = run(capsys, "verify", "bounds", "--n", "1", "--r", "1")
    assert "\x1b[" not in out


# -- a_p file handling --------------------------------------------------------


def _write(tmp_path, text):
    path = tmp_path / "aps.txt"
    path.write_text(text, encoding="ascii")
    return str(path)


def test_load_ap_table_basic(tmp_path):
    table = load_ap_table(_write(tmp_path, "# c\nk 12\n2 -24\n3 252\n"))
    assert table == ApTable(k=12, entries=((2, -24), (3, 252)), warnings=())


def test_load_ap_table_parse_errors(tmp_path):
    with pytest.raises(ParseError) as info:
        load_ap_table(_write(tmp_path, "k 12\n2 -24\n7 abc\n"))
    assert info.value.line == 3
    with pytest.raises(ParseError, match="duplicate prime 5") as info:
        load_ap_table(_write(tmp_path, "k 12\n5 1\n5 2\n"))
    assert "first at line 2" in str(info.value) and info.value.line == 3
    with pytest.raises(ParseError, match="strictly increasing"):
        load_ap_table(_write(tmp_path, "k 12\n5 1\n3 2\n"))
    with pytest.raises(ParseError, match="not prime"):
        load_ap_table(_write(tmp_path, "k 12\n4 1\n"))
    with pytest.raises(ParseError, match="header"):
        load_ap_table(_write(tmp_path, "2 -24\n"))
    with pytest.raises(ParseError, match="header"):
        load_ap_table(_write(tmp_path, "# only comments\n"))


def test_ramanujan_violation_warns_but_parses(tmp_path):
    table = load_ap_table(_write(tmp_path, "k 2\n2 100\n"))
    assert table.entries == ((2, 100),)
    assert len(table.warnings) == 1 and "Ramanujan" in table.warnings[0]


def test_table_command_errors(capsys, tmp_path):
    code, _, err = run(capsys, "table", "--n", "1",
                       "--ap-file", _write(tmp_path, "k 12\n3 1\n2 1\n"))
    assert code == 1 and "line 3" in err
    code, _, err = run(capsys, "table", "--n", "1",
                       "--ap-file", str(tmp_path / "missing.txt"))
    assert code == 1 and "cannot read" in err


def test_table_empty_entries(capsys, tmp_path):
    code, out, _ = run(capsys, "table", "--n", "1", "--format", "csv",
                       "--ap-file", _write(tmp_path, "k 12\n"))
    assert code == 0
    assert out == "p,r,t,lambda_tilde,err,lambda,lambda_err\n"


def test_table_warns_and_still_computes(capsys, tmp_path):
    code, out, _ = run(capsys, "table", "--n", "1", "--normalized",
                       "--ap-file", _write(tmp_path, "k 2\n2 100\n"))
    assert code == 0
    assert "warning" in out and "p=2 r=1" in out
