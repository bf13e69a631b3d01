import json
import subprocess
import sys

import pytest

from elemcomp.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out)


def test_quotient_examples(capsys):
    code, out = run_json(capsys, "quotient", "--n1", "3", "--n2", "3")
    assert code == 0 and out["dim"] == 27 and out["socle_dim"] == 5 and out["socle_condition"]
    assert run_json(capsys, "quotient", "--n1", "2", "--n2", "5")[1]["dim"] == 35
    code, out = run_json(capsys, "quotient", "--n1", "3", "--n2", "3", "--socle", "x^2*z^2;x^2*w^2;y^2*z^2")
    assert (out["dim"], out["socle_dim"]) == (24, 2)


def test_quotient_general_socle_is_seeded(capsys):
    args = ("quotient", "--n1", "4", "--n2", "4", "--n3", "2", "--general-socle", "4")
    _, a = run_json(capsys, *args, "--seed", "11")
    _, b = run_json(capsys, *args, "--seed", "11")
    _, c = run_json(capsys, *args, "--seed", "12")
    assert a == b and a["general_socle"]["elements"] != c["general_socle"]["elements"]
    assert a["general_socle"]["socle_dim_of_quotient"] == 2


def test_tangent_and_engines(capsys):
    code, out = run_json(capsys, "tangent", "--n1", "2", "--n2", "4")
    assert code == 0 and out["total"] == 69 and out["tnt"]
    code, out = run_json(capsys, "tangent", "--n1", "3", "--n2", "3", "--engine", "both", "--oracle")
    assert code == 0 and out["engines_agree"] and out["oracle_agrees"] and out["total"] == 70


def test_tnt_counterexample(capsys):
    code, out = run_json(capsys, "tnt", "--raw", "y;z;w;x^2")
    assert code == 0 and out["tnt"] is False and out["negative_degrees"]["-2"] == 1


def test_t2(capsys):
    code, out = run_json(capsys, "t2", "--n1", "4", "--n2", "4", "--n3", "2")
    assert code == 0 and out["t2_nonneg_zero"] is False and out["conclusive"]
    code, out = run_json(capsys, "t2", "--n1", "2", "--n2", "2", "--oracle")
    assert code == 0 and out["t2_nonneg_zero"] is True


def test_t2_scope_refusal_and_cutoff(capsys):
    code, out, err = run(capsys, "t2", "--n1", "5", "--n2", "5")
    assert code == 3 and "refused" in err and not out
    code, out = run_json(capsys, "t2", "--n1", "5", "--n2", "5", "--t2-cutoff", "2")
    assert code == 0 and out["conclusive"] is False and out["warnings"]


def test_formula(capsys):
    code, out = run_json(capsys, "formula", "--n1", "9", "--n2", "15")
    assert code == 0 and out["lt_3dm1"] is True and out["D_sum"] == out["D_closed"]


def test_oracle_refusal_exit_code(capsys):
    code, out, err = run(capsys, "tangent", "--n1", "6", "--n2", "6", "--oracle")
    assert code == 3 and "oracle" in err


@pytest.mark.parametrize("argv", [
    ("quotient",),
    ("quotient", "--n1", "3"),
    ("quotient", "--n1", "2", "--n2", "2", "--raw", "x"),
    ("quotient", "--raw", "y;z;w;x^2", "--n3", "2"),
    ("quotient", "--n1", "2", "--n2", "2", "--field", "p:91"),
    ("quotient", "--n1", "2", "--n2", "2", "--field", "r"),
    ("quotient", "--raw", "x;y;z;w^2;t"),
    ("quotient", "--raw", "x;y;z"),
    ("quotient", "--n1", "1", "--n2", "2"),
    ("reproduce", "no-such-scenario"),
    ("reproduce",),
    ("formula", "--n1", "1", "--n2", "4"),
])
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_argparse_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["tangent", "--engine", "fast"])
    assert info.value.code == 2
    capsys.readouterr()


def test_reproduce_pass(capsys):
    code, out = run_json(capsys, "reproduce", "iarrobino-emsalem", "eg2-chain", "--no-timing")
    assert code == 0
    assert [r["name"] for r in out] == sorted(r["name"] for r in out)
    assert all(r["pass"] for r in out) and len(out) == 5
    ie = next(r for r in out if r["name"] == "iarrobino-emsalem")
    assert ie["computed"]["colength"] == 8 and ie["computed"]["tangent_total"] == 25


def test_reproduce_mismatch_exit_code(capsys, tmp_path):
    cat = {"scenarios": [{"name": "wrong", "groups": [], "spec": {"family": {"n1": 2, "n2": 2}},
                          "expected": {"colength": 8, "tangent_total": 26}}]}
    path = tmp_path / "catalog.json"
    path.write_text(json.dumps(cat))
    code, out = run_json(capsys, "reproduce", "--all", "--catalog", str(path), "--no-timing")
    assert code == 1
    assert out[0]["checks"] == {"colength": True, "tangent_total": False}
    code, _, err = run(capsys, "reproduce", "--all", "--catalog", str(tmp_path / "missing.json"))
    assert code == 2


def test_reproduce_list(capsys):
    code, out = run_json(capsys, "reproduce", "--list")
    assert code == 0 and {"taxicab", "eg2-prime-a", "eg2-prime-b"} <= {r["name"] for r in out}


def test_table1_small(capsys):
    code, out = run_json(capsys, "table1", "--max-n1", "5")
    assert code == 0 and all(r["tnt"] and r["hom_lt_4d"] for r in out)
    assert {(r["n1"], r["n2"], r["n3"]) for r in out} == {(4, 4, 2), (4, 5, 3), (5, 5, 3), (5, 6, 3), (5, 6, 4),
                                                         (5, 7, 4)}


def test_csv_and_pretty(capsys):
    code, out, _ = run(capsys, "tangent", "--n1", "2", "--n2", "2", "--csv")
    header, row = out.strip().splitlines()
    assert code == 0 and "total" in header.split(",") and "25" in row.split(",")
    code, out, _ = run(capsys, "tangent", "--n1", "2", "--n2", "2", "--pretty")
    assert code == 0 and "total: 25" in out


def test_rational_field(capsys):
    code, out = run_json(capsys, "tangent", "--n1", "2", "--n2", "3", "--field", "q")
    assert code == 0 and out["total"] == 44 and out["field"] == "Q"


def _cli(*argv):
    return subprocess.run([sys.executable, "-m", "elemcomp", *argv], capture_output=True, check=False)


def test_byte_identical_reruns():
    argv = ("reproduce", "socle", "eg2-chain", "--no-timing", "--seed", "5")
    a, b = _cli(*argv), _cli(*argv)
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout and a.stdout
    q = ("quotient", "--n1", "4", "--n2", "4", "--n3", "2", "--general-socle", "4", "--seed", "9")
    assert _cli(*q).stdout == _cli(*q).stdout


def test_reproduce_all_catalog(capsys):
    code, out = run_json(capsys, "reproduce", "--all", "--no-timing")
    failed = [r["name"] for r in out if not r["pass"]]
    assert code == 0 and not failed
    assert len(out) == 73
