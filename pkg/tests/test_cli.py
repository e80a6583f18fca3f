import json
import math

import pytest

from algentropy import cli
from algentropy.roots import CertificationError


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_entropy_matrix(capsys):
    code, out, _ = run_cli(capsys, "entropy", "--matrix", '[["3/2"]]')
    assert code == 0
    doc = json.loads(out)
    assert abs(doc["entropy"] - math.log(3)) < 1e-7
    assert doc["finite_places"] == [
        {"p": 2, "v_s": 1, "contribution": math.log(2)}
    ]
    assert doc["s"] == "2"
    assert doc["char_poly_primitive"] == ["-3", "2"]
    assert doc["certified"] is True and doc["zero_entropy_exact"] is False


def test_entropy_poly(capsys):
    code, out, _ = run_cli(capsys, "entropy", "--poly", "[1,-5,6]")
    assert code == 0
    doc = json.loads(out)
    assert abs(doc["entropy"] - math.log(6)) < 1e-12
    assert doc["archimedean"] == 0.0
    assert [f["p"] for f in doc["finite_places"]] == [2, 3]


def test_entropy_identity_matrix(capsys):
    code, out, _ = run_cli(capsys, "entropy", "--matrix", '[["1","0"],["0","1"]]')
    doc = json.loads(out)
    assert code == 0 and doc["entropy"] == 0.0 and doc["zero_entropy_exact"] is True


def test_mahler_command(capsys):
    code, out, _ = run_cli(capsys, "mahler", "--poly", "[-3,2]")
    doc = json.loads(out)
    assert code == 0 and abs(doc["value"] - math.log(3)) < 1e-12
    assert len(doc["roots"]) == 1


def test_polygon_command(capsys):
    code, out, _ = run_cli(capsys, "polygon", "--poly", "[1,-5,6]", "--pretty")
    doc = json.loads(out)
    assert code == 0
    assert doc["s"] == "6"
    assert [p["p"] for p in doc["primes"]] == [2, 3]
    assert doc["primes"][0]["segments"] == [
        {"slope": "0", "length": 1},
        {"slope": "1", "length": 1},
    ]
    assert doc["identity"]["pass"] is True


def test_trajectory_command(capsys):
    code, out, _ = run_cli(
        capsys, "trajectory", "--matrix", '[["3/2"]]', "--m", "1", "--max-n", "10"
    )
    doc = json.loads(out)
    assert code == 0
    assert doc["counts"] == [str(3**n) for n in range(1, 11)]
    assert doc["classification"] == "Exponential"
    assert doc["gap"] < 1e-12
    assert doc["discrepancy"] is False
    assert doc["budget_exhausted_at"] is None


def test_trajectory_partitions_flag(capsys):
    outs = []
    for parts in ("1", "2", "8"):
        code, out, _ = run_cli(
            capsys, "trajectory", "--matrix", '[["2"]]', "--m", "1",
            "--max-n", "8", "--partitions", parts,
        )
        assert code == 0
        outs.append(json.loads(out)["counts"])
    assert outs[0] == outs[1] == outs[2]


def test_trajectory_admissible_m_flag(capsys):
    code, out, _ = run_cli(
        capsys, "trajectory", "--matrix", '[["3/2"]]', "--m", "0", "--max-n", "5"
    )
    doc = json.loads(out)
    assert code == 0 and doc["m"] == 6


def test_classify_command(capsys):
    code, out, _ = run_cli(
        capsys, "classify", "--matrix", '[["0","-1"],["1","0"]]', "--m", "1",
        "--max-n", "20",
    )
    doc = json.loads(out)
    assert code == 0
    assert doc["classification"] == "Polynomial"
    assert doc["formula_entropy"] == 0.0 and doc["discrepancy"] is False


def test_input_file_and_flag_override(tmp_path, capsys):
    spec = {"matrix": [["2"]], "m": 1, "n_max": 4}
    path = tmp_path / "in.json"
    path.write_text(json.dumps(spec))
    code, out, _ = run_cli(capsys, "trajectory", "--input", str(path))
    assert code == 0 and json.loads(out)["counts"] == ["3", "7", "15", "31"]
    code, out, _ = run_cli(capsys, "trajectory", "--input", str(path), "--max-n", "6")
    assert code == 0 and len(json.loads(out)["counts"]) == 6


def test_spec_roundtrip():
    doc = {
        "matrix": [["3/2", "-1"], ["0", "7"]],
        "m": 2,
        "n_max": 9,
        "budget": 1000,
        "precision": 256,
        "tolerance": 1e-10,
        "seed": 5,
        "partitions": 2,
    }
    spec = cli.parse_spec(doc)
    rendered = cli.serialize_spec(spec)
    assert rendered == doc
    assert cli.serialize_spec(cli.parse_spec(rendered)) == rendered
    poly_doc = {"poly": ["1", "-5", "6"]}
    rendered = cli.serialize_spec(cli.parse_spec(poly_doc))
    assert rendered["poly"] == ["1", "-5", "6"]


def test_input_errors_exit_2(capsys):
    cases = [
        ("entropy", "--matrix", '[["1/0"]]'),
        ("entropy", "--matrix", '[["1","2"]]'),  # not square
        ("entropy", "--poly", "[1,2,0]"),  # zero leading coefficient
        ("entropy", "--poly", "[0.5,1]"),  # float coefficient
        ("trajectory", "--poly", "[1,2]"),  # needs a matrix
        ("mahler", "--matrix", '[["2"]]'),  # needs a polynomial
    ]
    for argv in cases:
        code, _, err = run_cli(capsys, *argv)
        assert code == 2, argv
        assert "error" in err


def test_both_matrix_and_poly_rejected():
    with pytest.raises(cli.InputError):
        cli.parse_spec({"matrix": [["1"]], "poly": ["1", "1"]})
    with pytest.raises(cli.InputError):
        cli.parse_spec({})


def test_certification_failure_exit_3(capsys, monkeypatch):
    def explode(*args, **kwargs):
        raise CertificationError("forced for the exit-code contract")

    monkeypatch.setattr(cli, "mahler_measure", explode)
    code, out, _ = run_cli(capsys, "mahler", "--poly", "[-3,2]")
    assert code == 3
    doc = json.loads(out)
    assert doc["certified"] is False and "error" in doc


def test_verify_command(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "--suite", "place-identity", "--seed", "7", "--count", "20"
    )
    assert code == 0
    assert "SUITE place-identity: 20/20 passed" in out

    code, _, err = run_cli(capsys, "verify", "--suite", "no-such-suite")
    assert code == 2 and "unknown suite" in err


def test_verify_failure_exit_4(capsys, monkeypatch):
    from algentropy import verify as verify_mod

    def broken(name, seed=0, count=None):
        return verify_mod.SuiteResult(
            suite=name, checks=(verify_mod.Check("forced", False, "boom"),)
        )

    monkeypatch.setattr(cli, "run_suite", broken)
    code, out, _ = run_cli(capsys, "verify", "--suite", "oracle")
    assert code == 4 and "FAIL forced" in out
