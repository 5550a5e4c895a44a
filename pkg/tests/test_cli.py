import json

import pytest

from conftest import rep_path
from tautclass.cli import main


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_verify_witt_relations(capsys):
    code, out = _run(capsys, "verify", "witt-relations", "--samples", "50", "--seed", "7")
    assert code == 0
    report = json.loads(out)
    assert report["suite"] == "witt-relations"
    assert report["failures"] == []


def test_verify_euler_boundary_n4(capsys):
    code, out = _run(
        capsys, "verify", "euler-boundary", "--n", "4", "--samples", "10", "--seed", "1"
    )
    assert code == 0
    assert json.loads(out)["failures"] == []


def test_verify_alternation_quadratic_field(capsys):
    code, out = _run(
        capsys,
        "verify",
        "alternation",
        "--n",
        "2",
        "--samples",
        "20",
        "--field",
        "quad:2",
    )
    assert code == 0
    assert json.loads(out)["field"] == "Q(sqrt(2))"


def test_verify_smillie_reports_factor(capsys):
    code, out = _run(
        capsys, "verify", "smillie", "--rep", rep_path("g2_swap.json"), "--seed", "3"
    )
    assert code == 0
    report = json.loads(out)
    assert report["factors"]["eu1"] == -3
    assert report["failures"] == []


def test_verify_comparison_with_oracle(capsys):
    code, out = _run(
        capsys,
        "verify",
        "comparison",
        "--rep",
        rep_path("g2_fuchs.json"),
        "--oracle",
    )
    assert code == 0
    report = json.loads(out)
    assert report["failures"] == []
    assert report["eu0"] == report["oracle"] == -1
    assert report["witt_signature"] == -4


def test_eval_reports_and_agreement(capsys):
    code, out = _run(
        capsys,
        "eval",
        "--rep",
        rep_path("g1_diag.json"),
        "--selector",
        "eu0",
        "--oracle",
    )
    assert code == 0
    report = json.loads(out)
    assert report["value"] == 0 and report["oracle"] == 0 and report["agree"]


def test_eval_euplus_notes_core(capsys):
    code, out = _run(
        capsys, "eval", "--rep", rep_path("g2_swap.json"), "--selector", "euplus"
    )
    assert code == 0
    report = json.loads(out)
    assert report["core"] is True


def test_eval_witt_invariants(capsys):
    code, out = _run(
        capsys, "eval", "--rep", rep_path("g2_fuchs.json"), "--selector", "witt"
    )
    assert code == 0
    report = json.loads(out)
    assert report["invariants"]["signature"] == -4


def test_eval_determinism(capsys):
    args = ("eval", "--rep", rep_path("g2_swap.json"), "--selector", "euplus", "--seed", "5")
    _, out1 = _run(capsys, *args)
    _, out2 = _run(capsys, *args)
    assert out1 == out2


def test_verify_determinism(capsys):
    args = ("verify", "witt-cocycle", "--samples", "10", "--seed", "2")
    code1, out1 = _run(capsys, *args)
    code2, out2 = _run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2


def test_product_command(capsys):
    code, out = _run(
        capsys,
        "product",
        "--repA",
        rep_path("g1_diag.json"),
        "--repB",
        rep_path("g1_diag2.json"),
        "--seed",
        "1",
    )
    assert code == 0
    report = json.loads(out)
    assert report["euler_A"] == report["euler_B"] == 0
    assert report["euler_product"] == 0
    assert report["cross_product_check"] and report["cup_check"]


def test_product_strong_genericity_exhaustion_exit_code(capsys):
    # unipotent holonomies force zero-sum relations: no strongly generic
    # section exists and the command reports resampling exhaustion
    code = main(
        [
            "product",
            "--repA",
            rep_path("g1_parab.json"),
            "--repB",
            rep_path("g1_diag.json"),
        ]
    )
    assert code == 4


def test_exit_codes(capsys, tmp_path):
    # unknown suite: argparse usage error
    with pytest.raises(SystemExit) as exc:
        main(["verify", "nonsense"])
    assert exc.value.code == 2
    # relator failure: exit 3
    bad = tmp_path / "bad.json"
    bad.write_text(
        json.dumps(
            {
                "field": "Q",
                "genus": 1,
                "tag": "SL",
                "matrices": [
                    [["1", "1"], ["0", "1"]],
                    [["1", "0"], ["1", "1"]],
                ],
            }
        )
    )
    assert main(["eval", "--rep", str(bad), "--selector", "eu0"]) == 3
    # missing file: exit 2
    assert main(["eval", "--rep", "missing.json", "--selector", "eu0"]) == 2
    # decimal entries refused by the exact pipeline: exit 3
    dec = tmp_path / "dec.json"
    dec.write_text(
        json.dumps(
            {
                "field": "Q",
                "genus": 1,
                "tag": "SL",
                "matrices": [
                    [["2.0", "0"], ["0", "0.5"]],
                    [["3.0", "0"], ["0", "0.333"]],
                ],
            }
        )
    )
    assert main(["eval", "--rep", str(dec), "--selector", "eu0"]) == 3


def test_fixture_dir_env(capsys, monkeypatch, fixtures_dir):
    monkeypatch.setenv("TAUTCLASS_FIXTURES", str(fixtures_dir))
    code, out = _run(capsys, "eval", "--rep", "g1_diag.json", "--selector", "eu0")
    assert code == 0


def test_csv_output(capsys):
    code, out = _run(
        capsys,
        "verify",
        "witt-relations",
        "--samples",
        "5",
        "--csv",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert any(line.startswith("suite,witt-relations") for line in lines)
