import json

import pytest

from tautclass.flatbundles import relator_product
from tautclass.reps import (
    BUILTIN_FIXTURES,
    genus2_fuchsian,
    genus2_solved,
    load_rep,
    rep_from_dict,
    save_rep,
)


def test_all_fixture_files_load(fixtures_dir):
    for name in BUILTIN_FIXTURES:
        rep = load_rep(str(fixtures_dir / name))
        assert not rep.inexact
        assert len(rep.matrices) == 2 * rep.genus
        assert relator_product(rep.matrices).scalar_multiple_of_identity() == 1


def test_rep_roundtrip(tmp_path):
    rep = genus2_fuchsian()
    path = tmp_path / "rep.json"
    save_rep(rep, str(path))
    back = load_rep(str(path))
    assert back.matrices == rep.matrices
    assert back.tag == rep.tag and back.field == rep.field


def test_fuchsian_construction_properties():
    rep = genus2_fuchsian()
    a, b, a2, b2 = rep.matrices
    for m in rep.matrices:
        assert m.det() == 1
    c = a @ b @ a.inverse() @ b.inverse()
    tr = c.rows[0][0] + c.rows[1][1]
    assert tr < -2  # hyperbolic one-holed-torus region
    c2 = a2 @ b2 @ a2.inverse() @ b2.inverse()
    assert (c @ c2).is_identity()


def test_solved_family_structure():
    rep = genus2_solved(3)
    a1, b1, a2, b2 = rep.matrices
    c = (a1 @ b1 @ a1.inverse() @ b1.inverse()).inverse()
    assert a2 @ b2 @ a2.inverse() @ b2.inverse() == c
    assert b2.det() > 0


def test_decimal_entries_marked_inexact():
    rep = rep_from_dict(
        {
            "field": "Q",
            "genus": 1,
            "tag": "SL",
            "matrices": [
                [["2.0", "0"], ["0", "0.5"]],
                [["3", "0"], ["0", "1/3"]],
            ],
        }
    )
    assert rep.inexact
    assert rep.raw_float[0][0][0] == 2.0


def test_fixture_env_resolution(monkeypatch, fixtures_dir, tmp_path):
    monkeypatch.chdir(tmp_path)
    with pytest.raises(FileNotFoundError):
        load_rep("g1_diag.json")
    monkeypatch.setenv("TAUTCLASS_FIXTURES", str(fixtures_dir))
    assert load_rep("g1_diag.json").genus == 1
