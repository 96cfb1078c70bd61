import os
from fractions import Fraction
from pathlib import Path

import pytest

import regconst

FIXTURES = Path(os.environ.get("REGCONST_FIXTURE_DIR", Path(__file__).resolve().parents[2] / "fixtures"))

V4_RELATION = {"o1#1": 1, "o2#1": -1, "o2#2": -1, "o2#3": -1, "o4#1": 2}


def test_subgroup_classes():
    classes = regconst.subgroup_classes("dihedral:8")
    assert len(classes) == 8
    assert classes[0] == {"label": "o1#1", "order": 1, "size": 1, "cyclic": True, "normal": True}
    assert sum(not c["cyclic"] for c in classes) == 3


def test_relation_basis():
    basis = regconst.relation_basis("elemab:3,2")
    assert basis == [{"o1#1": 1, "o3#1": -1, "o3#2": -1, "o3#3": -1, "o3#4": -1, "o9#1": 3}]
    assert regconst.is_relation("elemab:2,2", V4_RELATION)
    assert not regconst.is_relation("elemab:2,2", {"o1#1": 1, "o4#1": -1})


def test_regulator_constants():
    assert regconst.regulator_constant("elemab:2,2", "Z", V4_RELATION) == Fraction(1, 2)
    assert regconst.regulator_constant("elemab:2,2", "A", V4_RELATION) == 2
    assert regconst.regulator_constant("elemab:2,2", "Tower(1)", V4_RELATION) == Fraction(1, 2)


def test_bouc_and_factorisability():
    assert regconst.bouc_spans_basis("dihedral:16", 2)
    values = {"o1#1": 1, "o2#1": 2, "o2#2": 2, "o2#3": 2, "o4#1": 4}
    assert regconst.factorisable_quotient("elemab:2,2", values)["o4#1"] == 2
    assert not regconst.is_factorisable("elemab:2,2", {k: str(v) for k, v in values.items()})


def test_errors_carry_a_category():
    with pytest.raises(regconst.Error) as info:
        regconst.relation_basis("heisenberg:4")
    assert regconst.error_category(info.value) == "validation"
    with pytest.raises(regconst.Error) as info:
        regconst.regulator_constant("elemab:2,2", "A", {"o9#1": 1})
    assert regconst.error_category(info.value) == "validation"


def test_check_units_fixtures():
    ok, report = regconst.check_units(FIXTURES / "elemab32_good.json")
    assert ok and report["overall"]
    ok, report = regconst.check_units(FIXTURES / "elemab32_bad.json", bouc=True)
    assert not ok
    ok, _ = regconst.check_units(FIXTURES / "elemab32_bad.json", candidate="tower:1")
    assert ok


def test_run_matches_cli_conventions():
    code, out, err = regconst.run("group", "cyclic:0")
    assert code == 2 and out == "" and err.startswith("error:")
    code, out, _ = regconst.run("regconst", "elemab:3,2", "A", "--all")
    assert code == 0 and "9/1" in out
