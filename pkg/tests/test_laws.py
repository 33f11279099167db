import json

import pytest

from geomon.laws import (
    ASSOC, LD_RULE, OrientedLaw, UnbalancedLaw, builtin_family, classify,
    family_to_json, load_family, occurrence_profile,
)
from geomon.terms import STAR, parse_term


def test_classify():
    assert classify(LD_RULE) == {"balanced": True, "linear": False, "semi_linear": True}
    assert classify(ASSOC)["linear"]
    grow = OrientedLaw("grow", 1, (STAR, 1, 2))
    assert not classify(grow)["balanced"]
    with pytest.raises(UnbalancedLaw):
        occurrence_profile(grow)


def test_builtin_families(ald, ld, assoc):
    assert len(ald.laws) == 2 and ald.symbols.tokens == ("*", "o")
    assert len(ld.laws) == 1 and ld.single_symbol
    assert classify(assoc.laws[0])["linear"]
    with pytest.raises(KeyError):
        builtin_family("XYZ")


def test_profiles(ald):
    sigma = occurrence_profile(ald.laws[ald.rule_index("S")])
    assert sigma.lhs[1] == ["0"] and sigma.rhs[1] == ["00", "10"]
    a = occurrence_profile(ald.laws[ald.rule_index("A")])
    assert a.lhs[3] == ["11"] and a.rhs[3] == ["1"]
    assert a.lhs[2] == ["10"] and a.rhs[2] == ["01"]


def test_family_json_round_trip(ald, tmp_path):
    obj = family_to_json(ald)
    path = tmp_path / "ald.json"
    path.write_text(json.dumps(obj))
    fam = load_family(str(path))
    assert fam.laws == ald.laws and fam.symbols == ald.symbols


def test_load_family_checks():
    with pytest.raises(ValueError):
        load_family({"symbols": ["*"], "laws": [
            {"name": "a", "lhs": "(x1*x2)", "rhs": "(x2*x1)"},
            {"name": "b", "lhs": "(x1*x2)", "rhs": "(x2*x1)", "letter": "A"}]})
    comm = load_family({"symbols": ["*"], "laws": [
        {"name": "Comm", "lhs": "(x1*x2)", "rhs": "(x2*x1)"}]})
    assert comm.notes and "involutive" in comm.notes[0]
    custom = load_family({"symbols": ["*"], "laws": [
        {"name": "Contract", "letter": "C", "lhs": "((x1*x2)*(x1*x3))", "rhs": "(x1*(x2*x3))"}]})
    assert custom.laws[0].lhs == parse_term("((x1*x2)*(x1*x3))")
    assert custom.rule_index("C") == 0
