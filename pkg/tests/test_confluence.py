from collections import Counter

import pytest

from geomon.confluence import (
    RelationError, addresses_upto, ald_critical, assemble_presentation,
    checked_relation, commutation_relations, common_expansion_check,
    common_right_multiple, critical_completion, critical_pairs, expansions,
    inheritance_relations, local_confluence_report, one_step, pair_status,
)
from geomon.laws import load_family
from geomon.operators import Letter
from geomon.terms import STAR_ONLY, incomparable, parse_term, render_term
from geomon.words import eval_word, parse_word, render_word

S, A = 0, 1


def W(fam, text):
    return parse_word(fam, text)


def test_commutation_counts(ald, ld):
    # oracle: unordered incomparable address pairs times ordered rule pairs
    for fam, bound in ((ald, 2), (ld, 1), (ld, 2)):
        addrs = addresses_upto(bound)
        pairs = sum(incomparable(a, b) for i, a in enumerate(addrs) for b in addrs[i + 1:])
        assert len(commutation_relations(fam, bound)) == pairs * len(fam.laws) ** 2
    rels = commutation_relations(ald, 2)
    assert len(rels) == 44
    assert any(r.left == W(ald, "S+0 A+1") and r.right == W(ald, "A+1 S+0") for r in rels)
    assert {frozenset((r.left[0].addr, r.left[1].addr)) for r in commutation_relations(ld, 1)} == {frozenset(("0", "1"))}


def test_inheritance_counts_and_shapes(ald):
    rels = inheritance_relations(ald, 2, 1)
    # laws x addresses x variables x rules x deltas
    assert len(rels) == 2 * 7 * 3 * 2 * 3 == 252
    pairs = {(render_word(ald, r.left), render_word(ald, r.right)) for r in rels}
    assert ("S+0 S+e", "S+e S+00 S+10") in pairs
    assert ("S+11 A+e", "A+e S+1") in pairs
    assert ("S+11 S+e", "S+e S+11") in pairs


def test_inheritance_orientation_is_semantic(ald):
    # the other reading of the same schema is not an operator identity
    assert eval_word(ald, W(ald, "S+e S+0")) != eval_word(ald, W(ald, "S+00 S+10 S+e"))
    with pytest.raises(RelationError):
        checked_relation(ald, W(ald, "A+e S+11"), W(ald, "S+1 A+e"), "Inheritance")


def test_relations_are_sound(ald):
    for r in commutation_relations(ald, 2) + inheritance_relations(ald, 2, 1):
        assert eval_word(ald, r.left) == eval_word(ald, r.right)
        assert not eval_word(ald, r.left).empty


def test_ald_critical_completions(ald):
    assert render_word(ald, critical_completion(ald, Letter(S, 1, ""), Letter(S, 1, "1"), 6)[1]) == "S+1 S+e S+0 S+1"
    assert critical_completion(ald, Letter(S, 1, ""), Letter(A, 1, "1"), 6) == \
        (W(ald, "S+e S+1 A+e"), W(ald, "A+1 S+e S+0"))
    assert critical_completion(ald, Letter(A, 1, ""), Letter(S, 1, "1"), 6) == \
        (W(ald, "A+e S+e"), W(ald, "S+1 S+e A+0 A+1"))
    for l, r in ald_critical(ald):
        assert eval_word(ald, l) == eval_word(ald, r)


def test_missing_completions(ald):
    assert critical_completion(ald, Letter(S, 1, ""), Letter(A, 1, ""), 5) is None
    assert critical_completion(ald, Letter(A, 1, ""), Letter(S, 1, ""), 5) is None
    assert critical_completion(ald, Letter(A, 1, ""), Letter(A, 1, "1"), 6) is None


def test_ld_and_assoc_completions(ld, assoc):
    u, v = critical_completion(ld, Letter(0, 1, ""), Letter(0, 1, "1"), 5)
    assert (render_word(ld, u), render_word(ld, v)) == ("S+e S+1 S+e", "S+1 S+e S+0 S+1")
    u, v = critical_completion(assoc, Letter(0, 1, ""), Letter(0, 1, "1"), 5)
    assert (render_word(assoc, u), render_word(assoc, v)) == ("A+e A+e", "A+1 A+e A+0")
    # the other reading of the last letter is not an identity
    assert eval_word(assoc, W(assoc, "A+e A+e")) != eval_word(assoc, W(assoc, "A+1 A+e A+1"))


def test_critical_pairs(ald):
    pairs = critical_pairs(ald)
    assert (Letter(S, 1, ""), Letter(A, 1, "")) in pairs
    assert (Letter(A, 1, ""), Letter(S, 1, "1")) in pairs
    assert all(pair_status(ald, a, b) == "critical" for a, b in pairs)
    assert pair_status(ald, Letter(S, 1, "0"), Letter(A, 1, "1")) == "commutation"
    assert pair_status(ald, Letter(S, 1, ""), Letter(A, 1, "11")) == "inheritance"


def test_local_confluence_reports(ald, ld, assoc):
    counts = Counter(r.status for r in local_confluence_report(ald, 2, 5))
    assert counts == {"commutation": 44, "inheritance": 28, "critical": 9, "uncovered": 10}
    for fam in (ld, assoc):
        rows = local_confluence_report(fam, 2, 5)
        assert Counter(r.status for r in rows) == {"commutation": 11, "inheritance": 7, "critical": 3}
        for r in rows:
            if r.completion:
                assert eval_word(fam, r.completion[0]) == eval_word(fam, r.completion[1])
    uncovered = [r for r in local_confluence_report(ald, 2, 5) if r.status == "uncovered"]
    for r in uncovered:
        kinds = {r.first.rule, r.second.rule}
        same = r.first.addr == r.second.addr
        assert (kinds == {S, A} and same) or (kinds == {A} and r.second.addr == r.first.addr + "1")


def test_presentation(ald):
    pres = assemble_presentation(ald, 2, 1, 6)
    kinds = Counter(r.kind for r in pres.relations)
    assert kinds == {"Inheritance": 252, "Commutation": 44, "Critical": 21}
    assert len(pres.critical) == 3
    for r in pres.by_kind("Critical"):
        assert eval_word(ald, r.left) == eval_word(ald, r.right)
    assert pres.to_json()["family"] == "ALD"


def test_common_right_multiple(ld, ald):
    m = common_right_multiple(ld, W(ld, "S+e"), W(ld, "S+1"), 5)
    assert m is not None and m.strong
    assert eval_word(ld, W(ld, "S+e") + m.u) == eval_word(ld, W(ld, "S+1") + m.v)
    same = common_right_multiple(ld, W(ld, "S+e"), W(ld, "S+e"), 5)
    assert (same.u, same.v, same.strong) == ((), (), True)
    assert common_right_multiple(ald, W(ald, "A+e"), W(ald, "A+1"), 6) is None


def test_expansions(ld):
    t = parse_term("(x*(x*x))", STAR_ONLY)
    assert expansions(ld, t, 0) == {t}
    got = {render_term(s, STAR_ONLY) for s in expansions(ld, t, 1)}
    assert got == {"(x1*(x1*x1))", "((x1*x1)*(x1*x1))"}
    assert expansions(ld, t, 1) <= expansions(ld, t, 2)


def test_common_expansion(ld):
    res = common_expansion_check(ld, parse_term("(x*(x*(x*x)))", STAR_ONLY), 6)
    assert res.term is not None and res.depth == 3
    for s in res.degree1:
        assert res.term in expansions(ld, s, res.depth)


def test_contracting_orientation_fails():
    fam = load_family({"name": "LDc", "symbols": ["*"], "laws": [
        {"name": "Contract", "letter": "C", "lhs": "((x1*x2)*(x1*x3))", "rhs": "(x1*(x2*x3))"}]})
    t = parse_term("(((x1*x1)*(x1*x1))*((x1*x1)*x1))", STAR_ONLY)
    res = common_expansion_check(fam, t, 6)
    assert res.term is None and len(res.degree1) == 2
    # both one-step results are already irreducible, so no bound would help
    assert all(one_step(fam, s) == [] for s in res.degree1)
