import pytest

from geomon.blueprint import (
    ALD, A_RULE, S_RULE, InvalidLeaf, UndefinedAction, absorption, blueprint, cc_word,
    expected_critical, geo_ald, injectivity_witness, ld_blueprint_restriction,
    verify_blueprint_group, verify_blueprint_operator,
)
from geomon.operators import Letter, apply, apply_letter, compose, elementary, invert, shift_operator
from geomon.suite import terms_upto_nodes
from geomon.terms import CIRC, STAR, enumerate_terms, parse_term, render_term, right_vine
from geomon.words import eval_word, parse_word, render_word


def cc(text):
    return render_word(ALD, cc_word(parse_term(text)))


def test_worked_examples():
    assert cc_word(1) == ()
    assert cc("(x o x)") == "A+e"
    assert cc("((x o x)*x)") == "A+e S+e A-1"
    assert cc("(x*((x o x)*x))") == "A+1 S+1 A-11 S+e"
    with pytest.raises(InvalidLeaf):
        cc_word(parse_term("(x1*x2)"))


def test_ld_restriction():
    assert render_word(ALD, ld_blueprint_restriction(parse_term("(x*x)"))) == "S+e"
    assert render_word(ALD, ld_blueprint_restriction(parse_term("((x*x)*x)"))) == "S+e S+e S-1"
    star_terms = enumerate_terms(7, nsym=1)
    for t in star_terms:
        assert all(x.rule == S_RULE for x in ld_blueprint_restriction(t))
    with pytest.raises(ValueError):
        ld_blueprint_restriction(parse_term("(x o x)"))


def test_absorption_examples():
    assert absorption(1) == (2, 1)
    t = parse_term("(x o x)")
    n0, p = absorption(t)
    assert p == 2
    f = eval_word(ALD, parse_word(ALD, "A+e"))
    for n in range(n0, n0 + 4):
        assert apply(f, right_vine(n)) == (STAR, t, right_vine(n - 2))
    assert absorption(parse_term("(x*x)")) == (3, 1)


def test_absorption_window_over_small_terms():
    for t in terms_upto_nodes(4):
        n0, p = absorption(t, window=6)
        assert 1 <= p and n0 >= p + 1


def test_translation_morphism():
    # unreduced clause operators agree with the reduced word on the vines it absorbs
    terms = terms_upto_nodes(2)
    sigma = elementary(ALD, Letter(S_RULE, 1, ""))
    a = elementary(ALD, Letter(A_RULE, 1, ""))
    for t1 in terms:
        f1 = eval_word(ALD, cc_word(t1))
        for t2 in terms:
            f2 = shift_operator("1", eval_word(ALD, cc_word(t2)), ALD) if cc_word(t2) else None
            head = compose(f1, f2) if f2 is not None else f1
            clauses = {
                STAR: compose(compose(head, sigma), invert(shift_operator("1", f1, ALD)))
                if cc_word(t1) else compose(head, sigma),
                CIRC: compose(head, a),
            }
            for sym, g in clauses.items():
                t = (sym, t1, t2)
                n0, p = absorption(t)
                f = eval_word(ALD, cc_word(t))
                for n in range(n0, n0 + 3):
                    assert apply(f, right_vine(n)) == apply(g, right_vine(n)) == (STAR, t, right_vine(n - p))


def test_blueprint_result():
    res = blueprint(parse_term("(x*((x o x)*x))"))
    assert render_word(ALD, res.word) == "A+1 S+1 A-11 S+e"
    assert res.absorption == absorption(parse_term("(x*((x o x)*x))"))


def test_operator_level_examples():
    t = parse_term("(x*((x o x)*x))")
    assert verify_blueprint_operator(t, ())
    a = Letter(A_RULE, 1, "")
    assert render_term(apply_letter(ALD, a, t)) == "((x1 o (x1 o x1))*x1)"
    assert verify_blueprint_operator(t, (a,))
    with pytest.raises(UndefinedAction):
        verify_blueprint_operator(parse_term("(x o x)"), (a,))


def test_injectivity_witness():
    terms = terms_upto_nodes(5)
    images = injectivity_witness(terms, 12)
    assert None not in images.values()
    assert len(set(images.values())) == len(terms)


@pytest.mark.parametrize("rule,kind", [(A_RULE, "crit3"), (S_RULE, "crit1")])
def test_group_root_cases(rule, kind):
    t = parse_term("(x*(x*(x*x)))")
    g = verify_blueprint_group(t, Letter(rule, 1, ""))
    assert g.verdict == "Equal" and g.strategy == "induction"
    assert g.certificate.replay(geo_ald().pres)
    assert g.expected == (kind, "")
    assert g.critical == [(kind, "")]
    assert g.matches_case_analysis


def test_group_crit2_and_negative_letters():
    t = parse_term("(x*(x o x))")
    g = verify_blueprint_group(t, Letter(S_RULE, 1, ""))
    assert g.expected == ("crit2", "") and g.matches_case_analysis
    t2 = apply_letter(ALD, Letter(S_RULE, 1, ""), t)
    neg = verify_blueprint_group(t2, Letter(S_RULE, -1, ""))
    assert neg.matches_case_analysis
    assert neg.certificate.replay(geo_ald().pres)


def test_group_inner_letters():
    t = parse_term("((x*(x*x))*(x*(x o x)))")
    for x in (Letter(S_RULE, 1, "0"), Letter(S_RULE, 1, "1"), Letter(A_RULE, 1, "0")):
        g = verify_blueprint_group(t, x)
        assert g.matches_case_analysis, (x, g.critical, g.expected)
    assert expected_critical(t, Letter(S_RULE, 1, "1")) == ("crit2", "1")
    assert expected_critical(t, Letter(S_RULE, 1, "0")) == ("crit1", "")


def test_ld_terms_use_no_a_letters():
    P = geo_ald().pres
    for t in enumerate_terms(9, nsym=1):
        for ad in ("", "0", "1"):
            x = Letter(S_RULE, 1, ad)
            if apply_letter(ALD, x, t) is None:
                continue
            cert = verify_blueprint_group(t, x).certificate
            for w in cert.words(P):
                assert all(P.parts(g)[0] == S_RULE for g in w)
