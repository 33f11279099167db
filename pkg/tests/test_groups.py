import random

import pytest

from geomon.blueprint import geo_ald
from geomon.certificates import Derivation, InvalidRelation, free_reduce
from geomon.groups import (
    BDot, FinitePresentation, a, bdot_circ, bdot_keys_upto, bdot_shift, bdot_star,
    normal_closure_identity, one_move_certificate, s, words_equal,
)
from geomon.words import eval_word

B = BDot()


def test_bdot_relation_instances():
    assert B.instantiate(("ss", 1, 3, 0)) == ((s(1), s(3)), (s(3), s(1)))
    assert B.instantiate(("aa", 1, 3, 0)) == ((a(1), a(2)), (a(3), a(1)))
    assert B.instantiate(("braid", 2, 0)) == ((s(2), s(3), s(2)), (s(3), s(2), s(3)))
    assert B.instantiate(("ssa", 1, 0)) == ((s(2), s(1), a(2)), (a(1), s(1)))
    with pytest.raises(InvalidRelation):
        B.instantiate(("ss", 1, 2, 0))
    with pytest.raises(InvalidRelation):
        B.instantiate(("braid", 0, 0))
    keys = bdot_keys_upto(4, 6)
    assert all(one_move_certificate(B, k).replay(B) for k in keys)


def test_bdot_shift_and_operations():
    assert bdot_shift((s(1),)) == (s(2),)
    assert bdot_shift((-a(3),)) == (-a(4),)
    u, v = (s(1), -a(2)), (a(1),)
    assert bdot_shift(u + v) == bdot_shift(u) + bdot_shift(v)
    assert bdot_circ((), ()) == (a(1),)
    assert bdot_star((), ()) == (s(1),)


def test_words_equal_basics():
    w = (s(1), a(2))
    res = words_equal(B, w, w)
    assert res and len(res.certificate) == 0
    res = words_equal(B, B.parse_word("s1 s2 s1"), B.parse_word("s2 s1 s2"))
    assert res.certificate.replay(B)
    res = words_equal(B, B.parse_word("s2 s1 a2"), B.parse_word("a1 s1"))
    assert res.certificate.replay(B)
    # budget 0 still compares normal forms, but cannot search
    assert words_equal(B, B.parse_word("s3 s1"), B.parse_word("s1 s3"), budget=0)
    hard = words_equal(B, B.parse_word("s1 s2 s1"), B.parse_word("s2 s1 s2"), budget=0)
    assert hard.verdict == "Undecided"
    assert not words_equal(B, (s(1),), (s(2),), budget=50)


def test_bdot_law_instance():
    x, y, z = (s(1),), (a(2),), (-s(1),)
    u, v = bdot_star(x, bdot_star(y, z)), bdot_star(bdot_star(x, y), bdot_star(x, z))
    assert words_equal(B, u, v).certificate.replay(B)


def test_parse_render():
    w = B.parse_word("s1 a2^-1 s3'")
    assert w == (s(1), -a(2), -s(3))
    assert B.render_word(w) == "s1 a2^-1 s3^-1"
    with pytest.raises(ValueError):
        B.parse_word("t1")


def test_geo_relations_are_operator_identities():
    geo = geo_ald()
    P = geo.pres
    fam = P.family
    words = [P.parse_word("S+0 A+1"), P.parse_word("A+e S+10")]
    keys = P.candidate_keys(words, halo=1)
    assert {k[0] for k in keys} == {"comm", "heir", "crit"}
    for key in keys:
        lhs, rhs = P.instantiate(key)
        f = eval_word(fam, P.decode(lhs))
        assert not f.empty and f == eval_word(fam, P.decode(rhs)), P.render_key(key)


def test_swap_is_a_relation_consequence():
    P = geo_ald().pres
    gens = [P.letter(r, ad, sg) for r in (0, 1) for ad in ("", "0", "1", "10", "11") for sg in (1, -1)]
    for x in gens:
        for y in gens:
            r = P.swap(x, y)
            if r is None:
                continue
            q, key = r
            d = Derivation(P, (x, y))
            d.replace(0, 2, q, key)
            assert d.certificate().replay(P)


def test_obstruction_identities():
    geo = geo_ald()
    P = geo.pres
    rng = random.Random(1)
    gens = [P.letter(r, ad, sg) for r in (0, 1) for ad in ("", "1") for sg in (1, -1)]
    for _ in range(10):
        x, y, z = (free_reduce(tuple(rng.choice(gens) for _ in range(2))) for _ in range(3))
        for ident in ("obst1", "obst2", "quot1", "quot2"):
            for box in "*o":
                c = geo.certificate(ident, box, x, y, z)
                assert c.replay(P)
                lhs, rhs = geo.sides(ident, box, x, y, z)
                assert (c.start, c.end) == (free_reduce(lhs), free_reduce(rhs))
    with pytest.raises(ValueError):
        geo.sides("obst3", "*", (), (), ())


def test_obst2_matches_words_equal():
    geo = geo_ald()
    P = geo.pres
    lhs, rhs = geo.sides("obst2", "*", (), (), ())
    res = words_equal(P, free_reduce(lhs), free_reduce(rhs))
    assert res.certificate.replay(P)


def test_normal_closure():
    P = geo_ald().pres
    c = normal_closure_identity(P, 1, "S")
    assert P.render_word(c.start) == "S+10"
    assert P.render_word(c.end) == "A+e S+01 A-e"
    c2 = normal_closure_identity(P, 2, "S")
    assert c2.replay(P)
    assert sum(k[0] == "heir" for k in c2.relation_keys()) == 2
    assert P.render_word(c2.start) == "S+110"
    with pytest.raises(ValueError):
        normal_closure_identity(P, 0, "S")


def test_finite_presentation():
    F = FinitePresentation([((1, 2), (2, 1))])
    res = words_equal(F, (1, 2, 2), (2, 2, 1))
    assert res.certificate.replay(F)
