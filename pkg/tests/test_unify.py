from itertools import product

from hypothesis import given, strategies as st

from geomon.terms import CIRC, STAR, enumerate_terms, parse_term, subterm
from geomon.unify import (
    Substitution, apply_subst, canonical_rename, match_pattern, max_symvar, max_var,
    mgu, rename_apart,
)

from strategies import patterns, terms

P_SIGMA = (STAR, 1, (-1, 2, 3))          # x1*(x2 #1 x3)


def test_apply_subst_examples():
    assert apply_subst(P_SIGMA, Substitution()) == P_SIGMA
    s = Substitution({1: 7, 2: 8, 3: 9}, {1: CIRC})
    assert apply_subst(P_SIGMA, s) == (STAR, 7, (CIRC, 8, 9))


def test_match_figure_term():
    t = parse_term("(x1*((x2 o x3)*x4))")
    s = match_pattern(P_SIGMA, t)
    assert s.var_map == {1: 1, 2: (CIRC, 2, 3), 3: 4}
    assert s.sym_map == {1: STAR}
    assert match_pattern(parse_term("(x1*(x2*x3))"), parse_term("((x1*x2)*x3)")) is None


@given(patterns(), terms(nvars=2))
def test_match_is_sound(p, t):
    s = match_pattern(p, t)
    if s is not None:
        assert apply_subst(p, s) == t


@given(terms(nvars=2))
def test_mgu_with_variable(t):
    t = _shift(t, 1)       # keep x1 out of t
    s = mgu(1, t)
    assert apply_subst(1, s) == apply_subst(t, s)
    if type(t) is not int:
        assert s.var_map == {1: t}


def _shift(t, k):
    if type(t) is int:
        return t + k
    return (t[0], _shift(t[1], k), _shift(t[2], k))


def test_mgu_distributivity_overlap():
    lhs = parse_term("((x1*x2)*(x1*x3))")
    lhs = (-1, lhs[1], lhs[2])                      # (x1*x2) #1 (x1*x3)
    p, q = rename_apart(lhs, parse_term("(x1*(x2*x3))"))
    s = mgu(p, q)
    assert s is not None
    assert s.sym_map[1] == STAR
    u = apply_subst(p, s)
    assert u == apply_subst(q, s)
    assert subterm(u, "0") == subterm(apply_subst(q, s), "0")


def test_occurs_clash_against_exhaustive_search():
    p = parse_term("(x1*x1)")
    q = parse_term("(x2*(x2*x3))")
    assert mgu(p, q) is None
    # no ground substitution from small terms makes them equal either
    small = enumerate_terms(5, nvars=1)
    for a, b, c in product(small, repeat=3):
        assert apply_subst(p, Substitution({1: a})) != apply_subst(q, Substitution({2: b, 3: c}))


def test_rename_apart():
    assert rename_apart(1, 1) == (1, 2)
    p, q = rename_apart(P_SIGMA, P_SIGMA)
    assert max_symvar(q) == 2 and max_var(q) == 6


def _generalize(data, t, fresh):
    """Replace some subterms of t by fresh variables."""
    if data.draw(st.booleans()):
        fresh[0] += 1
        return fresh[0]
    if type(t) is int:
        return t
    return (t[0], _generalize(data, t[1], fresh), _generalize(data, t[2], fresh))


@given(st.data(), terms(nvars=2, max_leaves=6))
def test_mgu_is_most_general(data, t):
    # two generalizations of t always unify, and t is an instance of the result
    p = _generalize(data, t, [100])
    q = _generalize(data, t, [200])
    p, q = rename_apart(p, q)
    s = mgu(p, q)
    assert s is not None
    u = apply_subst(p, s)
    assert u == apply_subst(q, s)
    assert match_pattern(u, t) is not None


@given(patterns(), patterns())
def test_mgu_sound_on_random_patterns(p, q):
    p, q = rename_apart(p, q)
    s = mgu(p, q)
    if s is not None:
        assert apply_subst(p, s) == apply_subst(q, s)
        # resolved bindings make substitution idempotent
        u = apply_subst(p, s)
        assert apply_subst(u, s) == u


def test_canonical_rename():
    assert canonical_rename((STAR, 5, (-3, 2, 5))) == ((STAR, 1, (-1, 2, 1)),)
    a, b = canonical_rename((STAR, 4, 2), (STAR, 2, 9))
    assert a == (STAR, 1, 2) and b == (STAR, 2, 3)
