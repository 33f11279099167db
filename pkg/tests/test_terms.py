from math import comb

import pytest
from hypothesis import given

from geomon.terms import (
    EQUAL, EXTENDS, INCOMPARABLE, PREFIX_OF, STAR, CIRC, AddressOutOfRange,
    STAR_ONLY, TermSyntaxError, address_relation, addresses, enumerate_terms,
    is_injective, leaf_addresses, leaves, parse_term, render_term, replace_at,
    right_vine, size, subterm, term_from_json, term_to_json, variable_occurrences,
)

from strategies import addresses as addr_st, terms


def test_parse_leaf_and_node():
    assert parse_term("x") == 1
    assert parse_term("(x1 * (x2 o x3))") == (STAR, 1, (CIRC, 2, 3))


@pytest.mark.parametrize("bad", ["", "(x1*x2", "x0", "(x1 + x2)", "(x1*x2))", "y"])
def test_parse_errors(bad):
    with pytest.raises(TermSyntaxError):
        parse_term(bad)


def test_render_round_trip_over_corpus():
    for t in enumerate_terms(7, nvars=2):
        assert parse_term(render_term(t)) == t


@given(terms())
def test_render_round_trip(t):
    assert parse_term(render_term(t)) == t
    assert term_from_json(term_to_json(t)) == t


def test_subterm_examples():
    t = parse_term("(x1*(x2 o x3))")
    assert subterm(t, "") == t
    assert subterm(t, "10") == 2
    with pytest.raises(AddressOutOfRange):
        subterm(1, "0")


def test_replace_examples():
    assert replace_at(parse_term("(x1*x2)"), "1", 3) == parse_term("(x1*x3)")
    assert replace_at(parse_term("(x1*x2)"), "", 5) == 5


@given(terms(), terms())
def test_replace_then_subterm(t, s):
    for a in addresses(t):
        assert subterm(replace_at(t, a, s), a) == s


def test_right_vine():
    assert right_vine(1) == 1
    assert right_vine(3) == parse_term("(x*(x*x))")
    for n in range(1, 12):
        assert size(right_vine(n)) == 2 * n - 1
        assert len(leaves(right_vine(n))) == n
    with pytest.raises(ValueError):
        right_vine(0)


def test_address_relation():
    assert address_relation("0", "1") == INCOMPARABLE
    assert address_relation("1", "10") == PREFIX_OF
    assert address_relation("10", "1") == EXTENDS


@given(addr_st)
def test_address_relation_equal(a):
    assert address_relation(a, a) == EQUAL


def test_variable_occurrences():
    assert variable_occurrences(parse_term("(x1*(x2*x3))"), 1) == {"0"}
    assert variable_occurrences(parse_term("((x1*x2)*(x1*x3))"), 1) == {"00", "10"}


@given(terms())
def test_occurrences_cover_leaves(t):
    occ = set()
    for v in set(leaves(t)):
        occ |= variable_occurrences(t, v)
    assert occ == set(leaf_addresses(t))


def test_injectivity():
    assert is_injective(parse_term("(x1*(x2*x3))"))
    assert not is_injective(parse_term("((x1*x2)*(x1*x3))"))
    assert not any(is_injective(right_vine(n)) for n in range(2, 8))


def test_enumeration_counts():
    # shapes with n inner nodes are counted by Catalan numbers, times 2^n labellings
    expected = sum(comb(2 * n, n) // (n + 1) * 2 ** n for n in range(6))
    terms5 = enumerate_terms(11)
    assert len(terms5) == expected == 1619
    assert len(set(terms5)) == len(terms5)
    assert all(size(t) <= 11 for t in terms5)
    star = enumerate_terms(9, nsym=1)
    assert len(star) == sum(comb(2 * n, n) // (n + 1) for n in range(5))


def test_single_symbol_registry():
    t = parse_term("(x1*(x2*x3))", STAR_ONLY)
    assert render_term(t, STAR_ONLY) == "(x1*(x2*x3))"
    with pytest.raises(TermSyntaxError):
        parse_term("(x1 o x2)", STAR_ONLY)
