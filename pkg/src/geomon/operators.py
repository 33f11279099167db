"""Partial operators on terms, represented by seeds.

An operator is either EMPTY or a pair of patterns (dom, img) sharing their
variables: it maps every instance dom.s to img.s.  Seeds are kept in
canonical numbering so operator equality is tuple equality.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple

from .terms import render_address, render_term, replace_at, subterm, term_to_json
from . import kernels
from .unify import (
    apply_subst, canonical_rename, match_pattern, max_symvar, max_var, mgu,
    mgu_pairs, offset,
)


class Letter(NamedTuple):
    rule: int
    sign: int      # +1 or -1
    addr: str

    def inverse(self):
        return Letter(self.rule, -self.sign, self.addr)


@dataclass(frozen=True)
class Operator:
    dom: object = None
    img: object = None
    counts: tuple = field(default=None, compare=False, repr=False)

    def __hash__(self):
        # patterns are deep tuples; hash them once
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.dom, self.img))
            object.__setattr__(self, "_hash", h)
        return h

    @property
    def empty(self):
        return self.dom is None

    @property
    def bounds(self):
        """(largest variable, largest symbol-variable) over both patterns."""
        if self.counts is not None:
            return self.counts
        return (max(max_var(self.dom), max_var(self.img)),
                max(max_symvar(self.dom), max_symvar(self.img)))

    def __repr__(self):
        if self.empty:
            return "Operator(EMPTY)"
        return f"Operator({render_term(self.dom)} -> {render_term(self.img)})"


EMPTY = Operator()
IDENTITY = Operator(1, 1)


def seed(dom, img):
    (dom, img), nv, ns = kernels.canonical_rename((dom, img))
    return Operator(dom, img, (nv, ns))


def _wrap(dom, img, addr, concrete_symbol):
    """Push a seed down along addr: the result acts inside the addr-th subterm."""
    nv = max(max_var(dom), max_var(img))
    ns = max(max_symvar(dom), max_symvar(img))
    for bit in reversed(addr):
        nv += 1
        if concrete_symbol is None:
            ns += 1
            sym = -ns
        else:
            sym = concrete_symbol
        if bit == "0":
            dom, img = (sym, dom, nv), (sym, img, nv)
        else:
            dom, img = (sym, nv, dom), (sym, nv, img)
    return dom, img


def _wrap_symbol(family):
    # one-symbol families: the wrapping node can only be that symbol
    return 0 if family.single_symbol else None


@lru_cache(maxsize=None)
def elementary(family, letter):
    law = family.laws[letter.rule]
    l, r = (law.lhs, law.rhs) if letter.sign > 0 else (law.rhs, law.lhs)
    return seed(*_wrap(l, r, letter.addr, _wrap_symbol(family)))


def shift_operator(addr, f, family=None):
    if f.empty or not addr:
        return f
    concrete = _wrap_symbol(family) if family is not None else None
    return seed(*_wrap(f.dom, f.img, addr, concrete))


def compose_uncached(f, g):
    """f then g."""
    if f.empty or g.empty:
        return EMPTY
    dv, ds = f.bounds
    r = kernels.compose_seeds(f.dom, f.img, g.dom, g.img, dv, ds)
    if r is None:
        return EMPTY
    return Operator(r[0], r[1], (r[2], r[3]))


# searches revisit the same pairs; one-pass sweeps should call compose_uncached
compose = lru_cache(maxsize=1 << 18)(compose_uncached)


def invert(f):
    if f.empty:
        return f
    return seed(f.img, f.dom)


def apply(f, t):
    if f.empty:
        return None
    s = match_pattern(f.dom, t)
    if s is None:
        return None
    return apply_subst(f.img, s)


def apply_letter(family, letter, t):
    """Direct application by rewriting at the address; independent of seeds."""
    law = family.laws[letter.rule]
    l, r = (law.lhs, law.rhs) if letter.sign > 0 else (law.rhs, law.lhs)
    try:
        sub = subterm(t, letter.addr)
    except IndexError:
        return None
    s = match_pattern(l, sub)
    if s is None:
        return None
    return replace_at(t, letter.addr, apply_subst(r, s))


def agree_somewhere(f, g):
    if f.empty or g.empty:
        return False
    dv, ds = f.bounds
    gdom, gimg = offset(g.dom, dv, ds), offset(g.img, dv, ds)
    return mgu_pairs([(f.dom, gdom), (f.img, gimg)]) is not None


def equal_operator(f, g):
    return f == g


def domain_intersection(f, g):
    """Canonical pattern for dom f ∩ dom g, or None when disjoint."""
    if f.empty or g.empty:
        return None
    gdom = offset(g.dom, max_var(f.dom), max_symvar(f.dom))
    s = mgu(f.dom, gdom)
    if s is None:
        return None
    return canonical_rename(apply_subst(f.dom, s))[0]


def same_domain(pattern, f):
    return not f.empty and canonical_rename(f.dom)[0] == canonical_rename(pattern)[0]


def operator_to_json(f, registry):
    if f.empty:
        return "empty"
    return {"dom": term_to_json(f.dom, registry), "img": term_to_json(f.img, registry)}


def render_operator(f, registry):
    if f.empty:
        return "empty"
    return f"{render_term(f.dom, registry)} -> {render_term(f.img, registry)}"


def render_letter(family, letter):
    sign = "+" if letter.sign > 0 else "-"
    return f"{family.laws[letter.rule].tag}{sign}{render_address(letter.addr)}"


def is_instance(t, pattern):
    return match_pattern(pattern, t) is not None


__all__ = [
    "Letter", "Operator", "EMPTY", "IDENTITY", "seed", "elementary",
    "shift_operator", "compose", "compose_uncached", "invert", "apply", "apply_letter",
    "agree_somewhere", "equal_operator", "domain_intersection", "same_domain",
    "operator_to_json", "render_operator", "render_letter",
]
