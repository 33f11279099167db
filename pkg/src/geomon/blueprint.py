"""The ALD blueprint: terms over {*, o} in the single variable x are copied
into words over S/A letters, both as operators and as group elements.

Group-level certificates follow the structural induction on the term:
a letter at the root is handled by one obstruction identity, a letter
inside a subterm by the induction hypothesis moved through a quotient
identity.
"""

from dataclasses import dataclass
from functools import lru_cache

from .certificates import Certificate, Derivation, free_reduce, inverse_word
from .confluence import ald_critical
from .groups import GeoALD, GeoPresentation, words_equal
from .laws import builtin_family
from .operators import Letter, agree_somewhere, apply, apply_letter, compose, shift_operator
from .terms import CIRC, STAR, is_leaf, leaves, render_term, right_vine
from .words import eval_word, formal_inverse, free_reduce as free_reduce_letters, shift_word


class InvalidLeaf(ValueError):
    pass


class UndefinedAction(ValueError):
    pass


class ValidationFailure(AssertionError):
    pass


ALD = builtin_family("ALD")
S_RULE = ALD.rule_index("S")
A_RULE = ALD.rule_index("A")


def _check_leaves(t):
    if any(v != 1 for v in leaves(t)):
        raise InvalidLeaf(f"blueprint terms use the single variable x1: {render_term(t)}")


@lru_cache(maxsize=None)
def _cc(t):
    if is_leaf(t):
        return ()
    sym, t1, t2 = t
    x, y = _cc(t1), _cc(t2)
    if sym == STAR:
        raw = x + shift_word("1", y) + (Letter(S_RULE, 1, ""),) + formal_inverse(shift_word("1", x))
    elif sym == CIRC:
        raw = x + shift_word("1", y) + (Letter(A_RULE, 1, ""),)
    else:
        raise InvalidLeaf(f"unknown symbol id {sym}")
    return free_reduce_letters(raw)


def cc_word(t):
    _check_leaves(t)
    return _cc(t)


def absorption(t, window=4):
    """(n0, p) with eval(cc_word t) mapping x^[n] to t * x^[n-p] for n >= n0.

    The bound is the one carried by the induction: p = 1, n0 = 2 for x;
    p = p2 and n0 = max(m1 + p2, m2 + p1) for t1*t2; p = p1 + p2 and
    n0 = max(m1, m2 + p1) for t1 o t2.  It is then checked on a window.
    """
    _check_leaves(t)
    n0, p = _absorption(t)
    f = eval_word(ALD, cc_word(t))
    for n in range(n0, n0 + window):
        if apply(f, right_vine(n)) != (STAR, t, right_vine(n - p)):
            raise ValidationFailure(f"absorption fails for {render_term(t)} at n={n}")
    return n0, p


def _absorption(t):
    if is_leaf(t):
        return 2, 1
    sym, t1, t2 = t
    m1, p1 = _absorption(t1)
    m2, p2 = _absorption(t2)
    if sym == STAR:
        return max(m1 + p2, m2 + p1), p2
    return max(m1, m2 + p1), p1 + p2


@dataclass
class BlueprintResult:
    word: tuple
    operator: object
    absorption: tuple


def blueprint(t):
    w = cc_word(t)
    return BlueprintResult(w, eval_word(ALD, w), absorption(t))


def verify_blueprint_operator(t, w):
    """Cc(t·eval w) ~ Cc(t) then sh0(eval w)."""
    w = tuple(w)
    f = eval_word(ALD, w)
    t2 = apply(f, t)
    if t2 is None:
        raise UndefinedAction(f"the word does not act on {render_term(t)}")
    lhs = eval_word(ALD, cc_word(t2))
    rhs = compose(eval_word(ALD, cc_word(t)), shift_operator("0", f, ALD))
    return agree_somewhere(lhs, rhs)


def ld_blueprint_restriction(t):
    if any(sym != STAR for sym in _symbols(t)):
        raise ValueError("LD blueprint needs a term without o")
    w = cc_word(t)
    assert all(x.rule == S_RULE for x in w), "A letter in an LD blueprint"
    return w


def _symbols(t):
    if is_leaf(t):
        return
    yield t[0]
    yield from _symbols(t[1])
    yield from _symbols(t[2])


# -- group level ---------------------------------------------------------------

_GEO = None


def geo_ald():
    """The geometry group of ALD with its three critical templates."""
    global _GEO
    if _GEO is None:
        _GEO = GeoALD(GeoPresentation(ALD, ald_critical(ALD)))
    return _GEO


@dataclass
class GroupBlueprint:
    certificate: Certificate = None
    critical: list = None        # (kind, address) of the critical moves used
    expected: tuple = None       # (kind, address) the case analysis predicts
    strategy: str = ""

    @property
    def verdict(self):
        return "Equal" if self.certificate is not None else "Undecided"

    @property
    def matches_case_analysis(self):
        if not self.critical:
            return False
        return self.expected in self.critical and {k for k, _ in self.critical} == {self.expected[0]}


def expected_critical(t, letter):
    """The critical relation used by the root case of the induction and the
    address it is applied at: crit3 for A, crit1/crit2 for S acting on
    x*(y*z) / x*(y o z)."""
    addr, node = "", t
    for bit in letter.addr:
        if bit == "1":
            addr += "1"
        node = node[1] if bit == "0" else node[2]
    if letter.rule == A_RULE:
        kind = "crit3"
    else:
        kind = "crit1" if node[2][0] == STAR else "crit2"
    return kind, addr


def _critical_moves(pres, cert):
    out = []
    for key in cert.relation_keys():
        if key[0] == "crit":
            out.append((f"crit{key[1] + 1}", key[2]))
    return out


def _glue(d, raw):
    """Rewrite the current word into `raw`, which has the same free reduction."""
    d.reduce()
    d.unreduce_from(raw)


def _shifted(pres, cert, prefix):
    return cert.mapped(pres, lambda g: pres.shift(prefix, (g,))[0],
                       lambda k: pres.shift_key(k, prefix))


def _positive_certificate(geo, t, letter):
    """Certificate Cc(t·X_a) -> red(Cc(t)·X_0a) for a positive letter X_a."""
    P = geo.pres
    box = "*" if t[0] == STAR else "o"
    if not letter.addr:
        inner_sym, y, z = t[2]
        x, y, z = P.encode(_cc(t[1])), P.encode(_cc(y)), P.encode(_cc(z))
        if letter.rule == S_RULE:
            return geo.certificate("obst1", "*" if inner_sym == STAR else "o", x, y, z)
        return geo.certificate("obst2", "*", x, y, z)
    bit, rest = letter.addr[0], letter.addr[1:]
    inner = Letter(letter.rule, 1, rest)
    child = t[1] if bit == "0" else t[2]
    child2 = apply_letter(ALD, inner, child)
    c = _positive_certificate(geo, child, inner)
    zc = P.encode((inner,))
    x, y = P.encode(_cc(t[1])), P.encode(_cc(t[2]))
    if bit == "0":
        x2 = P.encode(_cc(child2))
        start_raw = geo.op_raw(box, x2, y)
        d = Derivation(P, free_reduce(start_raw))
        d.unreduce_from(start_raw)
        d.extend(c, 0)                                   # x' -> red(x·sh0 z) in front
        xz = c.end
        if box == "*":
            tail = _shifted(P, c, "1").mirrored(P)       # sh1(x')^-1 -> sh1(red(x·sh0 z))^-1
            d.extend(tail, len(xz) + len(y) + 1)
        _glue(d, geo.op_raw(box, x + P.shift("0", zc), y))
        d.extend(geo.raw_certificate("quot1", box, x, y, zc))
    else:
        y2 = P.encode(_cc(child2))
        start_raw = geo.op_raw(box, x, y2)
        d = Derivation(P, free_reduce(start_raw))
        d.unreduce_from(start_raw)
        d.extend(_shifted(P, c, "1"), len(x))            # sh1(y') -> sh1(red(y·sh0 z))
        _glue(d, geo.op_raw(box, x, y + P.shift("0", zc)))
        d.extend(geo.raw_certificate("quot2", box, x, y, zc))
    d.reduce()
    return d.certificate()


def verify_blueprint_group(t, letter, budget=2000):
    """Certificate Cc(t·X_a) = Cc(t)·X_0a in Geo(ALD)."""
    _check_leaves(t)
    geo = geo_ald()
    P = geo.pres
    t2 = apply_letter(ALD, letter, t)
    if t2 is None:
        raise UndefinedAction(f"{letter} does not act on {render_term(t)}")
    pos = letter._replace(sign=1)
    base, image = (t, t2) if letter.sign > 0 else (t2, t)
    target_letter = P.encode((Letter(letter.rule, letter.sign, "0" + letter.addr),))
    start = P.encode(_cc(t2))
    end = free_reduce(P.encode(_cc(t)) + target_letter)
    expected = expected_critical(base, pos)
    try:
        cert = _positive_certificate(geo, base, pos)
        strategy = "induction"
        if letter.sign < 0:
            # cert: Cc(t) -> red(Cc(t2)·X0); right-multiply by X0^-1 and reverse
            inv = cert.inverse(P)
            d = Derivation(P, start)
            x0 = P.encode((Letter(letter.rule, 1, "0" + letter.addr),))
            _glue(d, inv.start + inverse_word(x0))
            d.extend(inv.embedded((), inverse_word(x0)))
            d.reduce()
            cert = d.certificate()
    except (ValueError, AssertionError):
        res = words_equal(P, start, end, budget=budget)
        cert, strategy = res.certificate, "search"
    if cert is None:
        return GroupBlueprint(expected=expected, strategy="undecided")
    cert.replay(P)
    if tuple(cert.start) != start or tuple(cert.end) != end:
        raise ValidationFailure("blueprint certificate has the wrong endpoints")
    return GroupBlueprint(cert, _critical_moves(P, cert), expected, strategy)


def injectivity_witness(terms, n=12):
    """Map each term to apply(eval(Cc t), x^[n]); distinct terms must give
    distinct images."""
    return {t: apply(eval_word(ALD, cc_word(t)), right_vine(n)) for t in terms}
