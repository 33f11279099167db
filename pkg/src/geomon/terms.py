"""Terms over binary symbols, addresses, and the term grammar.

A term is either a leaf, stored as a positive int (the variable index), or a
node ``(sym, left, right)``.  Concrete symbols are non-negative ints indexing a
:class:`SymbolRegistry`; negative ints are symbol-variables (``-k`` is ``#k``),
which only appear in patterns.  Plain tuples keep hashing and comparison cheap,
which matters because seeds and searches copy subtrees constantly.

Addresses are strings over ``"01"``; the empty address renders as ``e``.

>>> reg = ALD_SYMBOLS
>>> t = parse_term("(x1 * (x2 o x3))", reg)
>>> t
(0, 1, (1, 2, 3))
>>> render_term(subterm(t, "10"), reg)
'x2'
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import product


class TermSyntaxError(ValueError):
    def __init__(self, msg, offset):
        super().__init__(f"{msg} at offset {offset}")
        self.offset = offset


class AddressOutOfRange(IndexError):
    pass


@dataclass(frozen=True)
class SymbolRegistry:
    tokens: tuple

    def id_of(self, token):
        try:
            return self.tokens.index(token)
        except ValueError:
            raise KeyError(f"unknown operator token {token!r}") from None

    def token(self, sym):
        if sym < 0:
            return f"#{-sym}"
        return self.tokens[sym]

    def __len__(self):
        return len(self.tokens)


ALD_SYMBOLS = SymbolRegistry(("*", "o"))
STAR_ONLY = SymbolRegistry(("*",))

STAR, CIRC = 0, 1


def is_leaf(t):
    return isinstance(t, int)


def node(sym, left, right):
    return (sym, left, right)


# -- structure ---------------------------------------------------------------

def size(t):
    """Leaves plus inner nodes, so a right vine with n leaves has size 2n-1."""
    if is_leaf(t):
        return 1
    return 1 + size(t[1]) + size(t[2])


def depth(t):
    if is_leaf(t):
        return 0
    return 1 + max(depth(t[1]), depth(t[2]))


def variables(t, acc=None):
    if acc is None:
        acc = set()
    if is_leaf(t):
        acc.add(t)
    else:
        variables(t[1], acc)
        variables(t[2], acc)
    return acc


def leaves(t):
    """Leaf variables in left-to-right order."""
    out = []
    stack = [t]
    while stack:
        u = stack.pop()
        if is_leaf(u):
            out.append(u)
        else:
            stack.append(u[2])
            stack.append(u[1])
    return out


def symbols_of(t, acc=None):
    if acc is None:
        acc = set()
    if not is_leaf(t):
        acc.add(t[0])
        symbols_of(t[1], acc)
        symbols_of(t[2], acc)
    return acc


def subterm(t, a):
    for bit in a:
        if is_leaf(t):
            raise AddressOutOfRange(f"address {render_address(a)} leaves the term")
        t = t[1] if bit == "0" else t[2]
    return t


def replace_at(t, a, s):
    if not a:
        return s
    if is_leaf(t):
        raise AddressOutOfRange(f"address {render_address(a)} leaves the term")
    if a[0] == "0":
        return (t[0], replace_at(t[1], a[1:], s), t[2])
    return (t[0], t[1], replace_at(t[2], a[1:], s))


def addresses(t, prefix=""):
    """All addresses of t (inner nodes and leaves), in preorder."""
    out = [prefix]
    if not is_leaf(t):
        out.extend(addresses(t[1], prefix + "0"))
        out.extend(addresses(t[2], prefix + "1"))
    return out


def variable_occurrences(t, v):
    return {a for a in addresses(t) if subterm(t, a) == v}


def leaf_addresses(t):
    return [a for a in addresses(t) if is_leaf(subterm(t, a))]


def is_injective(t):
    vs = leaves(t)
    return len(vs) == len(set(vs))


def right_vine(n):
    if n < 1:
        raise ValueError("right vine index must be >= 1")
    t = 1
    for _ in range(n - 1):
        t = (STAR, 1, t)
    return t


def map_vars(t, f):
    if is_leaf(t):
        return f(t)
    return (t[0], map_vars(t[1], f), map_vars(t[2], f))


# -- addresses -----------------------------------------------------------

EQUAL, PREFIX_OF, EXTENDS, INCOMPARABLE = "Equal", "PrefixOf", "Extends", "Incomparable"


def address_relation(a, b):
    if a == b:
        return EQUAL
    if b.startswith(a):
        return PREFIX_OF
    if a.startswith(b):
        return EXTENDS
    return INCOMPARABLE


def incomparable(a, b):
    return not a.startswith(b) and not b.startswith(a)


def render_address(a):
    return a if a else "e"


def parse_address(text):
    if text in ("e", "", "∅", "ε"):
        return ""
    if any(c not in "01" for c in text):
        raise ValueError(f"bad address {text!r}")
    return text


# -- grammar -------------------------------------------------------------

def parse_term(text, registry=ALD_SYMBOLS, allow_symvars=False):
    """term := var | "(" term op term ")"; bare ``x`` is x1.

    Symbol-variables ``#k`` are accepted in operator position when
    ``allow_symvars`` is set (pattern syntax).
    """
    pos = 0
    n = len(text)
    ops = sorted(registry.tokens, key=len, reverse=True)

    def skip():
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def parse():
        nonlocal pos
        skip()
        if pos >= n:
            raise TermSyntaxError("unexpected end of input", pos)
        c = text[pos]
        if c == "x":
            pos += 1
            start = pos
            while pos < n and text[pos].isdigit():
                pos += 1
            if start == pos:
                return 1
            v = int(text[start:pos])
            if v < 1:
                raise TermSyntaxError("variable index must be positive", start)
            return v
        if c == "(":
            pos += 1
            left = parse()
            skip()
            sym = parse_op()
            right = parse()
            skip()
            if pos >= n or text[pos] != ")":
                raise TermSyntaxError("expected ')'", pos)
            pos += 1
            return (sym, left, right)
        raise TermSyntaxError(f"unexpected character {c!r}", pos)

    def parse_op():
        nonlocal pos
        if allow_symvars and pos < n and text[pos] == "#":
            pos += 1
            start = pos
            while pos < n and text[pos].isdigit():
                pos += 1
            if start == pos:
                raise TermSyntaxError("expected symbol-variable index", start)
            return -int(text[start:pos])
        for tok in ops:
            if text.startswith(tok, pos):
                pos += len(tok)
                return registry.id_of(tok)
        raise TermSyntaxError("unknown operator token", pos)

    t = parse()
    skip()
    if pos != n:
        raise TermSyntaxError("trailing input", pos)
    return t


def render_term(t, registry=ALD_SYMBOLS):
    if is_leaf(t):
        return f"x{t}"
    tok = registry.token(t[0])
    # alphabetic tokens need spacing to stay readable next to variables
    sep = f" {tok} " if tok[0].isalpha() or tok[0] == "#" else tok
    return f"({render_term(t[1], registry)}{sep}{render_term(t[2], registry)})"


def term_to_json(t, registry=ALD_SYMBOLS):
    if is_leaf(t):
        return f"x{t}"
    return [registry.token(t[0]), term_to_json(t[1], registry), term_to_json(t[2], registry)]


def term_from_json(obj, registry=ALD_SYMBOLS):
    if isinstance(obj, str):
        return parse_term(obj, registry)
    tok, left, right = obj
    sym = -int(tok[1:]) if tok.startswith("#") else registry.id_of(tok)
    return (sym, term_from_json(left, registry), term_from_json(right, registry))


# -- enumeration -----------------------------------------------------------

@lru_cache(maxsize=None)
def _shapes(n_inner):
    if n_inner == 0:
        return (None,)
    out = []
    for k in range(n_inner):
        for left in _shapes(k):
            for right in _shapes(n_inner - 1 - k):
                out.append((left, right))
    return tuple(out)


def _preorder_key(t, nsym):
    if is_leaf(t):
        return (nsym + t - 1,)
    return (t[0],) + _preorder_key(t[1], nsym) + _preorder_key(t[2], nsym)


def enumerate_terms(max_size, nsym=2, nvars=1, min_size=1):
    """All terms with size in [min_size, max_size] over symbols 0..nsym-1 and
    variables x1..x_nvars, by size then preorder."""
    out = []
    for sz in range(min_size, max_size + 1):
        if sz % 2 == 0:
            continue
        inner = (sz - 1) // 2
        batch = []
        for shape in _shapes(inner):
            for syms in product(range(nsym), repeat=inner):
                for vs in product(range(1, nvars + 1), repeat=inner + 1):
                    batch.append(_fill_ordered(shape, syms, vs))
        batch.sort(key=lambda t: _preorder_key(t, nsym))
        out.extend(batch)
    return out


def _fill_ordered(shape, syms, vs):
    # symbols are consumed in preorder and leaves left to right
    s_it = iter(syms)
    v_it = iter(vs)

    def go(sh):
        if sh is None:
            return next(v_it)
        sym = next(s_it)
        left = go(sh[0])
        return (sym, left, go(sh[1]))

    return go(shape)
