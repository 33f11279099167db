"""Words over signed, address-indexed law letters.

Tokens look like ``S+e`` or ``A-10``: rule tag, sign, address (``e`` for the
empty address).  A word is a tuple of :class:`Letter`.
"""

from .operators import IDENTITY, EMPTY, Letter, compose, elementary, render_letter
from .terms import parse_address
from . import kernels


class WordSyntaxError(ValueError):
    pass


def parse_word(family, text):
    letters = []
    for tok in text.replace(",", " ").split():
        if tok in ("1", "eps", "ε"):
            continue
        if len(tok) < 3 or tok[1] not in "+-":
            raise WordSyntaxError(f"bad letter token {tok!r}")
        try:
            rule = family.rule_index(tok[0])
            addr = parse_address(tok[2:])
        except (KeyError, ValueError) as exc:
            raise WordSyntaxError(str(exc)) from None
        letters.append(Letter(rule, 1 if tok[1] == "+" else -1, addr))
    return tuple(letters)


def render_word(family, w):
    if not w:
        return "1"
    return " ".join(render_letter(family, x) for x in w)


def eval_word(family, w):
    f = IDENTITY
    for x in w:
        f = compose(f, elementary(family, x))
        if f.empty:
            return EMPTY
    return f


def formal_inverse(w):
    return tuple(x.inverse() for x in reversed(w))


def shift_word(addr, w):
    if not addr:
        return tuple(w)
    return tuple(Letter(x.rule, x.sign, addr + x.addr) for x in w)


def free_reduce(w):
    out = []
    for x in w:
        if out and out[-1].rule == x.rule and out[-1].addr == x.addr and out[-1].sign == -x.sign:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


# -- integer encoding used by the group-word machinery ----------------------
# generator id = address_code * nrules + rule, address_code = int("1" + addr, 2);
# a letter is +id or -id.

def address_code(addr):
    return int("1" + addr, 2)


def address_of_code(code):
    return bin(code)[3:]


def encode_letter(letter, nrules):
    g = address_code(letter.addr) * nrules + letter.rule
    return g if letter.sign > 0 else -g


def decode_letter(x, nrules):
    g = abs(x)
    code, rule = divmod(g, nrules)
    return Letter(rule, 1 if x > 0 else -1, address_of_code(code))


def encode_word(w, nrules):
    return tuple(encode_letter(x, nrules) for x in w)


def decode_word(w, nrules):
    return tuple(decode_letter(x, nrules) for x in w)


def free_reduce_int(w):
    return kernels.free_reduce(w)
