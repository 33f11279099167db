"""Confluence relations of a law family.

Relations are pairs of positive words whose evaluations are the same
nonempty operator.  Two schemas (commutation at incomparable addresses and
geometric inheritance along variable occurrences) are generated directly;
the remaining overlaps are completed by a breadth-first search over seeds.
"""

from dataclasses import dataclass, field
from itertools import product

from .operators import Letter, apply_letter, compose, domain_intersection, elementary
from .laws import occurrence_profile
from .terms import addresses, incomparable, is_leaf, render_term, size, subterm
from .unify import canonical_rename
from .words import encode_word, eval_word, parse_word, render_word, shift_word


class RelationError(ValueError):
    pass


@dataclass(frozen=True)
class RelationPair:
    left: tuple
    right: tuple
    kind: str          # "Commutation" | "Inheritance" | "Critical"
    provenance: str = ""

    def to_json(self, family):
        return {"kind": self.kind, "left": render_word(family, self.left),
                "right": render_word(family, self.right), "provenance": self.provenance}


def checked_relation(family, left, right, kind, provenance=""):
    """Build a RelationPair after checking both sides evaluate to the same
    nonempty operator."""
    f, g = eval_word(family, left), eval_word(family, right)
    if f.empty or f != g:
        raise RelationError(
            f"{render_word(family, left)} = {render_word(family, right)} does not hold")
    return RelationPair(tuple(left), tuple(right), kind, provenance)


def addresses_upto(n):
    out = [""]
    for k in range(1, n + 1):
        out.extend("".join(b) for b in product("01", repeat=k))
    return out


def positive_letters(family, max_addr_len):
    return [Letter(r, 1, a) for a in addresses_upto(max_addr_len) for r in range(len(family.laws))]


def letter_key(family, x):
    return encode_word((x,), len(family.laws))[0]


def word_key(family, w):
    return encode_word(w, len(family.laws))


# -- schemas -----------------------------------------------------------------

def commutation_relations(family, max_addr_len):
    out = []
    addrs = addresses_upto(max_addr_len)
    rules = range(len(family.laws))
    for i, a in enumerate(addrs):
        for b in addrs[i + 1:]:
            if not incomparable(a, b):
                continue
            for x, y in product(rules, rules):
                X, Y = Letter(x, 1, a), Letter(y, 1, b)
                out.append(checked_relation(family, (X, Y), (Y, X), "Commutation",
                                            f"comm({a or 'e'},{b})"))
    return out


def inheritance_relations(family, max_addr_len, max_delta_len):
    """Y at the lhs occurrences of a variable, then L, equals L, then Y at
    its rhs occurrences (words read left to right, "f then g")."""
    out = []
    rules = range(len(family.laws))
    deltas = addresses_upto(max_delta_len)
    for law_i, law in enumerate(family.laws):
        prof = occurrence_profile(law)
        for alpha in addresses_upto(max_addr_len):
            L = Letter(law_i, 1, alpha)
            for v in sorted(prof.lhs):
                for y in rules:
                    for delta in deltas:
                        left = tuple(Letter(y, 1, alpha + b + delta) for b in prof.lhs[v]) + (L,)
                        right = (L,) + tuple(Letter(y, 1, alpha + g + delta) for g in prof.rhs[v])
                        out.append(checked_relation(
                            family, left, right, "Inheritance",
                            f"heir({law.tag},x{v},{alpha or 'e'},{delta or 'e'})"))
    return out


# -- critical pairs ------------------------------------------------------------

@dataclass
class CriticalSearch:
    first: Letter
    second: Letter
    pair: tuple = None          # (first·u, second·v) or None
    explored: int = 0           # distinct seeds reached on both sides
    max_len: int = 0

    @property
    def found(self):
        return self.pair is not None


def _seed_levels(family, start_word, alphabet, max_len):
    """BFS over operators: for each seed reached by a positive word extending
    start_word (total length <= max_len), the shortest, then lexicographically
    least such word."""
    f0 = eval_word(family, start_word)
    if f0.empty:
        return {}
    best = {f0: tuple(start_word)}
    frontier = [(tuple(start_word), f0)]
    for _ in range(len(start_word), max_len):
        nxt = []
        for w, f in frontier:
            for x in alphabet:
                g = compose(f, elementary(family, x))
                if g.empty or g in best:
                    continue
                best[g] = w + (x,)
                nxt.append((w + (x,), g))
        frontier = nxt
    return best


def critical_search(family, a, b, max_len, max_addr=None):
    if max_addr is None:
        max_addr = max(len(a.addr), len(b.addr), 1)
    alphabet = sorted(positive_letters(family, max_addr), key=lambda x: letter_key(family, x))
    res = CriticalSearch(a, b, max_len=max_len)
    left = _seed_levels(family, (a,), alphabet, max_len)
    right = _seed_levels(family, (b,), alphabet, max_len)
    res.explored = len(left) + len(right)
    best = None
    for f, u in left.items():
        v = right.get(f)
        if v is None:
            continue
        k = (len(u) + len(v), word_key(family, u), word_key(family, v))
        if best is None or k < best[0]:
            best = (k, (u, v))
    if best is not None:
        res.pair = best[1]
    return res


def critical_completion(family, a, b, max_len, max_addr=None):
    """Shortest (a·u, b·v) with eval(a·u) = eval(b·v) nonempty, or None."""
    return critical_search(family, a, b, max_len, max_addr).pair


def _inner_addresses(law):
    """Addresses of the lhs that are inner nodes, i.e. not inside a variable."""
    return [ad for ad in addresses(law.lhs) if not is_leaf(subterm(law.lhs, ad))]


def critical_pairs(family):
    """Overlapping positive letter pairs at the empty address that neither
    schema covers: same address with different rules, or the second letter
    strictly inside the first rule's lhs."""
    out = []
    n = len(family.laws)
    for x in range(n):
        for ad in _inner_addresses(family.laws[x]):
            for y in range(n):
                if not ad and y <= x:
                    continue
                out.append((Letter(x, 1, ""), Letter(y, 1, ad)))
    return out


def pair_status(family, a, b):
    """How the pair (a, b) of positive letters is handled: "commutation",
    "inheritance", or "critical" when only a search can complete it."""
    if incomparable(a.addr, b.addr):
        return "commutation"
    if a.addr == b.addr:
        return "trivial" if a == b else "critical"
    top, low = (a, b) if b.addr.startswith(a.addr) else (b, a)
    rest = low.addr[len(top.addr):]
    prof = occurrence_profile(family.laws[top.rule])
    for occ in prof.lhs.values():
        if any(rest.startswith(o) for o in occ):
            return "inheritance"
    return "critical"


# -- presentations ---------------------------------------------------------------

@dataclass
class Presentation:
    family: object
    alphabet: list
    relations: list
    bounds: dict = field(default_factory=dict)
    critical: list = field(default_factory=list)   # templates at the empty address

    def by_kind(self, kind):
        return [r for r in self.relations if r.kind == kind]

    def to_json(self):
        return {"family": self.family.name, "bounds": dict(self.bounds),
                "alphabet": [render_word(self.family, (x,)) for x in self.alphabet],
                "relations": [r.to_json(self.family) for r in self.relations]}


def assemble_presentation(family, max_addr_len=2, max_delta_len=1, crit_len=6):
    """Commutation + inheritance + critical completions.  Critical pairs are
    searched at the empty address and the completions shifted to every
    address within the bound."""
    rels = commutation_relations(family, max_addr_len)
    rels += inheritance_relations(family, max_addr_len, max_delta_len)
    templates = []
    for a, b in critical_pairs(family):
        pair = critical_completion(family, a, b, crit_len)
        if pair is not None:
            templates.append(pair)
    for u, v in templates:
        for alpha in addresses_upto(max_addr_len):
            su, sv = shift_word(alpha, u), shift_word(alpha, v)
            if max(len(x.addr) for x in su + sv) > max_addr_len + 2:
                continue
            rels.append(checked_relation(family, su, sv, "Critical",
                                         f"critical({render_word(family, u)}) at {alpha or 'e'}"))
    seen, out = set(), []
    for r in rels:
        k = frozenset((r.left, r.right))
        if k not in seen:
            seen.add(k)
            out.append(r)
    return Presentation(family, positive_letters(family, max_addr_len), out,
                        {"max_addr_len": max_addr_len, "max_delta_len": max_delta_len,
                         "crit_len": crit_len}, templates)


@dataclass
class PairReport:
    first: Letter
    second: Letter
    status: str                 # commutation | inheritance | critical | uncovered
    completion: tuple = None


def local_confluence_report(family, max_addr_len=2, crit_len=5):
    """Classify every unordered pair of distinct positive letters."""
    letters = positive_letters(family, max_addr_len)
    cache = {}
    rows = []
    for i, a in enumerate(letters):
        for b in letters[i + 1:]:
            st = pair_status(family, a, b)
            if st != "critical":
                rows.append(PairReport(a, b, st))
                continue
            # a precedes b in the letter order, so at equal addresses a is the lower rule
            top, low = (a, b) if b.addr.startswith(a.addr) else (b, a)
            alpha = top.addr
            base = (top._replace(addr=""), low._replace(addr=low.addr[len(alpha):]))
            if base not in cache:
                cache[base] = critical_completion(family, *base, crit_len)
            pair = cache[base]
            if pair is None:
                rows.append(PairReport(a, b, "uncovered"))
            else:
                u, v = shift_word(alpha, pair[0]), shift_word(alpha, pair[1])
                rows.append(PairReport(a, b, "critical", (u, v)))
    return rows


# -- the global criteria -----------------------------------------------------------

@dataclass
class RightMultiple:
    u: tuple
    v: tuple
    strong: bool


def common_right_multiple(family, f_word, g_word, max_len, max_addr=None):
    """(u, v) with eval(f·u) = eval(g·v) nonempty and |f·u|, |g·v| <= max_len."""
    f_word, g_word = tuple(f_word), tuple(g_word)
    f, g = eval_word(family, f_word), eval_word(family, g_word)
    if f.empty or g.empty:
        return None
    meet = domain_intersection(f, g)
    if f == g:
        return RightMultiple((), (), True)
    if max_addr is None:
        max_addr = max(max((len(x.addr) for x in f_word + g_word), default=0), 1)
    alphabet = sorted(positive_letters(family, max_addr), key=lambda x: letter_key(family, x))
    left = _seed_levels(family, f_word, alphabet, max_len)
    right = _seed_levels(family, g_word, alphabet, max_len)
    best = None
    for h, wu in left.items():
        wv = right.get(h)
        if wv is None:
            continue
        u, v = wu[len(f_word):], wv[len(g_word):]
        k = (len(u) + len(v), word_key(family, u), word_key(family, v))
        if best is None or k < best[0]:
            best = (k, u, v, h)
    if best is None:
        return None
    _, u, v, h = best
    strong = meet is not None and canonical_rename(h.dom)[0] == meet
    return RightMultiple(u, v, strong)


def expansions(family, t, degree):
    """Terms reachable from t by at most `degree` positive letter applications."""
    seen = {t}
    frontier = [t]
    for _ in range(degree):
        nxt = []
        for s in frontier:
            for s2 in one_step(family, s):
                if s2 not in seen:
                    seen.add(s2)
                    nxt.append(s2)
        frontier = nxt
    return seen


def one_step(family, t, sign=1):
    out = []
    for ad in addresses(t):
        for r in range(len(family.laws)):
            s = apply_letter(family, Letter(r, sign, ad), t)
            if s is not None:
                out.append(s)
    return out


def _reach_levels(family, t, bound):
    seen = {t}
    levels = [{t}]
    for _ in range(bound):
        nxt = set()
        for s in levels[-1]:
            for s2 in one_step(family, s):
                if s2 not in seen:
                    seen.add(s2)
                    nxt.add(s2)
        levels.append(nxt)
        yield seen


@dataclass
class ExpansionCheck:
    term: object = None          # the common expansion, or None
    degree1: list = field(default_factory=list)
    depth: int = 0               # search depth at which the term was found


def common_expansion_check(family, t, search_bound):
    """A term every degree-1 expansion of t rewrites to within search_bound
    positive steps (smallest such term, ties by rendering), or None."""
    firsts = sorted(set(one_step(family, t)), key=lambda s: (size(s), render_term(s, family.symbols)))
    if not firsts:
        return ExpansionCheck(t, [], 0)
    if len(firsts) == 1:
        return ExpansionCheck(firsts[0], firsts, 0)
    gens = [_reach_levels(family, s, search_bound) for s in firsts]
    for k in range(1, search_bound + 1):
        reach = [next(g) for g in gens]
        common = set.intersection(*reach)
        if common:
            pick = min(common, key=lambda s: (size(s), render_term(s, family.symbols)))
            return ExpansionCheck(pick, firsts, k)
    return ExpansionCheck(None, firsts, search_bound)


# -- the ALD critical templates, as stated for the empty address --------------------

ALD_CRITICAL_TEXT = (
    ("S+e S+1 S+e", "S+1 S+e S+1 S+0"),
    ("S+e S+1 A+e", "A+1 S+e S+0"),
    ("A+e S+e", "S+1 S+e A+1 A+0"),
)


def ald_critical(family):
    return [(parse_word(family, l), parse_word(family, r)) for l, r in ALD_CRITICAL_TEXT]
