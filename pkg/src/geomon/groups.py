"""Presented groups: B•, the geometry group of a law family, and word equality.

Group words are tuples of nonzero ints.  For B•, ``s_i`` is ``2i`` and
``a_i`` is ``2i+1``.  For a geometry group the letter of rule r at address a
is ``int("1"+a, 2) * nrules + r`` (see ``words.encode_letter``).

Word equality is a semi-decision: a search either returns a certificate that
has been replayed, or reports the query undecided.  It never answers "not
equal".
"""

from collections import deque
from dataclasses import dataclass
from itertools import product

from .certificates import (
    Certificate, Derivation, InvalidRelation, free_reduce, inverse_word, join,
)
from .laws import occurrence_profile
from .terms import incomparable, render_address
from .words import address_code, address_of_code, decode_letter, encode_letter, parse_word


# -- B• ------------------------------------------------------------------

S_KIND, A_KIND = 0, 1


def s(i):
    return 2 * i


def a(i):
    return 2 * i + 1


def _idx(x):
    return abs(x) >> 1


def _kind(x):
    return abs(x) & 1


def _gen(kind, i):
    return 2 * i + kind


def _sgn(x):
    return 1 if x > 0 else -1


class BDot:
    """The group B• with its seven relation schemas, instantiated on demand."""

    name = "B•"
    schemas = ("ss", "sa", "aa", "as", "braid", "ssa", "ssa2")

    def instantiate(self, key):
        name, *params, inv = key
        if name in ("ss", "sa", "aa", "as"):
            i, j = params
            if i < 1 or j < i + 2:
                raise InvalidRelation(f"{name} needs i >= 1 and j >= i+2")
            lhs, rhs = {
                "ss": ((s(i), s(j)), (s(j), s(i))),
                "sa": ((s(i), a(j)), (a(j), s(i))),
                "aa": ((a(i), a(j - 1)), (a(j), a(i))),
                "as": ((a(i), s(j - 1)), (s(j), a(i))),
            }[name]
        elif name in ("braid", "ssa", "ssa2"):
            (i,) = params
            if i < 1:
                raise InvalidRelation(f"{name} needs i >= 1")
            lhs, rhs = {
                "braid": ((s(i), s(i + 1), s(i)), (s(i + 1), s(i), s(i + 1))),
                "ssa": ((s(i + 1), s(i), a(i + 1)), (a(i), s(i))),
                "ssa2": ((s(i), s(i + 1), a(i)), (a(i + 1), s(i))),
            }[name]
        else:
            raise InvalidRelation(f"unknown B• relation {name!r}")
        if inv:
            return inverse_word(lhs), inverse_word(rhs)
        return lhs, rhs

    def invert_key(self, key):
        return key[:-1] + (1 - key[-1],)

    def shift_key(self, key, k=1):
        name, *params, inv = key
        return (name, *(p + k for p in params), inv)

    def keys(self, max_index):
        """All relation instances whose letters have index <= max_index."""
        out = []
        for i in range(1, max_index + 1):
            for j in range(i + 2, max_index + 1):
                out += [("ss", i, j, 0), ("sa", i, j, 0), ("aa", i, j, 0), ("as", i, j, 0)]
            if i + 1 <= max_index:
                out += [("braid", i, 0), ("ssa", i, 0), ("ssa2", i, 0)]
        return out

    def candidate_keys(self, words, halo=2):
        top = max((_idx(x) for w in words for x in w), default=1)
        return self.keys(top + halo)

    # B• words written "s1 a2^-1"
    def render_word(self, w):
        if not w:
            return "1"
        return " ".join(
            ("s" if _kind(x) == S_KIND else "a") + str(_idx(x)) + ("" if x > 0 else "^-1")
            for x in w)

    def parse_word(self, text):
        out = []
        for tok in text.replace(",", " ").split():
            if tok == "1":
                continue
            inv = tok.endswith("^-1") or tok.endswith("'")
            core = tok[:-3] if tok.endswith("^-1") else tok.rstrip("'")
            if len(core) < 2 or core[0] not in "sa" or not core[1:].isdigit() or int(core[1:]) < 1:
                raise ValueError(f"bad B• token {tok!r}")
            g = _gen(S_KIND if core[0] == "s" else A_KIND, int(core[1:]))
            out.append(-g if inv else g)
        return tuple(out)

    def render_key(self, key):
        name, *params, inv = key
        return f"{name}({', '.join(map(str, params))}){'^-1' if inv else ''}"

    # -- normalisation: letters of lower index are pushed to the right
    def orient(self, x, y):
        i, j = _idx(x), _idx(y)
        ky = _kind(y)
        if _kind(x) == S_KIND:
            if j >= i + 2:
                return (y, x), ("ss" if ky == S_KIND else "sa", i, j, 0)
            return None
        name = "as" if ky == S_KIND else "aa"
        if x > 0 and j >= i + 1:
            return (_sgn(y) * _gen(ky, j + 1), x), (name, i, j + 1, 0)
        if x < 0 and j >= i + 2:
            return (_sgn(y) * _gen(ky, j - 1), x), (name, i, j, 0)
        return None

    def normalize(self, d):
        _push_normalize(self, d)


def _push_normalize(pres, d):
    i = 0
    while i + 1 < len(d.word):
        x, y = d.word[i], d.word[i + 1]
        if x == -y:
            d.delete(i)
            i = max(i - 1, 0)
            continue
        r = pres.orient(x, y)
        if r is None:
            i += 1
            continue
        q, key = r
        d.replace(i, 2, q, key)
        i = max(i - 1, 0)


def bdot_shift(w, k=1):
    return tuple(_sgn(x) * (abs(x) + 2 * k) for x in w)


def bdot_star_raw(x, y):
    return tuple(x) + bdot_shift(y) + (s(1),) + inverse_word(bdot_shift(x))


def bdot_circ_raw(x, y):
    return tuple(x) + bdot_shift(y) + (a(1),)


def bdot_star(x, y):
    return free_reduce(bdot_star_raw(x, y))


def bdot_circ(x, y):
    return free_reduce(bdot_circ_raw(x, y))


# -- geometry group of a law family ---------------------------------------

class GeoPresentation:
    """Geometry group of a family: commutation, inheritance and the given
    critical relation templates (word pairs at the empty address), each
    available at every address."""

    def __init__(self, family, critical=()):
        self.family = family
        self.nrules = len(family.laws)
        self.critical = tuple((tuple(l), tuple(r)) for l, r in critical)
        self.profiles = [occurrence_profile(law) for law in family.laws]
        self.name = f"Geo({family.name})"

    # letters
    def letter(self, rule, addr, sign=1):
        g = address_code(addr) * self.nrules + rule
        return g if sign > 0 else -g

    def parts(self, x):
        code, rule = divmod(abs(x), self.nrules)
        return rule, address_of_code(code), _sgn(x)

    def shift(self, prefix, w):
        out = []
        for x in w:
            rule, addr, sg = self.parts(x)
            out.append(self.letter(rule, prefix + addr, sg))
        return tuple(out)

    def encode(self, letters):
        return tuple(encode_letter(x, self.nrules) for x in letters)

    def decode(self, w):
        return tuple(decode_letter(x, self.nrules) for x in w)

    # relations
    def instantiate(self, key):
        kind = key[0]
        inv = key[-1]
        if kind == "comm":
            _, x, ax, y, ay, _ = key
            if not incomparable(ax, ay):
                raise InvalidRelation("commutation needs incomparable addresses")
            self._check_rule(x, y)
            lhs = (self.letter(x, ax), self.letter(y, ay))
            rhs = lhs[::-1]
        elif kind == "heir":
            _, law, v, x, alpha, delta, _ = key
            self._check_rule(law, x)
            prof = self.profiles[law]
            if v not in prof.lhs:
                raise InvalidRelation(f"rule {law} has no variable x{v}")
            lhs = tuple(self.letter(x, alpha + b + delta) for b in prof.lhs[v]) + (self.letter(law, alpha),)
            rhs = (self.letter(law, alpha),) + tuple(self.letter(x, alpha + g + delta) for g in prof.rhs[v])
        elif kind == "crit":
            _, k, alpha, _ = key
            if not 0 <= k < len(self.critical):
                raise InvalidRelation(f"no critical relation {k}")
            l, r = self.critical[k]
            lhs, rhs = self.shift(alpha, self.encode(l)), self.shift(alpha, self.encode(r))
        elif kind == "rel":
            raise InvalidRelation("finite relation keys belong to FinitePresentation")
        else:
            raise InvalidRelation(f"unknown relation kind {kind!r}")
        if inv:
            return inverse_word(lhs), inverse_word(rhs)
        return lhs, rhs

    def _check_rule(self, *rules):
        for r in rules:
            if not 0 <= r < self.nrules:
                raise InvalidRelation(f"bad rule index {r}")

    def invert_key(self, key):
        return key[:-1] + (1 - key[-1],)

    def shift_key(self, key, prefix):
        kind = key[0]
        if kind == "comm":
            _, x, ax, y, ay, inv = key
            return ("comm", x, prefix + ax, y, prefix + ay, inv)
        if kind == "heir":
            _, law, v, x, alpha, delta, inv = key
            return ("heir", law, v, x, prefix + alpha, delta, inv)
        _, k, alpha, inv = key
        return ("crit", k, prefix + alpha, inv)

    def render_word(self, w):
        if not w:
            return "1"
        toks = []
        for x in w:
            rule, addr, sg = self.parts(x)
            toks.append(f"{self.family.laws[rule].tag}{'+' if sg > 0 else '-'}{render_address(addr)}")
        return " ".join(toks)

    def parse_word(self, text):
        return self.encode(parse_word(self.family, text))

    def render_key(self, key):
        kind = key[0]
        inv = "^-1" if key[-1] else ""
        tag = lambda r: self.family.laws[r].tag
        if kind == "comm":
            _, x, ax, y, ay, _ = key
            return f"comm({tag(x)}{render_address(ax)},{tag(y)}{render_address(ay)}){inv}"
        if kind == "heir":
            _, law, v, x, alpha, delta, _ = key
            return f"heir({tag(law)}{render_address(alpha)},x{v},{tag(x)},{render_address(delta)}){inv}"
        _, k, alpha, _ = key
        return f"crit{k + 1}({render_address(alpha)}){inv}"

    # -- local moves
    def swap(self, x, y):
        """Rewrite the adjacent pair (x, y) so that the two letters trade
        places, when a commutation or inheritance relation allows it.
        Returns (q, key) or None."""
        rx, ax, ex = self.parts(x)
        ry, ay, ey = self.parts(y)
        if incomparable(ax, ay):
            return (y, x), ("comm", rx, ax, ry, ay, 0)
        if ax == ay:
            return None
        if ay.startswith(ax):
            # x is the ancestor and moves right
            law, alpha, sign, other, rest, osign, left = rx, ax, ex, ry, ay[len(ax):], ey, True
        else:
            law, alpha, sign, other, rest, osign, left = ry, ay, ey, rx, ax[len(ay):], ex, False
        prof = self.profiles[law]
        # crossing a positive law letter from its rhs side maps gamma-addresses to
        # beta-addresses; the other three cases follow by inversion
        from_side, to_side = (prof.rhs, prof.lhs) if (sign > 0) == left else (prof.lhs, prof.rhs)
        for v in sorted(from_side):
            occ = from_side[v]
            if len(occ) != 1 or not rest.startswith(occ[0]):
                continue
            delta = rest[len(occ[0]):]
            images = [self.letter(other, alpha + g + delta, osign) for g in to_side[v]]
            if osign < 0:
                images.reverse()
            key = ("heir", law, v, other, alpha, delta, 0)
            if left:
                return tuple(images) + (x,), key
            return (y,) + tuple(images), key
        return None

    def orient(self, x, y):
        """Normal-form orientation for searches: ancestors move right, and
        incomparable letters are sorted by descending (address code, rule)."""
        rx, ax, _ = self.parts(x)
        ry, ay, _ = self.parts(y)
        if incomparable(ax, ay):
            if (address_code(ax), rx) < (address_code(ay), ry):
                return (y, x), ("comm", rx, ax, ry, ay, 0)
            return None
        if len(ax) < len(ay) and ay.startswith(ax):
            r = self.swap(x, y)
            if r is not None and len(r[0]) == 2:
                return r
        return None

    def normalize(self, d):
        _push_normalize(self, d)

    def candidate_keys(self, words, halo=2):
        addrs = set()
        for w in words:
            for x in w:
                _, ad, _ = self.parts(x)
                for k in range(len(ad) + 1):
                    addrs.add(ad[:k])
        grown = set(addrs)
        for ad in addrs:
            for k in range(1, halo + 1):
                for bits in product("01", repeat=k):
                    grown.add(ad + "".join(bits))
        addrs = sorted(grown, key=lambda t: (len(t), t))
        keys = []
        rules = range(self.nrules)
        for i, p in enumerate(addrs):
            for q in addrs[i + 1:]:
                if incomparable(p, q):
                    for x, y in product(rules, rules):
                        keys.append(("comm", x, p, y, q, 0))
        aset = set(addrs)
        for law, prof in enumerate(self.profiles):
            for alpha in addrs:
                for v in prof.lhs:
                    for x in rules:
                        for ad in addrs:
                            b0 = alpha + prof.lhs[v][0]
                            if ad.startswith(b0):
                                delta = ad[len(b0):]
                                if all(alpha + g + delta in aset for g in prof.rhs[v]):
                                    keys.append(("heir", law, v, x, alpha, delta, 0))
        for k in range(len(self.critical)):
            for alpha in addrs:
                keys.append(("crit", k, alpha, 0))
        return keys


class FinitePresentation:
    """A finite list of word pairs, e.g. a truncated confluence presentation."""

    def __init__(self, pairs, render=None, name="finite"):
        self.pairs = [(tuple(l), tuple(r)) for l, r in pairs]
        self._render = render
        self.name = name

    def instantiate(self, key):
        _, i, inv = key
        if not 0 <= i < len(self.pairs):
            raise InvalidRelation(f"no relation {i}")
        lhs, rhs = self.pairs[i]
        if inv:
            return inverse_word(lhs), inverse_word(rhs)
        return lhs, rhs

    def invert_key(self, key):
        return key[:-1] + (1 - key[-1],)

    def candidate_keys(self, words, halo=2):
        return [("rel", i, 0) for i in range(len(self.pairs))]

    def normalize(self, d):
        d.reduce()

    def render_word(self, w):
        if self._render:
            return self._render(w)
        return " ".join(map(str, w)) or "1"

    def render_key(self, key):
        return f"rel{key[1]}{'^-1' if key[2] else ''}"


# -- search ----------------------------------------------------------------

class _Scratch:
    """Derivation stand-in that only tracks the word."""

    def __init__(self, word):
        self.word = tuple(word)

    def __len__(self):
        return len(self.word)

    def delete(self, pos):
        self.word = self.word[:pos] + self.word[pos + 2:]

    def replace(self, pos, plen, q, key):
        self.word = self.word[:pos] + tuple(q) + self.word[pos + plen:]

    def reduce(self, lo=0, hi=None):
        self.word = free_reduce(self.word)


def _normal(pres, w):
    d = _Scratch(w)
    pres.normalize(d)
    return d.word


def _rules(pres, keys):
    """Rewrite rules p -> q with p·q^-1 a cyclic conjugate of a relator or
    its inverse, indexed by the first letter of p."""
    index = {}
    seen = set()
    for key in keys:
        lhs, rhs = pres.instantiate(key)
        rel = lhs + inverse_word(rhs)
        for r in (rel, inverse_word(rel)):
            n = len(r)
            for k in range(n):
                rot = r[k:] + r[:k]
                for m in range(1, n + 1):
                    p, q = rot[:m], inverse_word(rot[m:])
                    if (p, q) in seen or p == q:
                        continue
                    seen.add((p, q))
                    index.setdefault(p[0], []).append((p, q, key))
    return index


@dataclass
class SearchResult:
    certificate: Certificate = None
    expanded: int = 0
    visited: int = 0
    strategy: str = ""

    @property
    def verdict(self):
        return "Equal" if self.certificate is not None else "Undecided"

    def __bool__(self):
        return self.certificate is not None


def words_equal(pres, u, v, budget=2000, halo=2, slack=4):
    """Bounded bidirectional search for a certificate u -> v.

    Both words are first normalised with the presentation's oriented moves;
    the search then explores single relation moves (each followed by
    normalisation) from both ends until the frontiers meet or ``budget``
    nodes have been expanded."""
    u, v = tuple(u), tuple(v)
    if u == v:
        return SearchResult(Certificate(u, v, []), strategy="identical")
    du, dv = Derivation(pres, u), Derivation(pres, v)
    pres.normalize(du)
    pres.normalize(dv)
    if du.word == dv.word:
        cert = join(pres, du.certificate(), dv.certificate())
        cert.replay(pres)
        return SearchResult(cert, strategy="normal form")
    if budget <= 0:
        return SearchResult()
    index = _rules(pres, pres.candidate_keys([du.word, dv.word], halo))
    max_len = max(len(u), len(v)) + slack
    # parent maps: word -> (previous word, pos, plen, q, key)
    parents = [{du.word: None}, {dv.word: None}]
    queues = [deque([du.word]), deque([dv.word])]
    expanded = 0
    meet = None
    side = 0
    while expanded < budget and (queues[0] or queues[1]) and meet is None:
        if not queues[side]:
            side = 1 - side
        w = queues[side].popleft()
        expanded += 1
        mine, other = parents[side], parents[1 - side]
        for pos, x in enumerate(w):
            for p, q, key in index.get(x, ()):
                if w[pos:pos + len(p)] != p:
                    continue
                nxt = _normal(pres, w[:pos] + q + w[pos + len(p):])
                if len(nxt) > max_len or nxt in mine:
                    continue
                mine[nxt] = (w, pos, len(p), q, key)
                if nxt in other:
                    meet = nxt
                    break
                queues[side].append(nxt)
            if meet is not None:
                break
        side = 1 - side
    visited = len(parents[0]) + len(parents[1])
    if meet is None:
        return SearchResult(expanded=expanded, visited=visited)
    left = _replay_path(pres, du, parents[0], meet)
    right = _replay_path(pres, dv, parents[1], meet)
    cert = join(pres, left, right)
    cert.replay(pres)
    return SearchResult(cert, expanded, visited, "search")


def _replay_path(pres, d0, parents, target):
    path = []
    w = target
    while parents[w] is not None:
        prev, pos, plen, q, key = parents[w]
        path.append((pos, plen, q, key))
        w = prev
    d = Derivation(pres, d0.start)
    d.extend(d0.certificate())
    for pos, plen, q, key in reversed(path):
        d.replace(pos, plen, q, key)
        pres.normalize(d)
    if d.word != target:
        raise AssertionError("search path does not replay")
    return d.certificate()


def one_move_certificate(pres, key):
    """Certificate lhs -> rhs of a relation instance by a single move."""
    lhs, rhs = pres.instantiate(key)
    d = Derivation(pres, lhs)
    d.apply(0, key, 1)
    return d.certificate()


# -- block moves in a geometry group ---------------------------------------

def pass_right(pres, d, i, n):
    """The letter at i moves right across the next n letters; returns its
    new position."""
    for _ in range(n):
        r = pres.swap(d.word[i], d.word[i + 1])
        if r is None:
            raise InvalidRelation(
                f"cannot move {pres.render_word(d.word[i:i + 1])} across "
                f"{pres.render_word(d.word[i + 1:i + 2])}")
        q, key = r
        d.replace(i, 2, q, key)
        i += len(q) - 1
    return i


def pass_left(pres, d, i, n):
    """The letter at i moves left across the n letters before it."""
    for _ in range(n):
        r = pres.swap(d.word[i - 1], d.word[i])
        if r is None:
            raise InvalidRelation(
                f"cannot move {pres.render_word(d.word[i:i + 1])} across "
                f"{pres.render_word(d.word[i - 1:i])}")
        q, key = r
        d.replace(i - 1, 2, q, key)
        i -= 1
    return i


def block_right(pres, d, start, blen, n):
    """Move the block word[start:start+blen] right across n letters, where
    every crossing is a plain commutation."""
    for k in reversed(range(blen)):
        pass_right(pres, d, start + k, n)


def sort_stable(pres, d, lo, hi, first):
    """Bubble letters satisfying ``first`` to the front of [lo, hi)."""
    changed = True
    while changed:
        changed = False
        for i in range(lo, hi - 1):
            x, y = d.word[i], d.word[i + 1]
            if not first(x) and first(y):
                q, key = pres.swap(x, y)
                d.replace(i, 2, q, key)
                changed = True


# -- the ALD operations on the geometry group --------------------------------

class GeoALD:
    """The two operations on Geo(ALD) and the block lemmas behind them."""

    def __init__(self, pres):
        self.pres = pres
        fam = pres.family
        self.S = pres.letter(fam.rule_index("S"), "")
        self.A = pres.letter(fam.rule_index("A"), "")
        self.crit_index = {"crit1": 0, "crit2": 1, "crit3": 2}

    def sh(self, prefix, w):
        return self.pres.shift(prefix, w)

    def star_raw(self, x, y):
        return tuple(x) + self.sh("1", y) + (self.S,) + inverse_word(self.sh("1", x))

    def circ_raw(self, x, y):
        return tuple(x) + self.sh("1", y) + (self.A,)

    def op_raw(self, box, x, y):
        return self.star_raw(x, y) if box == "*" else self.circ_raw(x, y)

    def star(self, x, y):
        return free_reduce(self.star_raw(x, y))

    def circ(self, x, y):
        return free_reduce(self.circ_raw(x, y))

    def L(self, tag, addr):
        return self.pres.letter(self.pres.family.rule_index(tag), addr)

    # identity sides, unreduced
    def sides(self, identity, box, x, y, z):
        S0, A0 = self.L("S", "0"), self.L("A", "0")
        op = lambda p, q: self.op_raw(box, p, q)
        if identity == "obst1":
            return op(self.star_raw(x, y), self.star_raw(x, z)), self.star_raw(x, op(y, z)) + (S0,)
        if identity == "obst2":
            return self.star_raw(self.circ_raw(x, y), z), self.star_raw(x, self.star_raw(y, z)) + (A0,)
        if identity == "quot1":
            return op(tuple(x) + self.sh("0", z), y), op(x, y) + self.sh("00", z)
        if identity == "quot2":
            return op(x, tuple(y) + self.sh("0", z)), op(x, y) + self.sh("01", z)
        raise ValueError(f"unknown identity {identity!r}")

    def raw_certificate(self, identity, box, x, y, z):
        """Certificate between the unreduced sides of an identity."""
        x, y, z = tuple(x), tuple(y), tuple(z)
        left, right = self.sides(identity, box, x, y, z)
        d = Derivation(self.pres, left)
        getattr(self, f"_{identity}_{'star' if box == '*' else 'circ'}")(d, x, y, z)
        if d.word != right:
            raise AssertionError(f"{identity} script ended at {self.pres.render_word(d.word)}")
        return d.certificate()

    def certificate(self, identity, box, x, y, z):
        """Certificate between the freely reduced sides."""
        raw = self.raw_certificate(identity, box, x, y, z)
        d = Derivation(self.pres, free_reduce(raw.start))
        d.unreduce_from(raw.start)
        d.extend(raw)
        d.reduce()
        return d.certificate()

    # -- scripts; X, Y, Z are block lengths
    def _obst2_star(self, d, x, y, z):
        P = self.pres
        X, Y, Z = len(x), len(y), len(z)
        p = pass_right(P, d, X + Y, Z)                    # A across sh1(z)
        d.replace(p, 2, P.instantiate(("crit", 2, "", 0))[1], ("crit", 2, "", 0))
        # S1 S A1 A0 A1^-1 -> S1 S A0
        r = P.swap(d.word[p + 3], d.word[p + 4])
        d.replace(p + 3, 2, *r)
        d.delete(p + 2)
        pass_right(P, d, p + 2, Y + X)                     # A0 to the end
        pass_right(P, d, p + 1, Y)                         # S across sh11(y)^-1

    _obst2_circ = _obst2_star

    def _obst1_star(self, d, x, y, z):
        P = self.pres
        X, Y, Z = len(x), len(y), len(z)
        base = X + Y
        # x sh1y S sh1x^-1 sh1x sh11z S1 sh11x^-1 S sh11x S1^-1 sh11y^-1 sh1x^-1
        for k in range(X):
            d.delete(base + X - k)
        p = pass_right(P, d, base, Z)                       # S across sh11z
        # word: x sh1y sh11z S S1 sh11x^-1 S sh11x S1^-1 ...
        pass_right(P, d, p + 2 + X, X)                      # second S across sh11x
        for k in range(X):
            d.delete(p + 2 + X - 1 - k)
        # x sh1y sh11z S S1 S S1^-1 sh11y^-1 sh1x^-1
        key = ("crit", 0, "", 0)
        d.replace(p, 3, P.instantiate(key)[1], key)
        # S1 S S1 S0 S1^-1 -> S1 S S0
        r = P.swap(d.word[p + 3], d.word[p + 4])
        d.replace(p + 3, 2, *r)
        d.delete(p + 2)
        pass_right(P, d, p + 2, Y + X)                      # S0 to the end
        pass_right(P, d, p + 1, Y)                          # S across sh11y^-1

    def _obst1_circ(self, d, x, y, z):
        P = self.pres
        X, Y, Z = len(x), len(y), len(z)
        base = X + Y
        for k in range(X):
            d.delete(base + X - k)
        # x sh1y S sh11z S1 sh11x^-1 A
        p = pass_right(P, d, base, Z)
        pass_left(P, d, p + 2 + X, X)                       # A left across sh11x^-1
        key = ("crit", 1, "", 0)
        d.replace(p, 3, P.instantiate(key)[1], key)         # S S1 A -> A1 S S0
        pass_right(P, d, p + 2, X)                          # S0 across sh1x^-1

    def _quot1_star(self, d, x, y, z):
        P = self.pres
        X, Y, Z = len(x), len(y), len(z)
        block_right(P, d, X, Z, Y)                          # sh0z across sh1y
        s_pos = X + Y + Z
        for _ in range(Z):
            s_pos = pass_left(P, d, s_pos, 1)               # S left across sh0z, splitting
        # x sh1y S [pairs] sh10z^-1 sh1x^-1 ; pairs span 2Z letters
        lo, hi = s_pos + 1, s_pos + 1 + 2 * Z
        sort_stable(P, d, lo, hi, lambda g: P.parts(g)[1].startswith("00"))
        d.reduce(lo + Z, hi + Z)
        block_right(P, d, lo, Z, X)                          # sh00z across sh1x^-1

    def _quot1_circ(self, d, x, y, z):
        P = self.pres
        X, Y, Z = len(x), len(y), len(z)
        block_right(P, d, X, Z, Y + 1)                       # across sh1y, then A

    def _quot2_star(self, d, x, y, z):
        P = self.pres
        X, Y, Z = len(x), len(y), len(z)
        block_right(P, d, X + Y, Z, 1)                       # sh10z across S
        block_right(P, d, X + Y + 1, Z, X)                   # sh01z across sh1x^-1

    def _quot2_circ(self, d, x, y, z):
        P = self.pres
        X, Y, Z = len(x), len(y), len(z)
        block_right(P, d, X + Y, Z, 1)


def normal_closure_identity(pres, i, tag, alpha=""):
    """Certificate X_{1^i 0 alpha} -> A_{1^(i-1)}...A_e X_{0 1^i alpha} A_e^-1...A_{1^(i-1)}^-1."""
    if i < 1:
        raise ValueError("i must be >= 1")
    fam = pres.family
    X = fam.rule_index(tag)
    A = fam.rule_index("A")
    y_var = 2  # the A-rule variable sitting at 10 on the left, 01 on the right
    prefix = tuple(pres.letter(A, "1" * k) for k in reversed(range(i)))
    rhs = prefix + (pres.letter(X, "0" + "1" * i + alpha),) + inverse_word(prefix)
    d = Derivation(pres, rhs)
    for k in range(i):
        # innermost conjugation: A_{1^k} X A_{1^k}^-1 -> X' by inheritance
        pos = i - 1 - k
        lvl = "1" * k
        _, addr, _ = pres.parts(d.word[pos + 1])
        rest = addr[len(lvl) + 2:]
        key = ("heir", A, y_var, X, lvl, rest, 0)
        target = pres.letter(X, lvl + "10" + rest)
        d.replace(pos, 3, (target,), key)
    lhs = (pres.letter(X, "1" * i + "0" + alpha),)
    if d.word != lhs:
        raise AssertionError("normal closure derivation went astray")
    return d.certificate().inverse(pres)


def bdot_keys_upto(max_i, max_j):
    """All B• relation instances with i <= max_i and j <= max_j."""
    out = []
    for i in range(1, max_i + 1):
        for j in range(i + 2, max_j + 1):
            out += [("ss", i, j, 0), ("sa", i, j, 0), ("aa", i, j, 0), ("as", i, j, 0)]
        out += [("braid", i, 0), ("ssa", i, 0), ("ssa2", i, 0)]
    return out
