"""Replayable equality certificates for group words.

A group word is a tuple of nonzero ints; ``-g`` is the inverse of ``g``.  A
certificate is a list of primitive steps turning one word into another:

* ``apply``: replace an occurrence of one side of a relation by the other
  side (``direction`` +1 is lhs -> rhs);
* ``insert``: insert the pair ``g, -g`` at a position;
* ``delete``: remove such a pair.

Relations are named by keys that the presentation knows how to instantiate,
so replay re-derives every relation instead of trusting stored words.
"""

from dataclasses import dataclass, field
from typing import NamedTuple

from . import kernels


class InvalidRelation(ValueError):
    pass


class ReplayError(ValueError):
    pass


class Step(NamedTuple):
    pos: int
    kind: str          # "apply" | "insert" | "delete"
    key: tuple = None  # relation key for "apply"
    direction: int = 1
    letter: int = 0    # g for insert/delete: the pair is (g, -g)


def inverse_word(w):
    return tuple(-x for x in reversed(w))


def free_reduce(w):
    return kernels.free_reduce(tuple(w))


def relation_sides(pres, key):
    lhs, rhs = pres.instantiate(key)
    return tuple(lhs), tuple(rhs)


def apply_step(pres, w, step):
    pos = step.pos
    if step.kind == "apply":
        lhs, rhs = relation_sides(pres, step.key)
        src, dst = (lhs, rhs) if step.direction > 0 else (rhs, lhs)
        if tuple(w[pos:pos + len(src)]) != src:
            raise ReplayError(f"relation side not found at {pos}")
        return w[:pos] + dst + w[pos + len(src):]
    if step.kind == "insert":
        if not 0 <= pos <= len(w) or step.letter == 0:
            raise ReplayError(f"bad insert position {pos}")
        return w[:pos] + (step.letter, -step.letter) + w[pos:]
    if step.kind == "delete":
        if w[pos:pos + 2] != (step.letter, -step.letter):
            raise ReplayError(f"no cancelling pair at {pos}")
        return w[:pos] + w[pos + 2:]
    raise ReplayError(f"unknown step kind {step.kind!r}")


@dataclass
class Certificate:
    start: tuple
    end: tuple
    steps: list = field(default_factory=list)

    def __len__(self):
        return len(self.steps)

    def replay(self, pres):
        w = tuple(self.start)
        for st in self.steps:
            w = apply_step(pres, w, st)
        if w != tuple(self.end):
            raise ReplayError("replay does not reach the target word")
        return True

    def words(self, pres):
        w = tuple(self.start)
        out = [w]
        for st in self.steps:
            w = apply_step(pres, w, st)
            out.append(w)
        return out

    def inverse(self, pres):
        """Certificate from end to start."""
        words = self.words(pres)
        steps = []
        for st, before in zip(reversed(self.steps), reversed(words[:-1])):
            if st.kind == "apply":
                steps.append(st._replace(direction=-st.direction))
            elif st.kind == "insert":
                steps.append(Step(st.pos, "delete", letter=st.letter))
            else:
                steps.append(Step(st.pos, "insert", letter=before[st.pos]))
        return Certificate(tuple(self.end), tuple(self.start), steps)

    def then(self, other):
        if tuple(self.end) != tuple(other.start):
            raise ValueError("certificates do not chain")
        return Certificate(self.start, other.end, self.steps + other.steps)

    def embedded(self, prefix, suffix=()):
        prefix, suffix = tuple(prefix), tuple(suffix)
        d = len(prefix)
        steps = [st._replace(pos=st.pos + d) for st in self.steps]
        return Certificate(prefix + tuple(self.start) + suffix,
                           prefix + tuple(self.end) + suffix, steps)

    def mirrored(self, pres):
        """Certificate from start^-1 to end^-1."""
        words = self.words(pres)
        steps = []
        for st, before in zip(self.steps, words[:-1]):
            n = len(before)
            if st.kind == "apply":
                lhs, rhs = relation_sides(pres, st.key)
                src = lhs if st.direction > 0 else rhs
                steps.append(Step(n - st.pos - len(src), "apply", pres.invert_key(st.key), st.direction))
            elif st.kind == "insert":
                # (g, -g) read backwards and inverted is again (g, -g)
                steps.append(st._replace(pos=n - st.pos))
            else:
                steps.append(st._replace(pos=n - st.pos - 2))
        return Certificate(inverse_word(self.start), inverse_word(self.end), steps)

    def mapped(self, pres, letter_map, key_map):
        """Image under a letter-wise morphism that maps relations to relations."""
        steps = []
        for st in self.steps:
            if st.kind == "apply":
                steps.append(st._replace(key=key_map(st.key)))
            else:
                steps.append(st._replace(letter=letter_map(st.letter)))
        lm = lambda w: tuple(letter_map(x) for x in w)
        return Certificate(lm(self.start), lm(self.end), steps)

    def relation_keys(self):
        return [st.key for st in self.steps if st.kind == "apply"]

    def to_json(self, pres):
        return {
            "start": pres.render_word(self.start),
            "end": pres.render_word(self.end),
            "steps": [
                {"pos": st.pos, "kind": st.kind,
                 **({"relation": pres.render_key(st.key), "direction": st.direction}
                    if st.kind == "apply" else {"letter": pres.render_word((st.letter,))})}
                for st in self.steps
            ],
        }


class Derivation:
    """A word being rewritten, with the primitive steps recorded."""

    def __init__(self, pres, word):
        self.pres = pres
        self.start = tuple(word)
        self.word = tuple(word)
        self.steps = []

    def __len__(self):
        return len(self.word)

    def _push(self, step):
        self.word = apply_step(self.pres, self.word, step)
        self.steps.append(step)

    def apply(self, pos, key, direction=1):
        self._push(Step(pos, "apply", key, direction))

    def insert(self, pos, g):
        self._push(Step(pos, "insert", letter=g))

    def delete(self, pos):
        self._push(Step(pos, "delete", letter=self.word[pos]))

    def insert_nested(self, pos, w):
        """Insert w·w^-1 at pos."""
        for k, g in enumerate(w):
            self.insert(pos + k, g)

    def reduce(self, lo=0, hi=None):
        """Freely reduce the window [lo, hi); returns the new window end."""
        if hi is None:
            hi = len(self.word)
        i = lo
        while i + 1 < hi:
            if self.word[i] == -self.word[i + 1]:
                self.delete(i)
                hi -= 2
                i = max(i - 1, lo)
            else:
                i += 1
        return hi

    def unreduce_from(self, raw):
        """Current word must be free_reduce(raw); rewrite it into raw."""
        d = Derivation(self.pres, raw)
        d.reduce()
        if d.word != self.word:
            raise ValueError("word is not the free reduction of the given raw word")
        self.extend(d.certificate().inverse(self.pres))

    def replace(self, pos, plen, q, key):
        """Replace word[pos:pos+plen] by q, where p·q^-1 is a cyclic
        conjugate of the relator of ``key`` or of its inverse."""
        p = self.word[pos:pos + plen]
        q = tuple(q)
        lhs, rhs = relation_sides(self.pres, key)
        if p == lhs and q == rhs:
            return self.apply(pos, key, 1)
        if p == rhs and q == lhs:
            return self.apply(pos, key, -1)
        z = p + inverse_word(q)
        rel = lhs + inverse_word(rhs)
        found = _rotation(z, rel)
        if found is not None:
            k, u, v, direction = found, lhs, rhs, 1
        else:
            rel = rhs + inverse_word(lhs)
            found = _rotation(z, rel)
            if found is None:
                raise InvalidRelation(
                    f"{self.pres.render_word(p)} -> {self.pres.render_word(q)} is not a "
                    f"consequence of {self.pres.render_key(key)}")
            k, u, v, direction = found, rhs, lhs, -1
        # A p B -> A p q^-1 q B, then kill the relator conjugate p q^-1
        self.insert_nested(pos + plen, inverse_word(q))
        self._kill(pos, rel, k, u, v, key, direction)

    def _kill(self, pos, rel, k, u, v, key, direction):
        # word[pos:pos+len(rel)] == rel[k:] + rel[:k]  (= y x with x y = rel)
        y = rel[k:] if k else ()
        n = len(rel)
        self.insert_nested(pos + n, y)
        at = pos + len(y)
        # now word[at:at+n] == u v^-1 ; rewrite u -> v
        self.apply(at, key, direction)
        total = len(y) + len(v)
        # y v v^-1 y^-1 collapses from the middle
        mid = pos + total
        for _ in range(total):
            mid -= 1
            self.delete(mid)

    def extend(self, cert, at=0):
        for st in cert.steps:
            self._push(st._replace(pos=st.pos + at))

    def certificate(self):
        return Certificate(self.start, self.word, list(self.steps))


def _rotation(z, rel):
    n = len(rel)
    if len(z) != n:
        return None
    for k in range(n):
        if rel[k:] + rel[:k] == z:
            return k
    return None


def join(pres, left, right):
    """left: u -> m, right: v -> m; certificate u -> v."""
    if tuple(left.end) != tuple(right.end):
        raise ValueError("derivations do not meet")
    return left.then(right.inverse(pres))
