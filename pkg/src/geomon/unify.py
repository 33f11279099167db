"""Substitutions, matching and most general unifiers over patterns.

Patterns are terms whose node symbols may be symbol-variables (negative
ints).  Symbol-variables unify with concrete symbols and with each other,
never with leaves.  The occurs check is always on.

>>> p = (0, 1, (-1, 2, 3))           # x1*(x2 #1 x3)
>>> t = (0, 1, (0, (1, 2, 3), 4))    # x1*((x2 o x3)*x4)
>>> s = match_pattern(p, t)
>>> s.sym_map
{1: 0}
>>> apply_subst(p, s) == t
True
"""

from dataclasses import dataclass, field


@dataclass
class Substitution:
    var_map: dict = field(default_factory=dict)
    sym_map: dict = field(default_factory=dict)   # symvar index k -> symbol (>=0) or -j

    def is_identity(self):
        return not self.var_map and not self.sym_map


def apply_subst(p, s):
    vm, sm = s.var_map, s.sym_map
    if not vm and not sm:
        return p

    def go(u):
        if type(u) is int:
            return vm.get(u, u)
        sym = u[0]
        if sym < 0:
            sym = sm.get(-sym, sym)
        return (sym, go(u[1]), go(u[2]))

    return go(p)


def max_var(p):
    if type(p) is int:
        return p
    a, b = max_var(p[1]), max_var(p[2])
    return a if a > b else b


def max_symvar(p):
    if type(p) is int:
        return 0
    a, b = max_symvar(p[1]), max_symvar(p[2])
    m = a if a > b else b
    return -p[0] if p[0] < -m else m


def offset(p, dv, ds):
    if type(p) is int:
        return p + dv
    sym = p[0] - ds if p[0] < 0 else p[0]
    return (sym, offset(p[1], dv, ds), offset(p[2], dv, ds))


def rename_apart(p, q):
    """Shift q's variables and symbol-variables past those of p."""
    return p, offset(q, max_var(p), max_symvar(p))


def match_pattern(p, t, s=None):
    """One-sided matching: find s with apply_subst(p, s) == t, or None."""
    if s is None:
        s = Substitution()
    vm, sm = s.var_map, s.sym_map
    stack = [(p, t)]
    while stack:
        u, v = stack.pop()
        if type(u) is int:
            bound = vm.get(u)
            if bound is None:
                vm[u] = v
            elif bound != v:
                return None
            continue
        if type(v) is int:
            return None
        sym = u[0]
        if sym < 0:
            bound = sm.get(-sym)
            if bound is None:
                sm[-sym] = v[0]
            elif bound != v[0]:
                return None
        elif sym != v[0]:
            return None
        stack.append((u[2], v[2]))
        stack.append((u[1], v[1]))
    return s


class _Unifier:
    # triangular bindings; resolved lazily

    def __init__(self):
        self.vb = {}
        self.sb = {}

    def walk(self, u):
        while type(u) is int and u in self.vb:
            u = self.vb[u]
        return u

    def walk_sym(self, sym):
        while sym < 0 and -sym in self.sb:
            sym = self.sb[-sym]
        return sym

    def occurs(self, v, u):
        stack = [u]
        while stack:
            w = self.walk(stack.pop())
            if type(w) is int:
                if w == v:
                    return True
            else:
                stack.append(w[1])
                stack.append(w[2])
        return False

    def unify(self, p, q):
        stack = [(p, q)]
        while stack:
            u, v = stack.pop()
            u = self.walk(u)
            v = self.walk(v)
            if u is v or u == v:
                continue
            if type(u) is int and type(v) is int:
                # bind the larger index to the smaller for determinism
                if u < v:
                    u, v = v, u
                self.vb[u] = v
                continue
            if type(v) is int:
                u, v = v, u
            if type(u) is int:
                if self.occurs(u, v):
                    return False
                self.vb[u] = v
                continue
            a = self.walk_sym(u[0])
            b = self.walk_sym(v[0])
            if a != b:
                if a < 0 and b < 0:
                    if a > b:
                        a, b = b, a
                    self.sb[-a] = b
                elif a < 0:
                    self.sb[-a] = b
                elif b < 0:
                    self.sb[-b] = a
                else:
                    return False
            stack.append((u[2], v[2]))
            stack.append((u[1], v[1]))
        return True

    def resolve(self, u):
        if type(u) is int:
            w = self.walk(u)
            if type(w) is int:
                return w
            return self.resolve(w)
        return (self.walk_sym(u[0]), self.resolve(u[1]), self.resolve(u[2]))

    def canonical(self, patterns):
        """Resolve the patterns through the bindings and renumber them as in
        canonical_rename, in one pass."""
        vmap, smap = {}, {}
        vb, sb = self.vb, self.sb

        def go(u):
            while type(u) is int:
                w = vb.get(u)
                if w is None:
                    r = vmap.get(u)
                    if r is None:
                        r = vmap[u] = len(vmap) + 1
                    return r
                u = w
            sym = u[0]
            while sym < 0 and -sym in sb:
                sym = sb[-sym]
            if sym < 0:
                r = smap.get(sym)
                if r is None:
                    r = smap[sym] = -(len(smap) + 1)
                sym = r
            left = go(u[1])
            return (sym, left, go(u[2]))

        out = tuple(go(p) for p in patterns)
        return out, len(vmap), len(smap)

    def substitution(self):
        vm = {v: self.resolve(v) for v in sorted(self.vb)}
        sm = {k: self.walk_sym(-k) for k in sorted(self.sb)}
        return Substitution(vm, sm)


def mgu(p, q):
    """Most general unifier of two patterns assumed renamed apart."""
    u = _Unifier()
    if not u.unify(p, q):
        return None
    return u.substitution()


def unify_canonical(pairs, patterns):
    """Unify the pairs, then return the canonically renamed instances of
    `patterns`, or None when there is no unifier."""
    u = _Unifier()
    for p, q in pairs:
        if not u.unify(p, q):
            return None
    return u.canonical(patterns)[0]


def mgu_pairs(pairs):
    """Simultaneous unifier for several equations."""
    u = _Unifier()
    for p, q in pairs:
        if not u.unify(p, q):
            return None
    return u.substitution()


def canonical_rename(*patterns):
    """Renumber variables and symbol-variables 1..k by first occurrence in
    preorder across the given patterns, in order."""
    vmap, smap = {}, {}

    def go(u):
        if type(u) is int:
            r = vmap.get(u)
            if r is None:
                r = vmap[u] = len(vmap) + 1
            return r
        sym = u[0]
        if sym < 0:
            r = smap.get(sym)
            if r is None:
                r = smap[sym] = -(len(smap) + 1)
            sym = r
        left = go(u[1])
        return (sym, left, go(u[2]))

    return tuple(go(p) for p in patterns)
