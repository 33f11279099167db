# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels: free reduction, factor search, and seed composition.

Same contracts as _kernels_py; the test-suite runs both and compares.
"""


def free_reduce(tuple w):
    cdef list out = []
    cdef Py_ssize_t n = 0
    cdef long x
    for x in w:
        if n and <long>out[n - 1] == -x:
            out.pop()
            n -= 1
        else:
            out.append(x)
            n += 1
    return tuple(out)


def find_all(tuple w, tuple p):
    cdef Py_ssize_t n = len(w), m = len(p), i
    if m == 0:
        return list(range(n + 1))
    first = p[0]
    cdef list out = []
    for i in range(n - m + 1):
        if w[i] == first and w[i:i + m] == p:
            out.append(i)
    return out


cdef object _offset(object p, long dv, long ds):
    if type(p) is int:
        return <long>p + dv
    cdef long sym = p[0]
    if sym < 0:
        sym -= ds
    return (sym, _offset(p[1], dv, ds), _offset(p[2], dv, ds))


cdef class _Unifier:
    cdef dict vb
    cdef dict sb

    def __cinit__(self):
        self.vb = {}
        self.sb = {}

    cdef object walk(self, object u):
        cdef object w
        while type(u) is int:
            w = self.vb.get(u)
            if w is None:
                return u
            u = w
        return u

    cdef long walk_sym(self, long sym):
        cdef object w
        while sym < 0:
            w = self.sb.get(-sym)
            if w is None:
                return sym
            sym = w
        return sym

    cdef bint occurs(self, object v, object u):
        cdef list stack = [u]
        cdef object w
        while stack:
            w = self.walk(stack.pop())
            if type(w) is int:
                if w == v:
                    return True
            else:
                stack.append(w[1])
                stack.append(w[2])
        return False

    cdef bint unify(self, object p, object q):
        cdef list left = [p], right = [q]
        cdef object u, v
        cdef long a, b
        while left:
            u = self.walk(left.pop())
            v = self.walk(right.pop())
            if u is v:
                continue
            if type(u) is int:
                if type(v) is int:
                    if u == v:
                        continue
                    if u < v:
                        u, v = v, u
                    self.vb[u] = v
                    continue
                if self.occurs(u, v):
                    return False
                self.vb[u] = v
                continue
            if type(v) is int:
                if self.occurs(v, u):
                    return False
                self.vb[v] = u
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
            left.append(u[2])
            right.append(v[2])
            left.append(u[1])
            right.append(v[1])
        return True

    cdef object canon(self, object u, dict vmap, dict smap):
        cdef object r, w
        cdef long sym
        while type(u) is int:
            w = self.vb.get(u)
            if w is None:
                r = vmap.get(u)
                if r is None:
                    r = len(vmap) + 1
                    vmap[u] = r
                return r
            u = w
        sym = self.walk_sym(u[0])
        if sym < 0:
            r = smap.get(sym)
            if r is None:
                r = -(len(smap) + 1)
                smap[sym] = r
            sym = r
        left = self.canon(u[1], vmap, smap)
        return (sym, left, self.canon(u[2], vmap, smap))


def compose_seeds(fdom, fimg, gdom, gimg, long dv, long ds):
    cdef _Unifier un = _Unifier()
    if not un.unify(fimg, _offset(gdom, dv, ds)):
        return None
    cdef dict vmap = {}, smap = {}
    d = un.canon(fdom, vmap, smap)
    i = un.canon(_offset(gimg, dv, ds), vmap, smap)
    return d, i, len(vmap), len(smap)


def canonical_rename(tuple patterns):
    """Canonical renumbering of the patterns, plus the variable and
    symbol-variable counts."""
    cdef _Unifier un = _Unifier()
    cdef dict vmap = {}, smap = {}
    out = tuple([un.canon(p, vmap, smap) for p in patterns])
    return out, len(vmap), len(smap)
