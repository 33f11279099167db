"""Pure-Python versions of the kernels (see _kernels.pyx)."""

from .unify import _Unifier, offset


def free_reduce(w):
    out = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def find_all(w, p):
    """Start positions of p as a factor of w."""
    n, m = len(w), len(p)
    if m == 0:
        return list(range(n + 1))
    first = p[0]
    return [i for i in range(n - m + 1) if w[i] == first and w[i:i + m] == p]


def compose_seeds(fdom, fimg, gdom, gimg, dv, ds):
    """Seed of "f then g": unify img f with dom g shifted by (dv, ds) and
    return the canonical (dom, img), or None when the result is empty."""
    u = _Unifier()
    if not u.unify(fimg, offset(gdom, dv, ds)):
        return None
    (d, i), nv, ns = u.canonical((fdom, offset(gimg, dv, ds)))
    return d, i, nv, ns


def canonical_rename(patterns):
    """Canonical renumbering of the patterns, plus the variable and
    symbol-variable counts."""
    return _Unifier().canonical(patterns)
