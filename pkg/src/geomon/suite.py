"""The acceptance checks, shared by ``geomon suite`` and the test-suite.

Each check returns a :class:`CheckResult`; runtimes are measured around the
whole check, including any corpus enumeration it does.
"""

import logging
import random
import time
from dataclasses import dataclass, field

from .blueprint import (
    ALD, A_RULE, S_RULE, absorption, cc_word, geo_ald, verify_blueprint_group,
    verify_blueprint_operator,
)
from .certificates import free_reduce as free_reduce_int
from .confluence import (
    addresses_upto, ald_critical, commutation_relations, critical_completion,
    inheritance_relations, local_confluence_report,
)
from .groups import (
    BDot, a, bdot_circ, bdot_keys_upto, bdot_star, one_move_certificate, s,
    words_equal,
)
from .laws import builtin_family
from .operators import (
    EMPTY, IDENTITY, Letter, apply_letter, compose, compose_uncached,
    elementary, equal_operator, invert, shift_operator,
)
from .terms import addresses, enumerate_terms, parse_term, render_term
from .words import eval_word, formal_inverse, free_reduce, parse_word, render_word, shift_word

log = logging.getLogger(__name__)


@dataclass
class CheckResult:
    id: int
    name: str
    passed: bool
    seconds: float
    limit: float
    detail: dict = field(default_factory=dict)
    undecided: bool = False

    @property
    def in_time(self):
        return self.seconds < self.limit

    @property
    def ok(self):
        return self.passed and self.in_time

    def line(self):
        mark = "PASS" if self.ok else "FAIL"
        note = "" if self.in_time else " (over time limit)"
        return f"[{mark}] {self.id:2d} {self.name}: {self.seconds:.2f}s < {self.limit:g}s{note}"

    def to_json(self):
        return {"id": self.id, "name": self.name, "passed": self.passed, "ok": self.ok,
                "seconds": round(self.seconds, 3), "limit": self.limit,
                "undecided": self.undecided, "detail": self.detail}


@dataclass
class SuiteConfig:
    seed: int = 0
    # term bounds count inner nodes (x*x has one); see the notes in README
    absorption_nodes: int = 6
    operator_nodes: int = 6
    group_nodes: int = 5


def _all_letters(family, max_addr):
    return [Letter(r, sg, ad) for ad in addresses_upto(max_addr)
            for r in range(len(family.laws)) for sg in (1, -1)]


def terms_upto_nodes(n):
    """All single-variable ALD terms with at most n inner nodes."""
    return enumerate_terms(2 * n + 1)


# -- 1 ----------------------------------------------------------------------

def check_empty(cfg):
    w = parse_word(ALD, "S+e S+1 S-e")
    sym = w + formal_inverse(w)
    ok = (eval_word(ALD, w) == EMPTY and free_reduce(sym) == ()
          and eval_word(ALD, sym) == EMPTY)
    return ok, {"word": render_word(ALD, w), "symmetrized": render_word(ALD, sym)}


# -- 2 ----------------------------------------------------------------------

FIGURE_TERM = "(x1*((x2 o x3)*x4))"
FIGURE_OUTPUTS = {
    "S+e": "((x1*(x2 o x3))*(x1*x4))",
    "A+e": "((x1 o (x2 o x3))*x4)",
    "A-1": "(x1*(x2*(x3*x4)))",
}


def check_figure(cfg):
    t = parse_term(FIGURE_TERM)
    got = {}
    for x in _all_letters(ALD, 2):
        r = apply_letter(ALD, x, t)
        if r is not None:
            got[render_word(ALD, (x,))] = render_term(r)
    return got == FIGURE_OUTPUTS, {"applicable": got}


# -- 3 ----------------------------------------------------------------------

def check_relations(cfg):
    counts = []
    bad = 0
    for _ in range(2):
        comm = commutation_relations(ALD, 2)
        heir = inheritance_relations(ALD, 2, 1)
        counts.append((len(comm), len(heir)))
        for r in comm + heir:
            if not equal_operator(eval_word(ALD, r.left), eval_word(ALD, r.right)):
                bad += 1
    ok = bad == 0 and counts[0] == counts[1] == (44, 252)
    return ok, {"commutation": counts[0][0], "inheritance": counts[0][1], "unsound": bad}


# -- 4 ----------------------------------------------------------------------

CRITICAL_PAIRS = (
    ("crit1", Letter(S_RULE, 1, ""), Letter(S_RULE, 1, "1")),
    ("crit2", Letter(S_RULE, 1, ""), Letter(A_RULE, 1, "1")),
    ("crit3", Letter(A_RULE, 1, ""), Letter(S_RULE, 1, "1")),
)


def check_critical(cfg):
    templates = ald_critical(ALD)
    found = {}
    ok = True
    for (name, x, y), (cl, cr) in zip(CRITICAL_PAIRS, templates):
        pair = critical_completion(ALD, x, y, 6)
        if pair is None:
            ok = False
            found[name] = None
            continue
        u, v = pair
        f = eval_word(ALD, u)
        same = (equal_operator(f, eval_word(ALD, v)) and not f.empty
                and equal_operator(f, eval_word(ALD, cl))
                and equal_operator(f, eval_word(ALD, cr)))
        ok = ok and same
        found[name] = f"{render_word(ALD, u)} = {render_word(ALD, v)}"
    # the associativity pair of ALD has no completion, even with a wider alphabet
    neg = critical_completion(ALD, Letter(A_RULE, 1, ""), Letter(A_RULE, 1, "1"), 6, max_addr=2)
    found["A+e,A+1"] = None if neg is None else render_word(ALD, neg[0])
    return ok and neg is None, found


# -- 5 ----------------------------------------------------------------------

PENTAGON_DISPLAY = ("A+e A+e", "A+1 A+e A+1")


def check_associativity(cfg):
    fam = builtin_family("A")
    rows = local_confluence_report(fam, 2, 5)
    uncovered = [r for r in rows if r.status == "uncovered"]
    pent = critical_completion(fam, Letter(0, 1, ""), Letter(0, 1, "1"), 5)
    detail = {"pairs": len(rows), "uncovered": len(uncovered)}
    ok = not uncovered and pent is not None
    if pent is not None:
        u, v = pent
        f = eval_word(fam, u)
        ok = ok and not f.empty and equal_operator(f, eval_word(fam, v))
        detail["completion"] = f"{render_word(fam, u)} = {render_word(fam, v)}"
        dl, dr = (parse_word(fam, x) for x in PENTAGON_DISPLAY)
        detail["display_differs"] = (u, v) != (dl, dr)
        detail["display_sound"] = equal_operator(eval_word(fam, dl), eval_word(fam, dr))
    for r in rows:
        if r.status == "critical":
            ok = ok and equal_operator(eval_word(fam, r.completion[0]), eval_word(fam, r.completion[1]))
    return ok, detail


# -- 6 ----------------------------------------------------------------------

BLUEPRINT_EXAMPLES = {
    "(x o x)": "A+e",
    "((x o x)*x)": "A+e S+e A-1",
    "(x*((x o x)*x))": "A+1 S+1 A-11 S+e",
}


def check_blueprint_examples(cfg):
    got = {k: render_word(ALD, cc_word(parse_term(k))) for k in BLUEPRINT_EXAMPLES}
    return got == BLUEPRINT_EXAMPLES, got


# -- 7 ----------------------------------------------------------------------

def check_absorption(cfg):
    n = 0
    for t in terms_upto_nodes(cfg.absorption_nodes):
        absorption(t, window=4)   # raises on failure
        n += 1
    return True, {"terms": n}


# -- 8 ----------------------------------------------------------------------

def _applicable(t, max_addr=None):
    for ad in addresses(t):
        if max_addr is not None and len(ad) > max_addr:
            continue
        for r in (S_RULE, A_RULE):
            for sg in (1, -1):
                x = Letter(r, sg, ad)
                if apply_letter(ALD, x, t) is not None:
                    yield x


def check_operator_blueprint(cfg):
    n = bad = 0
    for t in terms_upto_nodes(cfg.operator_nodes):
        for x in _applicable(t, 3):
            n += 1
            if not verify_blueprint_operator(t, (x,)):
                bad += 1
                log.warning("operator blueprint fails: %s %s", render_term(t), x)
    return bad == 0, {"pairs": n, "failures": bad}


# -- 9 ----------------------------------------------------------------------

def check_group_blueprint(cfg):
    P = geo_ald().pres
    n = undecided = mismatch = 0
    strategies = {}
    for t in terms_upto_nodes(cfg.group_nodes):
        for x in _applicable(t):
            n += 1
            g = verify_blueprint_group(t, x)
            strategies[g.strategy] = strategies.get(g.strategy, 0) + 1
            if g.certificate is None:
                undecided += 1
                continue
            g.certificate.replay(P)
            if not g.matches_case_analysis:
                mismatch += 1
    ok = undecided == 0 and mismatch == 0
    return ok, {"pairs": n, "undecided": undecided, "mismatch": mismatch,
                "strategies": strategies}, undecided > 0


# -- 10 ---------------------------------------------------------------------

BDOT_LAWS = (
    ("x*(y*z)=(x*y)*(x*z)", lambda x, y, z: (bdot_star(x, bdot_star(y, z)),
                                             bdot_star(bdot_star(x, y), bdot_star(x, z)))),
    ("x*(y o z)=(x*y) o (x*z)", lambda x, y, z: (bdot_star(x, bdot_circ(y, z)),
                                                 bdot_circ(bdot_star(x, y), bdot_star(x, z)))),
    ("x*(y*z)=(x o y)*z", lambda x, y, z: (bdot_star(x, bdot_star(y, z)),
                                           bdot_star(bdot_circ(x, y), z))),
)


def bdot_short_words():
    gens = [g for i in (1, 2) for g in (s(i), -s(i), a(i), -a(i))]
    return [()] + [(g,) for g in gens] + [(g, h) for g in gens for h in gens if g != -h]


def check_bdot(cfg, samples=200):
    B = BDot()
    keys = bdot_keys_upto(4, 6)
    for key in keys:
        one_move_certificate(B, key).replay(B)
    words = bdot_short_words()
    rng = random.Random(cfg.seed)
    triples = [tuple(rng.choice(words) for _ in range(3)) for _ in range(samples)]
    log.info("B• law sample: seed %d, %d triples", cfg.seed, samples)
    undecided = []
    for x, y, z in triples:
        for name, law in BDOT_LAWS:
            u, v = law(x, y, z)
            res = words_equal(B, u, v)
            if not res:
                undecided.append((name, B.render_word(x), B.render_word(y), B.render_word(z)))
    return not undecided, {"relations": len(keys), "triples": samples, "seed": cfg.seed,
                           "undecided": undecided[:5]}, bool(undecided)


# -- 11 ---------------------------------------------------------------------

def check_obstructions(cfg, samples=50):
    geo = geo_ald()
    P = geo.pres
    gens = [P.letter(r, ad) for r in (S_RULE, A_RULE) for ad in ("", "0", "1")]
    gens += [-g for g in gens]
    rng = random.Random(cfg.seed)

    def word():
        return free_reduce_int(tuple(rng.choice(gens) for _ in range(rng.randint(0, 3))))

    n = 0
    for ident in ("obst1", "obst2", "quot1", "quot2"):
        for box in "*o":
            for _ in range(samples):
                x, y, z = word(), word(), word()
                cert = geo.certificate(ident, box, x, y, z)
                cert.replay(P)
                lhs, rhs = geo.sides(ident, box, x, y, z)
                if cert.start != free_reduce_int(lhs) or cert.end != free_reduce_int(rhs):
                    return False, {"identity": ident, "box": box}
                n += 1
    return True, {"certificates": n, "seed": cfg.seed}


# -- 12 ---------------------------------------------------------------------

def operator_corpus(family, max_len, max_addr):
    """Every operator eval(w) for w of length <= max_len over the letters
    with address length <= max_addr (Empty included when reached)."""
    letters = [elementary(family, x) for x in _all_letters(family, max_addr)]
    ops = {IDENTITY}
    front = [IDENTITY]
    for _ in range(max_len):
        nxt = []
        for f in front:
            if f.empty:
                continue
            for g in letters:
                h = compose(f, g)
                if h not in ops:
                    ops.add(h)
                    nxt.append(h)
        front = nxt
    return ops


def check_inverse_monoid(cfg):
    ops = operator_corpus(ALD, 4, 2)
    # one pass over a large corpus: the cached compose would only churn
    bad = sum(compose_uncached(f, compose_uncached(invert(f), f)) != f for f in ops)
    sample = sorted(ops, key=repr)[:200]
    absorbing = all(compose(EMPTY, f) == EMPTY == compose(f, EMPTY) for f in sample)
    letters = _all_letters(ALD, 1)
    words = []
    level = [()]
    for _ in range(3):
        level = [w + (x,) for w in level for x in letters]
        words += level
    nat_bad = 0
    for ad in addresses_upto(2):
        for w in words:
            if eval_word(ALD, shift_word(ad, w)) != shift_operator(ad, eval_word(ALD, w), ALD):
                nat_bad += 1
        # the empty word is the exception: sh_a(id) is only defined where a exists
        if ad and shift_operator(ad, IDENTITY, ALD) == eval_word(ALD, ()):
            nat_bad += 1
    ok = bad == 0 and absorbing and nat_bad == 0 and EMPTY in ops
    return ok, {"operators": len(ops), "inverse_law_failures": bad,
                "naturality_words": len(words), "naturality_failures": nat_bad}


CHECKS = (
    (1, "empty operator", 1, check_empty),
    (2, "figure letters", 1, check_figure),
    (3, "relation soundness", 10, check_relations),
    (4, "critical rediscovery", 60, check_critical),
    (5, "associativity coverage", 30, check_associativity),
    (6, "blueprint examples", 1, check_blueprint_examples),
    (7, "absorption", 60, check_absorption),
    (8, "operator blueprint", 120, check_operator_blueprint),
    (9, "group blueprint", 300, check_group_blueprint),
    (10, "B• suite", 300, check_bdot),
    (11, "obstruction identities", 120, check_obstructions),
    (12, "inverse monoid and shift naturality", 60, check_inverse_monoid),
)


def run_check(cid, cfg=None):
    cfg = cfg or SuiteConfig()
    for i, name, limit, fn in CHECKS:
        if i == cid:
            t0 = time.perf_counter()
            try:
                out = fn(cfg)
            except (AssertionError, ValueError) as exc:
                # ValidationFailure and replay errors land here
                out = (False, {"error": f"{type(exc).__name__}: {exc}"})
            secs = time.perf_counter() - t0
            passed, detail = out[0], out[1]
            undecided = out[2] if len(out) > 2 else False
            return CheckResult(i, name, bool(passed), secs, limit, detail, undecided)
    raise KeyError(f"no check {cid}")


def run_suite(cfg=None, only=None):
    cfg = cfg or SuiteConfig()
    ids = [c[0] for c in CHECKS if only is None or c[0] in only]
    return [run_check(i, cfg) for i in sorted(ids)]
