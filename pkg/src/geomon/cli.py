"""Command-line entry point.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 undecided
(a search ran out of budget).
"""

import argparse
import json
import logging
import os
import random
import sys
from dataclasses import dataclass

from . import suite
from .blueprint import (
    ALD, InvalidLeaf, UndefinedAction, blueprint, geo_ald, verify_blueprint_group,
    verify_blueprint_operator,
)
from .confluence import (
    assemble_presentation, commutation_relations, common_expansion_check,
    common_right_multiple, critical_search, expansions, inheritance_relations,
    local_confluence_report,
)
from .groups import BDot, words_equal
from .laws import builtin_family, family_to_json, load_family
from .operators import Letter, apply, apply_letter, operator_to_json, render_operator
from .terms import (
    TermSyntaxError, addresses, parse_term, render_address, render_term, size,
    term_to_json,
)
from .words import WordSyntaxError, eval_word, parse_word, render_word

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_UNDECIDED = 0, 1, 2, 3

log = logging.getLogger("geomon")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    family: str = "ALD"
    max_addr: int = 2
    max_len: int = 6
    budget: int = 2000
    size: int = 5
    output: str = "text"
    seed: int = 0

    def __post_init__(self):
        for name in ("max_addr", "max_len", "size"):
            if getattr(self, name) < 1:
                raise UsageError(f"--{name.replace('_', '-')} must be positive")
        if self.budget < 0:
            raise UsageError("--budget must be non-negative")

    @property
    def json(self):
        return self.output == "json"

    @classmethod
    def from_args(cls, args):
        return cls(family=args.family, max_addr=args.max_addr, max_len=args.max_len,
                   budget=args.budget, size=args.size,
                   output="json" if args.json else "text", seed=args.seed)


def get_family(spec):
    if os.path.exists(spec):
        return load_family(spec)
    try:
        return builtin_family(spec)
    except KeyError:
        raise UsageError(f"unknown family {spec!r} (LD, ALD, A, or a family file)") from None


def orbit(family, t, depth):
    """Terms reachable from t by at most depth letters of either sign."""
    seen = {t}
    frontier = [t]
    for _ in range(depth):
        nxt = []
        for s in frontier:
            for ad in addresses(s):
                for r in range(len(family.laws)):
                    for sg in (1, -1):
                        s2 = apply_letter(family, Letter(r, sg, ad), s)
                        if s2 is not None and s2 not in seen:
                            seen.add(s2)
                            nxt.append(s2)
        frontier = nxt
    return seen


def _emit(cfg, text, obj):
    print(json.dumps(obj, indent=2, sort_keys=True) if cfg.json else text)


def _term(family, text):
    return parse_term(text, family.symbols)


def _letter(family, text):
    w = parse_word(family, text)
    if len(w) != 1:
        raise UsageError(f"expected one letter, got {text!r}")
    return w[0]


# -- subcommands -----------------------------------------------------------------

def cmd_parse(cfg, args):
    fam = get_family(cfg.family)
    t = _term(fam, args.term)
    _emit(cfg, render_term(t, fam.symbols),
          {"term": term_to_json(t, fam.symbols), "size": size(t),
           "addresses": [render_address(a) for a in addresses(t)]})
    return EXIT_OK


def cmd_apply(cfg, args):
    fam = get_family(cfg.family)
    t = _term(fam, args.term)
    w = parse_word(fam, args.word)
    r = apply(eval_word(fam, w), t)
    if r is None:
        _emit(cfg, "undefined", {"result": None})
        return EXIT_FAIL
    _emit(cfg, render_term(r, fam.symbols), {"result": term_to_json(r, fam.symbols)})
    return EXIT_OK


def cmd_orbit(cfg, args):
    fam = get_family(cfg.family)
    t = _term(fam, args.term)
    if args.depth < 0:
        raise UsageError("--depth must be non-negative")
    terms = sorted((render_term(s, fam.symbols) for s in orbit(fam, t, args.depth)), key=lambda x: (len(x), x))
    _emit(cfg, "\n".join(terms), {"size": len(terms), "terms": terms})
    return EXIT_OK


def cmd_op(cfg, args):
    fam = get_family(cfg.family)
    f = eval_word(fam, parse_word(fam, args.word))
    _emit(cfg, render_operator(f, fam.symbols), {"operator": operator_to_json(f, fam.symbols)})
    return EXIT_OK


def cmd_relations(cfg, args):
    fam = get_family(cfg.family)
    rels = []
    if args.kind in ("comm", "all"):
        rels += commutation_relations(fam, cfg.max_addr)
    if args.kind in ("heir", "all"):
        rels += inheritance_relations(fam, cfg.max_addr, args.max_delta)
    lines = [f"{r.kind}: {render_word(fam, r.left)} = {render_word(fam, r.right)}" for r in rels]
    _emit(cfg, "\n".join(lines + [f"{len(rels)} relations"]),
          {"count": len(rels), "relations": [r.to_json(fam) for r in rels]})
    return EXIT_OK


def cmd_critical(cfg, args):
    fam = get_family(cfg.family)
    a, b = _letter(fam, args.first), _letter(fam, args.second)
    res = critical_search(fam, a, b, cfg.max_len, args.search_addr)
    if res.pair is None:
        _emit(cfg, f"no completion within length {cfg.max_len} ({res.explored} seeds)",
              {"completion": None, "explored": res.explored})
        return EXIT_UNDECIDED
    u, v = res.pair
    _emit(cfg, f"{render_word(fam, u)} = {render_word(fam, v)}",
          {"completion": [render_word(fam, u), render_word(fam, v)], "explored": res.explored})
    return EXIT_OK


def cmd_present(cfg, args):
    fam = get_family(cfg.family)
    if args.report:
        rows = local_confluence_report(fam, cfg.max_addr, cfg.max_len)
        out = [{"first": render_word(fam, (r.first,)), "second": render_word(fam, (r.second,)),
                "status": r.status,
                "completion": None if r.completion is None
                else [render_word(fam, r.completion[0]), render_word(fam, r.completion[1])]}
               for r in rows]
        counts = {}
        for r in rows:
            counts[r.status] = counts.get(r.status, 0) + 1
        _emit(cfg, "\n".join(f"{o['first']} {o['second']}: {o['status']}" for o in out)
              + f"\n{counts}", {"counts": counts, "pairs": out})
        return EXIT_OK if "uncovered" not in counts else EXIT_UNDECIDED
    pres = assemble_presentation(fam, cfg.max_addr, args.max_delta, cfg.max_len)
    kinds = {k: len(pres.by_kind(k)) for k in ("Commutation", "Inheritance", "Critical")}
    _emit(cfg, "\n".join(f"{k}: {n}" for k, n in kinds.items()),
          {**pres.to_json(), "counts": kinds})
    return EXIT_OK


def cmd_crm(cfg, args):
    fam = get_family(cfg.family)
    f, g = parse_word(fam, args.f), parse_word(fam, args.g)
    m = common_right_multiple(fam, f, g, cfg.max_len)
    if m is None:
        _emit(cfg, "none found", {"multiple": None})
        return EXIT_UNDECIDED
    _emit(cfg, f"u = {render_word(fam, m.u)}; v = {render_word(fam, m.v)}; strong = {m.strong}",
          {"u": render_word(fam, m.u), "v": render_word(fam, m.v), "strong": m.strong})
    return EXIT_OK


def cmd_expand(cfg, args):
    fam = get_family(cfg.family)
    t = _term(fam, args.term)
    terms = sorted(render_term(s, fam.symbols) for s in expansions(fam, t, args.degree))
    _emit(cfg, "\n".join(terms), {"terms": terms})
    return EXIT_OK


def cmd_dexp(cfg, args):
    fam = get_family(cfg.family)
    t = _term(fam, args.term)
    res = common_expansion_check(fam, t, args.bound)
    if res.term is None:
        _emit(cfg, f"no common expansion within {args.bound} steps", {"term": None})
        return EXIT_UNDECIDED
    _emit(cfg, f"{render_term(res.term, fam.symbols)} (depth {res.depth})",
          {"term": render_term(res.term, fam.symbols), "depth": res.depth,
           "degree1": [render_term(s, fam.symbols) for s in res.degree1]})
    return EXIT_OK


def _group(name):
    if name == "bdot":
        return BDot()
    if name == "ald":
        return geo_ald().pres
    raise UsageError(f"unknown group {name!r}")


def cmd_geq(cfg, args):
    pres = _group(args.group)
    u, v = pres.parse_word(args.u), pres.parse_word(args.v)
    res = words_equal(pres, u, v, budget=cfg.budget)
    if not res:
        _emit(cfg, f"Undecided after {res.expanded} expansions",
              {"verdict": res.verdict, "expanded": res.expanded})
        return EXIT_UNDECIDED
    text = f"Equal ({len(res.certificate)} steps, {res.strategy})"
    if args.show:
        text += "\n" + "\n".join(pres.render_word(w) for w in res.certificate.words(pres))
    _emit(cfg, text, {"verdict": res.verdict, "strategy": res.strategy,
                      "certificate": res.certificate.to_json(pres)})
    return EXIT_OK


def cmd_bdot(cfg, args):
    B = BDot()
    if args.x is not None:
        triples = [tuple(B.parse_word(w) for w in (args.x, args.y or "1", args.z or "1"))]
    else:
        words = suite.bdot_short_words()
        rng = random.Random(cfg.seed)
        triples = [tuple(rng.choice(words) for _ in range(3)) for _ in range(args.samples)]
        log.info("sampled %d triples with seed %d", args.samples, cfg.seed)
    rows = []
    undecided = 0
    for x, y, z in triples:
        for name, law in suite.BDOT_LAWS:
            u, v = law(x, y, z)
            res = words_equal(B, u, v, budget=cfg.budget)
            undecided += not res
            rows.append({"law": name, "x": B.render_word(x), "y": B.render_word(y),
                         "z": B.render_word(z), "verdict": res.verdict})
    text = "\n".join(f"{r['verdict']}: {r['law']} at x={r['x']}, y={r['y']}, z={r['z']}" for r in rows)
    _emit(cfg, text, {"seed": cfg.seed, "results": rows})
    return EXIT_UNDECIDED if undecided else EXIT_OK


def cmd_blueprint(cfg, args):
    t = parse_term(args.term)
    res = blueprint(t)
    n0, p = res.absorption
    _emit(cfg, f"word: {render_word(ALD, res.word)}\noperator: {render_operator(res.operator, ALD.symbols)}"
               f"\nabsorption: n0={n0} p={p}",
          {"word": render_word(ALD, res.word), "operator": operator_to_json(res.operator, ALD.symbols),
           "absorption": {"n0": n0, "p": p}})
    return EXIT_OK


def cmd_verify_blueprint(cfg, args):
    n = bad = undecided = 0
    for t in suite.terms_upto_nodes(cfg.size):
        for x in suite._applicable(t, 3 if args.level == "op" else None):
            n += 1
            if args.level == "op":
                bad += not verify_blueprint_operator(t, (x,))
            else:
                g = verify_blueprint_group(t, x, budget=cfg.budget)
                if g.certificate is None:
                    undecided += 1
                elif not g.matches_case_analysis:
                    bad += 1
    _emit(cfg, f"{n} pairs, {bad} failures, {undecided} undecided",
          {"pairs": n, "failures": bad, "undecided": undecided})
    if bad:
        return EXIT_FAIL
    return EXIT_UNDECIDED if undecided else EXIT_OK


def cmd_suite(cfg, args):
    if cfg.family != "ALD":
        raise UsageError("the acceptance suite is stated for ALD")
    scfg = suite.SuiteConfig(seed=cfg.seed, absorption_nodes=cfg.size + 1,
                             operator_nodes=cfg.size + 1, group_nodes=cfg.size)
    only = set(args.only) if args.only else None
    results = suite.run_suite(scfg, only)
    if cfg.json:
        print(json.dumps([r.to_json() for r in results], indent=2, default=str))
    else:
        for r in results:
            print(r.line())
    if all(r.ok for r in results):
        return EXIT_OK
    if any(r.undecided for r in results):
        return EXIT_UNDECIDED
    return EXIT_FAIL


def cmd_family(cfg, args):
    fam = get_family(cfg.family)
    _emit(cfg, "\n".join(f"{law.tag}: {render_term(law.lhs, fam.symbols)} -> {render_term(law.rhs, fam.symbols)}"
                         for law in fam.laws), family_to_json(fam))
    return EXIT_OK


# -- argument parsing --------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", default="ALD", help="LD, ALD, A, or a family JSON file")
    common.add_argument("--max-addr", type=int, default=2)
    common.add_argument("--max-len", type=int, default=6)
    common.add_argument("--budget", type=int, default=2000)
    common.add_argument("--size", type=int, default=5, help="term bound in inner nodes")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--json", action="store_true")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="geomon", description="Geometry monoids of algebraic laws.")
    sub = p.add_subparsers(dest="cmd", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(fn=fn)
        return sp

    add("parse", cmd_parse, "parse and render a term").add_argument("term")
    sp = add("apply", cmd_apply, "apply a word to a term")
    sp.add_argument("--word", required=True)
    sp.add_argument("--term", required=True)
    sp = add("orbit", cmd_orbit, "terms reachable by letters of both signs")
    sp.add_argument("--term", required=True)
    sp.add_argument("--depth", type=int, default=2)
    add("op", cmd_op, "seed of the operator of a word").add_argument("--word", required=True)
    sp = add("relations", cmd_relations, "commutation and inheritance relations")
    sp.add_argument("--kind", choices=("comm", "heir", "all"), default="all")
    sp.add_argument("--max-delta", type=int, default=1)
    sp = add("critical", cmd_critical, "complete a critical letter pair")
    sp.add_argument("first")
    sp.add_argument("second")
    sp.add_argument("--search-addr", type=int, default=None,
                    help="address bound of the search alphabet")
    sp = add("present", cmd_present, "assemble a presentation")
    sp.add_argument("--max-delta", type=int, default=1)
    sp.add_argument("--report", action="store_true", help="per-pair local confluence report")
    sp = add("crm", cmd_crm, "common right multiple of two words")
    sp.add_argument("--f", required=True)
    sp.add_argument("--g", required=True)
    sp = add("expand", cmd_expand, "expansions of a term")
    sp.add_argument("--term", required=True)
    sp.add_argument("--degree", type=int, default=1)
    sp = add("dexp", cmd_dexp, "common expansion of the degree-1 expansions")
    sp.add_argument("--term", required=True)
    sp.add_argument("--bound", type=int, default=6)
    sp = add("geq", cmd_geq, "word equality in B• or the geometry group of ALD")
    sp.add_argument("--group", choices=("bdot", "ald"), default="ald")
    sp.add_argument("--u", required=True)
    sp.add_argument("--v", required=True)
    sp.add_argument("--show", action="store_true", help="print the certificate words")
    sp = add("bdot", cmd_bdot, "check the ALD laws in B•")
    sp.add_argument("--x")
    sp.add_argument("--y")
    sp.add_argument("--z")
    sp.add_argument("--samples", type=int, default=20)
    add("blueprint", cmd_blueprint, "blueprint word of a term").add_argument("term")
    sp = add("verify-blueprint", cmd_verify_blueprint, "check the blueprint over a corpus")
    sp.add_argument("--level", choices=("op", "group"), default="op")
    sp = add("suite", cmd_suite, "run the acceptance suite")
    sp.add_argument("--only", type=int, nargs="*")
    add("family", cmd_family, "show a law family")
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = RunConfig.from_args(args)
        return args.fn(cfg, args)
    except (UsageError, TermSyntaxError, WordSyntaxError, InvalidLeaf, UndefinedAction) as exc:
        print(f"geomon {args.cmd}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (KeyError, ValueError) as exc:
        print(f"geomon {args.cmd}: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run(argv):
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
