"""Oriented laws, law families, and the built-in LD / ALD / A families."""

import json
from dataclasses import dataclass, field

from .terms import (
    ALD_SYMBOLS, STAR_ONLY, SymbolRegistry, is_injective, parse_term,
    render_term, variable_occurrences, variables,
)


class UnbalancedLaw(ValueError):
    pass


@dataclass(frozen=True)
class OrientedLaw:
    name: str
    lhs: tuple
    rhs: tuple
    letter: str = ""  # one-character tag used in word tokens

    @property
    def tag(self):
        return self.letter or self.name[0].upper()


@dataclass(frozen=True)
class LawFamily:
    name: str
    symbols: SymbolRegistry
    laws: tuple
    notes: tuple = field(default=())

    def rule_index(self, tag):
        for i, law in enumerate(self.laws):
            if law.tag == tag:
                return i
        raise KeyError(f"family {self.name} has no rule {tag!r}")

    @property
    def single_symbol(self):
        return len(self.symbols) == 1


def classify(law):
    lv, rv = variables(law.lhs), variables(law.rhs)
    balanced = lv == rv
    linear = balanced and is_injective(law.lhs) and is_injective(law.rhs)
    return {"balanced": balanced, "linear": linear, "semi_linear": is_injective(law.lhs)}


def is_involutive_shape(law):
    """True when the law is its own mirror up to renaming, e.g. commutativity."""
    from .unify import canonical_rename
    return canonical_rename(law.lhs, law.rhs) == canonical_rename(law.rhs, law.lhs)


@dataclass(frozen=True)
class OccurrenceProfile:
    lhs: dict
    rhs: dict


def occurrence_profile(law):
    if not classify(law)["balanced"]:
        raise UnbalancedLaw(law.name)
    vs = sorted(variables(law.lhs))
    return OccurrenceProfile(
        lhs={v: sorted(variable_occurrences(law.lhs, v)) for v in vs},
        rhs={v: sorted(variable_occurrences(law.rhs, v)) for v in vs},
    )


# x1*(x2 #1 x3) -> (x1*x2) #1 (x1*x3): the merged distributivity rule
SIGMA = OrientedLaw("Sigma", (0, 1, (-1, 2, 3)), (-1, (0, 1, 2), (0, 1, 3)), "S")
# x1*(x2*x3) -> (x1 o x2)*x3
ALD_A = OrientedLaw("A", (0, 1, (0, 2, 3)), (0, (1, 1, 2), 3), "A")
LD_RULE = OrientedLaw("Sigma", (0, 1, (0, 2, 3)), (0, (0, 1, 2), (0, 1, 3)), "S")
ASSOC = OrientedLaw("A", (0, 1, (0, 2, 3)), (0, (0, 1, 2), 3), "A")


def builtin_family(name):
    if name == "ALD":
        return LawFamily("ALD", ALD_SYMBOLS, (SIGMA, ALD_A))
    if name == "LD":
        return LawFamily("LD", STAR_ONLY, (LD_RULE,))
    if name == "A":
        return LawFamily("A", STAR_ONLY, (ASSOC,))
    raise KeyError(f"unknown family {name!r}")


def load_family(path_or_obj, name=None):
    """Family file: {"symbols": [...], "laws": [{"name", "lhs", "rhs"}]}."""
    if isinstance(path_or_obj, dict):
        obj = path_or_obj
    else:
        with open(path_or_obj) as fh:
            obj = json.load(fh)
    reg = SymbolRegistry(tuple(obj["symbols"]))
    laws, notes, tags = [], [], set()
    for entry in obj["laws"]:
        lhs = parse_term(entry["lhs"], reg, allow_symvars=True)
        rhs = parse_term(entry["rhs"], reg, allow_symvars=True)
        tag = entry.get("letter") or entry["name"][0].upper()
        if tag in tags:
            raise ValueError(f"duplicate rule letter {tag!r}; give an explicit 'letter'")
        tags.add(tag)
        law = OrientedLaw(entry["name"], lhs, rhs, tag)
        if is_involutive_shape(law):
            notes.append(f"{law.name}: involutive law, confluence relations may not suit it")
        laws.append(law)
    return LawFamily(name or obj.get("name", "custom"), reg, tuple(laws), tuple(notes))


def family_to_json(family):
    reg = family.symbols
    return {
        "name": family.name,
        "symbols": list(reg.tokens),
        "laws": [
            {"name": law.name, "letter": law.tag,
             "lhs": render_term(law.lhs, reg), "rhs": render_term(law.rhs, reg)}
            for law in family.laws
        ],
    }
