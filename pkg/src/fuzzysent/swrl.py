"""Forward chaining over feature-polarity facts, cause reports and city polarity.

Causal rule lines::

    rule <id>: IF <atom> [AND <atom> ...] THEN <atom> [AND <atom> ...]

An atom is ``Predicate(arg, arg)`` for the fact predicates below, or a
one-argument class atom ``Concept(?x)`` that binds ``?x`` to the concept's
name. Arguments starting with ``?`` are variables; anything else is a
constant.
"""

import math
import re
from collections import Counter
from dataclasses import dataclass

from .errors import ParseError, RuleConflictError
from .fuzzy import TERMS, UNDETERMINED, polarity_result

PREDICATES = ("OpinionOf", "PolarityIs", "Speed", "TrafficIsJammedBy")
# One object per subject for these; a second value is a conflict.
FUNCTIONAL = frozenset({"OpinionOf", "PolarityIs", "Speed"})
SPEED_TERMS = ("VerySlow", "Slow", "Normal", "Fast")
# Spellings that appear in published rule tables.
TERM_ALIASES = {"N": "Neg", "fast": "Fast", "slow": "Slow", "normal": "Normal", "veryslow": "VerySlow"}
CAUSE_OF_JAM = "cause-of-jam"


@dataclass(frozen=True, order=True)
class Fact:
    predicate: str
    subject: str
    object: str

    def __post_init__(self):
        if self.predicate not in PREDICATES:
            raise ValueError(f"unknown predicate {self.predicate!r}")
        obj = TERM_ALIASES.get(self.object, self.object)
        object.__setattr__(self, "object", obj)
        if self.predicate in ("OpinionOf", "PolarityIs") and obj not in TERMS:
            raise ValueError(f"{self.predicate} needs a polarity term, got {obj!r}")
        if self.predicate == "Speed" and obj not in SPEED_TERMS:
            raise ValueError(f"Speed needs a speed term, got {obj!r}")

    def __str__(self):
        return f"{self.predicate}({self.subject}, {self.object})"


@dataclass(frozen=True)
class Atom:
    name: str
    args: tuple

    @property
    def is_class(self):
        return self.name not in PREDICATES

    def variables(self):
        return {a for a in self.args if a.startswith("?")}

    def __str__(self):
        return f"{self.name}({', '.join(self.args)})"


@dataclass(frozen=True)
class CausalRule:
    id: str
    antecedent: tuple
    consequent: tuple

    def __post_init__(self):
        if not self.antecedent or not self.consequent:
            raise ValueError(f"rule {self.id}: antecedent and consequent must be non-empty")
        bound = set().union(*(a.variables() for a in self.antecedent))
        for atom in self.consequent:
            if atom.is_class:
                raise ValueError(f"rule {self.id}: class atom {atom} cannot be concluded")
            free = atom.variables() - bound
            if free:
                raise ValueError(f"rule {self.id}: unbound variable(s) {', '.join(sorted(free))} in {atom}")


_ATOM_RE = re.compile(r"\s*([A-Za-z_][\w-]*)\s*\(([^()]*)\)\s*")
_CRULE_RE = re.compile(r"^rule\s+(?P<id>[^\s:]+)\s*:\s*IF\s+(?P<ante>.+?)\s+THEN\s+(?P<cons>.+)$")


def parse_atom(text):
    m = _ATOM_RE.fullmatch(text)
    if not m:
        raise ParseError(f"bad atom {text.strip()!r}")
    name = m.group(1)
    args = tuple(a.strip() for a in m.group(2).split(","))
    if any(not a for a in args):
        raise ParseError(f"empty argument in {text.strip()!r}")
    if name in PREDICATES:
        if len(args) != 2:
            raise ParseError(f"{name} takes two arguments")
        args = (args[0], TERM_ALIASES.get(args[1], args[1]))
    elif len(args) != 1 or not args[0].startswith("?"):
        raise ParseError(f"class atom {name} takes one variable")
    return Atom(name, args)


def parse_causal_rule(line):
    m = _CRULE_RE.match(line.strip())
    if not m:
        raise ParseError("expected: rule <id>: IF <atom> [AND ...] THEN <atom> [AND ...]")
    ante = tuple(parse_atom(p) for p in m.group("ante").split(" AND "))
    cons = tuple(parse_atom(p) for p in m.group("cons").split(" AND "))
    try:
        return CausalRule(m.group("id"), ante, cons)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def load_causal_rules(path):
    rules = []
    seen = set()
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                rule = parse_causal_rule(line)
            except ParseError as exc:
                raise ParseError(str(exc), path=path, line=lineno) from None
            if rule.id in seen:
                raise ParseError(f"duplicate rule id {rule.id}", path=path, line=lineno)
            seen.add(rule.id)
            rules.append(rule)
    return tuple(rules)


# -- forward chaining ---------------------------------------------------------------


def _unify(arg, value, env):
    if not arg.startswith("?"):
        return env if arg == value else None
    bound = env.get(arg)
    if bound is None:
        return {**env, arg: value}
    return env if bound == value else None


def _matches(atoms, index, env):
    if not atoms:
        yield env
        return
    atom, rest = atoms[0], atoms[1:]
    if atom.is_class:
        e = _unify(atom.args[0], atom.name, env)
        if e is not None:
            yield from _matches(rest, index, e)
        return
    for fact in index.get(atom.name, ()):
        e = _unify(atom.args[0], fact.subject, env)
        if e is not None:
            e = _unify(atom.args[1], fact.object, e)
        if e is not None:
            yield from _matches(rest, index, e)


def _instantiate(atom, env):
    subj, obj = (env.get(a, a) for a in atom.args)
    return Fact(atom.name, subj, obj)


def _index(facts):
    index = {}
    for f in sorted(facts):
        index.setdefault(f.predicate, []).append(f)
    return index


def check_consistent(facts):
    seen = {}
    for f in sorted(facts):
        if f.predicate in FUNCTIONAL:
            key = (f.predicate, f.subject)
            if key in seen and seen[key] != f.object:
                raise ValueError(f"inconsistent input: {f.predicate}({f.subject}) is both {seen[key]} and {f.object}")
            seen[key] = f.object


def forward_chain(facts, rules):
    """Forward-chain to a fixpoint; returns ``(all facts, rounds that added facts)``.

    Each round fires every rule against the same snapshot, so the result
    does not depend on rule order. A derived fact that contradicts an input
    fact is dropped; two rules deriving different values for one functional
    fact raise RuleConflictError.
    """
    facts = frozenset(facts)
    check_consistent(facts)
    rules = sorted(rules, key=lambda r: r.id)
    inputs = {(f.predicate, f.subject): f.object for f in facts if f.predicate in FUNCTIONAL}
    owner = {}  # (predicate, subject) -> (object, rule id) for derived functional facts
    known = set(facts)
    rounds = 0
    while True:
        index = _index(known)
        candidates = set()
        for rule in rules:
            for env in _matches(rule.antecedent, index, {}):
                for atom in rule.consequent:
                    candidates.add((_instantiate(atom, env), rule.id))
        added = False
        for fact, rid in sorted(candidates):
            key = (fact.predicate, fact.subject)
            if fact.predicate in FUNCTIONAL:
                if key in inputs:
                    continue
                if key in owner and owner[key][0] != fact.object:
                    prev_obj, prev_rule = owner[key]
                    (ra, va), (rb, vb) = sorted([(prev_rule, prev_obj), (rid, fact.object)])
                    raise RuleConflictError(ra, rb, fact.predicate, fact.subject, (va, vb))
                owner.setdefault(key, (fact.object, rid))
            if fact not in known:
                known.add(fact)
                added = True
        if not added:
            return frozenset(known), rounds
        rounds += 1


def apply_rules(facts, rules):
    """Input plus derived facts at the fixpoint."""
    return forward_chain(facts, rules)[0]


def derive(facts, rules):
    """Only the facts the rules add."""
    facts = frozenset(facts)
    return apply_rules(facts, rules) - facts


# -- reports ----------------------------------------------------------------------


def term_of(name, facts):
    """PolarityIs if present, else OpinionOf, else None."""
    found = {f.predicate: f.object for f in facts if f.subject == name and f.predicate in ("PolarityIs", "OpinionOf")}
    return found.get("PolarityIs", found.get("OpinionOf"))


def cause_report(feature, facts, ontology):
    """Negative subfeatures plus recorded jam causes for a negatively rated feature."""
    name = getattr(feature, "name", feature)
    if term_of(name, facts) not in ("SN", "Neg"):
        return []
    report = []
    for child in ontology.children(name):
        t = term_of(child.name, facts)
        if t in ("SN", "Neg"):
            report.append((child.name, t))
    jams = sorted(f.object for f in facts if f.predicate == "TrafficIsJammedBy" and f.subject == name)
    report.extend((cause, CAUSE_OF_JAM) for cause in jams)
    return report


def city_polarity(feature_results, sentence_counts=None):
    """Sentence-weighted mean of the determined feature values, classified.

    Intervals are convex, so when every feature shares a term the mean keeps it.
    """
    if not feature_results:
        raise ValueError("city polarity needs at least one feature result")
    counts = sentence_counts or {}
    items = [(name, r.value, counts.get(name, 1)) for name, r in sorted(feature_results.items()) if r.value is not None]
    if not items:
        return polarity_result(None)
    total = math.fsum(w for _, _, w in items)
    if total <= 0:
        items = [(n, v, 1) for n, v, _ in items]
        total = float(len(items))
    value = math.fsum(v * w for _, v, w in items) / total
    value = min(max(value, 0.0), 1.0)
    return polarity_result(value, [(n, w, v) for n, v, w in items])


# -- speed facts -----------------------------------------------------------------------


def load_speed_terms(path):
    table = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 2 or parts[1].strip() not in SPEED_TERMS:
                raise ParseError("expected word<TAB>speed term", path=path, line=lineno)
            table[parts[0].strip().lower()] = parts[1].strip()
    return table


def speed_term(words, table):
    """Most frequent speed term among ``words``; ties go to the slower term."""
    hits = Counter(table[w.lower()] for w in words if w.lower() in table)
    if not hits:
        return None
    return min(hits, key=lambda t: (-hits[t], SPEED_TERMS.index(t)))


def facts_from_results(results, speed=None, subject="Vehicle"):
    """OpinionOf facts for every determined feature, plus an optional Speed fact."""
    facts = {Fact("OpinionOf", name, r.term) for name, r in results.items() if r.term != UNDETERMINED}
    if speed is not None:
        facts.add(Fact("Speed", subject, speed))
    return frozenset(facts)

