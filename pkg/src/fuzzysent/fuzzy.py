"""Fuzzification, min-fitness rules, weighted aggregation and interval classification.

Rule file lines::

    rule <id>: IF <slot> IS <term> [AND <slot> IS <term> ...] THEN <term> [IP <value>]
    mu <word> <term> <degree>

A slot is either a literal opinion word (matched on surface form or stem) or
one of the generic slots ``OW`` (any opinion word), ``ADJ``, ``ADV``, ``VERB``.
Generic slots bind every matching word, so a rule with one generic slot fires
once per opinion word. ``mu`` lines pin a word's membership degree for a
term, bypassing the membership functions.

MF bank lines::

    term <name> <a> <b> <c> [shoulder-left|shoulder-right]
"""

import itertools
import math
import re
from dataclasses import dataclass, field
from decimal import ROUND_DOWN, Decimal
from typing import Optional

from . import defaults
from .errors import DegenerateMFError, ParseError
from .preprocess import ADJECTIVES, ADVERBS, VERBISH
from .stemmer import stem

TERMS = ("SN", "Neg", "Neu", "P", "SP")
# Interval representative points, used as the default IP of a rule.
REPRESENTATIVE = {"SN": 0.125, "Neg": 0.375, "Neu": 0.5, "P": 0.625, "SP": 0.875}
UNDETERMINED = "undetermined"

GENERIC_SLOTS = {
    "OW": None,
    "ADJ": ADJECTIVES,
    "ADV": ADVERBS,
    "VERB": VERBISH,
}


@dataclass(frozen=True)
class TriangularMF:
    a: float
    b: float
    c: float
    shoulder: Optional[str] = None  # "left", "right" or None

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.a, self.b, self.c)):
            raise ValueError("membership function corners must be finite")
        if not self.a <= self.b <= self.c:
            raise ValueError(f"need a <= b <= c, got {self.a}, {self.b}, {self.c}")
        if self.shoulder not in (None, "left", "right"):
            raise ValueError(f"unknown shoulder {self.shoulder!r}")


def triangular_mu(x, mf):
    if mf.a == mf.b == mf.c:
        raise DegenerateMFError(f"membership function collapses to the point {mf.a}")
    if not math.isfinite(x):
        raise ValueError(f"x must be finite, got {x}")
    if x == mf.b:
        return 1.0
    if x < mf.b:
        if mf.shoulder == "left" or (mf.a == mf.b):
            return 1.0 if mf.shoulder == "left" else 0.0
        if x <= mf.a:
            return 0.0
        return min(1.0, max(0.0, (x - mf.a) / (mf.b - mf.a)))
    if mf.shoulder == "right" or mf.b == mf.c:
        return 1.0 if mf.shoulder == "right" else 0.0
    if x >= mf.c:
        return 0.0
    return min(1.0, max(0.0, (mf.c - x) / (mf.c - mf.b)))


def load_mf_bank(path):
    """Ordered ``{term: TriangularMF}``."""
    bank = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if parts[0] != "term" or len(parts) not in (5, 6):
                raise ParseError("expected: term <name> <a> <b> <c> [shoulder-left|shoulder-right]", path=path, line=lineno)
            try:
                a, b, c = (float(v) for v in parts[2:5])
            except ValueError:
                raise ParseError("corners must be numbers", path=path, line=lineno) from None
            shoulder = None
            if len(parts) == 6:
                if parts[5] not in ("shoulder-left", "shoulder-right"):
                    raise ParseError(f"unknown flag {parts[5]!r}", path=path, line=lineno)
                shoulder = parts[5].split("-")[1]
            if parts[1] in bank:
                raise ParseError(f"term {parts[1]} defined twice", path=path, line=lineno)
            try:
                bank[parts[1]] = TriangularMF(a, b, c, shoulder)
            except ValueError as exc:
                raise ParseError(str(exc), path=path, line=lineno) from None
    if not bank:
        raise ParseError("membership function bank is empty", path=path)
    return bank


def fuzzify(scalar, bank=None, overrides=None):
    """Degree of ``scalar`` in every term of the bank; ``overrides`` replace single terms."""
    if not (math.isfinite(scalar) and 0.0 <= scalar <= 1.0):
        raise ValueError(f"scalar must lie in [0, 1], got {scalar}")
    bank = defaults.mf_bank() if bank is None else bank
    degrees = {term: triangular_mu(scalar, mf) for term, mf in bank.items()}
    if overrides:
        degrees.update(overrides)
    return degrees


def rule_fitness(degrees):
    degrees = list(degrees)
    if not degrees:
        raise ValueError("fitness needs at least one antecedent degree")
    return min(degrees)


def outputs(fired):
    """Per-rule outputs ``fitness * ip``."""
    return [f * ip for f, ip in fired]


def aggregate(fired):
    """Sum of ``output * fitness`` over the sum of fitness; None when nothing fired."""
    fired = list(fired)
    for f, ip in fired:
        if not (math.isfinite(f) and math.isfinite(ip)):
            raise ValueError("fitness and ip must be finite")
        if f < 0:
            raise ValueError(f"fitness must be non-negative, got {f}")
    total = math.fsum(f for f, _ in fired)
    if total == 0:
        return None
    return math.fsum(o * f for o, (f, _) in zip(outputs(fired), fired)) / total


def classify_interval(value):
    """SN [0, .25), Neg [.25, .5), Neu {.5}, P (.5, .75], SP (.75, 1]."""
    if value is None:
        return UNDETERMINED
    if not (math.isfinite(value) and 0.0 <= value <= 1.0):
        raise ValueError(f"polarity value {value} outside [0, 1]")
    if value < 0.25:
        return "SN"
    if value < 0.5:
        return "Neg"
    if value == 0.5:
        return "Neu"
    if value <= 0.75:
        return "P"
    return "SP"


def display(value, decimals=2):
    """Fixed-decimal rendering that drops extra digits (0.1459 -> "0.14")."""
    if value is None:
        return UNDETERMINED
    q = Decimal(1).scaleb(-decimals)
    return str(Decimal(repr(value)).quantize(q, rounding=ROUND_DOWN))


# -- rules ----------------------------------------------------------------------


@dataclass(frozen=True)
class FuzzyRule:
    id: str
    antecedent: tuple  # ((slot, term), ...)
    consequent_term: str
    ip: Optional[float] = None

    def __post_init__(self):
        if not self.antecedent:
            raise ValueError(f"rule {self.id}: antecedent is empty")
        object.__setattr__(self, "antecedent", tuple(tuple(a) for a in self.antecedent))
        if self.ip is None:
            if self.consequent_term not in REPRESENTATIVE:
                raise ValueError(f"rule {self.id}: no default IP for term {self.consequent_term!r}")
            object.__setattr__(self, "ip", REPRESENTATIVE[self.consequent_term])
        if not (math.isfinite(self.ip) and 0.0 <= self.ip <= 1.0):
            raise ValueError(f"rule {self.id}: ip {self.ip} outside [0, 1]")


@dataclass(frozen=True)
class RuleSet:
    rules: tuple = ()
    overrides: dict = field(default_factory=dict)  # word -> {term: degree}

    def __iter__(self):
        return iter(self.rules)

    def __len__(self):
        return len(self.rules)


_RULE_RE = re.compile(r"^rule\s+(?P<id>[^\s:]+)\s*:\s*IF\s+(?P<ante>.+?)\s+THEN\s+(?P<term>\S+)(?:\s+IP\s+(?P<ip>\S+))?$")
_ATOM_RE = re.compile(r"^(?P<slot>\S+)\s+IS\s+(?P<term>\S+)$")


def parse_rule(line):
    m = _RULE_RE.match(line.strip())
    if not m:
        raise ParseError("expected: rule <id>: IF <slot> IS <term> [AND ...] THEN <term> [IP <value>]")
    antecedent = []
    for atom in m.group("ante").split(" AND "):
        am = _ATOM_RE.match(atom.strip())
        if not am:
            raise ParseError(f"bad antecedent {atom.strip()!r}")
        antecedent.append((am.group("slot"), am.group("term")))
    ip = None
    if m.group("ip") is not None:
        try:
            ip = float(m.group("ip"))
        except ValueError:
            raise ParseError(f"bad IP {m.group('ip')!r}") from None
    try:
        return FuzzyRule(m.group("id"), tuple(antecedent), m.group("term"), ip)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def load_rules(path):
    rules = []
    seen = set()
    overrides = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if line.startswith("mu "):
                parts = line.split()
                if len(parts) != 4:
                    raise ParseError("expected: mu <word> <term> <degree>", path=path, line=lineno)
                try:
                    degree = float(parts[3])
                except ValueError:
                    raise ParseError(f"bad degree {parts[3]!r}", path=path, line=lineno) from None
                if not math.isfinite(degree) or degree < 0:
                    raise ParseError("degree must be finite and non-negative", path=path, line=lineno)
                overrides.setdefault(parts[1].lower(), {})[parts[2]] = degree
                continue
            try:
                rule = parse_rule(line)
            except ParseError as exc:
                raise ParseError(str(exc), path=path, line=lineno) from None
            if rule.id in seen:
                raise ParseError(f"duplicate rule id {rule.id}", path=path, line=lineno)
            seen.add(rule.id)
            rules.append(rule)
    return RuleSet(tuple(rules), overrides)


# -- feature polarity -------------------------------------------------------------


@dataclass(frozen=True)
class PolarityResult:
    value: Optional[float]
    term: str
    trace: tuple = ()  # ((rule id, fitness, output), ...)

    def __post_init__(self):
        if self.term != classify_interval(self.value):
            raise ValueError(f"term {self.term} does not match value {self.value}")

    @property
    def determined(self):
        return self.value is not None


def polarity_result(value, trace=()):
    return PolarityResult(value, classify_interval(value), tuple(trace))


def _effective_value(word):
    return 1.0 - word.value if word.negated else word.value


def _slot_candidates(slot, words):
    if slot in GENERIC_SLOTS:
        allowed = GENERIC_SLOTS[slot]
        return [w for w in words if allowed is None or w.pos in allowed]
    key = slot.lower()
    skey = stem(key)
    return [w for w in words if w.word == key or w.stem == skey]


def fire_rules(opinion_words, rules, bank=None):
    """Every rule binding with positive fitness as ``(rule, fitness)`` in rule order."""
    bank = defaults.mf_bank() if bank is None else bank
    overrides = getattr(rules, "overrides", {}) or {}
    degrees = {}

    def degree(word, term):
        pinned = overrides.get(word.word)
        if pinned is None:
            pinned = overrides.get(word.stem)
        if pinned is not None and term in pinned:
            return pinned[term]
        key = id(word)
        if key not in degrees:
            degrees[key] = fuzzify(_effective_value(word), bank)
        return degrees[key].get(term, 0.0)

    fired = []
    for rule in rules:
        choices = [_slot_candidates(slot, opinion_words) for slot, _ in rule.antecedent]
        if any(not c for c in choices):
            continue
        for binding in itertools.product(*choices):
            f = rule_fitness(degree(w, term) for w, (_, term) in zip(binding, rule.antecedent))
            if f > 0:
                fired.append((rule, f))
    return fired


def feature_polarity(pair, rules=None, bank=None):
    """Fuzzify the pair's opinion words, fire the rules, aggregate and classify.

    Negated words enter fuzzification as ``1 - value``. When no rule fires
    the result is undetermined.
    """
    rules = defaults.fuzzy_rules() if rules is None else rules
    fired = fire_rules(pair.opinion_words, rules, bank)
    pairs = [(f, r.ip) for r, f in fired]
    value = aggregate(pairs)
    trace = [(r.id, f, f * r.ip) for r, f in fired]
    return polarity_result(value, trace)


def pool(pairs):
    """Concatenate the opinion words of several pairs for one feature."""
    from .extract import FeatureOpinion

    pairs = list(pairs)
    if not pairs:
        raise ValueError("pool needs at least one pair")
    feature = pairs[0].feature
    if any(p.feature.name != feature.name for p in pairs):
        raise ValueError("pool expects pairs for a single feature")
    words = tuple(w for p in pairs for w in p.opinion_words)
    cues = tuple(c for p in pairs for c in p.cues)
    return FeatureOpinion(feature, None, words, cues)
