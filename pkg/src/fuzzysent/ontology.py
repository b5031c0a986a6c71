"""Fuzzy ontology: concepts, properties, fuzzy relations and fuzzy datatypes.

The on-disk format is line oriented, one directive per line::

    concept <Name> [parent <Name>] kind <CityFeature|TransportationActivity|SubFeature>
    synonym <Name> <word> [<word> ...]       # one (possibly multi-word) synonym
    property <name> [range <Datatype>]
    instance <name> of <Concept>
    datatype <Name> term <T> <lo> <hi>
    relation <subject> <predicate> <term> degree <d>

``#`` starts a comment. Forward references to parents are allowed; the
hierarchy is validated once the whole file is read.
"""

from dataclasses import dataclass, field
from typing import Optional

from .errors import (
    CycleDetectedError,
    DegreeOutOfRangeError,
    OntologyError,
    ParseError,
    UnknownConceptError,
    UnknownParentError,
    UnknownTermError,
)
from .stemmer import stem

KINDS = ("CityFeature", "TransportationActivity", "SubFeature")


@dataclass(frozen=True)
class Concept:
    name: str
    parent: Optional[str] = None
    synonyms: tuple = ()
    kind: str = "CityFeature"

    @property
    def label_stems(self):
        """Stems of the concept name itself (``Bus_station`` -> ``("bu", "station")``)."""
        return tuple(stem(w) for w in self.name.replace("_", " ").replace("-", " ").split())


@dataclass(frozen=True)
class Property:
    name: str
    range: Optional[str] = None


@dataclass(frozen=True)
class FuzzyRelation:
    subject: str
    predicate: str
    object: str
    degree: float

    def __post_init__(self):
        if not 0.0 <= self.degree <= 1.0:
            raise DegreeOutOfRangeError(f"degree {self.degree} outside [0, 1]")


@dataclass(frozen=True)
class FuzzyDatatype:
    name: str
    term_intervals: dict = field(default_factory=dict)

    def __post_init__(self):
        for term, (lo, hi) in self.term_intervals.items():
            if not (0.0 <= lo <= hi <= 1.0):
                raise OntologyError(f"datatype {self.name}: interval for {term} not within [0, 1]")


def membership(dt, term, x):
    """Crisp interval membership: 1 when ``x`` lies in the term's closed interval."""
    try:
        lo, hi = dt.term_intervals[term]
    except KeyError:
        raise UnknownTermError(f"datatype {dt.name} has no term {term!r}") from None
    return 1.0 if lo <= x <= hi else 0.0


@dataclass
class FuzzyOntology:
    concepts: dict = field(default_factory=dict)  # name -> Concept, declaration order
    properties: dict = field(default_factory=dict)
    instances: dict = field(default_factory=dict)  # instance -> concept name
    relations: list = field(default_factory=list)
    datatypes: dict = field(default_factory=dict)

    def __post_init__(self):
        self._index = None

    @property
    def values(self):
        return {r.object for r in self.relations}

    @property
    def constraints(self):
        return {p.name: p.range for p in self.properties.values() if p.range}

    def __contains__(self, name):
        return name in self.concepts

    def __getitem__(self, name):
        try:
            return self.concepts[name]
        except KeyError:
            raise UnknownConceptError(name) from None

    def children(self, name):
        return [c for c in self.concepts.values() if c.parent == name]

    def ancestors(self, name):
        out = []
        cur = self[name].parent
        while cur is not None:
            out.append(cur)
            cur = self.concepts[cur].parent
        return out

    def surface_index(self):
        """Map stem tuple -> concept name, for every label and synonym."""
        if self._index is None:
            index = {}
            for c in self.concepts.values():
                for key in (c.label_stems, *c.synonyms):
                    if key and key not in index:
                        index[key] = c.name
            self._index = index
        return self._index


# -- loading ----------------------------------------------------------------------


def _parse_float(tok, path, lineno):
    try:
        return float(tok)
    except ValueError:
        raise ParseError(f"expected a number, got {tok!r}", path=path, line=lineno) from None


def load_ontology(path):
    onto = FuzzyOntology()
    concept_lines = {}
    pending_synonyms = []
    pending_relations = []
    pending_instances = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            head = parts[0]
            if head == "concept":
                _parse_concept(parts, onto, concept_lines, path, lineno)
            elif head == "synonym":
                if len(parts) < 3:
                    raise ParseError("synonym needs a concept and at least one word", path=path, line=lineno)
                pending_synonyms.append((parts[1], tuple(stem(w) for w in parts[2:]), lineno))
            elif head == "property":
                if len(parts) == 2:
                    onto.properties[parts[1]] = Property(parts[1])
                elif len(parts) == 4 and parts[2] == "range":
                    onto.properties[parts[1]] = Property(parts[1], parts[3])
                else:
                    raise ParseError("expected: property <name> [range <Datatype>]", path=path, line=lineno)
            elif head == "instance":
                if len(parts) != 4 or parts[2] != "of":
                    raise ParseError("expected: instance <name> of <Concept>", path=path, line=lineno)
                pending_instances.append((parts[1], parts[3], lineno))
            elif head == "datatype":
                if len(parts) != 6 or parts[2] != "term":
                    raise ParseError("expected: datatype <Name> term <T> <lo> <hi>", path=path, line=lineno)
                lo = _parse_float(parts[4], path, lineno)
                hi = _parse_float(parts[5], path, lineno)
                if not (0.0 <= lo <= hi <= 1.0):
                    raise OntologyError(f"{path}: line {lineno}: interval [{lo}, {hi}] not within [0, 1]")
                dt = onto.datatypes.setdefault(parts[1], FuzzyDatatype(parts[1], {}))
                dt.term_intervals[parts[3]] = (lo, hi)
            elif head == "relation":
                if len(parts) != 6 or parts[4] != "degree":
                    raise ParseError(
                        "expected: relation <subj> <pred> <term> degree <d>", path=path, line=lineno
                    )
                d = _parse_float(parts[5], path, lineno)
                if not 0.0 <= d <= 1.0:
                    raise DegreeOutOfRangeError(f"{path}: line {lineno}: degree {d} outside [0, 1]")
                pending_relations.append((FuzzyRelation(parts[1], parts[2], parts[3], d), lineno))
            else:
                raise ParseError(f"unknown directive {head!r}", path=path, line=lineno)

    for name, c in onto.concepts.items():
        if c.parent is not None and c.parent not in onto.concepts:
            raise UnknownParentError(
                f"{path}: line {concept_lines[name]}: concept {name} has unknown parent {c.parent}"
            )
    _check_acyclic(onto, concept_lines, path)

    for name, words, lineno in pending_synonyms:
        if name not in onto.concepts:
            raise UnknownConceptError(f"{path}: line {lineno}: synonym for unknown concept {name}")
        c = onto.concepts[name]
        if words not in c.synonyms:
            onto.concepts[name] = Concept(c.name, c.parent, c.synonyms + (words,), c.kind)

    for inst, cname, lineno in pending_instances:
        if cname not in onto.concepts:
            raise UnknownConceptError(f"{path}: line {lineno}: instance of unknown concept {cname}")
        onto.instances[inst] = cname

    for rel, lineno in pending_relations:
        if rel.subject not in onto.instances and rel.subject not in onto.concepts:
            raise OntologyError(f"{path}: line {lineno}: relation subject {rel.subject} is not declared")
        prop = onto.properties.get(rel.predicate)
        if prop is None:
            raise OntologyError(f"{path}: line {lineno}: relation predicate {rel.predicate} is not declared")
        if prop.range is not None:
            dt = onto.datatypes.get(prop.range)
            if dt is None:
                raise OntologyError(f"{path}: line {lineno}: property range {prop.range} is not declared")
            if rel.object not in dt.term_intervals:
                raise UnknownTermError(f"{path}: line {lineno}: {rel.object} is not a term of {dt.name}")
        onto.relations.append(rel)
    return onto


def _parse_concept(parts, onto, concept_lines, path, lineno):
    if len(parts) < 2:
        raise ParseError("concept needs a name", path=path, line=lineno)
    name = parts[1]
    rest = parts[2:]
    parent = None
    kind = None
    while rest:
        if rest[0] == "parent" and len(rest) >= 2:
            parent, rest = rest[1], rest[2:]
        elif rest[0] == "kind" and len(rest) >= 2:
            kind, rest = rest[1], rest[2:]
        else:
            raise ParseError(f"unexpected {rest[0]!r} in concept declaration", path=path, line=lineno)
    if kind is None:
        raise ParseError("concept needs a kind", path=path, line=lineno)
    if kind not in KINDS:
        raise ParseError(f"unknown kind {kind!r}", path=path, line=lineno)
    if name in onto.concepts:
        raise OntologyError(f"{path}: line {lineno}: duplicate concept {name}")
    onto.concepts[name] = Concept(name, parent, (), kind)
    concept_lines[name] = lineno


def _check_acyclic(onto, concept_lines, path):
    state = {}
    for start in onto.concepts:
        chain = []
        cur = start
        while cur is not None and state.get(cur) != "done":
            if cur in chain:
                cycle = chain[chain.index(cur) :] + [cur]
                raise CycleDetectedError(
                    f"{path}: line {concept_lines[cur]}: hierarchy cycle {' -> '.join(cycle)}"
                )
            chain.append(cur)
            cur = onto.concepts[cur].parent
        for name in chain:
            state[name] = "done"


# -- lookup -----------------------------------------------------------------------


def find_concepts(stems, o):
    """All leftmost-longest concept matches in ``stems`` as ``(start, end, Concept)``."""
    index = o.surface_index()
    if not index:
        return []
    max_len = max(len(k) for k in index)
    # stem() is idempotent, so already-stemmed input passes through unchanged
    stems = tuple(stem(s) for s in stems)
    out = []
    i = 0
    while i < len(stems):
        for n in range(min(max_len, len(stems) - i), 0, -1):
            name = index.get(stems[i : i + n])
            if name is not None:
                out.append((i, i + n, o.concepts[name]))
                i += n
                break
        else:
            i += 1
    return out


def find_concept(noun_phrase, o):
    """Longest-match lookup of a stem sequence; the leftmost match wins."""
    found = find_concepts(noun_phrase, o)
    return found[0][2] if found else None


def subfeatures(c, o):
    name = c.name if isinstance(c, Concept) else c
    if name not in o.concepts:
        raise UnknownConceptError(name)
    return o.children(name)
