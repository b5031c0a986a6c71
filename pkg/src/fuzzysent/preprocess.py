"""Text cleaning, sentence/clause splitting, POS tagging.

Pipeline order: clean -> sentence split -> tokenize -> tag -> clause split,
with every token keeping both its surface form and its stem.
"""

import re
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import NamedTuple

from .defaults import data_path
from .errors import ParseError
from .stemmer import stem, strip_degree


class POS(str, Enum):
    Noun = "Noun"
    ProperNoun = "ProperNoun"
    Pronoun = "Pronoun"
    Verb = "Verb"
    VerbPast = "VerbPast"
    Adjective = "Adjective"
    AdjComparative = "AdjComparative"
    AdjSuperlative = "AdjSuperlative"
    Adverb = "Adverb"
    AdvSuperlative = "AdvSuperlative"
    Conjunction = "Conjunction"
    Other = "Other"

    def __str__(self):
        return self.value


NOUNISH = frozenset({POS.Noun, POS.ProperNoun, POS.Pronoun})
VERBISH = frozenset({POS.Verb, POS.VerbPast})
ADJECTIVES = frozenset({POS.Adjective, POS.AdjComparative, POS.AdjSuperlative})
ADVERBS = frozenset({POS.Adverb, POS.AdvSuperlative})
OPINION_POS = ADJECTIVES | ADVERBS | VERBISH

SPLIT_CONJUNCTIONS = frozenset({"and", "but"})
ARTICLES = ("a", "an", "the")


@dataclass(frozen=True)
class Token:
    surface: str
    stem: str
    pos: POS

    def __post_init__(self):
        if not self.surface:
            raise ValueError("token surface must be non-empty")
        if not self.stem or self.stem != self.stem.lower():
            raise ValueError(f"token stem must be non-empty lowercase, got {self.stem!r}")

    @property
    def lower(self):
        return self.surface.lower()


def is_complete(tokens):
    """True when ``tokens`` hold a noun-class and a verb-class token."""
    return any(t.pos in NOUNISH for t in tokens) and any(t.pos in VERBISH for t in tokens)


@dataclass(frozen=True)
class Clause:
    tokens: tuple
    source_doc: str
    index: int

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))
        if not is_complete(self.tokens):
            raise ValueError(
                f"clause {self.source_doc}#{self.index} lacks a noun or verb: {self.text!r}"
            )

    @property
    def text(self):
        return " ".join(t.surface for t in self.tokens)

    @property
    def stems(self):
        return [t.stem for t in self.tokens]


# -- word lists ---------------------------------------------------------------


def load_wordlist(path):
    """One entry per line; ``#`` comments and blank lines skipped; lowercased."""
    with open(path, encoding="utf-8") as fh:
        return frozenset(
            line.strip().lower() for line in fh if line.strip() and not line.lstrip().startswith("#")
        )


def load_tag_lexicon(path):
    table = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise ParseError("expected word<TAB>tag", path=path, line=lineno)
            word, tag = parts[0].strip().lower(), parts[1].strip()
            try:
                table[word] = POS(tag)
            except ValueError:
                raise ParseError(f"unknown tag {tag!r}", path=path, line=lineno) from None
    return table


@lru_cache(maxsize=None)
def default_tag_lexicon():
    return load_tag_lexicon(data_path("tags.tsv"))


@lru_cache(maxsize=None)
def default_stopwords():
    return load_wordlist(data_path("stopwords.txt"))


# -- cleaning ------------------------------------------------------------------

_MONTHS = (
    "january|february|march|april|may|june|july|august|september|october|november|december"
    "|jan|feb|mar|apr|jun|jul|aug|sep|sept|oct|nov|dec"
)
_DATE_RES = (
    re.compile(r"(?<![\w/])\d{1,2}/\d{1,2}/\d{4}(?![\w/])"),
    re.compile(r"(?<![\w-])\d{4}-\d{2}-\d{2}(?![\w-])"),
    re.compile(
        rf"(?<![\w-])(?:{_MONTHS})\.?\s+\d{{1,2}}(?:st|nd|rd|th)?(?:,?\s+\d{{4}})?(?![\w-])",
        re.IGNORECASE,
    ),
)
_ARTICLE_RE = re.compile(r"(?<![\w'’-])(?:a|an|the)(?![\w'’-])", re.IGNORECASE)


def _protected_spans(text, phrases):
    spans = []
    for phrase in phrases:
        words = phrase.replace("_", " ").split()
        if not words:
            continue
        pat = r"(?<![\w'’-])" + r"\s+".join(re.escape(w) for w in words) + r"(?![\w'’-])"
        spans.extend(m.span() for m in re.finditer(pat, text, re.IGNORECASE))
    return spans


def clean(text, protect=()):
    """Strip ``#``/``@``, dates and articles; collapse whitespace.

    ``protect`` lists multi-word phrases (e.g. ``"a lot"``) whose articles
    must survive so later phrase matching can see them.
    """
    text = text.replace("#", "").replace("@", "")
    prev = None
    while prev != text:
        prev = text
        for rx in _DATE_RES:
            text = rx.sub(" ", text)
    spans = _protected_spans(text, protect) if protect else []

    def drop(m):
        start, end = m.span()
        if any(s <= start and end <= e for s, e in spans):
            return m.group(0)
        return " "

    text = _ARTICLE_RE.sub(drop, text)
    return " ".join(text.split())


# -- splitting and tokenizing --------------------------------------------------

_SENTENCE_RE = re.compile(r"[^.!?]+(?:[.!?]+|$)")
_TOKEN_RE = re.compile(r"[A-Za-z0-9]+(?:['’_-][A-Za-z0-9]+)*")
_CONTRACTIONS = {"can't": ("can", "not"), "won't": ("will", "not"), "cannot": ("can", "not")}


def split_sentences(text):
    """Split on ``.``, ``!`` and ``?``; a decimal point inside a number does not split."""
    protected = re.sub(r"(?<=\d)\.(?=\d)", "\x00", text)
    out = []
    for m in _SENTENCE_RE.finditer(protected):
        s = m.group(0).replace("\x00", ".").strip()
        if s.strip(".!? "):
            out.append(s)
    return out


def tokenize(sentence):
    tokens = []
    for raw in _TOKEN_RE.findall(sentence):
        low = raw.lower().replace("’", "'")
        if low in _CONTRACTIONS:
            tokens.extend(_CONTRACTIONS[low])
        elif low.endswith("n't") and len(low) > 3:
            tokens.extend((raw[:-3], "not"))
        else:
            tokens.append(raw)
    return tokens


def _guess_tag(word, lexicon):
    low = word.lower()
    if low in lexicon:
        return lexicon[low]
    if any(ch.isdigit() for ch in low):
        return POS.Other
    if word[0].isupper():
        return POS.ProperNoun
    base = strip_degree(low)
    if base != low and lexicon.get(base) == POS.Adjective:
        return POS.AdjSuperlative if low.endswith("est") else POS.AdjComparative
    if low.endswith("ed") and len(low) > 3:
        return POS.VerbPast
    if low.endswith("est") and len(low) > 5:
        return POS.AdjSuperlative
    if low.endswith("ly") and len(low) > 3:
        return POS.Adverb
    return POS.Noun


def pos_tag(tokens, lexicon=None):
    """Tag each token: lexicon first, then suffix heuristics, default Noun."""
    lexicon = default_tag_lexicon() if lexicon is None else lexicon
    return [Token(w, stem(w), _guess_tag(w, lexicon)) for w in tokens]


def split_clauses(sentence, source_doc="", start_index=0):
    """Split a tagged sentence into complete clauses at ``and``/``but``.

    A split happens only when the material on both sides is complete on its
    own; otherwise the fragment stays joined to its neighbour. A sentence
    that never becomes complete yields no clauses.
    """
    segments = [[]]
    conjs = []
    for tok in sentence:
        if tok.pos == POS.Conjunction and tok.lower in SPLIT_CONJUNCTIONS:
            segments.append([])
            conjs.append(tok)
        else:
            segments[-1].append(tok)

    groups = []
    current = segments[0]
    for conj, seg in zip(conjs, segments[1:]):
        if is_complete(current) and is_complete(seg):
            groups.append(current)
            current = seg
        else:
            current = current + [conj] + seg
    groups.append(current)

    return [
        Clause(tuple(g), source_doc, start_index + i)
        for i, g in enumerate(g for g in groups if is_complete(g))
    ]


class PreprocessedDoc(NamedTuple):
    doc_id: str
    clauses: list
    stems: frozenset
    incomplete_sentences: int


def preprocess_text(text, doc_id="", lexicon=None, protect=()):
    """Run the full chain over one document's text."""
    cleaned = clean(text, protect=protect)
    clauses = []
    stems = set()
    incomplete = 0
    for sentence in split_sentences(cleaned):
        tagged = pos_tag(tokenize(sentence), lexicon)
        stems.update(t.stem for t in tagged)
        found = split_clauses(tagged, doc_id, len(clauses))
        if not found:
            incomplete += 1
        clauses.extend(found)
    return PreprocessedDoc(doc_id, clauses, frozenset(stems), incomplete)
