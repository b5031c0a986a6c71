"""SentiWordNet-format scores and positive/negative opinion word lists."""

import math
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum

from .errors import ParseError, ScoreSumError
from .preprocess import ADJECTIVES, ADVERBS, NOUNISH, POS, VERBISH, load_wordlist
from .stemmer import stem

# SentiWordNet part-of-speech letters; satellite adjectives ("s") fold into "a".
NOUN, VERB, ADJ, ADV = "n", "v", "a", "r"


def coarse_pos(pos):
    """Map a tagger POS (or an SWN letter) to an SWN letter; None for closed classes."""
    if isinstance(pos, str) and not isinstance(pos, POS):
        if pos in ("a", "s"):
            return ADJ
        if pos in (NOUN, VERB, ADV):
            return pos
        try:
            pos = POS(pos)
        except ValueError:
            return None
    if pos in ADJECTIVES:
        return ADJ
    if pos in ADVERBS:
        return ADV
    if pos in VERBISH:
        return VERB
    if pos in NOUNISH:
        return NOUN
    return None


@dataclass(frozen=True)
class LexiconEntry:
    word: str
    pos: str
    pos_score: float
    obj_score: float
    neg_score: float

    def __post_init__(self):
        total = self.pos_score + self.obj_score + self.neg_score
        if abs(total - 1.0) > 1e-9:
            raise ScoreSumError(f"{self.word}#{self.pos}: scores sum to {total}, not 1")


@dataclass
class Lexicon:
    entries: dict = field(default_factory=dict)  # (word, pos letter) -> LexiconEntry

    def __len__(self):
        return len(self.entries)

    def get(self, word, pos):
        return self.entries.get((word, coarse_pos(pos)))

    def lookup(self, word, pos):
        """Best entry for a surface word: exact POS first, then the mean over its other POS."""
        for cand in dict.fromkeys((word.lower(), stem(word))):
            entry = self.entries.get((cand, coarse_pos(pos)))
            if entry is not None:
                return entry
        for cand in dict.fromkeys((word.lower(), stem(word))):
            others = [e for (w, _), e in self.entries.items() if w == cand]
            if others:
                p = math.fsum(e.pos_score for e in others) / len(others)
                n = math.fsum(e.neg_score for e in others) / len(others)
                return LexiconEntry(cand, coarse_pos(pos) or "", p, 1.0 - p - n, n)
        return None


def load_sentiwordnet(path):
    """Read a SentiWordNet 3.0 TSV; synsets sharing (word, pos) are averaged."""
    scores = defaultdict(list)
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            cols = line.rstrip("\n").split("\t")
            if len(cols) < 5:
                raise ParseError("expected POS, ID, PosScore, NegScore, SynsetTerms columns", path=path, line=lineno)
            pos = coarse_pos(cols[0].strip())
            if pos is None:
                raise ParseError(f"unknown POS {cols[0]!r}", path=path, line=lineno)
            try:
                p, n = float(cols[2]), float(cols[3])
            except ValueError:
                raise ParseError("PosScore/NegScore must be numbers", path=path, line=lineno) from None
            if p < 0 or n < 0 or p + n > 1.0 + 1e-9:
                raise ScoreSumError(f"{path}: line {lineno}: PosScore + NegScore = {p + n} outside [0, 1]")
            for term in cols[4].split():
                word = term.rsplit("#", 1)[0].lower()
                if word:
                    scores[(word, pos)].append((p, n))
    entries = {}
    for (word, pos), pairs in scores.items():
        p = math.fsum(x for x, _ in pairs) / len(pairs)
        n = math.fsum(y for _, y in pairs) / len(pairs)
        entries[(word, pos)] = LexiconEntry(word, pos, p, 1.0 - p - n, n)
    return Lexicon(entries)


def scalar_from_scores(pos_score, neg_score):
    """Collapse a (positive, negative) pair to one value in [0, 1].

    Positive-leaning words keep their positive score; negative-leaning ones
    land in [0, 0.25] so that stronger negativity means a lower value.
    """
    if pos_score >= neg_score:
        return pos_score
    return min(max(0.25 * (1.0 - neg_score), 0.0), 0.25)


def opinion_value(word, pos, lex):
    entry = lex.lookup(word, pos)
    if entry is None:
        return 0.0
    return scalar_from_scores(entry.pos_score, entry.neg_score)


class Orientation(str, Enum):
    Positive = "Positive"
    Negative = "Negative"
    Unknown = "Unknown"

    def __str__(self):
        return self.value

    def flipped(self):
        if self is Orientation.Positive:
            return Orientation.Negative
        if self is Orientation.Negative:
            return Orientation.Positive
        return self


@dataclass(frozen=True)
class OpinionLexicon:
    positive_words: frozenset = frozenset()
    negative_words: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "positive_words", frozenset(stem(w) for w in self.positive_words))
        object.__setattr__(self, "negative_words", frozenset(stem(w) for w in self.negative_words))
        both = self.positive_words & self.negative_words
        if both:
            raise ValueError(f"words listed as both positive and negative: {sorted(both)}")

    def __contains__(self, word):
        s = stem(word)
        return s in self.positive_words or s in self.negative_words


def load_opinion_lexicon(positive_path, negative_path):
    # Hu & Liu lists use ";" for comments
    def read(path):
        return frozenset(w for w in load_wordlist(path) if not w.startswith(";"))

    return OpinionLexicon(read(positive_path), read(negative_path))


def orientation(word, ol):
    s = stem(word)
    if s in ol.positive_words:
        return Orientation.Positive
    if s in ol.negative_words:
        return Orientation.Negative
    return Orientation.Unknown


def is_sentiment_bearing(word, pos, lex, ol):
    """An opinion-lexicon word, or one with non-zero SentiWordNet polarity."""
    if word in ol:
        return True
    entry = lex.lookup(word, pos)
    return entry is not None and (entry.pos_score > 0 or entry.neg_score > 0)
