"""Pair ontology features in a clause with the clause's opinion words."""

from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional

from . import defaults
from .lexicon import Orientation, is_sentiment_bearing, opinion_value, orientation
from .ontology import Concept, find_concepts
from .preprocess import OPINION_POS, POS, default_stopwords, load_wordlist
from .stemmer import stem

NEGATORS = frozenset({"not", "never"})
PERSONAL_PRONOUNS = frozenset({"i", "me", "we", "us", "you", "he", "him", "she", "her", "they", "them"})
_NP_POS = frozenset({POS.Noun, POS.ProperNoun})


class CueKind(str, Enum):
    SuperlativeAdverbPositive = "SuperlativeAdverbPositive"
    PastTenseNegative = "PastTenseNegative"
    ComparativeAdjective = "ComparativeAdjective"
    PronounSubjective = "PronounSubjective"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class SubjectivityCue:
    kind: CueKind
    token: str
    position: int


@dataclass(frozen=True)
class OpinionWord:
    word: str
    pos: POS
    value: float
    orientation: Orientation
    position: int
    negated: bool = False

    @property
    def stem(self):
        return stem(self.word)


@dataclass(frozen=True)
class FeatureOpinion:
    feature: Concept
    clause: Optional[object]
    opinion_words: tuple = ()
    cues: tuple = ()


def load_phrase_lists(positive_path, neutral_path, negative_path):
    """Map underscore-joined phrase -> orientation (neutral phrases map to Unknown)."""
    table = {}
    for path, orient in (
        (negative_path, Orientation.Negative),
        (neutral_path, Orientation.Unknown),
        (positive_path, Orientation.Positive),
    ):
        for phrase in load_wordlist(path):
            table["_".join(phrase.split())] = orient
    return table


def _negation_parity(tokens, index):
    count = 0
    j = index - 1
    while j >= 0 and tokens[j].lower in NEGATORS:
        count += 1
        j -= 1
    return count % 2 == 1


def _noun_runs(tokens, stopwords):
    runs = []
    current = []
    for i, tok in enumerate(tokens):
        if tok.pos in _NP_POS and tok.lower not in stopwords:
            current.append(i)
        elif current:
            runs.append(current)
            current = []
    if current:
        runs.append(current)
    return runs


def matched_features(clause, ontology, stopwords=None):
    """``[(Concept, token indices)]`` for each distinct concept found in noun phrases."""
    stopwords = default_stopwords() if stopwords is None else stopwords
    tokens = clause.tokens
    found = {}
    for run in _noun_runs(tokens, stopwords):
        for start, end, concept in find_concepts([tokens[i].stem for i in run], ontology):
            span = found.setdefault(concept.name, (concept, set()))[1]
            span.update(run[start:end])
    return [(c, frozenset(idx)) for c, idx in found.values()]


def extract_pairs(clause, ontology, lexicon, opinion_lexicon=None, stopwords=None):
    """One FeatureOpinion per ontology concept named in the clause.

    Opinion words are the clause's sentiment-bearing adjectives, adverbs and
    verbs outside every matched concept span. A clause naming no concept
    yields ``[]``.
    """
    opinion_lexicon = defaults.opinion_lexicon() if opinion_lexicon is None else opinion_lexicon
    stopwords = default_stopwords() if stopwords is None else stopwords
    features = matched_features(clause, ontology, stopwords)
    if not features:
        return []
    used = frozenset().union(*(idx for _, idx in features))
    tokens = clause.tokens
    words = []
    for i, tok in enumerate(tokens):
        if i in used or tok.pos not in OPINION_POS:
            continue
        if tok.lower in stopwords or tok.lower in NEGATORS:
            continue
        if not is_sentiment_bearing(tok.surface, tok.pos, lexicon, opinion_lexicon):
            continue
        negated = _negation_parity(tokens, i)
        orient = orientation(tok.surface, opinion_lexicon)
        words.append(
            OpinionWord(
                tok.lower,
                tok.pos,
                opinion_value(tok.surface, tok.pos, lexicon),
                orient.flipped() if negated else orient,
                i,
                negated,
            )
        )
    cues = tuple(detect_cues(clause))
    return [FeatureOpinion(concept, clause, tuple(words), cues) for concept, _ in features]


def detect_cues(clause, negative_words=None):
    """Subjectivity cues, one per triggering token, in token order."""
    if negative_words is None:
        negative_words = defaults.opinion_lexicon().negative_words
    cues = []
    for i, tok in enumerate(clause.tokens):
        kind = None
        if tok.pos == POS.AdvSuperlative:
            kind = CueKind.SuperlativeAdverbPositive
        elif tok.pos == POS.VerbPast and (tok.stem in negative_words or stem(tok.lower) in negative_words):
            kind = CueKind.PastTenseNegative
        elif tok.pos == POS.AdjComparative:
            kind = CueKind.ComparativeAdjective
        elif tok.pos == POS.Pronoun and tok.lower in PERSONAL_PRONOUNS:
            kind = CueKind.PronounSubjective
        if kind is not None:
            cues.append(SubjectivityCue(kind, tok.surface, i))
    return cues


def phrase_hits(ngrams, phrases):
    """Choose non-overlapping phrase windows, longest n first, then left to right.

    ``ngrams`` maps n -> list of n-tuples (window i starts at token i).
    Returns ``[(start, end, key)]`` sorted by start.
    """
    chosen = []
    taken = set()
    for n in sorted(ngrams, reverse=True):
        for start, gram in enumerate(ngrams[n]):
            key = "_".join(w.lower() for w in gram)
            if key not in phrases:
                continue
            span = range(start, start + n)
            if taken.intersection(span):
                continue
            taken.update(span)
            chosen.append((start, start + n, key))
    return sorted(chosen)


def attach_phrases(pairs, ngrams, phrases=None, lexicon=None):
    """Merge multi-word opinion phrases (``a lot`` -> ``a_lot``) into each pair."""
    if not pairs:
        return pairs
    phrases = defaults.phrases() if phrases is None else phrases
    lexicon = defaults.lexicon() if lexicon is None else lexicon
    hits = phrase_hits(ngrams, phrases)
    if not hits:
        return pairs
    out = []
    for pair in pairs:
        tokens = pair.clause.tokens if pair.clause is not None else ()
        covered = set()
        merged = []
        for start, end, key in hits:
            covered.update(range(start, end))
            head = tokens[end - 1].pos if end - 1 < len(tokens) else POS.Other
            negated = _negation_parity(tokens, start) if tokens else False
            orient = phrases[key]
            merged.append(
                OpinionWord(
                    key,
                    head,
                    opinion_value(key, head, lexicon),
                    orient.flipped() if negated else orient,
                    start,
                    negated,
                )
            )
        kept = [w for w in pair.opinion_words if w.position not in covered]
        words = tuple(sorted(kept + merged, key=lambda w: w.position))
        out.append(replace(pair, opinion_words=words))
    return out
