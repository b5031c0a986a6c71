"""Linear keyword-weight relevance filter and n-gram windows."""

import math
from dataclasses import dataclass, field

from .corpus import Document, text_tokens
from .errors import ParseError
from .stemmer import stem

BIAS_KEY = "__bias__"
# Fires when the document's own city name occurs in its text.
CITY_KEY = "__city__"


@dataclass(frozen=True)
class WeightVector:
    entries: dict = field(default_factory=dict)
    bias: float = 0.0

    def __post_init__(self):
        if not self.entries:
            raise ValueError("weight vector needs at least one entry")
        for k, v in self.entries.items():
            if not math.isfinite(v):
                raise ValueError(f"weight for {k!r} is not finite")
        if not math.isfinite(self.bias):
            raise ValueError("bias is not finite")

    def scaled(self, alpha):
        return WeightVector({k: alpha * v for k, v in self.entries.items()}, alpha * self.bias)


def load_weights(path):
    entries = {}
    bias = 0.0
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise ParseError("expected stem<TAB>weight", path=path, line=lineno)
            try:
                value = float(parts[1])
            except ValueError:
                raise ParseError(f"bad weight {parts[1]!r}", path=path, line=lineno) from None
            key = parts[0].strip()
            if key == BIAS_KEY:
                bias = value
            elif key == CITY_KEY:
                entries[CITY_KEY] = value
            else:
                entries[stem(key)] = value
    try:
        return WeightVector(entries, bias)
    except ValueError as exc:
        raise ParseError(str(exc), path=path) from None


def document_stems(doc):
    return frozenset(stem(t) for t in text_tokens(doc.text))


def _city_present(doc):
    words = text_tokens(doc.city)
    if not words:
        return False
    tokens = text_tokens(doc.text)
    n = len(words)
    return any(tokens[i : i + n] == words for i in range(len(tokens) - n + 1))


def score(doc, w, stems=None):
    """bias + sum of weight x indicator(stem present in the document)."""
    if stems is None:
        stems = document_stems(doc) if isinstance(doc, Document) else frozenset(doc)
    terms = [w.bias]
    for key, weight in w.entries.items():
        if key == CITY_KEY:
            present = isinstance(doc, Document) and _city_present(doc)
        else:
            present = key in stems
        if present:
            terms.append(weight)
    return math.fsum(terms)


def is_relevant(doc, w, stems=None):
    return score(doc, w, stems) > 0


def ngrams(tokens, n):
    """All contiguous windows of length ``n``, in order."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    tokens = list(tokens)
    return [tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1)]
