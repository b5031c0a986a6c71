"""Offline review/tweet corpora and boolean keyword retrieval.

Query grammar (``AND`` binds tighter than ``OR``; a comma is a low-precedence OR)::

    query   := or_expr
    or_expr := and_expr (("OR" | ",") and_expr)*
    and_expr:= primary ("AND" primary)*
    primary := "(" or_expr ")" | keyword | geo
    keyword := WORD+            # adjacent words form a phrase
    geo     := ("radius" | "centroid") ":" VALUE   # parsed, then ignored
"""

import json
import re
from dataclasses import dataclass, field
from typing import Optional

from .errors import DuplicateIdError, ParseError

SOURCES = ("tweet", "review", "news")
TERMS = ("SN", "Neg", "Neu", "P", "SP")


@dataclass(frozen=True)
class Document:
    id: str
    text: str
    source: str
    city: str
    gold_labels: Optional[dict] = None

    def __post_init__(self):
        if not self.id:
            raise ValueError("document id must be non-empty")
        if not self.text:
            raise ValueError(f"document {self.id}: text must be non-empty")
        if self.source not in SOURCES:
            raise ValueError(f"document {self.id}: unknown source {self.source!r}")


@dataclass(frozen=True)
class Corpus:
    documents: tuple = ()

    def __len__(self):
        return len(self.documents)

    def __iter__(self):
        return iter(self.documents)

    @property
    def cities(self):
        return sorted({d.city for d in self.documents})

    def for_city(self, city):
        return Corpus(tuple(d for d in self.documents if d.city == city))


def _document_from_record(rec, path, lineno):
    if not isinstance(rec, dict):
        raise ParseError("expected a JSON object", path=path, line=lineno)
    for key in ("id", "text", "source", "city"):
        if key not in rec:
            raise ParseError(f"missing required key {key!r}", path=path, line=lineno)
        if not isinstance(rec[key], str):
            raise ParseError(f"key {key!r} must be a string", path=path, line=lineno)
    gold = rec.get("gold_labels")
    if gold is not None:
        if not isinstance(gold, dict) or any(v not in TERMS for v in gold.values()):
            raise ParseError(
                f"gold_labels must map feature names to one of {', '.join(TERMS)}",
                path=path,
                line=lineno,
            )
        gold = dict(gold)
    try:
        return Document(rec["id"], rec["text"], rec["source"], rec["city"], gold)
    except ValueError as exc:
        raise ParseError(str(exc), path=path, line=lineno) from None


def load_corpus(path):
    """Read a JSON-lines corpus; blank lines are skipped, ids must be unique."""
    docs = []
    seen = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(f"invalid JSON: {exc.msg}", path=path, line=lineno) from None
            doc = _document_from_record(rec, path, lineno)
            if doc.id in seen:
                raise DuplicateIdError(
                    f"{path}: line {lineno}: duplicate id {doc.id!r} (first seen on line {seen[doc.id]})"
                )
            seen[doc.id] = lineno
            docs.append(doc)
    return Corpus(tuple(docs))


# -- query AST -------------------------------------------------------------------


@dataclass(frozen=True)
class Keyword:
    text: str

    def __post_init__(self):
        norm = " ".join(self.text.lower().split())
        if not norm:
            raise ValueError("keyword must be non-empty")
        object.__setattr__(self, "text", norm)

    @property
    def words(self):
        return tuple(self.text.split())


@dataclass(frozen=True)
class And:
    children: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        if len(self.children) < 2:
            raise ValueError("And needs at least two children")


@dataclass(frozen=True)
class Or:
    children: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        if len(self.children) < 2:
            raise ValueError("Or needs at least two children")


_QTOKEN_RE = re.compile(r"\s*(?:(?P<lp>\()|(?P<rp>\))|(?P<comma>,)|(?P<geo>(?:radius|centroid):[^\s()]+)|(?P<word>[^\s(),]+))")


def _lex_query(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _QTOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            break
        kind = m.lastgroup
        value = m.group(kind)
        start = m.start(kind)
        if kind == "word" and value in ("AND", "OR"):
            kind = value
        out.append((kind, value, start))
        pos = m.end()
    return out


class _QueryParser:
    def __init__(self, text):
        self.text = text
        self.tokens = _lex_query(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def where(self):
        return self.tokens[self.i][2] if self.i < len(self.tokens) else len(self.text)

    def error(self, message):
        raise ParseError(message, position=self.where())

    def parse(self):
        if not self.tokens:
            raise ParseError("empty query", position=0)
        node = self.or_expr()
        if self.peek() is not None:
            self.error(f"unexpected {self.tokens[self.i][1]!r}")
        if node is None:
            raise ParseError("query has no keywords", position=0)
        return node

    def or_expr(self):
        parts = [self.and_expr()]
        while self.peek() in ("OR", "comma"):
            self.i += 1
            parts.append(self.and_expr())
        return _combine(Or, parts)

    def and_expr(self):
        parts = [self.primary()]
        while self.peek() == "AND":
            self.i += 1
            parts.append(self.primary())
        return _combine(And, parts)

    def primary(self):
        kind = self.peek()
        if kind == "lp":
            self.i += 1
            node = self.or_expr()
            if self.peek() != "rp":
                self.error("expected ')'")
            self.i += 1
            return node
        if kind == "geo":
            self.i += 1
            return None
        if kind == "word":
            words = []
            while self.peek() == "word":
                words.append(self.tokens[self.i][1])
                self.i += 1
            return Keyword(" ".join(words))
        if kind is None:
            self.error("unexpected end of input")
        self.error(f"unexpected {self.tokens[self.i][1]!r}")


def _combine(cls, parts):
    parts = [p for p in parts if p is not None]
    if not parts:
        return None
    if len(parts) == 1:
        return parts[0]
    return cls(tuple(parts))


def parse_query(text):
    """Parse a boolean keyword query into a Keyword/And/Or tree."""
    return _QueryParser(text).parse()


def format_query(node):
    """Print an AST so that ``parse_query`` reads it back unchanged."""
    if isinstance(node, Keyword):
        return node.text
    if isinstance(node, And):
        return " AND ".join(
            f"({format_query(c)})" if not isinstance(c, Keyword) else format_query(c) for c in node.children
        )
    return " OR ".join(
        f"({format_query(c)})" if isinstance(c, Or) else format_query(c) for c in node.children
    )


_WORD_RE = re.compile(r"[a-z0-9]+(?:['’_-][a-z0-9]+)*")


def text_tokens(text):
    return tuple(_WORD_RE.findall(text.lower()))


def _contains(tokens, words):
    n = len(words)
    return any(tokens[i : i + n] == words for i in range(len(tokens) - n + 1))


def match_query(q, doc):
    """Evaluate ``q`` against the raw (pre-stemming) tokens of ``doc``."""
    tokens = doc if isinstance(doc, tuple) else text_tokens(doc.text)
    return _match(q, tokens)


def _match(q, tokens):
    if isinstance(q, Keyword):
        return _contains(tokens, q.words)
    if isinstance(q, And):
        return all(_match(c, tokens) for c in q.children)
    return any(_match(c, tokens) for c in q.children)


def load_queries(path):
    queries = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                queries.append(parse_query(line))
            except ParseError as exc:
                raise ParseError(str(exc), path=path, line=lineno) from None
    return queries


def retrieve(corpus, queries):
    """Documents matching at least one query, in corpus order."""
    if not queries:
        return Corpus(())
    hits = []
    for doc in corpus:
        tokens = text_tokens(doc.text)
        if any(_match(q, tokens) for q in queries):
            hits.append(doc)
    return Corpus(tuple(hits))
