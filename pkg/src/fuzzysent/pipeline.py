"""End-to-end run: retrieve, preprocess, filter, extract, score, fuzzy, rules, emit."""

import json
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

from . import corpus as corpus_mod
from .defaults import BUNDLED, data_path
from .errors import ConfigError, FuzzySentError
from .extract import attach_phrases, extract_pairs, load_phrase_lists
from .fuzzy import feature_polarity, load_mf_bank, load_rules, polarity_result, pool
from .lexicon import load_opinion_lexicon, load_sentiwordnet
from .ontology import load_ontology
from .preprocess import load_tag_lexicon, load_wordlist, preprocess_text
from .relevance import document_stems, is_relevant, load_weights, ngrams
from .swrl import apply_rules, cause_report, city_polarity, facts_from_results, load_causal_rules, load_speed_terms, speed_term

log = logging.getLogger(__name__)


@dataclass
class RunConfig:
    corpus: Path = None
    queries: Path = None
    weights: Path = None
    ontology: Path = None
    tags: Path = None
    stopwords: Path = None
    sentiwordnet: Path = None
    positive_words: Path = None
    negative_words: Path = None
    phrases_positive: Path = None
    phrases_neutral: Path = None
    phrases_negative: Path = None
    speed_terms: Path = None
    mf_bank: Path = None
    fuzzy_rules: Path = None
    causal_rules: Path = None
    replication_rules: Path = None
    out_dir: Path = Path("out")
    city: Optional[str] = None
    decimals: int = 2

    def __post_init__(self):
        for key, name in BUNDLED.items():
            if getattr(self, key) is None:
                setattr(self, key, data_path(name))
            else:
                setattr(self, key, Path(getattr(self, key)))
        self.out_dir = Path(self.out_dir)

    def check(self):
        for key in BUNDLED:
            p = getattr(self, key)
            if not p.is_file():
                raise ConfigError(f"{key}: file not found: {p}")
        if not isinstance(self.decimals, int) or self.decimals < 0:
            raise ConfigError(f"decimals must be a non-negative integer, got {self.decimals!r}")


def load_config(path):
    """``key = value`` lines; relative paths resolve against the config file's directory."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    known = {f.name for f in fields(RunConfig)}
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}: line {lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in known:
            raise ConfigError(f"{path}: line {lineno}: unknown key {key!r}")
        if key == "decimals":
            try:
                values[key] = int(value)
            except ValueError:
                raise ConfigError(f"{path}: line {lineno}: decimals must be an integer") from None
        elif key == "city":
            values[key] = value
        else:
            p = Path(value)
            values[key] = p if p.is_absolute() else path.parent / p
    return RunConfig(**values)


@dataclass
class Resources:
    ontology: object
    lexicon: object
    opinion_lexicon: object
    tags: dict
    stopwords: frozenset
    phrases: dict
    weights: object
    queries: list
    mf_bank: dict
    rules: object
    causal_rules: tuple
    speed_terms: dict

    @property
    def protected_phrases(self):
        return tuple(sorted(k.replace("_", " ") for k in self.phrases))


def _stage(name, fn, *args):
    try:
        return fn(*args)
    except FuzzySentError as exc:
        raise ConfigError(f"[{name}] {exc}") from None
    except OSError as exc:
        raise ConfigError(f"[{name}] {exc.filename}: {exc.strerror}") from None


def load_resources(config):
    config.check()
    return Resources(
        ontology=_stage("ontology", load_ontology, config.ontology),
        lexicon=_stage("lexicon", load_sentiwordnet, config.sentiwordnet),
        opinion_lexicon=_stage("lexicon", load_opinion_lexicon, config.positive_words, config.negative_words),
        tags=_stage("preprocess", load_tag_lexicon, config.tags),
        stopwords=_stage("preprocess", load_wordlist, config.stopwords),
        phrases=_stage(
            "extract", load_phrase_lists, config.phrases_positive, config.phrases_neutral, config.phrases_negative
        ),
        weights=_stage("relevance", load_weights, config.weights),
        queries=_stage("retrieve", corpus_mod.load_queries, config.queries),
        mf_bank=_stage("fuzzy", load_mf_bank, config.mf_bank),
        rules=_stage("fuzzy", load_rules, config.fuzzy_rules),
        causal_rules=_stage("swrl", load_causal_rules, config.causal_rules),
        speed_terms=_stage("swrl", load_speed_terms, config.speed_terms),
    )


# -- per document -----------------------------------------------------------------


@dataclass(frozen=True)
class DocResult:
    doc: object
    relevant: bool
    pairs: tuple = ()  # FeatureOpinion records in clause order


def analyze_document(doc, res):
    if not is_relevant(doc, res.weights, document_stems(doc)):
        return DocResult(doc, False)
    pre = preprocess_text(doc.text, doc.id, res.tags, protect=res.protected_phrases)
    pairs = []
    for clause in pre.clauses:
        found = extract_pairs(clause, res.ontology, res.lexicon, res.opinion_lexicon, res.stopwords)
        if not found:
            continue
        words = [t.lower for t in clause.tokens]
        grams = {n: ngrams(words, n) for n in (2, 3)}
        pairs.extend(attach_phrases(found, grams, res.phrases, res.lexicon))
    return DocResult(doc, True, tuple(pairs))


def analyze_documents(docs, res, jobs=1):
    """Per-document results sorted by document id, whatever the parallelism."""
    docs = list(docs)
    if jobs > 1 and len(docs) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool_:
            results = list(pool_.map(lambda d: analyze_document(d, res), docs))
    else:
        results = [analyze_document(d, res) for d in docs]
    return sorted(results, key=lambda r: r.doc.id)


# -- polarity map -------------------------------------------------------------------


@dataclass(frozen=True)
class FeatureEntry:
    name: str
    value: Optional[float]
    term: str
    sentence_count: int
    causes: tuple = ()  # ((name, term), ...)


@dataclass(frozen=True)
class PolarityMap:
    city: str
    features: tuple = ()
    city_polarity: tuple = (None, "undetermined")
    derived_facts: tuple = ()
    generated_at: str = ""

    def to_dict(self):
        return {
            "city": self.city,
            "features": [
                {
                    "name": f.name,
                    "value": f.value,
                    "term": f.term,
                    "sentence_count": f.sentence_count,
                    "causes": [{"name": n, "term": t} for n, t in f.causes],
                }
                for f in self.features
            ],
            "city_polarity": {"value": self.city_polarity[0], "term": self.city_polarity[1]},
            "derived_facts": list(self.derived_facts),
            "generated_at": self.generated_at,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_dict(cls, d):
        feats = tuple(
            FeatureEntry(
                f["name"],
                f["value"],
                f["term"],
                f["sentence_count"],
                tuple((c["name"], c["term"]) for c in f["causes"]),
            )
            for f in d["features"]
        )
        cp = d["city_polarity"]
        return cls(d["city"], feats, (cp["value"], cp["term"]), tuple(d["derived_facts"]), d["generated_at"])


def read_polarity_map(path):
    with open(path, encoding="utf-8") as fh:
        return PolarityMap.from_dict(json.load(fh))


def feature_results(pairs, res):
    """Pool pairs per feature (first-seen order) and score each feature."""
    groups = {}
    for p in pairs:
        groups.setdefault(p.feature.name, []).append(p)
    results = {}
    counts = {}
    for name, group in groups.items():
        results[name] = feature_polarity(pool(group), res.rules, res.mf_bank)
        counts[name] = len({(p.clause.source_doc, p.clause.index) for p in group if p.clause is not None})
    return groups, results, counts


def build_map(city, doc_results, res, generated_at):
    pairs = [p for r in doc_results if r.doc.city == city for p in r.pairs]
    groups, results, counts = feature_results(pairs, res)
    speed = None
    if "Vehicle" in groups:
        speed = speed_term([w.word for w in pool(groups["Vehicle"]).opinion_words], res.speed_terms)
    facts = apply_rules(facts_from_results(results, speed), res.causal_rules)
    derived = tuple(sorted(str(f) for f in facts - facts_from_results(results, speed)))
    entries = []
    for name in sorted(results):
        r = results[name]
        causes = tuple(cause_report(name, facts, res.ontology))
        entries.append(FeatureEntry(name, r.value, r.term, counts[name], causes))
    cp = city_polarity(results, counts) if results else polarity_result(None)
    return PolarityMap(city, tuple(entries), (cp.value, cp.term), derived, generated_at)


def timestamp(fixed_clock=None):
    if fixed_clock:
        try:
            return datetime.fromisoformat(fixed_clock.replace("Z", "+00:00")).isoformat()
        except ValueError:
            raise ConfigError(f"--fixed-clock: not an ISO 8601 timestamp: {fixed_clock!r}") from None
    return datetime.now(timezone.utc).replace(microsecond=0).isoformat()


def load_corpus_checked(config):
    return _stage("corpus", corpus_mod.load_corpus, config.corpus)


def analyze(config, res=None, fixed_clock=None, jobs=1):
    """Return one PolarityMap per city (or just ``config.city``)."""
    res = load_resources(config) if res is None else res
    corpus = load_corpus_checked(config)
    generated_at = timestamp(fixed_clock)
    cities = [config.city] if config.city else corpus.cities
    if config.city:
        corpus = corpus.for_city(config.city)
    retrieved = corpus_mod.retrieve(corpus, res.queries)
    log.info("retrieved %d of %d documents", len(retrieved), len(corpus))
    doc_results = analyze_documents(retrieved, res, jobs)
    log.info("%d documents passed the relevance filter", sum(r.relevant for r in doc_results))
    return [build_map(city, doc_results, res, generated_at) for city in cities]


def map_filename(city):
    slug = "".join(c if c.isalnum() or c in "-_" else "_" for c in city.lower()) or "all"
    return f"polarity_map_{slug}.json"


def write_maps(maps, out_dir):
    out_dir = Path(out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ConfigError(f"cannot create output directory {out_dir}: {exc.strerror}") from None
    if not os.access(out_dir, os.W_OK):
        raise ConfigError(f"output directory is not writable: {out_dir}")
    paths = []
    for m in maps:
        p = out_dir / map_filename(m.city)
        with open(p, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(m.to_json())
        paths.append(p)
    return paths


# -- evaluation -----------------------------------------------------------------------


def predict_documents(doc_results, res):
    """``{doc id: {feature: term}}`` with each feature scored from that document alone."""
    out = {}
    for r in doc_results:
        _, results, _ = feature_results(r.pairs, res)
        out[r.doc.id] = {name: pr.term for name, pr in results.items()}
    return out


@dataclass
class EvalRun:
    gold: dict = field(default_factory=dict)
    predicted: dict = field(default_factory=dict)
    rows: list = field(default_factory=list)


def evaluate_corpus(config, res=None, jobs=1):
    from .evaluation import evaluate

    res = load_resources(config) if res is None else res
    corpus = load_corpus_checked(config)
    if config.city:
        corpus = corpus.for_city(config.city)
    labelled = [d for d in corpus if d.gold_labels is not None]
    if not labelled:
        raise ConfigError(f"[eval] missing gold labels: no document in {config.corpus} has gold_labels")
    retrieved_ids = {d.id for d in corpus_mod.retrieve(corpus_mod.Corpus(tuple(labelled)), res.queries)}
    doc_results = analyze_documents([d for d in labelled if d.id in retrieved_ids], res, jobs)
    predicted = predict_documents(doc_results, res)
    gold = {d.id: dict(d.gold_labels) for d in labelled}
    return EvalRun(gold, predicted, evaluate(gold, predicted))
