"""Paths to, and cached loaders for, the bundled data files."""

from functools import lru_cache
from pathlib import Path

DATA_DIR = Path(__file__).resolve().parent / "data"


def data_path(name):
    return DATA_DIR / name


BUNDLED = {
    "corpus": "demo_corpus.jsonl",
    "queries": "queries.txt",
    "weights": "weights.tsv",
    "ontology": "ontology.txt",
    "tags": "tags.tsv",
    "stopwords": "stopwords.txt",
    "sentiwordnet": "sentiwordnet.tsv",
    "positive_words": "positive-words.txt",
    "negative_words": "negative-words.txt",
    "phrases_positive": "phrases-positive.txt",
    "phrases_neutral": "phrases-neutral.txt",
    "phrases_negative": "phrases-negative.txt",
    "speed_terms": "speed-terms.tsv",
    "mf_bank": "mf_bank.txt",
    "fuzzy_rules": "fuzzy_rules.txt",
    "causal_rules": "causal_rules.txt",
    "replication_rules": "replication_rules.txt",
}


@lru_cache(maxsize=None)
def ontology():
    from .ontology import load_ontology

    return load_ontology(data_path(BUNDLED["ontology"]))


@lru_cache(maxsize=None)
def lexicon():
    from .lexicon import load_sentiwordnet

    return load_sentiwordnet(data_path(BUNDLED["sentiwordnet"]))


@lru_cache(maxsize=None)
def opinion_lexicon():
    from .lexicon import load_opinion_lexicon

    return load_opinion_lexicon(data_path(BUNDLED["positive_words"]), data_path(BUNDLED["negative_words"]))


@lru_cache(maxsize=None)
def phrases():
    from .extract import load_phrase_lists

    return load_phrase_lists(
        data_path(BUNDLED["phrases_positive"]),
        data_path(BUNDLED["phrases_neutral"]),
        data_path(BUNDLED["phrases_negative"]),
    )


@lru_cache(maxsize=None)
def mf_bank():
    from .fuzzy import load_mf_bank

    return load_mf_bank(data_path(BUNDLED["mf_bank"]))


@lru_cache(maxsize=None)
def fuzzy_rules():
    from .fuzzy import load_rules

    return load_rules(data_path(BUNDLED["fuzzy_rules"]))


@lru_cache(maxsize=None)
def causal_rules():
    from .swrl import load_causal_rules

    return load_causal_rules(data_path(BUNDLED["causal_rules"]))
