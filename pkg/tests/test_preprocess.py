import random

import pytest

from fuzzysent.preprocess import (
    POS,
    Clause,
    Token,
    clean,
    is_complete,
    pos_tag,
    preprocess_text,
    split_clauses,
    split_sentences,
    tokenize,
)


def tagged(text):
    return pos_tag(tokenize(text))


def test_clean_strips_symbols_dates_and_articles():
    out = clean("#Traffic on the road @mmda 12/03/2017 is bad")
    assert out == "Traffic on road mmda is bad"


def test_clean_keeps_protected_phrases():
    assert clean("New-York has a lot of facilities", protect=("a lot",)) == "New-York has a lot of facilities"
    assert clean("New-York has a lot of facilities") == "New-York has lot of facilities"


def test_clean_is_idempotent():
    rng = random.Random(11)
    pieces = ["#road", "@user", "the", "a", "an", "park", "2017-03-12", "March 3, 2017", "is", "busy", "  ", "!"]
    for _ in range(500):
        text = " ".join(rng.choice(pieces) for _ in range(rng.randint(0, 12)))
        once = clean(text)
        assert clean(once) == once


def test_split_sentences_keeps_decimals():
    assert split_sentences("Speed was 2.5 km. Road is busy!") == ["Speed was 2.5 km.", "Road is busy!"]


def test_tokenize_splits_contractions():
    assert tokenize("Traffic can't move") == ["Traffic", "can", "not", "move"]


def test_tagger_basics():
    tags = {t.surface: t.pos for t in tagged("Road Quezon is very busy")}
    assert tags["Road"] == POS.Noun
    assert tags["Quezon"] == POS.ProperNoun
    assert tags["is"] == POS.Verb
    assert tags["very"] == POS.Adverb
    assert tags["busy"] == POS.Adjective
    assert {t.surface: t.pos for t in tagged("3 killed")}["killed"] == POS.VerbPast
    assert {t.surface: t.pos for t in tagged("fastest route")}["fastest"] == POS.AdvSuperlative


def test_completeness_needs_noun_and_verb():
    assert is_complete(tagged("park is clean"))
    assert not is_complete(tagged("very clean"))
    with pytest.raises(ValueError):
        Clause(tuple(tagged("very clean")), "d", 0)


def test_clause_split_on_conjunction():
    clauses = split_clauses(tagged("Park is very clean and location is good"))
    assert [c.text for c in clauses] == ["Park is very clean", "location is good"]
    assert [c.index for c in clauses] == [0, 1]


def test_incomplete_fragment_stays_joined():
    clauses = split_clauses(tagged("New-York has lot of facilities but crowded"))
    assert [c.text for c in clauses] == ["New-York has lot of facilities but crowded"]


def test_sentence_without_verb_is_dropped():
    doc = preprocess_text("Nice view. Park is clean.", "d1")
    assert [c.text for c in doc.clauses] == ["Park is clean"]
    assert doc.incomplete_sentences == 1


def test_token_validation():
    with pytest.raises(ValueError):
        Token("", "", POS.Noun)
