import itertools

from fuzzysent.extract import (
    CueKind,
    attach_phrases,
    detect_cues,
    extract_pairs,
    matched_features,
    phrase_hits,
)
from fuzzysent.lexicon import Orientation
from fuzzysent.preprocess import preprocess_text
from fuzzysent.relevance import ngrams


def clauses(text, protect=("a lot",)):
    return preprocess_text(text, "d", protect=protect).clauses


def pairs_for(text, ontology, lexicon, opinion_lexicon, phrases=None):
    out = []
    for c in clauses(text):
        found = extract_pairs(c, ontology, lexicon, opinion_lexicon)
        if phrases is not None:
            words = [t.lower for t in c.tokens]
            found = attach_phrases(found, {n: ngrams(words, n) for n in (2, 3)}, phrases, lexicon)
        out.extend(found)
    return out


def summary(pairs):
    return [(p.feature.name, [w.word for w in p.opinion_words]) for p in pairs]


def test_park_review(ontology, lexicon, opinion_lexicon):
    got = summary(pairs_for("Park is very clean and the location is good", ontology, lexicon, opinion_lexicon))
    assert got == [("Parks", ["very", "clean"]), ("Location", ["good"])]


def test_new_york_review_merges_a_lot(ontology, lexicon, opinion_lexicon):
    from fuzzysent import defaults

    pairs = pairs_for(
        "New-York has a lot of facilities but crowded", ontology, lexicon, opinion_lexicon, defaults.phrases()
    )
    assert summary(pairs) == [("City", ["a_lot", "crowded"])]
    orient = {w.word: w.orientation for w in pairs[0].opinion_words}
    assert orient == {"a_lot": Orientation.Positive, "crowded": Orientation.Negative}


def test_no_ontology_noun_yields_nothing(ontology, lexicon, opinion_lexicon):
    assert pairs_for("It was wonderful", ontology, lexicon, opinion_lexicon) == []


def test_two_features_share_opinion_words(ontology, lexicon, opinion_lexicon):
    got = summary(pairs_for("3 killed in Quezon road accident", ontology, lexicon, opinion_lexicon))
    assert got == [("Road", ["killed"]), ("Accident", ["killed"])]


def test_features_are_reachable_from_clause_nouns(ontology, lexicon, opinion_lexicon):
    for c in clauses("Traffic is heavy near the bus station and the hospital is clean"):
        names = {p.feature.name for p in extract_pairs(c, ontology, lexicon, opinion_lexicon)}
        assert names == {concept.name for concept, _ in matched_features(c, ontology)}


def test_negation_flips_and_double_negation_restores(ontology, lexicon, opinion_lexicon):
    one = pairs_for("Traffic is not bad", ontology, lexicon, opinion_lexicon)[0].opinion_words[0]
    two = pairs_for("Traffic is not not bad", ontology, lexicon, opinion_lexicon)[0].opinion_words[0]
    assert one.negated and one.orientation is Orientation.Positive
    assert not two.negated and two.orientation is Orientation.Negative


def test_extraction_is_clause_local(ontology, lexicon, opinion_lexicon):
    a = pairs_for("Road is closed. Park is lovely.", ontology, lexicon, opinion_lexicon)
    b = pairs_for("Park is lovely. Road is closed.", ontology, lexicon, opinion_lexicon)
    assert sorted(summary(a)) == sorted(summary(b))


def test_cues():
    assert [c.kind for c in detect_cues(clauses("fastest route is ever")[0])] == [CueKind.SuperlativeAdverbPositive]
    assert [c.kind for c in detect_cues(clauses("traffic jammed again")[0])] == [CueKind.PastTenseNegative]
    assert detect_cues(clauses("road is open")[0]) == []
    assert [c.kind for c in detect_cues(clauses("road is cleaner")[0])] == [CueKind.ComparativeAdjective]
    assert [c.kind for c in detect_cues(clauses("I love this city")[0])] == [CueKind.PronounSubjective]


def test_no_phrase_hit_leaves_pairs_unchanged(ontology, lexicon, opinion_lexicon):
    pairs = pairs_for("Park is clean", ontology, lexicon, opinion_lexicon)
    words = ["park", "is", "clean"]
    assert attach_phrases(pairs, {2: ngrams(words, 2)}, {"a_lot": Orientation.Positive}, lexicon) == pairs


def test_longest_phrase_wins_in_either_order():
    phrases = {"very_slow": Orientation.Negative, "very_slow_traffic": Orientation.Negative}
    words = ["very", "slow", "traffic"]
    grams = {2: ngrams(words, 2), 3: ngrams(words, 3)}
    results = set()
    for order in itertools.permutations(grams):
        results.add(tuple(phrase_hits({n: grams[n] for n in order}, phrases)))
    assert results == {((0, 3, "very_slow_traffic"),)}
