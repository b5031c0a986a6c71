import math
import random

import pytest

from fuzzysent import defaults
from fuzzysent.errors import DegenerateMFError, ParseError
from fuzzysent.extract import FeatureOpinion, OpinionWord
from fuzzysent.fuzzy import (
    FuzzyRule,
    PolarityResult,
    RuleSet,
    TriangularMF,
    aggregate,
    classify_interval,
    display,
    feature_polarity,
    fuzzify,
    load_mf_bank,
    load_rules,
    outputs,
    parse_rule,
    rule_fitness,
    triangular_mu,
)
from fuzzysent.lexicon import Orientation
from fuzzysent.ontology import Concept
from fuzzysent.preprocess import POS


def word(w, v, pos=POS.Adjective, negated=False):
    return OpinionWord(w, pos, v, Orientation.Unknown, 0, negated)


def pair(*words):
    return FeatureOpinion(Concept("Road"), None, tuple(words))


def test_triangle_shape():
    mf = TriangularMF(0.2, 0.4, 0.8)
    assert triangular_mu(0.4, mf) == 1.0
    assert triangular_mu(0.2, mf) == 0.0
    assert triangular_mu(0.8, mf) == 0.0
    assert triangular_mu(0.3, mf) == pytest.approx(0.5)
    assert triangular_mu(0.6, mf) == pytest.approx(0.5)


def test_shoulders():
    assert triangular_mu(-5, TriangularMF(0, 0.125, 0.375, "left")) == 1.0
    assert triangular_mu(7, TriangularMF(0.625, 0.875, 1, "right")) == 1.0


def test_degenerate_mf():
    with pytest.raises(DegenerateMFError):
        triangular_mu(0.5, TriangularMF(0.5, 0.5, 0.5))
    with pytest.raises(ValueError):
        TriangularMF(0.6, 0.5, 0.7)


def test_default_bank():
    assert fuzzify(0.375) == {"SN": 0.0, "Neg": 1.0, "Neu": 0.0, "P": 0.0, "SP": 0.0}
    assert fuzzify(0.0)["SN"] == 1.0
    assert fuzzify(1.0)["SP"] == 1.0
    rng = random.Random(3)
    for _ in range(2000):
        degrees = fuzzify(rng.random())
        assert max(degrees.values()) > 0
        assert all(0.0 <= d <= 1.0 for d in degrees.values())


def test_fuzzify_rejects_out_of_range():
    with pytest.raises(ValueError):
        fuzzify(1.5)


def test_rule_fitness_is_minimum():
    assert rule_fitness([0.9, 0.23, 1]) == 0.23
    assert rule_fitness([0.9, 0.7, 1]) == 0.7
    assert rule_fitness([0.4]) == 0.4
    with pytest.raises(ValueError):
        rule_fitness([])


def test_aggregate_worked_values():
    fired = [(0.23, 0.25), (0.7, 0.25)]
    assert outputs(fired) == [0.0575, 0.175]
    assert aggregate(fired) == pytest.approx(0.1459, abs=5e-4)
    assert aggregate([(3.4, 0), (3.6, 0)]) == 0
    assert aggregate([(1.0, 0.3)]) == 0.3
    assert aggregate([(0.6, 0.5)]) == pytest.approx(0.3)


def test_aggregate_with_no_fitness_is_undetermined():
    assert aggregate([]) is None
    assert aggregate([(0.0, 0.5), (0.0, 0.1)]) is None


def test_aggregate_equal_ip_algebra():
    # with a shared ip the weighted form reduces to p * sum(f^2) / sum(f)
    rng = random.Random(17)
    for _ in range(1000):
        fs = [rng.uniform(0.01, 1) for _ in range(rng.randint(1, 6))]
        p = rng.random()
        got = aggregate([(f, p) for f in fs])
        assert got == pytest.approx(p * sum(f * f for f in fs) / sum(fs), rel=1e-12, abs=1e-15)
        assert got <= p + 1e-12


def test_aggregate_is_monotone_in_ip():
    rng = random.Random(23)
    for _ in range(1000):
        fired = [(rng.uniform(0.01, 1), rng.random()) for _ in range(rng.randint(1, 5))]
        i = rng.randrange(len(fired))
        f, ip = fired[i]
        bumped = list(fired)
        bumped[i] = (f, min(1.0, ip + rng.random() * (1 - ip)))
        assert aggregate(bumped) >= aggregate(fired) - 1e-12


@pytest.mark.parametrize(
    "value,term",
    [(0.0, "SN"), (0.14, "SN"), (0.25, "Neg"), (0.4999, "Neg"), (0.5, "Neu"), (0.5001, "P"),
     (0.62, "P"), (0.75, "P"), (0.7501, "SP"), (0.9, "SP"), (1.0, "SP"), (None, "undetermined")],
)
def test_classify_interval(value, term):
    assert classify_interval(value) == term


def test_classify_rejects_out_of_range():
    with pytest.raises(ValueError):
        classify_interval(1.01)
    with pytest.raises(ValueError):
        classify_interval(float("nan"))


def test_display_drops_extra_digits():
    assert display(0.14594086021505376) == "0.14"
    assert display(0.0575, 3) == "0.057"
    assert display(0.175, 3) == "0.175"
    assert display(None) == "undetermined"


def test_polarity_result_enforces_term():
    with pytest.raises(ValueError):
        PolarityResult(0.14, "P")


def test_replication_rules_reproduce_worked_example(lexicon):
    from fuzzysent.lexicon import opinion_value

    rules = load_rules(defaults.data_path("replication_rules.txt"))
    road = pair(*(word(w, opinion_value(w, p, lexicon), p) for w, p in
                  [("very", POS.Adverb), ("busy", POS.Adjective), ("closed", POS.Adjective)]))
    r = feature_polarity(road, rules)
    assert r.value == pytest.approx(0.1459, abs=5e-4) and r.term == "SN"
    assert [(rid, f) for rid, f, _ in r.trace] == [("road1", 0.23), ("road2", 0.7)]


def test_identity_rule_at_neutral_point():
    rules = RuleSet((FuzzyRule("id", (("OW", "Neu"),), "Neu", 0.5),))
    r = feature_polarity(pair(word("fine", 0.5)), rules)
    assert (r.value, r.term) == (0.5, "Neu")
    assert r.trace == (("id", 1.0, 0.5),)


def test_no_rule_fired_is_undetermined():
    rules = RuleSet((FuzzyRule("x", (("missing", "SN"),), "SN"),))
    r = feature_polarity(pair(word("fine", 0.5)), rules)
    assert r.value is None and r.term == "undetermined" and r.trace == ()


def test_negated_word_uses_complement():
    rules = defaults.fuzzy_rules()
    plain = feature_polarity(pair(word("bad", 0.0)), rules)
    flipped = feature_polarity(pair(word("bad", 0.0, negated=True)), rules)
    assert plain.term == "SN" and flipped.term == "SP"


def test_generic_slots_filter_by_pos():
    rules = RuleSet((FuzzyRule("adv", (("ADV", "Neu"),), "Neu"),))
    r = feature_polarity(pair(word("clean", 0.5, POS.Adjective), word("very", 0.5, POS.Adverb)), rules)
    assert len(r.trace) == 1


def test_default_ip_is_representative_point():
    assert parse_rule("rule r: IF OW IS SP THEN SP").ip == 0.875
    assert parse_rule("rule r: IF a IS P AND b IS Neg THEN Neg IP 0.3").antecedent == (("a", "P"), ("b", "Neg"))
    with pytest.raises(ValueError):
        FuzzyRule("r", (), "SN")
    with pytest.raises(ValueError):
        FuzzyRule("r", (("OW", "SN"),), "SN", 1.5)


def test_rule_file_errors(tmp_path):
    p = tmp_path / "r.txt"
    p.write_text("rule a: IF OW IS SN THEN SN\nrule a: IF OW IS P THEN P\n", encoding="utf-8")
    with pytest.raises(ParseError) as err:
        load_rules(p)
    assert err.value.line == 2
    p.write_text("rule a IF OW\n", encoding="utf-8")
    with pytest.raises(ParseError):
        load_rules(p)


def test_mf_bank_file(tmp_path):
    bank = load_mf_bank(defaults.data_path("mf_bank.txt"))
    assert list(bank) == ["SN", "Neg", "Neu", "P", "SP"]
    assert bank["SN"].shoulder == "left" and bank["SP"].shoulder == "right"
    p = tmp_path / "b.txt"
    p.write_text("term X 0.5 0.2 0.9\n", encoding="utf-8")
    with pytest.raises(ParseError):
        load_mf_bank(p)


def test_result_term_matches_value_for_random_words():
    rules = defaults.fuzzy_rules()
    rng = random.Random(99)
    for _ in range(500):
        words = [word(f"w{i}", rng.random(), negated=rng.random() < 0.2) for i in range(rng.randint(1, 4))]
        r = feature_polarity(pair(*words), rules)
        assert r.term == classify_interval(r.value)
        assert r.value is None or math.isfinite(r.value)
