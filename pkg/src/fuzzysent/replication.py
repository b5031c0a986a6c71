"""Golden checks built from the road/accident tweets and the four-keyword classifier."""

from dataclasses import dataclass

from .corpus import Document
from .extract import FeatureOpinion, OpinionWord
from .fuzzy import display, feature_polarity, load_mf_bank, load_rules
from .lexicon import Orientation, load_sentiwordnet, opinion_value
from .ontology import Concept
from .preprocess import POS
from .relevance import WeightVector, is_relevant, score
from .swrl import Fact, derive, load_causal_rules

ROAD_WORDS = (("very", POS.Adverb), ("busy", POS.Adjective), ("closed", POS.Adjective))
ACCIDENT_WORDS = (("horrible", POS.Adjective), ("closed", POS.Adjective), ("killed", POS.VerbPast))
ROAD_EXPECTED = 0.1459
ROAD_TOLERANCE = 0.0005

CLASSIFIER_WEIGHTS = WeightVector({"road": 0.5, "accid": 0.6, "close": 0.1, "__city__": -0.3})

JAM_INPUT = frozenset({Fact("OpinionOf", "Accident", "SN"), Fact("Speed", "Vehicle", "VerySlow")})
JAM_EXPECTED = frozenset(
    {Fact("OpinionOf", "Traffic", "SN"), Fact("PolarityIs", "Road", "SN"), Fact("TrafficIsJammedBy", "Road", "Accident")}
)


@dataclass(frozen=True)
class Check:
    name: str
    expected: str
    actual: str
    passed: bool


def fixture_pair(feature, words, lexicon):
    ows = tuple(
        OpinionWord(w, pos, opinion_value(w, pos, lexicon), Orientation.Unknown, i) for i, (w, pos) in enumerate(words)
    )
    return FeatureOpinion(Concept(feature), None, ows)


def check_road(rules, bank, lexicon):
    result = feature_polarity(fixture_pair("Road", ROAD_WORDS, lexicon), rules, bank)
    outs = tuple(o for _, _, o in result.trace)
    ok = (
        result.value is not None
        and abs(result.value - ROAD_EXPECTED) <= ROAD_TOLERANCE
        and display(result.value) == "0.14"
        and result.term == "SN"
        and len(outs) == 2
        and display(outs[0], 3) == "0.057"
        and display(outs[1], 3) == "0.175"
    )
    actual = f"{display(result.value, 4)} ({display(result.value)}) {result.term}; outputs " + ", ".join(
        display(o, 4) for o in outs
    )
    return Check("road polarity", "0.1459 (0.14) SN; outputs 0.0575, 0.1750", actual, ok)


def check_accident(rules, bank, lexicon):
    result = feature_polarity(fixture_pair("Accident", ACCIDENT_WORDS, lexicon), rules, bank)
    ok = result.value == 0 and result.term == "SN"
    return Check("accident polarity", "0 SN", f"{result.value} {result.term}", ok)


def check_classifier():
    doc = classifier_document()
    full = score(doc, CLASSIFIER_WEIGHTS)
    empty = score(frozenset(), CLASSIFIER_WEIGHTS)
    ok = (
        full == 0.9
        and is_relevant(doc, CLASSIFIER_WEIGHTS)
        and empty == 0
        and not is_relevant(frozenset(), CLASSIFIER_WEIGHTS)
    )
    return Check("classifier score", "0.9 relevant; empty 0 filtered", f"{full!r}; empty {empty!r}", ok)


def classifier_document():
    """Mentions road, accident, a closure and its own city: all four weights fire."""
    return Document("fixture", "Road closed after accident in Quezon", "tweet", "Quezon")


def check_jam_rule(causal_rules):
    got = derive(JAM_INPUT, causal_rules)
    ok = got == JAM_EXPECTED
    return Check(
        "jam cause derivation",
        ", ".join(sorted(map(str, JAM_EXPECTED))),
        ", ".join(sorted(map(str, got))) or "(nothing)",
        ok,
    )


def run_checks(config):
    """All four golden checks, using the replication rules, MF bank, lexicon and causal rules from ``config``."""
    rules = load_rules(config.replication_rules)
    bank = load_mf_bank(config.mf_bank)
    lexicon = load_sentiwordnet(config.sentiwordnet)
    causal = load_causal_rules(config.causal_rules)
    return [
        check_road(rules, bank, lexicon),
        check_accident(rules, bank, lexicon),
        check_classifier(),
        check_jam_rule(causal),
    ]


def format_checks(checks):
    width = max(len(c.name) for c in checks)
    lines = []
    for c in checks:
        status = "PASS" if c.passed else "FAIL"
        lines.append(f"{status}  {c.name.ljust(width)}  expected {c.expected}  got {c.actual}")
    return "\n".join(lines) + "\n"
