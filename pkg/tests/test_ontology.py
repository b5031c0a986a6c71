import pytest

from fuzzysent.errors import (
    CycleDetectedError,
    DegreeOutOfRangeError,
    ParseError,
    UnknownConceptError,
    UnknownParentError,
    UnknownTermError,
)
from fuzzysent.ontology import FuzzyDatatype, find_concept, find_concepts, load_ontology, membership, subfeatures

CITY_FEATURES = [
    "Medical_Centers", "Nightlife", "Parks", "Cemeteries", "Jail", "Sewage_facility", "Bus_station",
    "Environments", "Tunnels", "Entertainment", "Train_Station", "Airports", "Bridges",
]
TRANSPORT = ["Road", "Accident", "Vehicle", "Traffic", "Safety", "Location", "Person"]


def write(tmp_path, text):
    p = tmp_path / "o.txt"
    p.write_text(text, encoding="utf-8")
    return p


def test_bundled_inventory(ontology):
    for name in CITY_FEATURES:
        assert ontology[name].kind == "CityFeature"
    for name in TRANSPORT:
        assert ontology[name].kind == "TransportationActivity"


def test_traffic_subfeatures(ontology):
    assert [c.name for c in subfeatures(ontology["Traffic"], ontology)] == ["Jammed", "Slow", "Traffic_collision", "Heavy"]
    assert ontology.ancestors("Jammed") == ["Traffic"]


def test_longest_match_wins(ontology):
    assert find_concept(["bus", "station"], ontology).name == "Bus_station"
    assert find_concept(["bus"], ontology).name == "Vehicle"
    assert find_concept(["traffic", "jam"], ontology).name == "Jammed"
    assert find_concept(["zebra"], ontology) is None


def test_find_concepts_returns_every_span(ontology):
    found = [(s, e, c.name) for s, e, c in find_concepts(["quezon", "road", "accident"], ontology)]
    assert found == [(1, 2, "Road"), (2, 3, "Accident")]


def test_fuzzy_relation_and_datatype(ontology):
    rel = ontology.relations[0]
    assert (rel.subject, rel.predicate, rel.object, rel.degree) == ("park-ticket", "has_rate", "high", 0.7)
    dt = ontology.datatypes["Polarity"]
    assert membership(dt, "SN", 0.14) == 1.0
    assert membership(dt, "P", 0.14) == 0.0
    with pytest.raises(UnknownTermError):
        membership(dt, "Huge", 0.5)


def test_unknown_parent(tmp_path):
    with pytest.raises(UnknownParentError):
        load_ontology(write(tmp_path, "concept A parent B kind SubFeature\n"))


def test_cycle_detected(tmp_path):
    text = "concept A parent B kind SubFeature\nconcept B parent A kind SubFeature\n"
    with pytest.raises(CycleDetectedError):
        load_ontology(write(tmp_path, text))


def test_degree_out_of_range(tmp_path):
    text = (
        "concept A kind CityFeature\ndatatype R term hi 0.5 1\nproperty rate range R\n"
        "relation A rate hi degree 1.5\n"
    )
    with pytest.raises(DegreeOutOfRangeError):
        load_ontology(write(tmp_path, text))


def test_bad_directive_reports_line(tmp_path):
    with pytest.raises(ParseError) as err:
        load_ontology(write(tmp_path, "concept A kind CityFeature\nbogus line\n"))
    assert err.value.line == 2


def test_unknown_concept_lookup(ontology):
    with pytest.raises(UnknownConceptError):
        ontology["Nope"]
    with pytest.raises(UnknownConceptError):
        subfeatures("Nope", ontology)


def test_datatype_interval_validation():
    with pytest.raises(ValueError):
        FuzzyDatatype("X", {"t": (0.6, 0.2)})
