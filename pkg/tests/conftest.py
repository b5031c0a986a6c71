import pytest

from fuzzysent import defaults
from fuzzysent.pipeline import RunConfig, load_resources


@pytest.fixture(scope="session")
def ontology():
    return defaults.ontology()


@pytest.fixture(scope="session")
def lexicon():
    return defaults.lexicon()


@pytest.fixture(scope="session")
def opinion_lexicon():
    return defaults.opinion_lexicon()


@pytest.fixture(scope="session")
def resources():
    return load_resources(RunConfig())
