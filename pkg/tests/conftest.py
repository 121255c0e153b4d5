import pytest

from mwelex import data_path, parse_table, standard_registry


@pytest.fixture(scope="session")
def registry():
    return standard_registry()


def _load(name, registry):
    with open(data_path(name), encoding="utf-8") as fh:
        return parse_table(fh.read(), registry, filename=name)


@pytest.fixture(scope="session")
def demo_table(registry):
    return _load("demo_lexicon.tsv", registry)


@pytest.fixture(scope="session")
def svc_table(registry):
    return _load("svc_verbs.tsv", registry)


@pytest.fixture(scope="session")
def ops_table(registry):
    return _load("ops_judgments.tsv", registry)


@pytest.fixture(scope="session")
def judge_tables(registry):
    return [_load(f"judge_{j}.tsv", registry) for j in "abc"]


@pytest.fixture(scope="session")
def corpus_text():
    with open(data_path("corpus.txt"), encoding="utf-8") as fh:
        return fh.read()


@pytest.fixture(scope="session")
def inflection_map():
    from mwelex.patterns import load_inflections

    with open(data_path("inflections.json"), encoding="utf-8") as fh:
        return load_inflections(fh.read())
