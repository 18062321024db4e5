import pytest

from clausecut import read_corpus, toy_corpus_path
from clausecut.pipeline import train_bundle


@pytest.fixture(scope="session")
def toy_corpus():
    return read_corpus(toy_corpus_path())


@pytest.fixture(scope="session")
def bundle(toy_corpus):
    return train_bundle(toy_corpus)


def find_sentence(corpus, *forms):
    """First corpus sentence starting with the given word forms."""
    for sentence in corpus:
        if len(sentence.tokens) >= len(forms) and all(
            t.form == f for t, f in zip(sentence.tokens, forms)
        ):
            return sentence
    raise AssertionError(f"no sentence starting with {forms!r}")
