import pytest
from hypothesis import settings, strategies as st

from fqcert.words import Word, parse, reduce

settings.register_profile("default", deadline=None, max_examples=150)
settings.load_profile("default")


def W(text: str, rank: int = 2) -> Word:
    return parse(text, rank)


def words(rank: int = 2, max_len: int = 8):
    letters = st.integers(1, rank).flatmap(lambda i: st.sampled_from([i, -i]))
    return st.lists(letters, max_size=max_len).map(lambda raw: reduce(raw, rank))


def nontrivial_words(rank: int = 2, max_len: int = 8):
    return words(rank, max_len).filter(lambda w: len(w) > 0)


@pytest.fixture
def swap_a():
    from fqcert.covers import CoverGraph

    return CoverGraph(2, ((1, 0), (0, 1)))
