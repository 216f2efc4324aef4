"""Hypothesis strategies shared across test modules."""
from hypothesis import strategies as st

from quandlekit import QuandleWord


def letters(names):
    return st.tuples(st.sampled_from(names), st.sampled_from((1, -1)))


def quandle_words(names, max_tail=4):
    return st.builds(lambda h, t: QuandleWord(h, tuple(t)),
                     st.sampled_from(names), st.lists(letters(names), max_size=max_tail))
