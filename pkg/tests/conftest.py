from fractions import Fraction

from hypothesis import settings
from hypothesis import strategies as st

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

SMALL_TYPES = [("A", 1), ("A", 2), ("A", 3), ("A", 4), ("B", 2), ("B", 3), ("C", 3), ("D", 4), ("G", 2), ("F", 4)]


def rationals(lo=-4, hi=4, den=6):
    return st.fractions(min_value=Fraction(lo), max_value=Fraction(hi), max_denominator=den)
