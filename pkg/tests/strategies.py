"""Hypothesis strategies for parameters, words, Hecke elements and Laurent polynomials."""
from fractions import Fraction

from hypothesis import strategies as st

from heckedim.dihedral import Params, Word, words_up_to
from heckedim.hecke import Basis, HeckeElem
from heckedim.laurent import LaurentPoly

small_rationals = st.fractions(min_value=Fraction(1, 5), max_value=5, max_denominator=5)

params = st.builds(Params, small_rationals, small_rationals)

words = st.builds(Word, st.integers(-4, 4), st.booleans())

coeffs = st.integers(-3, 3).map(Fraction)


def hecke_elems(basis=Basis.GROUP, max_length=2):
    short_words = st.sampled_from(words_up_to(max_length))
    return st.dictionaries(short_words, coeffs, max_size=4).map(lambda c: HeckeElem(c, basis))


laurent_polys = st.dictionaries(st.integers(-3, 3), coeffs, max_size=4).map(LaurentPoly)
