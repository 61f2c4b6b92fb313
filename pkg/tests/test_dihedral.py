from fractions import Fraction

import pytest
from hypothesis import given

from heckedim.dihedral import (OPEN_REGIONS, Cmp, InvalidParamsError, Params, Region, Word, letter_counts,
                               q_pow, word_mul, words_of_length, words_up_to)
from strategies import words


@given(words, words, words)
def test_word_mul_associative(u, v, w):
    assert word_mul(word_mul(u, v), w) == word_mul(u, word_mul(v, w))


@given(words)
def test_word_inverse(w):
    assert word_mul(w, w.inverse()) == Word.identity()
    assert word_mul(w.inverse(), w) == Word.identity()


@given(words)
def test_letters_roundtrip(w):
    assert Word.from_letters(w.letters()) == w
    assert len(w.letters()) == len(w)


@given(words)
def test_inverse_reverses_letters(w):
    assert w.inverse().letters() == w.letters()[::-1]


def test_generators_are_involutions():
    for letter in 'st':
        g = Word.gen(letter)
        assert word_mul(g, g).is_identity
    assert Word.from_letters('st') == Word(1, False)


@pytest.mark.parametrize('letters, first, last', [
    ('', None, None),
    ('s', 's', 's'),
    ('st', 's', 't'),
    ('tst', 't', 't'),
    ('tsts', 't', 's'),
])
def test_first_last_letter(letters, first, last):
    w = Word.from_letters(letters)
    assert w.first_letter() == first
    assert w.last_letter() == last


def test_words_up_to_counts():
    assert len(words_up_to(2)) == 5
    assert [str(w) for w in words_up_to(2)] == ['e', 's', 't', 'st', 'ts']
    assert all(len(words_up_to(n)) == 2 * n + 1 for n in range(8))


def test_words_of_length_three():
    assert [w.letters() for w in words_of_length(3)] == ['sts', 'tst']


def test_letter_counts_and_q_pow():
    p = Params.parse('1/2', '1/3')
    w = Word.from_letters('sts')
    assert letter_counts(w) == (2, 1)
    assert q_pow(w, p) == Fraction(1, 12)
    assert q_pow(Word.identity(), p) == 1


@pytest.mark.parametrize('qs, qt', [('0', '1'), ('1', '-2'), ('abc', '1'), ('1/0', '1')])
def test_invalid_params(qs, qt):
    with pytest.raises(InvalidParamsError):
        Params.parse(qs, qt)


def test_params_refuse_floats():
    with pytest.raises(TypeError):
        Params(0.5, 1)


@pytest.mark.parametrize('qs, qt, prod, pair', [
    ('1/2', '1/3', Cmp.LT, Cmp.GT),
    ('1/3', '1/2', Cmp.LT, Cmp.LT),
    ('2', '3', Cmp.GT, Cmp.LT),
    ('3', '2', Cmp.GT, Cmp.GT),
    ('2', '1/2', Cmp.EQ, Cmp.GT),
    ('1', '1', Cmp.EQ, Cmp.EQ),
])
def test_region(qs, qt, prod, pair):
    region = Params.parse(qs, qt).region
    assert region == Region(prod, pair)
    assert region.is_open == (prod is not Cmp.EQ and pair is not Cmp.EQ)


def test_region_label_and_closure():
    assert Params.parse('1/2', '1/3').region.label == 'qs*qt<1,qs>qt'
    corner = Params.parse(1, 1).region
    assert sorted(map(str, corner.closure_regions())) == sorted(map(str, OPEN_REGIONS))
    edge = Params.parse('1/2', '1/2').region
    assert len(edge.closure_regions()) == 2
    assert all(r.cmp_prod is Cmp.LT for r in edge.closure_regions())


def test_square_rational():
    assert Params.parse('1/4', '4/9').is_square_rational
    assert not Params.parse('1/2', '4/9').is_square_rational


def _reduce_by_cancellation(letters: str) -> str:
    stack = []
    for x in letters:
        if stack and stack[-1] == x:
            stack.pop()
        else:
            stack.append(x)
    return ''.join(stack)


def _unreduced_letters(n: int, refl: bool) -> str:
    # z = st, z^-1 = ts, then a trailing s for the reflection; padded with cancelling pairs
    body = 'st' * n if n >= 0 else 'ts' * (-n)
    return 'tt' + body + 'ss' + ('s' if refl else '')


@pytest.mark.parametrize('refl', [False, True])
def test_letter_counts_match_stack_cancellation(refl):
    for n in range(-50, 51):
        reduced = _reduce_by_cancellation(_unreduced_letters(n, refl))
        assert letter_counts(Word(n, refl)) == (reduced.count('s'), reduced.count('t')), (n, refl)
        assert Word(n, refl).letters() == reduced


@given(words, words)
def test_letter_counts_add_exactly_when_lengths_add(u, v):
    uv = word_mul(u, v)
    (us, ut), (vs, vt) = letter_counts(u), letter_counts(v)
    adds = letter_counts(uv) == (us + vs, ut + vt)
    assert adds == (len(uv) == len(u) + len(v))
