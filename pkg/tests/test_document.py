from fractions import Fraction

import pytest

from heckedim.dihedral import Params, Word
from heckedim.document import (Add, Atom, EvaluationError, MatrixDimensionError, MatrixSyntaxError, Mul, Neg, Num,
                               MAX_EXPONENT, Pow, Sub, format_document, format_expr, parse_matrix)
from heckedim.hecke import Basis, HeckeElem, invert_unit, mul, special_element

P = Params.parse('1/2', '1/3')


def grp(letters, c=1):
    return HeckeElem.word(letters, Basis.GROUP, c)


def test_one_minus_st():
    doc = parse_matrix('basis group size 1x1 [ e - s*t ]')
    assert (doc.basis, doc.m, doc.n) == (Basis.GROUP, 1, 1)
    assert doc.rows[0][0] == Sub(Atom('e'), Mul(Atom('s'), Atom('t')))
    assert doc.evaluate() == [[HeckeElem.one(Basis.GROUP) - grp('st')]]


def test_idempotent_entry():
    doc = parse_matrix('basis group size 1x1 [ 1/2 + 1/2*s ]')
    assert doc.evaluate() == [[special_element('a_s', Basis.GROUP)]]


def test_tau_row():
    doc = parse_matrix('basis tau size 1x2 [ Ts , Tt - 2 ]')
    (a, b), = doc.evaluate(P)
    assert a == HeckeElem.word('s', Basis.TAU)
    assert b == HeckeElem.word('t', Basis.TAU) - 2
    with pytest.raises(EvaluationError):
        doc.evaluate()


def test_multiline_document_with_comments():
    text = """
    # a 2x2 example
    basis group size 2x2
    [ e - s*t , 0 ]
    [ 1/2 + 1/2*s , (s*t)^-1 ]   # inverse of a unit
    """
    doc = parse_matrix(text)
    rows = doc.evaluate()
    assert rows[0][1].is_zero()
    assert rows[1][1] == grp('ts')


def test_precedence():
    doc = parse_matrix('basis group size 1x1 [ -s*t^2 + 3 - 2*(e - s) ]')
    expr = doc.rows[0][0]
    assert expr == Sub(Add(Neg(Mul(Atom('s'), Pow(Atom('t'), 2))), Num(Fraction(3))),
                       Mul(Num(Fraction(2)), Sub(Atom('e'), Atom('s'))))
    # t^2 = e
    assert doc.evaluate()[0][0] == grp('s') * -1 + 3 - (HeckeElem.one(Basis.GROUP) - grp('s')) * 2


def test_negative_powers():
    doc = parse_matrix('basis tau size 1x2 [ Ts^-1 , (2*Ts*Tt)^-1 ]')
    a, b = doc.evaluate(P)[0]
    assert a == invert_unit(HeckeElem.word('s', Basis.TAU), P)
    assert b == invert_unit(HeckeElem.word('st', Basis.TAU, 2), P)
    bad = parse_matrix('basis group size 1x1 [ (e + s)^-1 ]')
    with pytest.raises(EvaluationError):
        bad.evaluate()


@pytest.mark.parametrize('text', [
    'basis group size 1x1 [ e - s*t ]',
    'basis group size 2x2 [ 1/2 + 1/2*s , -(s - t) ] [ (s*t)^-1 , 3*s*t*s ]',
    'basis tau size 1x3 [ Ts , Tt - 2 , (e + Ts)^2 ]',
    'basis group size 1x2 [ e - (s - t) , e + (s + t) ]',
    'basis group size 1x1 [ -(-s) ]',
    'basis group size 1x1 [ (s^2)^3 - 1/2^2 ]',
])
def test_print_parse_roundtrip(text):
    doc = parse_matrix(text)
    printed = format_document(doc)
    assert parse_matrix(printed) == doc
    assert format_document(parse_matrix(printed)) == printed


def test_format_expr_parenthesizes():
    assert format_expr(Sub(Atom('e'), Sub(Atom('s'), Atom('t')))) == 'e - (s - t)'
    assert format_expr(Mul(Add(Atom('e'), Atom('s')), Atom('t'))) == '(e + s)*t'
    assert format_expr(Pow(Mul(Atom('s'), Atom('t')), -1)) == '(s*t)^-1'
    assert format_expr(Num(Fraction(3, 4))) == '3/4'


@pytest.mark.parametrize('text, line', [
    ('basis group size 1x1 [ Ts ]', 1),
    ('basis tau size 1x1\n[ s ]', 2),
    ('basis group size 1x1 [ e + ]', 1),
    ('basis group size 1x1\n\n[ e ** s ]', 3),
])
def test_syntax_errors_carry_positions(text, line):
    with pytest.raises(MatrixSyntaxError) as info:
        parse_matrix(text)
    assert info.value.line == line
    assert info.value.column > 0


def test_zero_denominator():
    with pytest.raises(MatrixSyntaxError):
        parse_matrix('basis group size 1x1 [ 1/0 ]')


def test_missing_header():
    with pytest.raises(MatrixSyntaxError):
        parse_matrix('[ e ]')


@pytest.mark.parametrize('text', [
    'basis group size 2x1 [ e ]',
    'basis group size 1x2 [ e ]',
    'basis group size 1x1 [ e , s ]',
])
def test_dimension_mismatch(text):
    with pytest.raises(MatrixDimensionError):
        parse_matrix(text)


def test_powers_match_repeated_products():
    x = HeckeElem.word('s', Basis.TAU) + 1
    expected = HeckeElem.one(Basis.TAU)
    for _ in range(7):
        expected = mul(expected, x, P)
    assert parse_matrix('basis tau size 1x1 [ (e + Ts)^7 ]').evaluate(P)[0][0] == expected
    assert parse_matrix('basis group size 1x1 [ (s*t)^200 ]').evaluate()[0][0] == HeckeElem.word(Word(200, False),
                                                                                                Basis.GROUP)


def test_exponent_bound():
    doc = parse_matrix(f'basis group size 1x1 [ (e + s)^{MAX_EXPONENT + 1} ]')
    with pytest.raises(EvaluationError):
        doc.evaluate()
    assert parse_matrix(f'basis group size 1x1 [ s^{MAX_EXPONENT} ]').evaluate()[0][0] == HeckeElem.one(Basis.GROUP)
