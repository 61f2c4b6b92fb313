from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings

from heckedim.dihedral import Params, Word, q_pow, words_up_to
from heckedim.hecke import (Basis, BasisMismatchError, DivergentSeriesError, HeckeElem, KappaSpec, adjoint,
                            convert_basis, group_mul, hecke_mul, inner_product, invert_unit, kappa_minus,
                            kappa_norm_sq, kappa_plus, kappa_projection_coeff, kappa_tail, kappa_truncated,
                            left_gen_mul, mul, norm_sq, r_operator, random_element, right_gen_mul,
                            special_element)
from strategies import hecke_elems, params

P = Params.parse('1/2', '1/3')


def tau(letters, c=1):
    return HeckeElem.word(letters, Basis.TAU, c)


def grp(letters, c=1):
    return HeckeElem.word(letters, Basis.GROUP, c)


@pytest.mark.parametrize('letter', ['s', 't'])
def test_quadratic_relation(letter):
    q = P.q(letter)
    g = tau(letter)
    assert hecke_mul(g, g, P) == g * (q - 1) + q


def test_tau_product_of_reduced_words():
    assert hecke_mul(tau('st'), tau('s'), P) == tau('sts')
    # tau_st tau_t = (q_t - 1) tau_st + q_t tau_s
    assert hecke_mul(tau('st'), tau('t'), P) == tau('st') * (P.q_t - 1) + tau('s') * P.q_t


def test_left_and_right_generator_products():
    x = tau('ts') + tau('t') * 2 + 1
    for letter in 'st':
        assert right_gen_mul(x, letter, P) == hecke_mul(x, tau(letter), P)
        assert left_gen_mul(letter, x, P) == hecke_mul(tau(letter), x, P)


def test_tau_generator_in_group_basis():
    # tau_s = ((q_s - 1) + (q_s + 1) s) / 2
    assert convert_basis(tau('s'), Basis.GROUP, P) == grp('s') * Fraction(3, 4) + Fraction(-1, 4)


@settings(deadline=None, max_examples=40)
@given(hecke_elems(), hecke_elems(), params)
def test_phi_is_multiplicative(x, y, p):
    tx, ty = convert_basis(x, Basis.TAU, p), convert_basis(y, Basis.TAU, p)
    assert convert_basis(group_mul(x, y), Basis.TAU, p) == hecke_mul(tx, ty, p)


@settings(deadline=None, max_examples=40)
@given(hecke_elems(Basis.TAU), hecke_elems(Basis.TAU), hecke_elems(Basis.TAU), params)
def test_hecke_mul_associative(x, y, z, p):
    assert hecke_mul(hecke_mul(x, y, p), z, p) == hecke_mul(x, hecke_mul(y, z, p), p)


@settings(deadline=None, max_examples=40)
@given(hecke_elems(), params)
def test_basis_roundtrip(x, p):
    assert convert_basis(convert_basis(x, Basis.TAU, p), Basis.GROUP, p) == x


@settings(deadline=None, max_examples=40)
@given(hecke_elems(), hecke_elems(), hecke_elems(), params)
def test_multiplication_is_adjointable(x, y, z, p):
    xy = group_mul(x, y)
    assert inner_product(xy, z, p) == inner_product(y, group_mul(adjoint(x), z), p)
    assert inner_product(xy, z, p) == inner_product(x, group_mul(z, adjoint(y)), p)


def test_tau_basis_is_orthogonal():
    ws = words_up_to(3)
    for u in ws:
        for v in ws:
            expected = q_pow(u, P) if u == v else 0
            assert inner_product(tau(u.letters()), tau(v.letters()), P) == expected


def test_inner_product_of_group_generator():
    # s = (1 - q_s)/(1 + q_s) + 2/(1 + q_s) tau_s
    one = HeckeElem.one(Basis.GROUP)
    assert inner_product(grp('s'), one, P) == Fraction(1, 3)
    assert norm_sq(grp('s'), P) == 1


def test_mixed_bases_rejected():
    with pytest.raises(BasisMismatchError):
        mul(grp('s'), tau('s'), P)
    with pytest.raises(BasisMismatchError):
        grp('s') + tau('s')
    with pytest.raises(BasisMismatchError):
        group_mul(tau('s'), tau('t'))


@pytest.mark.parametrize('basis', [Basis.GROUP, Basis.TAU])
def test_invert_unit(basis):
    x = HeckeElem.word('sts', basis, 3)
    assert mul(x, invert_unit(x, P), P) == HeckeElem.one(basis)
    with pytest.raises(ValueError):
        invert_unit(HeckeElem.word('s', basis) + 1, P)


@pytest.mark.parametrize('name', ['a_s', 'a_t', 'h_s', 'h_t'])
def test_special_elements_are_selfadjoint_idempotents(name):
    x = special_element(name, Basis.GROUP)
    assert group_mul(x, x) == x
    assert adjoint(x) == x
    tx = special_element(name, Basis.TAU, P)
    assert hecke_mul(tx, tx, P) == tx


def test_special_elements_tau_form():
    q = P.q_s
    assert special_element('a_s', Basis.TAU, P) == (tau('s') + 1) * (1 / (1 + q))
    assert special_element('h_s', Basis.TAU, P) == (q - tau('s')) * (1 / (1 + q))
    with pytest.raises(ValueError):
        special_element('b_s', Basis.GROUP)


def test_r_operator():
    diff = special_element('a_s', Basis.GROUP) - special_element('a_t', Basis.GROUP)
    assert r_operator(P) == convert_basis(diff * P.c_norm, Basis.TAU, P)


def test_kappa_selection():
    assert kappa_plus(P) == KappaSpec(Fraction(1), Fraction(1))
    assert kappa_plus(Params.parse(2, 3)) == KappaSpec(Fraction(-1, 2), Fraction(-1, 3))
    assert kappa_plus(Params.parse(2, '1/2')).vanishing
    assert kappa_minus(P) == KappaSpec(Fraction(-2), Fraction(1))
    assert kappa_minus(Params.parse('1/3', '1/2')) == KappaSpec(Fraction(1), Fraction(-2))
    assert kappa_minus(Params.parse(2, 2)).vanishing


def test_kappa_norm_and_tail():
    spec = kappa_plus(P)
    assert kappa_norm_sq(spec, P) == Fraction(12, 5)
    assert kappa_projection_coeff('plus', P) == Fraction(5, 12)
    tails = [kappa_tail(spec, n, P) for n in range(6)]
    assert all(t > 0 for t in tails)
    assert all(b < a for a, b in zip(tails, tails[1:]))
    assert norm_sq(kappa_truncated(spec, 5, P), P) + tails[5] == Fraction(12, 5)


def test_divergent_kappa():
    with pytest.raises(DivergentSeriesError):
        kappa_norm_sq(KappaSpec(Fraction(1), Fraction(1)), Params.parse(2, 3))
    assert kappa_projection_coeff('minus', Params.parse(2, 2)) == 0


def test_truncated_kappa_is_selfadjoint():
    kt = kappa_truncated(kappa_minus(P), 6, P)
    assert adjoint(kt) == kt
    with pytest.raises(ValueError):
        kappa_truncated(kappa_minus(P), -1, P)


def test_random_element_support():
    x = random_element(np.random.default_rng(3), Basis.TAU, 2)
    assert x.basis is Basis.TAU
    assert x.max_length() <= 2


def test_str():
    assert str(grp('st') * -1 + 2) == '2 - st'
    assert str(tau('s') * Fraction(1, 2)) == '1/2*Ts'
    assert str(HeckeElem.zero(Basis.GROUP)) == '0'
