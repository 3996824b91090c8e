from fractions import Fraction

import pytest

from nlca.poly import D, ONE, PARTIAL, ZERO, MultiPoly, VarId, divided_power_coefficient, lam, render

l1, l2 = MultiPoly.var(lam(1)), MultiPoly.var(lam(2))


def test_additive_inverse():
    assert l1 + (-l1) == ZERO
    assert (l1 - l1).is_zero()


def test_like_terms_merge():
    assert (D + 2 * l1) + l1 == D + 3 * l1


def test_rational_coefficients_add_to_integer():
    half = Fraction(1, 2) * l1 ** 2
    total = half + half
    assert total == l1 ** 2
    # integral rationals are stored as ints
    assert all(type(c) is int for _, c in total.terms())


def test_difference_of_squares():
    assert (l1 - l2) * (l1 + l2) == l1 ** 2 - l2 ** 2


def test_one_is_identity():
    p = 3 * D * l1 - Fraction(2, 7) * l2 ** 3
    assert ONE * p == p
    assert p * 1 == p


def test_substitute_last_slot_relation():
    assert l1.substitute({lam(1): -D - l2}) == -D - l2


def test_substitute_to_zero():
    assert (l1 * l2).substitute({lam(1): 0}) == ZERO


def test_substitute_partial_shift():
    p = D + 2 * l1
    assert p.substitute({PARTIAL: D + l1 + l2}) == D + 3 * l1 + l2


def test_substitute_is_simultaneous():
    p = l1 - l2 ** 2
    assert p.substitute({lam(1): l2, lam(2): l1}) == l2 - l1 ** 2


def test_divided_power_coefficients():
    assert divided_power_coefficient(Fraction(1, 2) * l1 ** 2 * D, [lam(1)], [2]) == D
    assert divided_power_coefficient(D + 2 * l1, [lam(1)], [0]) == D
    assert divided_power_coefficient(l1 * l2 ** 2, [lam(1), lam(2)], [1, 2]) == 2


def test_divided_power_coefficient_rejects_repeated_vars():
    with pytest.raises(ValueError):
        divided_power_coefficient(l1, [lam(1), lam(1)], [1, 0])


def test_render_is_graded_and_signed():
    p = l2 ** 2 - 3 * D * l1 + Fraction(1, 2)
    assert render(p) == "-3*d*l1 + l2^2 + 1/2"
    assert render(ZERO) == "0"
    assert str(MultiPoly.var(lam(2, 3))) == "l3_2"


def test_variable_order_puts_partial_first():
    assert PARTIAL < lam(1) < lam(2) < lam(1, 1)
    assert isinstance(lam(1), VarId)


def test_negative_power_rejected():
    with pytest.raises(ValueError):
        l1 ** -1


def test_float_coefficients_are_refused():
    with pytest.raises(TypeError):
        l1 + 0.5


def test_degrees():
    p = D ** 2 * l1 + l2
    assert p.total_degree() == 3
    assert p.degree(PARTIAL) == 2
    assert p.total_degree([lam(1), lam(2)]) == 1
    assert ZERO.degree(PARTIAL) == -1
