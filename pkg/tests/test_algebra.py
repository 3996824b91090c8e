from itertools import permutations, product

import pytest

from nlca.algebra import (NlcaPresentation, PolyValue, bracket, check_axioms, check_filippov, check_skew,
                          k_product_table, k_products, zeroth_product_algebra)
from nlca.constructions import rank2_family_i
from nlca.nlie import NLieAlgebra, check_nlie, perm_sign, simple_3lie
from nlca.poly import D, ZERO, MultiPoly, lam

from conftest import X, Y

E = PolyValue.gen


def epsilon(idx):
    """Sign of a permutation of 0..3 by counting inversions; 0 on repeats."""
    if len(set(idx)) < len(idx):
        return 0
    inv = sum(1 for a in range(len(idx)) for b in range(a + 1, len(idx)) if idx[a] > idx[b])
    return -1 if inv % 2 else 1


# -- finite n-Lie algebras ----------------------------------------------------------

def test_perm_sign():
    assert perm_sign((0, 1, 2)) == 1
    assert perm_sign((1, 0, 2)) == -1
    assert perm_sign((2, 0, 1)) == 1
    assert perm_sign((0, 0, 1)) == 0


def test_simple_3lie_structure_constants():
    g = simple_3lie()
    for i, j, k in product(range(4), repeat=3):
        expect = {}
        for l in range(4):
            s = epsilon((i, j, k, l))
            if s:
                expect[l] = s
        assert g.bracket((i, j, k)) == expect


def test_simple_3lie_is_filippov():
    assert check_nlie(simple_3lie())


def test_abelian_nlie_passes():
    assert check_nlie(NLieAlgebra(3, 3, {}))


def test_flipped_sign_breaks_the_simple_algebra():
    g = simple_3lie()
    br = dict(g.brackets)
    br[(0, 1, 2)] = {3: -1}
    rep = check_nlie(NLieAlgebra(3, 4, br))
    assert not rep
    assert rep.residual


def test_from_increasing_extends_antisymmetrically():
    g = NLieAlgebra.from_increasing(3, 4, {(0, 1, 2): {3: 1}})
    assert g.bracket((2, 1, 0)) == {3: -1}
    assert g.bracket((1, 2, 0)) == {3: 1}
    with pytest.raises(ValueError):
        NLieAlgebra.from_increasing(3, 4, {(1, 0, 2): {3: 1}})


# -- presentations and brackets -----------------------------------------------------

def test_current_bracket_is_constant(cur):
    for key in permutations(range(4), 3):
        last = ({0, 1, 2, 3} - set(key)).pop()
        assert cur.at(key) == E(last, epsilon(key + (last,)))
    assert cur.at((0, 1, 2)) == E(3)
    assert cur.at((1, 0, 2)) == E(3, -1)
    assert cur.at((0, 1, 3)) == E(2, -1)
    assert cur.at((0, 0, 1)) == PolyValue({})


def test_family_ii_table_entry(fam_ii):
    assert fam_ii.at((0, 0, 1)) == E(1, X - Y)


def test_repeated_generator_swap_negates_with_labels_exchanged(fam_ii):
    l1, l2 = fam_ii.labels
    direct = fam_ii.at((0, 0, 1), (l2, l1))
    assert direct == -fam_ii.at((0, 0, 1))
    assert direct == E(1, l2 - l1)


def test_sesquilinearity_first_slot(cur):
    v = bracket(cur, [E(0, D), E(1), E(2)])
    assert v == E(3, -X)


def test_sesquilinearity_last_slot(cur):
    v = bracket(cur, [E(0), E(1), E(2, D)])
    assert v == E(3, D + X + Y)


def test_sesquilinearity_both_rules(fam_ii):
    v = bracket(fam_ii, [E(0, D), E(0), E(1, D)])
    assert v == E(1, -X * (D + X + Y) * (X - Y))


def test_bracket_with_explicit_labels(fam_ii):
    a = MultiPoly.var(lam(1, 5))
    v = bracket(fam_ii, [E(0), E(0), E(1)], [a, 2 * a])
    assert v == E(1, -a)


def test_bracket_arity_errors(cur):
    with pytest.raises(ValueError):
        bracket(cur, [E(0), E(1)])
    with pytest.raises(ValueError):
        bracket(cur, [E(0), E(1), E(2)], [X])


def test_presentation_rejects_bad_tables():
    with pytest.raises(ValueError):
        NlcaPresentation(3, ["e1", "e2"], {(1, 0, 0): E(0)})
    with pytest.raises(ValueError):
        NlcaPresentation(3, ["e1", "e2"], {(0, 0, 2): E(0)})
    with pytest.raises(ValueError):
        NlcaPresentation(3, ["e1", "e2"], {(0, 0, 1): E(1, MultiPoly.var(lam(3)))})
    with pytest.raises(ValueError):
        NlcaPresentation(3, ["e1", "e1"])


def test_polyvalue_render():
    v = PolyValue({0: -D, 1: D + X, 2: MultiPoly.const(-3), 3: MultiPoly.const(1)})
    assert v.render(["e1", "e2", "e3", "e4"]) == "-d*e1 + (d + l1)*e2 - 3*e3 + e4"
    assert PolyValue({}).render() == "0"


# -- axiom checkers ------------------------------------------------------------------

def test_current_algebra_passes(cur):
    assert all(check_axioms(cur))


def test_commutative_algebra_passes():
    A = NlcaPresentation(3, ["e1", "e2", "e3"])
    assert A.is_commutative()
    assert all(check_axioms(A))


def test_lone_entry_fails_last_slot_relation():
    # [e1 e2 e3] = l1 e1 with nothing else; swapping e2 and e3 through the
    # last-slot relation demands a partner entry, so the residual is l1 e1
    A = NlcaPresentation(3, ["e1", "e2", "e3"], {(0, 1, 2): E(0, X)})
    rep = check_skew(A)
    assert not rep
    assert rep.axiom == "skew-last"
    assert rep.where == ("e1", "e2", "e3")
    assert rep.residual == "l1*e1"


def test_lone_entry_fails_filippov():
    A = NlcaPresentation(3, ["e1", "e2", "e3"], {(0, 1, 2): E(0, X)})
    rep = check_filippov(A)
    assert not rep
    assert rep.residual == "(-l1^2 - l1*l2 - l1*l3)*e1"


def test_family_i_last_slot_residual():
    # all-e1 value (l1 - l2) e2; the last-slot relation asks
    # f(l1, l2) + f(l1, -d - l1 - l2) = 0, and the sum is d + 3 l1
    rep = check_skew(rank2_family_i(3, 1))
    assert rep.axiom == "skew-last"
    assert rep.residual == "(d + 3*l1)*e2"


# -- k-products and the zeroth-product algebra -------------------------------------

def test_current_k_products(cur):
    assert k_products(cur, (0, 1, 2), (0, 0)) == E(3)
    assert not k_products(cur, (0, 1, 2), (1, 0))
    assert not k_products(cur, (0, 1, 2), (40, 40))


def test_family_ii_k_products(fam_ii):
    assert k_products(fam_ii, (0, 0, 1), (1, 0)) == E(1)
    assert k_products(fam_ii, (0, 0, 1), (0, 1)) == E(1, -1)
    assert k_product_table(fam_ii, (0, 0, 1)) == {(1, 0): E(1), (0, 1): E(1, -1)}


def test_divided_powers_in_k_products():
    A = NlcaPresentation(3, ["e1", "e2"], {(0, 0, 1): E(1, X ** 2 - Y ** 2)})
    assert k_products(A, (0, 0, 1), (2, 0)) == E(1, 2)


def test_zeroth_product_of_current_algebra_is_the_algebra(cur):
    assert zeroth_product_algebra(cur) == simple_3lie()


def test_zeroth_product_kills_partial_terms():
    g = zeroth_product_algebra(rank2_family_i(3, D))
    assert g.brackets == {}


def test_zeroth_product_of_commutative_algebra_is_abelian():
    assert zeroth_product_algebra(NlcaPresentation(3, ["a", "b"])).brackets == {}


def test_max_degree(fam_ii, cur):
    assert fam_ii.max_degree() == 1
    assert cur.max_degree() == 0
    assert NlcaPresentation(3, ["a"]).max_degree() == -1
    assert ZERO.is_zero()
