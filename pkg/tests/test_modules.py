import random
from itertools import combinations_with_replacement, product

import pytest

from nlca.algebra import NlcaPresentation, PolyValue, check_axioms
from nlca.constructions import rank2_family_i, simple_3lie
from nlca.modules import (CendOperator, ConformalModule, adjoint_module, cend_bracket, check_ann_rep,
                          check_derivation, check_inner_bracket_expansion, check_module_axioms,
                          check_module_skew, eval_action, inner_derivation, module_to_ann_rep, semidirect_sum,
                          trivial_module)
from nlca.poly import D, ZERO, MultiPoly, lam

from conftest import X, Y

E = PolyValue.gen


def test_adjoint_action_is_the_bracket(cur):
    M = adjoint_module(cur)
    assert eval_action(M, cur, [E(0), E(1)], E(2)) == E(3)
    assert M.names == ["m1", "m2", "m3", "m4"]


def test_zero_module_action():
    A = NlcaPresentation(3, ["a"])
    M = trivial_module(A)
    assert not eval_action(M, A, [E(0), E(0)], E(0))


def test_partial_in_algebra_slot(fam_ii):
    M = adjoint_module(fam_ii)
    base = eval_action(M, fam_ii, [E(0), E(0)], E(1))
    assert eval_action(M, fam_ii, [E(0, D), E(0)], E(1)) == base.scale(-X)


def test_partial_on_module_element(fam_ii):
    M = adjoint_module(fam_ii)
    assert eval_action(M, fam_ii, [E(0), E(0)], E(1, D)) == E(1, (D + X + Y) * (X - Y))


@pytest.mark.parametrize("name", ["cur", "ii", "alt"])
def test_adjoint_modules_pass(passing_algebras, name):
    A = passing_algebras[name]
    assert check_module_axioms(adjoint_module(A), A)


def test_trivial_module_passes(cur):
    assert check_module_axioms(trivial_module(cur), cur)


def test_flipped_adjoint_entry_fails(fam_ii):
    M = adjoint_module(fam_ii)
    action = dict(M.action)
    action[(0, 0, 1)] = -action[(0, 0, 1)]
    bad = ConformalModule(3, 2, M.names, action)
    rep = check_module_axioms(bad, fam_ii)
    assert not rep
    assert rep.axiom == "module-filippov-a"
    assert rep.residual


def finite_commutator_violations(flip_key):
    """Count failures of [rho(x), rho(y)] = rho([x, y1], y2) + rho(y1, [x, y2]) for the
    zeroth-product action of the simple 3-Lie algebra with one entry negated."""
    g = simple_3lie()

    def rho(a, b, vec):
        acc = {}
        for v, c in vec.items():
            img = g.bracket((a, b, v))
            if (min(a, b), max(a, b), v) == flip_key:
                img = {k: -x for k, x in img.items()}
            for k, x in img.items():
                acc[k] = acc.get(k, 0) + c * x
        return {k: x for k, x in acc.items() if x}

    bad = 0
    for x1, x2, y1, y2, v in product(range(4), repeat=5):
        res = dict(rho(x1, x2, rho(y1, y2, {v: 1})))
        for k, c in rho(y1, y2, rho(x1, x2, {v: 1})).items():
            res[k] = res.get(k, 0) - c
        for z, c in g.bracket((x1, x2, y1)).items():
            for k, d in rho(z, y2, {v: 1}).items():
                res[k] = res.get(k, 0) - c * d
        for z, c in g.bracket((x1, x2, y2)).items():
            for k, d in rho(y1, z, {v: 1}).items():
                res[k] = res.get(k, 0) - c * d
        bad += any(res.values())
    return bad


def test_flipped_current_entry_fails(cur):
    assert finite_commutator_violations((0, 1, 2)) > 0
    M = adjoint_module(cur)
    action = dict(M.action)
    action[(0, 1, 2)] = -action[(0, 1, 2)]
    rep = check_module_axioms(ConformalModule(3, 4, M.names, action), cur)
    assert not rep
    assert rep.where == ("e1", "e2", "e3", "e1", "m3")
    assert rep.residual == "-2*m2"


def test_module_skew_only_constrains_algebra_slots(fam_i):
    # the last-slot failure of this family does not touch the module axioms
    assert check_module_skew(adjoint_module(fam_i), fam_i)
    assert check_module_axioms(adjoint_module(fam_i), fam_i)


def test_module_validation():
    with pytest.raises(ValueError):
        ConformalModule(3, 2, ["m"], {(1, 0, 0): E(0)})
    with pytest.raises(ValueError):
        ConformalModule(3, 2, ["m"], {(0, 0, 1): E(0)})


# -- conformal linear maps ---------------------------------------------------------

def test_conformal_linearity():
    x = lam(1, 4)
    f = CendOperator([E(0, MultiPoly.var(x))], x)
    assert f.apply(E(0, D)) == E(0, (D + MultiPoly.var(x)) * MultiPoly.var(x))


def test_partial_of_operator():
    x = lam(1, 4)
    f = CendOperator([E(0)], x)
    assert f.partial().images == [E(0, -MultiPoly.var(x))]


def test_zero_operator_bracket():
    x = lam(1, 4)
    f = CendOperator([PolyValue({}), PolyValue({})], x)
    assert cend_bracket(f, f).is_zero()


def test_inner_derivations_of_commutative_algebra_commute():
    A = NlcaPresentation(3, ["a", "b"])
    f = inner_derivation(A, [E(0), E(1)])
    assert f.is_zero()
    assert cend_bracket(f, f).is_zero()


def test_inner_derivation_at_zero_is_ad(cur):
    f = inner_derivation(cur, [E(0), E(1)])
    assert [im.substitute({f.var: 0}) for im in f.images] == [PolyValue({}), PolyValue({}), E(3), E(2, -1)]


@pytest.mark.parametrize("name", ["cur", "ii", "alt"])
def test_inner_derivations_are_derivations(passing_algebras, name):
    A = passing_algebras[name]
    for a in combinations_with_replacement(range(A.dim), A.n - 1):
        assert check_derivation(inner_derivation(A, [E(k) for k in a]), A)


def test_inner_derivation_with_partial_arguments(fam_ii):
    assert check_derivation(inner_derivation(fam_ii, [E(0, D), E(1, D + 1)]), fam_ii)


@pytest.mark.parametrize("name", ["cur", "ii", "alt"])
def test_bracket_of_inner_derivations(passing_algebras, name):
    A = passing_algebras[name]
    rng = random.Random(1)
    pairs = list(product(combinations_with_replacement(range(A.dim), 2), repeat=2))
    for a, b in rng.sample(pairs, min(6, len(pairs))):
        La = inner_derivation(A, [E(k) for k in a], 1)
        Lb = inner_derivation(A, [E(k) for k in b], 2)
        assert check_derivation(cend_bracket(La, Lb), A)
        assert check_inner_bracket_expansion(A, [E(k) for k in a], [E(k) for k in b])


def test_random_operator_is_not_a_derivation(cur):
    rng = random.Random(3)
    x = lam(1, 4)
    xv = MultiPoly.var(x)
    failures = 0
    for _ in range(5):
        images = [PolyValue({j: MultiPoly.const(rng.randint(-2, 2)) + rng.randint(-2, 2) * xv for j in range(4)})
                  for _ in range(4)]
        if not check_derivation(CendOperator(images, x), cur):
            failures += 1
    assert failures == 5


def test_derivation_check_rejects_block_zero_variables(cur):
    with pytest.raises(ValueError):
        check_derivation(CendOperator([E(0)] * 4, lam(1)), cur)


# -- semidirect sums and annihilation representations ------------------------------

@pytest.mark.parametrize("name", ["cur", "ii", "alt"])
def test_semidirect_with_adjoint_passes(passing_algebras, name):
    A = passing_algebras[name]
    assert all(check_axioms(semidirect_sum(A, adjoint_module(A))))


def test_semidirect_with_trivial_module(fam_ii):
    S = semidirect_sum(fam_ii, trivial_module(fam_ii))
    assert S.table == fam_ii.table
    assert S.names == ["e1", "e2", "m1"]


def test_two_module_entries_vanish(cur):
    S = semidirect_sum(cur, adjoint_module(cur))
    assert not S.at((4, 5, 0))
    assert not S.at((0, 4, 5))
    assert S.at((0, 1, 6)) == E(7)


def test_semidirect_name_clash(cur):
    with pytest.raises(ValueError):
        semidirect_sum(cur, adjoint_module(cur, cur.names))


def test_semidirect_inherits_last_slot_failure(fam_i):
    S = semidirect_sum(fam_i, adjoint_module(fam_i))
    assert not check_axioms(S)[0]


def test_ann_rep_of_current_adjoint(cur):
    M = adjoint_module(cur)
    assert module_to_ann_rep(M, cur, 1, [(0, (0,)), (1, (0,))], E(2)) == E(3)
    assert not module_to_ann_rep(M, cur, 1, [(0, (1,)), (1, (0,))], E(2))


def test_ann_rep_beyond_locality(fam_ii):
    M = adjoint_module(fam_ii)
    assert not module_to_ann_rep(M, fam_ii, 2, [(0, (3, 1)), (0, (0, 0))], E(1))


@pytest.mark.parametrize("name", ["ii", "alt"])
@pytest.mark.parametrize("p", [1, 2])
def test_ann_rep_identities(passing_algebras, name, p):
    A = passing_algebras[name]
    assert check_ann_rep(adjoint_module(A), A, p, 2)


def test_ann_rep_identities_current(cur):
    assert check_ann_rep(adjoint_module(cur), cur, 1, 2)
