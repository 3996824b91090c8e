"""Property-based checks of the algebraic invariants."""

from fractions import Fraction
from itertools import product
from math import factorial

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from nlca.algebra import NlcaPresentation, PolyValue, bracket, check_axioms, check_filippov, check_skew
from nlca.annihilation import AnnElement, AnnihilationAlgebra, dti_action, partial_action, place
from nlca.constructions import (cur_simple3, filippov_constraint_residual, matrix_poly, plucker_check,
                                rank2_family_i, rank2_family_ii)
from nlca.formats import parse_algebra, render_algebra
from nlca.poly import D, PARTIAL, ZERO, MultiPoly, lam

VARS = [PARTIAL, lam(1), lam(2)]
L1, L2 = MultiPoly.var(lam(1)), MultiPoly.var(lam(2))

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def polys(draw, vars_=VARS, max_exp=2, max_terms=4):
    terms = draw(st.lists(st.tuples(st.tuples(*[st.integers(0, max_exp) for _ in vars_]), coeffs),
                          max_size=max_terms))
    return MultiPoly.from_terms([({v: e for v, e in zip(vars_, exps) if e}, c) for exps, c in terms])


@st.composite
def symmetric_polys(draw, max_degree=2):
    """Symmetric in l1, l2, possibly with d: combinations of d^a e1^b e2^c."""
    e1, e2 = L1 + L2, L1 * L2
    out = ZERO
    for a, b, c in product(range(max_degree + 1), repeat=3):
        if a + b + 2 * c <= max_degree:
            out = out + draw(st.integers(-3, 3)) * D ** a * e1 ** b * e2 ** c
    return out


fast = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@fast
@given(polys(), polys(), polys())
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == ZERO


@fast
@given(polys(), polys(), polys(), polys())
def test_substitution_is_a_ring_map(p, q, a, b):
    binding = {lam(1): a, PARTIAL: b}
    assert (p * q).substitute(binding) == p.substitute(binding) * q.substitute(binding)
    assert (p + q).substitute(binding) == p.substitute(binding) + q.substitute(binding)


@fast
@given(polys())
def test_divided_powers_reconstruct(p):
    vs = [lam(1), lam(2)]
    back = ZERO
    for k, c in p.divided_power_coefficients(vs).items():
        w = factorial(k[0]) * factorial(k[1])
        back = back + c * MultiPoly.monomial({v: e for v, e in zip(vs, k) if e}, Fraction(1, w))
    assert back == p


PSEUDO_FACTOR = (D + 2 * L1 + L2) * (D + L1 + 2 * L2)


@fast
@given(symmetric_polys(), st.integers(-3, 3), st.booleans())
def test_family_i_filippov_holds_and_last_slot_needs_the_factor(g, c, force):
    if force:
        g = PSEUDO_FACTOR.scale(c)
    A = rank2_family_i(3, g)
    assert check_filippov(A)
    # in degree <= 2 the last-slot relation holds exactly for multiples of the factor
    lead = g.coefficients([PARTIAL]).get((2,), ZERO).constant_term()
    assert bool(check_skew(A)) == (g == PSEUDO_FACTOR.scale(lead))



@fast
@given(symmetric_polys())
def test_family_i_passes_both_checks_for_symmetric_g(g):
    # the claim as commonly stated; it fails unless g is a multiple of PSEUDO_FACTOR
    assert all(check_axioms(rank2_family_i(3, g)))

@settings(max_examples=30, deadline=None)
@given(polys(max_exp=3))
def test_single_generator_brackets_fail(f):
    A = NlcaPresentation(3, ["e"], {(0, 0, 0): PolyValue.gen(0, f)})
    ok = all(check_axioms(A))
    assert ok == (f == ZERO)


@st.composite
def antisymmetric(draw, m=None):
    m = m or draw(st.integers(2, 5))
    a = [[Fraction(0)] * m for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            c = draw(st.integers(-2, 2))
            a[i][j], a[j][i] = Fraction(c), Fraction(-c)
    return a


@fast
@given(antisymmetric())
def test_plucker_matches_constraint(a):
    assert bool(plucker_check(a)) == (filippov_constraint_residual(matrix_poly(a), 3) == ZERO)


@st.composite
def ann_elements(draw, dim, p, max_index=2):
    terms = draw(st.dictionaries(st.tuples(st.integers(0, dim - 1),
                                           st.tuples(*[st.integers(0, max_index) for _ in range(p)])),
                                 st.integers(-3, 3), min_size=1, max_size=3))
    return AnnElement(terms)


CUR = cur_simple3()
FAM_II = rank2_family_ii(3, L1 - L2)


@fast
@given(st.data())
def test_dti_is_a_derivation(data):
    A = data.draw(st.sampled_from([CUR, FAM_II]))
    p = data.draw(st.integers(1, 2))
    L = AnnihilationAlgebra(A, p)
    args = [data.draw(ann_elements(A.dim, p)) for _ in range(3)]
    i = data.draw(st.integers(1, p))
    lhs = dti_action(p, i, L.bracket(args))
    rhs = AnnElement()
    for j in range(3):
        new = list(args)
        new[j] = dti_action(p, i, args[j])
        rhs = rhs + L.bracket(new)
    assert lhs == rhs


@fast
@given(st.data())
def test_ann_bracket_is_skew(data):
    p = data.draw(st.integers(1, 2))
    L = AnnihilationAlgebra(FAM_II, p)
    a, b, c = (data.draw(ann_elements(2, p)) for _ in range(3))
    v = L.bracket([a, b, c])
    assert v == -L.bracket([b, a, c])
    assert v == -L.bracket([a, c, b])


@fast
@given(st.data())
def test_placing_d_multiples(data):
    p = data.draw(st.integers(1, 3))
    m = data.draw(st.tuples(*[st.integers(0, 3) for _ in range(p)]))
    c = data.draw(polys(vars_=[PARTIAL], max_exp=3))
    v = PolyValue.gen(0, c)
    assert place(v.scale(D), m) == partial_action(p, place(v, m))


@fast
@given(st.data())
def test_sesquilinearity(data):
    A = data.draw(st.sampled_from([CUR, FAM_II]))
    gens = [data.draw(st.integers(0, A.dim - 1)) for _ in range(3)]
    slot = data.draw(st.integers(0, 2))
    args = [PolyValue.gen(g) for g in gens]
    base = bracket(A, args)
    args[slot] = args[slot].scale(D)
    expect = base.scale(D + L1 + L2 if slot == 2 else -MultiPoly.var(lam(slot + 1)))
    assert bracket(A, args) == expect


@st.composite
def presentations(draw):
    n = 3
    dim = draw(st.integers(1, 3))
    keys = [k for k in product(range(dim), repeat=n) if k[0] <= k[1]]
    table = {}
    for key in draw(st.lists(st.sampled_from(keys), max_size=4, unique=True)):
        table[key] = PolyValue({draw(st.integers(0, dim - 1)): draw(polys())})
    return NlcaPresentation(n, [f"e{i + 1}" for i in range(dim)], table)


@fast
@given(presentations())
def test_parse_render_round_trip(A):
    assert parse_algebra(render_algebra(A)) == A
