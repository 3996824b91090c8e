"""Rank-two 3-Lie conformal algebras: which brackets survive the axioms.

Run with ``python demos/rank_two_families.py``.
"""

from nlca.algebra import bracket, check_axioms, element
from nlca.constructions import (cur_simple3, filippov_constraint_residual, plucker_check, rank2_alternating,
                                rank2_family_i, rank2_family_ii)
from nlca.poly import D, MultiPoly, lam

x, y = MultiPoly.var(lam(1)), MultiPoly.var(lam(2))


def show(title, A):
    print(f"{title}:")
    for r in check_axioms(A):
        print("   ", r.render())


# A finite 3-Lie algebra tensored with C[d] keeps its constant brackets.
cur = cur_simple3()
show("current algebra of the simple 3-Lie algebra", cur)

# Brackets extend sesquilinearly: d in an inner slot turns into minus its label.
e1 = element({0: D})
print("[d*e1 e2 e3] =", bracket(cur, [e1, element({1: 1}), element({2: 1})]).render(cur.names))

# Family (ii): [e1 e1 e2] = h(l1, l2) e2.  A skew h of low degree works.
show("family (ii), h = l1 - l2", rank2_family_ii(3, x - y))

# Adding a degree-5 correction breaks Filippov; the residual is the
# polynomial constraint on h, written out.
h = (y - x) + (x**2 * y**3 - x**3 * y**2)
show("family (ii), h = (l2 - l1) + (l1^2 l2^3 - l1^3 l2^2)", rank2_family_ii(3, h))
print("    constraint on h:", filippov_constraint_residual(h, 3))

# Family (i): [e1 e1 e1] = g e2 always satisfies Filippov, but skew-symmetry
# in the last slot forces g to carry the factor (d + 2 l1 + l2)(d + l1 + 2 l2).
show("family (i), g = 1", rank2_family_i(3, 1))
show("family (i) member with the forced factor", rank2_alternating(3))

# For a polynomial h given by an antisymmetric matrix, Filippov reduces to
# quadratic relations among the entries.  Order 3 always passes.
print("plucker 3x3:", plucker_check([[0, 1, 2], [-1, 0, 3], [-2, -3, 0]]).render())
print("plucker 4x4:", plucker_check([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]).render())
