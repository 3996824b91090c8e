"""The annihilation algebra of a finite 3-Lie conformal algebra.

Elements ``a_m`` carry a multi-index ``m`` in N^p; brackets come from the
k-products of the conformal bracket.  Run with
``python demos/annihilation_algebra.py``.
"""

from nlca.algebra import PolyValue, k_product_table
from nlca.annihilation import (AnnElement, AnnihilationAlgebra, NotEquivariantError, annihilation_suite,
                               commutativity_check, dti_action, induce_hom, partial_action)
from nlca.constructions import cur_simple3, rank2_family_i, rank2_family_ii
from nlca.poly import MultiPoly, lam

x, y = MultiPoly.var(lam(1)), MultiPoly.var(lam(2))
cur = cur_simple3()
fam = rank2_family_ii(3, x - y)

# For a current algebra the bracket is the loop bracket: indices add up.
L = AnnihilationAlgebra(cur, 2)
print("[e1_(1,0) e2_(0,1) e3_(1,1)] =", L.bracket_generators([(0, (1, 0)), (1, (0, 1)), (2, (1, 1))]).render(cur.names))

# Polynomial brackets spread over lower indices through their k-products.
print("k-products of (e1 e1 e2) in family (ii):",
      {k: v.render(fam.names) for k, v in k_product_table(fam, (0, 0, 1)).items()})
L2 = AnnihilationAlgebra(fam, 1)
print("[e1_1 e1_0 e2_0] =", L2.bracket_generators([(0, (1,)), (0, (0,)), (1, (0,))]).render(fam.names))

# d lowers indices with a sign, d/dt_i without one.
a = AnnElement.gen(0, (2, 1))
print("d(e1_(2,1)) =", partial_action(2, a).render(cur.names))
print("d/dt_1(e1_(2,1)) =", dti_action(2, 1, a).render(cur.names))

# The whole suite: Leibniz rule for d/dt_i, the d-action, the 3-Lie axioms
# of the bracket on a window of indices, and the reconstruction identity.
for name, A in (("Cur", cur), ("family (ii)", fam), ("family (i), g = 1", rank2_family_i(3, 1))):
    print(f"{name}, p = 1:")
    for r in annihilation_suite(A, 1, 3):
        print("   ", r.render().splitlines()[0])
    table_zero, window_zero, _ = commutativity_check(A, 1, 2)
    print(f"    zero bracket table: {table_zero}, zero window brackets: {window_zero}")

# A d/dt-equivariant map of annihilation algebras comes from a conformal map.
images, report = induce_hom(fam, fam, 1, lambda g, m: AnnElement.gen(g, m, -1), 3)
print("scalar -1 recovers", [v.render(fam.names) for v in images], "|", report.render().splitlines()[0])
try:
    induce_hom(fam, fam, 1, lambda g, m: AnnElement.gen(g, (m[0] + 1,)), 3)
except NotEquivariantError as exc:
    print("index shift rejected:", exc)
print("identity recovers", [v.render(fam.names) for v in induce_hom(fam, fam, 1, lambda g, m: AnnElement.gen(g, m), 3)[0]],
      "==", [PolyValue.gen(k).render(fam.names) for k in range(fam.dim)])
