"""Modules, derivations and the cochain complex of a 3-Lie conformal algebra.

Run with ``python demos/modules_and_cohomology.py``.
"""

import random

from nlca.algebra import PolyValue, check_axioms
from nlca.cohomology import (Cochain, check_D_partial, check_D_squared, check_phi_chain, check_phi_injective,
                             check_phi_partial, cochain_variables, differential_D, random_cochain)
from nlca.constructions import rank2_family_ii
from nlca.modules import (adjoint_module, cend_bracket, check_ann_rep, check_derivation, check_module_axioms,
                          inner_derivation, semidirect_sum)
from nlca.poly import MultiPoly, lam

x, y = MultiPoly.var(lam(1)), MultiPoly.var(lam(2))
A = rank2_family_ii(3, x - y)
M = adjoint_module(A)

# The algebra acts on itself; the action satisfies the module axioms, and
# through divided powers it induces a representation of the annihilation algebra.
print(check_module_axioms(M, A).render())
print(check_ann_rep(M, A, 1, 3).render())

# Left multiplication by a pair of generators is a conformal derivation,
# and so is the commutator of two of them.
e = [PolyValue.gen(k) for k in range(A.dim)]
L11 = inner_derivation(A, [e[0], e[0]], 1)
L12 = inner_derivation(A, [e[0], e[1]], 2)
print("L(e1, e1):", check_derivation(L11, A).render())
print("[L(e1, e1), L(e1, e2)]:", check_derivation(cend_bracket(L11, L12), A).render())

# The semidirect sum with the adjoint module is again a 3-Lie conformal algebra.
S = semidirect_sum(A, M)
print("semidirect sum on", S.names, [r.render() for r in check_axioms(S)])

# Cochains take two algebra arguments per block plus one last argument.
print("degree-2 cochain variables:", [str(MultiPoly.var(v)) for v in cochain_variables(3, 2)])
rng = random.Random(1)
g = random_cochain(3, 1, A.dim, M.dim, rng)
Dg = differential_D(g, A, M)
print("a value of D g:", Dg.value((0, 0, 1)).render(M.names))
print(check_D_squared(g, A, M).render())
print(check_D_partial(g, A, M).render())

# Reading off divided-power coefficients sends cochains to cochains of the
# annihilation algebra, compatibly with both differentials and with d.
print(check_phi_chain(g, A, M, 1, 2).render())
print(check_phi_partial(g, A, 1, 2, names=M.names).render())
print(check_phi_injective(g, 1, M.names).render())

# A hand-written cochain: g(e1) = l3 * m1, g(e2) = 0.
h = Cochain(3, 1, A.dim, M.dim, {(0,): PolyValue.gen(0, MultiPoly.var(lam(3)))})
print("D of the hand-written cochain at (e1 e1 e2):", differential_D(h, A, M).value((0, 0, 1)).render(M.names))
