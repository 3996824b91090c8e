"""Builders for concrete n-Lie conformal algebras and related criteria."""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations, product
from typing import Mapping, Sequence

from .algebra import NlcaPresentation, PolyValue, bracket_generators, lambdas
from .nlie import NLieAlgebra, check_nlie, simple_3lie
from .poly import D, ONE, PARTIAL, ZERO, MultiPoly, VarId, lam
from .report import CheckReport, failed, passed

__all__ = [
    "NLieAlgebra",
    "check_nlie",
    "simple_3lie",
    "current_algebra",
    "cur_simple3",
    "vandermonde",
    "is_symmetric",
    "is_skew",
    "rank2_family_i",
    "rank2_alternating",
    "rank2_family_ii",
    "rank2_family_ii_matrix",
    "matrix_poly",
    "filippov_constraint_residual",
    "plucker_check",
    "pseudo_variables",
    "pseudo_translate",
    "from_pseudo",
]


def current_algebra(g: NLieAlgebra, validate: bool = True) -> NlcaPresentation:
    """Constant brackets copied from a finite n-Lie algebra."""
    if validate:
        rep = check_nlie(g)
        if not rep:
            raise ValueError(f"not an n-Lie algebra: {rep.axiom} fails at {rep.where}")
    table = {}
    for key, vec in g.brackets.items():
        if list(key[:-1]) == sorted(key[:-1]):
            table[key] = PolyValue(vec)
    return NlcaPresentation(g.n, g.names, table, builder="current")


def cur_simple3() -> NlcaPresentation:
    A = current_algebra(simple_3lie())
    A.builder = "simple3lie"
    return A


def vandermonde(m: int, block: int = 0) -> MultiPoly:
    """prod_{1<=i<j<=m} (l_i - l_j)."""
    ls = lambdas(m, block)
    out = ONE
    for i in range(m):
        for j in range(i + 1, m):
            out = out * (ls[i] - ls[j])
    return out


def _swap(i: int, j: int) -> dict[VarId, MultiPoly]:
    return {lam(i): MultiPoly.var(lam(j)), lam(j): MultiPoly.var(lam(i))}


def is_symmetric(p: MultiPoly, m: int) -> bool:
    return all(p.substitute(_swap(i, i + 1)) == p for i in range(1, m))


def is_skew(p: MultiPoly, m: int) -> bool:
    return all(p.substitute(_swap(i, i + 1)) == -p for i in range(1, m))


def _check_vars(p: MultiPoly, allowed: set, what: str) -> None:
    extra = p.variables() - allowed
    if extra:
        raise ValueError(f"{what} uses unexpected variables {sorted(map(str, extra))}")


def rank2_family_i(n: int, g: MultiPoly, names: Sequence[str] = ("e1", "e2")) -> NlcaPresentation:
    """Only the all-``e1`` bracket is nonzero: Vandermonde(l) * g * e2.

    ``g`` must be symmetric in ``l1..l(n-1)``; it may involve ``d``.
    """
    if n < 3:
        raise ValueError("rank-two families need n >= 3")
    g = MultiPoly.lift(g)
    _check_vars(g, {PARTIAL} | {lam(i) for i in range(1, n)}, "g")
    if not is_symmetric(g, n - 1):
        raise ValueError("g is not symmetric in l1..l(n-1)")
    f = vandermonde(n - 1) * g
    table = {(0,) * n: PolyValue({1: f})}
    A = NlcaPresentation(n, names, table, builder="rank2_i")
    return A


def pseudo_variables(n: int) -> tuple[MultiPoly, ...]:
    """The images ``x_i = -l_i`` (i < n) and ``x_n = d + l1 + ... + l(n-1)``."""
    ls = lambdas(n - 1)
    return tuple(-x for x in ls) + (D + sum(ls, ZERO),)


def from_pseudo(p: MultiPoly, n: int) -> MultiPoly:
    """Rewrite a polynomial in pseudo variables ``l1..ln`` in terms of ``d, l1..l(n-1)``."""
    xs = pseudo_variables(n)
    return p.substitute({lam(i + 1): xs[i] for i in range(n)})


def rank2_alternating(n: int, s: MultiPoly = ONE, names: Sequence[str] = ("e1", "e2")) -> NlcaPresentation:
    """All-``e1`` bracket equal to the alternant prod_{i<j} (x_i - x_j) * s.

    Here ``x`` are the pseudo variables and ``s`` is symmetric in them (given
    as a polynomial in ``l1..ln``).  This is the member of the first rank-two
    family that also satisfies the last-slot skew relation.
    """
    if n < 3:
        raise ValueError("rank-two families need n >= 3")
    s = MultiPoly.lift(s)
    _check_vars(s, {lam(i) for i in range(1, n + 1)}, "s")
    if not is_symmetric(s, n):
        raise ValueError("s is not symmetric in the pseudo variables")
    f = from_pseudo(vandermonde(n) * s, n)
    A = NlcaPresentation(n, names, {(0,) * n: PolyValue({1: f})}, builder="rank2_alt")
    return A


def rank2_family_ii(n: int, h: MultiPoly, names: Sequence[str] = ("e1", "e2")) -> NlcaPresentation:
    """The ``(e1,..,e1,e2)`` bracket equals ``h(l1..l(n-1)) e2``; everything else
    follows by skew-symmetry.  ``h`` must be skew and free of ``d``."""
    if n < 3:
        raise ValueError("rank-two families need n >= 3")
    h = MultiPoly.lift(h)
    _check_vars(h, {lam(i) for i in range(1, n)}, "h")
    if not is_skew(h, n - 1):
        raise ValueError("h is not skew-symmetric in l1..l(n-1)")
    ls = lambdas(n - 1)
    table = {}
    if h:
        table[(0,) * (n - 1) + (1,)] = PolyValue({1: h})
        # the key with e2 in slot n-1 and e1 last, from the last-slot relation
        partner = -h.substitute({lam(n - 1): -D - sum(ls, ZERO)})
        table[(0,) * (n - 2) + (1, 0)] = PolyValue({1: partner})
    return NlcaPresentation(n, names, table, builder="rank2_ii")


def matrix_poly(a: Sequence[Sequence]) -> MultiPoly:
    """``h(x, y) = sum a_ij x^i y^j`` with ``x = l1``, ``y = l2``, indices from 0."""
    terms = []
    for i, row in enumerate(a):
        for j, c in enumerate(row):
            if c:
                terms.append(({lam(1): i, lam(2): j}, Fraction(c)))
    return MultiPoly.from_terms(terms)


def _check_antisymmetric(a: Sequence[Sequence]) -> int:
    m = len(a)
    for row in a:
        if len(row) != m:
            raise ValueError("matrix is not square")
    for i in range(m):
        for j in range(m):
            if Fraction(a[i][j]) != -Fraction(a[j][i]):
                raise ValueError(f"matrix is not antisymmetric at ({i},{j})")
    return m


def rank2_family_ii_matrix(a: Sequence[Sequence]) -> NlcaPresentation:
    _check_antisymmetric(a)
    A = rank2_family_ii(3, matrix_poly(a))
    A.params["matrix"] = ";".join(",".join(str(Fraction(c)) for c in row) for row in a)
    return A


def filippov_constraint_residual(h: MultiPoly, n: int) -> MultiPoly:
    """sum_i (-1)^(n-i) h(l_i, l_{n+1}, ..., l_{2n-2}) h(l_1, ..^i.., l_n)."""
    h = MultiPoly.lift(h)
    ls = lambdas(2 * n - 2)
    out = ZERO
    for i in range(n):
        first = h.substitute({lam(k + 1): v for k, v in enumerate((ls[i],) + ls[n:])})
        rest = [ls[j] for j in range(n) if j != i]
        second = h.substitute({lam(k + 1): v for k, v in enumerate(rest)})
        term = first * second
        out = out + term if (n - 1 - i) % 2 == 0 else out - term
    return out


def plucker_check(a: Sequence[Sequence]) -> CheckReport:
    """a_ij a_kl - a_ik a_jl + a_il a_jk = 0 over all ordered index quadruples."""
    m = _check_antisymmetric(a)
    A = [[Fraction(c) for c in row] for row in a]
    count = 0
    for i, j, k, l in product(range(m), repeat=4):
        count += 1
        r = A[i][j] * A[k][l] - A[i][k] * A[j][l] + A[i][l] * A[j][k]
        if r:
            r = r.numerator if r.denominator == 1 else r
            return failed("plucker", "Plucker", (i, j, k, l), str(r), count=count)
    return passed("plucker", count)


def pseudo_translate(A: NlcaPresentation) -> dict[tuple, PolyValue]:
    """Pseudo-bracket coefficients ``P(x) = Q(-x_1, .., -x_(n-1); d = x_1 + .. + x_n)``.

    The result is keyed like the table; the variable ``l_i`` stands for ``x_i``.
    """
    n = A.n
    xs = lambdas(n)
    binding = {lam(i + 1): -xs[i] for i in range(n - 1)}
    binding[PARTIAL] = sum(xs, ZERO)
    out = {}
    for key in product(range(A.dim), repeat=n):
        val = bracket_generators(A, key)
        if val:
            out[key] = val.substitute(binding)
    return out
