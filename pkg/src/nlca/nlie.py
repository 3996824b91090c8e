"""Finite-dimensional n-Lie (Filippov) algebras given by structure constants."""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations, product
from typing import Mapping, Sequence

from .report import CheckReport, failed, passed

Vector = dict  # basis index -> nonzero rational


def perm_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq``; 0 if an entry repeats."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def _clean(vec: Mapping[int, object]) -> Vector:
    out = {}
    for k, c in vec.items():
        if c:
            c = Fraction(c)
            out[k] = c.numerator if c.denominator == 1 else c
    return out


def _axpy(acc: dict, c, vec: Mapping[int, object]) -> None:
    for k, v in vec.items():
        s = acc.get(k, 0) + c * v
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)


class NLieAlgebra:
    """An n-ary algebra on a basis ``0..dim-1``.

    ``brackets`` maps ordered index tuples to vectors.  Use
    :meth:`from_increasing` to give only the strictly increasing tuples and
    extend by total antisymmetry.
    """

    def __init__(self, n: int, dim: int, brackets: Mapping[tuple, Mapping[int, object]],
                 names: Sequence[str] | None = None):
        if n < 2:
            raise ValueError("arity must be at least 2")
        self.n = n
        self.dim = dim
        self.names = list(names) if names else [f"e{i + 1}" for i in range(dim)]
        table = {}
        for key, vec in brackets.items():
            key = tuple(key)
            if len(key) != n or any(not 0 <= k < dim for k in key):
                raise ValueError(f"bad bracket key {key}")
            v = _clean(vec)
            if v:
                table[key] = v
        self.brackets = table

    @classmethod
    def from_increasing(cls, n: int, dim: int, brackets: Mapping[tuple, Mapping[int, object]],
                        names: Sequence[str] | None = None) -> "NLieAlgebra":
        full = {}
        for key, vec in brackets.items():
            key = tuple(key)
            if list(key) != sorted(set(key)):
                raise ValueError(f"key {key} is not strictly increasing")
            for perm in permutations(range(n)):
                pk = tuple(key[p] for p in perm)
                s = perm_sign(perm)
                full[pk] = {k: s * Fraction(c) for k, c in vec.items()}
        return cls(n, dim, full, names)

    def bracket(self, key: Sequence[int]) -> Vector:
        return self.brackets.get(tuple(key), {})

    def bracket_vectors(self, vecs: Sequence[Mapping[int, object]]) -> Vector:
        acc: dict = {}
        for combo in product(*[list(v.items()) for v in vecs]):
            c = 1
            for _, x in combo:
                c *= x
            _axpy(acc, c, self.bracket(tuple(k for k, _ in combo)))
        return acc

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NLieAlgebra):
            return NotImplemented
        return (self.n, self.dim, self.brackets) == (other.n, other.dim, other.brackets)

    def __repr__(self) -> str:
        return f"NLieAlgebra(n={self.n}, dim={self.dim}, nonzero={len(self.brackets)})"


def check_nlie(g: NLieAlgebra) -> CheckReport:
    """Brute-force total antisymmetry and the Filippov identity."""
    n, N = g.n, g.dim
    count = 0
    for key in product(range(N), repeat=n):
        count += 1
        val = g.bracket(key)
        for i in range(n - 1):
            sw = list(key)
            sw[i], sw[i + 1] = sw[i + 1], sw[i]
            other = g.bracket(sw)
            res = dict(val)
            _axpy(res, 1, other)
            if res:
                return failed("nlie", "skew", key, _fmt_vec(res, g.names), count=count)
    # [x_1..x_{n-1}, [y_1..y_n]] = sum_i [y_1..[x_1..x_{n-1}, y_i]..y_n]
    inner_cache: dict = {}

    def ad(xs, y):
        k = (xs, y)
        v = inner_cache.get(k)
        if v is None:
            v = g.bracket(xs + (y,))
            inner_cache[k] = v
        return v

    for xs in product(range(N), repeat=n - 1):
        for ys in product(range(N), repeat=n):
            count += 1
            lhs = {}
            for k, c in g.bracket(ys).items():
                _axpy(lhs, c, ad(xs, k))
            for i in range(n):
                for k, c in ad(xs, ys[i]).items():
                    key = ys[:i] + (k,) + ys[i + 1:]
                    _axpy(lhs, -c, g.bracket(key))
            if lhs:
                return failed("nlie", "Filippov", xs + ys, _fmt_vec(lhs, g.names), count=count)
    return passed("nlie", count)


def _fmt_vec(vec: Mapping[int, object], names: Sequence[str]) -> str:
    if not vec:
        return "0"
    parts = []
    for k in sorted(vec):
        c = vec[k]
        parts.append(f"{c}*{names[k]}")
    return " + ".join(parts)


def simple_3lie() -> NLieAlgebra:
    """The 4-dimensional simple 3-Lie algebra, [e_i, e_j, e_k] = eps_{ijkl} e_l."""
    br = {}
    for l in range(4):
        rest = tuple(i for i in range(4) if i != l)
        # eps_{ijkl} for (i,j,k) increasing equals the sign of (i,j,k,l)
        br[rest] = {l: perm_sign(rest + (l,))}
    return NLieAlgebra.from_increasing(3, 4, br)
