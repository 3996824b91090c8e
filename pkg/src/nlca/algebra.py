"""Finite free n-Lie conformal algebras presented by structure constants.

A presentation stores, for every generator tuple whose first ``n-1`` entries
are non-decreasing, the bracket ``[e_i1 _l1 ... _l(n-1) e_in]`` as a
:class:`PolyValue` in ``d, l1..l(n-1)``.  Every other ordering is obtained by
sorting the first ``n-1`` slots together with their lambda labels.
"""

from __future__ import annotations

from itertools import product
from typing import Iterable, Mapping, Sequence

from .nlie import NLieAlgebra, perm_sign
from .poly import D, ONE, PARTIAL, ZERO, MultiPoly, PolyLike, VarId, lam, render
from .report import CheckReport, failed, passed


class PolyValue:
    """A finite sum ``sum_k c_k(d, lambdas) e_k`` with polynomial coefficients."""

    __slots__ = ("_c", "_h")

    def __init__(self, coeffs: Mapping[int, PolyLike] | None = None, *, _clean: bool = False):
        if coeffs is None:
            self._c: dict[int, MultiPoly] = {}
        elif _clean:
            self._c = coeffs  # type: ignore[assignment]
        else:
            c = {}
            for k, p in coeffs.items():
                p = MultiPoly.lift(p)
                if p:
                    c[int(k)] = p
            self._c = c
        self._h = None

    @classmethod
    def gen(cls, k: int, coeff: PolyLike = 1) -> "PolyValue":
        return cls({k: coeff})

    def items(self):
        return sorted(self._c.items())

    def coeff(self, k: int) -> MultiPoly:
        return self._c.get(k, ZERO)

    def support(self) -> list[int]:
        return sorted(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def __add__(self, other: "PolyValue") -> "PolyValue":
        if not other._c:
            return self
        if not self._c:
            return other
        c = dict(self._c)
        for k, p in other._c.items():
            s = c.get(k)
            if s is None:
                c[k] = p
            else:
                s = s + p
                if s:
                    c[k] = s
                else:
                    del c[k]
        return PolyValue(c, _clean=True)

    def __neg__(self) -> "PolyValue":
        return PolyValue({k: -p for k, p in self._c.items()}, _clean=True)

    def __sub__(self, other: "PolyValue") -> "PolyValue":
        return self + (-other)

    def scale(self, f: PolyLike) -> "PolyValue":
        """Multiply every coefficient by the scalar polynomial ``f``."""
        f = MultiPoly.lift(f)
        if not f or not self._c:
            return ZERO_VALUE
        if f == ONE:
            return self
        c = {}
        for k, p in self._c.items():
            q = p * f
            if q:
                c[k] = q
        return PolyValue(c, _clean=True)

    __mul__ = scale
    __rmul__ = scale

    def substitute(self, bindings: Mapping[VarId, PolyLike]) -> "PolyValue":
        return PolyValue({k: p.substitute(bindings) for k, p in self._c.items()})

    def map_coeffs(self, fn) -> "PolyValue":
        return PolyValue({k: fn(p) for k, p in self._c.items()})

    def variables(self) -> frozenset[VarId]:
        out: set = set()
        for p in self._c.values():
            out |= p.variables()
        return frozenset(out)

    def total_degree(self, among: Iterable[VarId] | None = None) -> int:
        if not self._c:
            return -1
        among = None if among is None else list(among)
        return max(p.total_degree(among) for p in self._c.values())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyValue):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        if self._h is None:
            self._h = hash(frozenset(self._c.items()))
        return self._h

    def render(self, names: Sequence[str] | None = None) -> str:
        if not self._c:
            return "0"
        out = []
        for k, p in self.items():
            name = names[k] if names else f"e{k + 1}"
            if len(p) == 1:
                body = render(p)
                neg = body.startswith("-")
                body = body.lstrip("-")
                body = name if body == "1" else f"{body}*{name}"
            else:
                neg = False
                body = f"({render(p)})*{name}"
            if not out:
                out.append(f"-{body}" if neg else body)
            else:
                out.append(f" - {body}" if neg else f" + {body}")
        return "".join(out)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"PolyValue({self.render()!r})"


ZERO_VALUE = PolyValue()

# Elements of R itself: polynomial coefficients in d only.
ConformalElement = PolyValue


def element(terms: Mapping[int, PolyLike]) -> ConformalElement:
    """Build an element of R from ``{generator: polynomial in d}``."""
    el = PolyValue(terms)
    for p in el._c.values():
        if p.variables() - {PARTIAL}:
            raise ValueError("elements of R carry polynomials in d only")
    return el


def lambdas(count: int, block: int = 0) -> tuple[MultiPoly, ...]:
    return tuple(MultiPoly.var(lam(i, block)) for i in range(1, count + 1))


def _sort_with_sign(key: Sequence[int]) -> tuple[list[int], int]:
    """Stable sorting permutation of ``key`` and its sign."""
    order = sorted(range(len(key)), key=lambda i: key[i])
    return order, perm_sign(order)


class NlcaPresentation:
    """Arity ``n``, generator names, and the canonical structure-constant table."""

    def __init__(self, n: int, names: Sequence[str], table: Mapping[tuple, PolyValue] | None = None,
                 *, builder: str | None = None, params: Mapping[str, str] | None = None):
        if n < 2:
            raise ValueError("arity must be at least 2")
        if len(set(names)) != len(names):
            raise ValueError("generator names must be distinct")
        self.n = n
        self.names = list(names)
        self.builder = builder
        self.params = dict(params or {})
        self.labels = lambdas(n - 1)
        allowed = {PARTIAL} | {lam(i) for i in range(1, n)}
        N = len(names)
        clean: dict[tuple, PolyValue] = {}
        for key, val in (table or {}).items():
            key = tuple(key)
            if len(key) != n:
                raise ValueError(f"tuple {key} has length {len(key)}, expected {n}")
            if any(not 0 <= k < N for k in key):
                raise ValueError(f"tuple {key} uses an unknown generator")
            if list(key[:-1]) != sorted(key[:-1]):
                raise ValueError(f"tuple {key} is not canonical: first n-1 entries must be non-decreasing")
            if not isinstance(val, PolyValue):
                raise TypeError("table values must be PolyValue")
            if any(k >= N for k in val.support()):
                raise ValueError(f"value of {key} uses an unknown generator")
            extra = val.variables() - allowed
            if extra:
                raise ValueError(f"value of {key} uses variables {sorted(map(str, extra))}")
            if val:
                clean[key] = val
        self.table = clean
        self._cache: dict = {}

    @property
    def dim(self) -> int:
        return len(self.names)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NlcaPresentation):
            return NotImplemented
        return self.n == other.n and self.names == other.names and self.table == other.table

    def __repr__(self) -> str:
        return f"NlcaPresentation(n={self.n}, generators={self.names}, entries={len(self.table)})"

    def max_degree(self, include_partial: bool = True) -> int:
        """Largest total degree in the table (``d`` included unless told otherwise)."""
        vars_ = None if include_partial else [lam(i) for i in range(1, self.n)]
        return max((v.total_degree(vars_) for v in self.table.values()), default=-1)

    def is_commutative(self) -> bool:
        return not self.table

    def at(self, key: Sequence[int], labels: Sequence[MultiPoly] | None = None) -> PolyValue:
        """Bracket of generators, with the formal lambdas replaced by ``labels``."""
        key = tuple(key)
        labels = self.labels if labels is None else tuple(labels)
        ck = (key, labels)
        hit = self._cache.get(ck)
        if hit is not None:
            return hit
        head = key[:-1]
        order, sign = _sort_with_sign(head)
        skey = tuple(head[i] for i in order) + (key[-1],)
        val = self.table.get(skey)
        if val is None:
            out = ZERO_VALUE
        else:
            binding = {lam(j + 1): labels[order[j]] for j in range(self.n - 1)}
            if all(binding[lam(j + 1)] == self.labels[j] for j in range(self.n - 1)):
                out = val
            else:
                out = val.substitute(binding)
            if sign < 0:
                out = -out
        self._cache[ck] = out
        return out


def bracket_generators(A: NlcaPresentation, key: Sequence[int]) -> PolyValue:
    if len(key) != A.n:
        raise ValueError(f"expected {A.n} generators, got {len(key)}")
    return A.at(key)


def bracket(A: NlcaPresentation, args: Sequence[PolyValue],
            labels: Sequence[PolyLike] | None = None) -> PolyValue:
    """The lambda-bracket of arbitrary arguments with arbitrary labels.

    Argument coefficients may involve ``d`` and any other variables.  A ``d``
    in slot ``i < n`` is replaced by minus that slot's label; a ``d`` in the
    last slot by ``d`` plus the sum of all labels.
    """
    n = A.n
    if len(args) != n:
        raise ValueError(f"expected {n} arguments, got {len(args)}")
    labels = A.labels if labels is None else tuple(MultiPoly.lift(x) for x in labels)
    if len(labels) != n - 1:
        raise ValueError(f"expected {n - 1} labels, got {len(labels)}")
    slots = []
    for i in range(n - 1):
        sub = {PARTIAL: -labels[i]}
        terms = [(k, c.substitute(sub)) for k, c in args[i].items()]
        terms = [(k, c) for k, c in terms if c]
        if not terms:
            return ZERO_VALUE
        slots.append(terms)
    shift = {PARTIAL: D + sum(labels, ZERO)}
    last = [(k, c.substitute(shift)) for k, c in args[-1].items()]
    if not last:
        return ZERO_VALUE
    acc = ZERO_VALUE
    for combo in product(*slots):
        head = tuple(k for k, _ in combo)
        coef = ONE
        for _, c in combo:
            coef = coef * c
        for k, c in last:
            val = A.at(head + (k,), labels)
            if val:
                acc = acc + val.scale(coef * c)
    return acc


def eval_bracket(A: NlcaPresentation, args: Sequence[PolyValue]) -> PolyValue:
    """The bracket with the standard labels ``l1..l(n-1)``."""
    return bracket(A, args)


def k_products(A: NlcaPresentation, key: Sequence[int], k: Sequence[int]) -> PolyValue:
    """Divided-power coefficient of the generator bracket at ``l^(k)``."""
    if len(key) != A.n or len(k) != A.n - 1:
        raise ValueError("arity mismatch")
    vars_ = [lam(i) for i in range(1, A.n)]
    val = bracket_generators(A, key)
    return val.map_coeffs(lambda p: p.divided_power_coefficient(vars_, k))


def k_product_table(A: NlcaPresentation, key: Sequence[int]) -> dict[tuple[int, ...], PolyValue]:
    """All nonzero k-products of a generator tuple, keyed by ``k``."""
    vars_ = [lam(i) for i in range(1, A.n)]
    out: dict[tuple, dict] = {}
    for g, p in bracket_generators(A, key).items():
        for k, c in p.divided_power_coefficients(vars_).items():
            out.setdefault(k, {})[g] = c
    return {k: PolyValue(v) for k, v in out.items()}


def zeroth_product_algebra(A: NlcaPresentation) -> NLieAlgebra:
    """Structure constants of R / dR under the 0-th product."""
    zero = {PARTIAL: 0}
    br = {}
    for key in product(range(A.dim), repeat=A.n):
        val = k_products(A, key, [0] * (A.n - 1))
        vec = {}
        for g, p in val.items():
            c = p.substitute(zero).constant_term()
            if c:
                vec[g] = c
        if vec:
            br[key] = vec
    return NLieAlgebra(A.n, A.dim, br, A.names)


def _names(A: NlcaPresentation, key) -> tuple[str, ...]:
    return tuple(A.names[k] for k in key)


def check_skew(A: NlcaPresentation) -> CheckReport:
    """Both skew-symmetry relations on every generator tuple."""
    n = A.n
    L = A.labels
    total = sum(L, ZERO)
    count = 0
    for key in product(range(A.dim), repeat=n):
        count += 1
        val = A.at(key)
        for i in range(n - 2):
            sk = list(key)
            sk[i], sk[i + 1] = sk[i + 1], sk[i]
            sl = list(L)
            sl[i], sl[i + 1] = sl[i + 1], sl[i]
            res = val + A.at(sk, sl)
            if res:
                return failed("skew", "skew-adjacent", _names(A, key), res.render(A.names),
                              f"slots {i + 1},{i + 2}", count)
        sk = list(key)
        sk[-2], sk[-1] = sk[-1], sk[-2]
        sl = list(L[:-1]) + [-D - total]
        res = val + A.at(sk, sl)
        if res:
            return failed("skew", "skew-last", _names(A, key), res.render(A.names),
                          "last-slot relation", count)
    return passed("skew", count)


def filippov_residual(A: NlcaPresentation, a: Sequence[int], b: Sequence[int]) -> PolyValue:
    """LHS minus RHS of the Filippov identity on generators, in ``l1..l(2n-2)``."""
    n = A.n
    lab = lambdas(2 * n - 2)
    tail = lab[n:]
    gens = [PolyValue.gen(k) for k in range(A.dim)]
    bs = [gens[k] for k in b]
    res = ZERO_VALUE
    for i in range(n):
        inner = bracket(A, [gens[a[i]]] + bs, (lab[i],) + tail)
        if not inner:
            continue
        outer_args = [gens[a[j]] for j in range(n) if j != i] + [inner]
        outer_labels = [lab[j] for j in range(n) if j != i]
        term = bracket(A, outer_args, outer_labels)
        res = res + term if (n - 1 - i) % 2 == 0 else res - term
    inner0 = bracket(A, [gens[k] for k in a], lab[: n - 1])
    if inner0:
        res = res - bracket(A, [inner0] + bs, (sum(lab[:n], ZERO),) + tail)
    return res


def check_filippov(A: NlcaPresentation) -> CheckReport:
    n = A.n
    count = 0
    for a in product(range(A.dim), repeat=n):
        for b in product(range(A.dim), repeat=n - 1):
            count += 1
            res = filippov_residual(A, a, b)
            if res:
                return failed("filippov", "filippov", _names(A, a) + _names(A, b),
                              res.render(A.names), count=count)
    return passed("filippov", count)


def check_axioms(A: NlcaPresentation) -> list[CheckReport]:
    return [check_skew(A), check_filippov(A)]
