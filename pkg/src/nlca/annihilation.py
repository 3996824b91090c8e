"""Annihilation algebras: the non-negative part of R[t_1..t_p] modulo d + sum d/dt_i.

Elements are finite rational combinations of ``a_m = a (x) t^m`` with ``a`` a
generator and ``m`` a multi-index in N^p.  All checks run over explicit
finite windows of multi-indices.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, product
from math import comb, factorial
from typing import Callable, Iterable, Mapping, Sequence

from .algebra import (NlcaPresentation, PolyValue, ZERO_VALUE, bracket, k_product_table)
from .poly import D, ONE, PARTIAL, ZERO, MultiPoly, lam
from .report import CheckReport, combine, failed, passed

AnnGenerator = tuple  # (generator index, multi-index tuple)


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


class AnnElement:
    """Immutable map from ``(generator, multi-index)`` to a nonzero rational."""

    __slots__ = ("_t",)

    def __init__(self, terms: Mapping[AnnGenerator, object] | None = None, *, _clean: bool = False):
        if terms is None:
            self._t: dict = {}
        elif _clean:
            self._t = terms  # type: ignore[assignment]
        else:
            t = {}
            for (g, m), c in terms.items():
                if c:
                    t[(int(g), tuple(m))] = _norm(Fraction(c)) if not isinstance(c, int) else c
            self._t = t

    @classmethod
    def gen(cls, g: int, m: Sequence[int], c=1) -> "AnnElement":
        return cls({(g, tuple(m)): c})

    def items(self):
        return sorted(self._t.items())

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self) -> bool:
        return bool(self._t)

    def __add__(self, other: "AnnElement") -> "AnnElement":
        t = dict(self._t)
        _axpy(t, 1, other._t)
        return AnnElement(t, _clean=True)

    def __neg__(self) -> "AnnElement":
        return AnnElement({k: -c for k, c in self._t.items()}, _clean=True)

    def __sub__(self, other: "AnnElement") -> "AnnElement":
        t = dict(self._t)
        _axpy(t, -1, other._t)
        return AnnElement(t, _clean=True)

    def scale(self, c) -> "AnnElement":
        if not c:
            return AnnElement()
        return AnnElement({k: _norm(v * c) for k, v in self._t.items()}, _clean=True)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AnnElement):
            return NotImplemented
        return self._t == other._t

    def __hash__(self) -> int:
        return hash(frozenset(self._t.items()))

    def coeff(self, g: int, m: Sequence[int]):
        return self._t.get((g, tuple(m)), 0)

    def render(self, names: Sequence[str] | None = None) -> str:
        if not self._t:
            return "0"
        out = []
        for i, ((g, m), c) in enumerate(self.items()):
            name = names[g] if names else f"e{g + 1}"
            body = f"{name}[{','.join(map(str, m))}]"
            neg = c < 0
            a = -c if neg else c
            if a != 1:
                body = f"{a}*{body}"
            if i == 0:
                out.append(f"-{body}" if neg else body)
            else:
                out.append(f" - {body}" if neg else f" + {body}")
        return "".join(out)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"AnnElement({self.render()!r})"


def _axpy(acc: dict, c, terms: Mapping) -> None:
    for k, v in terms.items():
        s = acc.get(k, 0) + c * v
        if s:
            acc[k] = _norm(s)
        else:
            acc.pop(k, None)


def _sub_unit(m: tuple, i: int) -> tuple:
    return m[:i] + (m[i] - 1,) + m[i + 1:]


def partial_action(p: int, x: AnnElement) -> AnnElement:
    """d(a_m) = -sum_i m_i a_{m - e_i}."""
    acc: dict = {}
    for (g, m), c in x._t.items():
        for i in range(p):
            if m[i]:
                _axpy(acc, -c * m[i], {(g, _sub_unit(m, i)): 1})
    return AnnElement(acc, _clean=True)


def dti_action(p: int, i: int, x: AnnElement) -> AnnElement:
    """d/dt_i (a_m) = m_i a_{m - e_i}, with ``i`` counted from 1."""
    if not 1 <= i <= p:
        raise ValueError(f"derivation index {i} out of range 1..{p}")
    i -= 1
    acc: dict = {}
    for (g, m), c in x._t.items():
        if m[i]:
            _axpy(acc, c * m[i], {(g, _sub_unit(m, i)): 1})
    return AnnElement(acc, _clean=True)


def filtration_degree(x: AnnElement) -> float | int:
    if not x._t:
        return math.inf
    return min(sum(m) for _, m in x._t)


def place(value: PolyValue, m: Sequence[int]) -> AnnElement:
    """The image of ``sum_g c_g(d) e_g`` at multi-index ``m``: ``(d^r e)_m = d^r (e_m)``."""
    m = tuple(m)
    p = len(m)
    acc: dict = {}
    for g, poly in value.items():
        by_power = poly.coefficients([PARTIAL])
        if not by_power:
            continue
        top = max(r for (r,) in by_power)
        cur = AnnElement.gen(g, m)
        for r in range(top + 1):
            c = by_power.get((r,))
            if c is not None:
                if not c.is_constant():
                    raise ValueError("placement needs coefficients polynomial in d only")
                _axpy(acc, c.constant_term(), cur._t)
            if r < top:
                cur = partial_action(p, cur)
    return AnnElement(acc, _clean=True)


class AnnihilationAlgebra:
    """The level-``p`` annihilation algebra of a presentation, with caches."""

    def __init__(self, A: NlcaPresentation, p: int):
        if p < 1:
            raise ValueError("level p must be at least 1")
        self.A = A
        self.p = p
        self._kp: dict = {}
        self._br: dict = {}

    def kprods(self, key: tuple) -> list:
        hit = self._kp.get(key)
        if hit is None:
            hit = sorted(k_product_table(self.A, key).items())
            self._kp[key] = hit
        return hit

    def bracket_generators(self, gens: Sequence[AnnGenerator]) -> AnnElement:
        gens = tuple((g, tuple(m)) for g, m in gens)
        hit = self._br.get(gens)
        if hit is not None:
            return hit
        n, p = self.A.n, self.p
        key = tuple(g for g, _ in gens)
        ms = [m for _, m in gens]
        total = tuple(sum(m[i] for m in ms) for i in range(p))
        acc: dict = {}
        for k, val in self.kprods(key):
            # distribute k_l over the p components of slot l, bounded by m^l
            per_slot = []
            for l in range(n - 1):
                opts = []
                for js in _compositions(k[l], ms[l]):
                    w = 1
                    for i in range(p):
                        w *= comb(ms[l][i], js[i])
                    opts.append((js, w))
                if not opts:
                    break
                per_slot.append(opts)
            else:
                for choice in product(*per_slot):
                    w = 1
                    shift = [0] * p
                    for js, wl in choice:
                        w *= wl
                        for i in range(p):
                            shift[i] += js[i]
                    idx = tuple(total[i] - shift[i] for i in range(p))
                    _axpy(acc, w, place(val, idx)._t)
        out = AnnElement(acc, _clean=True)
        self._br[gens] = out
        return out

    def bracket(self, args: Sequence[AnnElement]) -> AnnElement:
        if len(args) != self.A.n:
            raise ValueError(f"expected {self.A.n} arguments")
        acc: dict = {}
        for combo in product(*[list(a._t.items()) for a in args]):
            c = 1
            for _, x in combo:
                c *= x
            _axpy(acc, c, self.bracket_generators([g for g, _ in combo])._t)
        return AnnElement(acc, _clean=True)

    def bracket_elements(self, items: Sequence[tuple[PolyValue, Sequence[int]]]) -> AnnElement:
        """Bracket of ``r_m`` for arbitrary elements ``r`` of R, straight from the k-products of ``r``."""
        n, p = self.A.n, self.p
        ms = [tuple(m) for _, m in items]
        total = tuple(sum(m[i] for m in ms) for i in range(p))
        val = bracket(self.A, [r for r, _ in items])
        vars_ = [lam(i) for i in range(1, n)]
        dp: dict[tuple, dict] = {}
        for g, poly in val.items():
            for k, c in poly.divided_power_coefficients(vars_).items():
                dp.setdefault(k, {})[g] = c
        acc: dict = {}
        for k, coeffs in dp.items():
            kval = PolyValue(coeffs)
            per_slot = []
            for l in range(n - 1):
                opts = []
                for js in _compositions(k[l], ms[l]):
                    w = 1
                    for i in range(p):
                        w *= comb(ms[l][i], js[i])
                    opts.append((js, w))
                per_slot.append(opts)
            for choice in product(*per_slot):
                w = 1
                shift = [0] * p
                for js, wl in choice:
                    w *= wl
                    for i in range(p):
                        shift[i] += js[i]
                _axpy(acc, w, place(kval, tuple(total[i] - shift[i] for i in range(p)))._t)
        return AnnElement(acc, _clean=True)

    def generators(self, max_degree: int) -> list[AnnGenerator]:
        return [(g, m) for m in multi_indices(self.p, max_degree) for g in range(self.A.dim)]


def _compositions(k: int, bound: Sequence[int]):
    """Tuples ``j`` with ``sum(j) == k`` and ``0 <= j_i <= bound_i``."""
    if not bound:
        if k == 0:
            yield ()
        return
    first, rest = bound[0], bound[1:]
    for j in range(min(k, first) + 1):
        for tail in _compositions(k - j, rest):
            yield (j,) + tail


def multi_indices(p: int, max_degree: int) -> list[tuple[int, ...]]:
    """All multi-indices in N^p of total degree at most ``max_degree``, graded."""
    out = []
    for d in range(max_degree + 1):
        out.extend(sorted(_exact(p, d), reverse=True))
    return out


def _exact(p: int, d: int):
    if p == 1:
        yield (d,)
        return
    for first in range(d + 1):
        for tail in _exact(p - 1, d - first):
            yield (first,) + tail


def windows(p: int, slots: int, max_total: int):
    """Assignments of multi-indices to ``slots`` slots with total degree <= max_total."""
    def rec(remaining, k):
        if k == 0:
            yield ()
            return
        for d in range(remaining + 1):
            for m in _exact(p, d):
                for tail in rec(remaining - d, k - 1):
                    yield (m,) + tail
    yield from rec(max_total, slots)


def ann_bracket(A: NlcaPresentation, p: int, args: Sequence[AnnElement]) -> AnnElement:
    return AnnihilationAlgebra(A, p).bracket(args)


def _ann(A, p, alg):
    if alg is not None:
        return alg
    return AnnihilationAlgebra(A, p)


def _gen_tuples(L: AnnihilationAlgebra, slots: int, max_total: int, each: bool = False):
    """Generator tuples whose indices have total degree <= max_total.

    With ``each`` the bound applies to every slot separately instead.
    """
    N = L.A.dim
    if each:
        idx = multi_indices(L.p, max_total)
        mss = product(idx, repeat=slots)
    else:
        mss = windows(L.p, slots, max_total)
    for ms in mss:
        for gs in product(range(N), repeat=slots):
            yield tuple(zip(gs, ms))


def _fmt_gens(L, gens) -> tuple:
    return tuple(f"{L.A.names[g]}[{','.join(map(str, m))}]" for g, m in gens)


def check_ann_skew(A: NlcaPresentation, p: int, max_total_degree: int, alg=None,
                   each: bool = False) -> CheckReport:
    """Skew-symmetry under every adjacent transposition, over the window."""
    L = _ann(A, p, alg)
    n = A.n
    count = 0
    for gens in _gen_tuples(L, n, max_total_degree, each):
        count += 1
        val = L.bracket_generators(gens)
        for i in range(n - 1):
            sw = list(gens)
            sw[i], sw[i + 1] = sw[i + 1], sw[i]
            res = val + L.bracket_generators(sw)
            if res:
                return failed("ann-skew", "skew", _fmt_gens(L, gens), res.render(A.names),
                              f"slots {i + 1},{i + 2}", count)
    return passed("ann-skew", count)


def check_ann_filippov_identity(A: NlcaPresentation, p: int, max_total_degree: int, alg=None,
                                sorted_only: bool = False, each: bool = False) -> CheckReport:
    """[[a1..an], b2..bn] = sum_i [a1..[ai, b2..bn]..an] over the window.

    With ``sorted_only`` the a's and b's are restricted to strictly increasing
    generator lists, which is complete once skew-symmetry is known.
    """
    L = _ann(A, p, alg)
    n = A.n
    count = 0
    for gens in _gen_tuples(L, 2 * n - 1, max_total_degree, each):
        a, b = gens[:n], gens[n:]
        if sorted_only and not (_strict(a) and _strict(b)):
            continue
        count += 1
        bs = [AnnElement.gen(g, m) for g, m in b]
        lhs = L.bracket([L.bracket_generators(a)] + bs)
        rhs = AnnElement()
        for i in range(n):
            inner = L.bracket([AnnElement.gen(*a[i])] + bs)
            if inner:
                args = [AnnElement.gen(*x) for x in a]
                args[i] = inner
                rhs = rhs + L.bracket(args)
        res = lhs - rhs
        if res:
            return failed("ann-filippov", "filippov", _fmt_gens(L, gens), res.render(A.names), count=count)
    return passed("ann-filippov", count)


def _strict(gens) -> bool:
    return all(gens[i] < gens[i + 1] for i in range(len(gens) - 1))


def check_ann_filippov(A: NlcaPresentation, p: int, max_total_degree: int, alg=None,
                       each: bool = False) -> CheckReport:
    """Skew-symmetry plus the Filippov identity on a finite window.

    By default the window bounds the total degree of the whole tuple; with
    ``each`` every argument is bounded separately (much larger).
    """
    L = _ann(A, p, alg)
    skew = check_ann_skew(A, p, max_total_degree, L, each)
    if not skew:
        return combine("ann-nlie", [skew])
    fil = check_ann_filippov_identity(A, p, max_total_degree, L, sorted_only=True, each=each)
    return combine("ann-nlie", [skew, fil])


def check_dti_leibniz(A: NlcaPresentation, p: int, max_total_degree: int, alg=None) -> CheckReport:
    """Each d/dt_i is a derivation of the bracket."""
    L = _ann(A, p, alg)
    n = A.n
    count = 0
    for gens in _gen_tuples(L, n, max_total_degree):
        val = L.bracket_generators(gens)
        for i in range(1, p + 1):
            count += 1
            rhs = AnnElement()
            for j in range(n):
                args = [AnnElement.gen(*x) for x in gens]
                args[j] = dti_action(p, i, args[j])
                if args[j]:
                    rhs = rhs + L.bracket(args)
            res = dti_action(p, i, val) - rhs
            if res:
                return failed("dti-leibniz", "dti-leibniz", _fmt_gens(L, gens), res.render(A.names),
                              f"derivation t{i}", count)
    return passed("dti-leibniz", count)


def check_partial_module(A: NlcaPresentation, p: int, max_total_degree: int, alg=None) -> CheckReport:
    """The d-action: d = -sum d/dt_i, d is a derivation, and (d r)_m = d(r_m) inside brackets."""
    L = _ann(A, p, alg)
    n = A.n
    count = 0
    for g, m in L.generators(max_total_degree):
        count += 1
        x = AnnElement.gen(g, m)
        s = AnnElement()
        for i in range(1, p + 1):
            s = s + dti_action(p, i, x)
        res = partial_action(p, x) + s
        if res:
            return failed("d-action", "d-action", _fmt_gens(L, [(g, m)]), res.render(A.names),
                          "d differs from -sum d/dt_i", count)
    gens_el = [PolyValue.gen(k) for k in range(A.dim)]
    for gens in _gen_tuples(L, n, max_total_degree):
        count += 1
        val = L.bracket_generators(gens)
        rhs = AnnElement()
        for j in range(n):
            args = [AnnElement.gen(*x) for x in gens]
            args[j] = partial_action(p, args[j])
            if args[j]:
                rhs = rhs + L.bracket(args)
        res = partial_action(p, val) - rhs
        if res:
            return failed("d-action", "d-action", _fmt_gens(L, gens), res.render(A.names),
                          "d is not a derivation", count)
        # bracket of (d e)_m computed from the conformal k-products of d*e
        for j in range(n):
            items = [(gens_el[g], m) for g, m in gens]
            items[j] = (gens_el[gens[j][0]].scale(D), gens[j][1])
            direct = L.bracket_elements(items)
            args = [AnnElement.gen(*x) for x in gens]
            args[j] = partial_action(p, args[j])
            res = direct - L.bracket(args)
            if res:
                return failed("d-action", "d-action", _fmt_gens(L, gens), res.render(A.names),
                              f"(d r)_m != d(r_m) in slot {j + 1}", count)
    return passed("d-action", count)


def reconstruction_sides(L: AnnihilationAlgebra, key: Sequence[int], ms: Sequence[Sequence[int]]):
    """Both sides of the identity recovering k-products from annihilation brackets."""
    A = L.A
    n, p = A.n, L.p
    ms = [tuple(m) for m in ms]
    k = [sum(m) for m in ms[:-1]]
    kp = dict(L.kprods(tuple(key)))
    lhs = place(kp.get(tuple(k), ZERO_VALUE), ms[-1])
    rhs: dict = {}
    ranges = [list(product(*[range(x + 1) for x in m])) for m in ms[:-1]]
    for js in product(*ranges):
        w = 1
        drop = 0
        last = list(ms[-1])
        for l, j in enumerate(js):
            for i in range(p):
                w *= comb(ms[l][i], j[i])
                drop += ms[l][i] - j[i]
                last[i] += ms[l][i] - j[i]
        sign = -1 if drop % 2 else 1
        gens = [(key[l], js[l]) for l in range(n - 1)] + [(key[-1], tuple(last))]
        _axpy(rhs, sign * w, L.bracket_generators(gens)._t)
    return lhs, AnnElement(rhs, _clean=True)


def check_reconstruction(A: NlcaPresentation, p: int, key: Sequence[int], ms: Sequence[Sequence[int]],
                         alg=None) -> CheckReport:
    L = _ann(A, p, alg)
    lhs, rhs = reconstruction_sides(L, key, ms)
    res = lhs - rhs
    where = _fmt_gens(L, list(zip(key, [tuple(m) for m in ms])))
    if res:
        return failed("reconstruction", "reconstruction", where, res.render(A.names), count=1)
    return passed("reconstruction", 1)


def check_reconstruction_window(A: NlcaPresentation, p: int, max_total_degree: int, alg=None) -> CheckReport:
    L = _ann(A, p, alg)
    count = 0
    for gens in _gen_tuples(L, A.n, max_total_degree):
        count += 1
        key = [g for g, _ in gens]
        ms = [m for _, m in gens]
        r = check_reconstruction(A, p, key, ms, L)
        if not r:
            return failed("reconstruction", r.axiom, r.where, r.residual, count=count)
    return passed("reconstruction", count)


def check_filtration(A: NlcaPresentation, p: int, max_total_degree: int, alg=None) -> CheckReport:
    """deg [x1..xn] >= sum deg x_i - s with s the total degree of the table (d included)."""
    L = _ann(A, p, alg)
    s = max(A.max_degree(include_partial=True), 0)
    count = 0
    for gens in _gen_tuples(L, A.n, max_total_degree):
        count += 1
        out = L.bracket_generators(gens)
        if filtration_degree(out) < sum(sum(m) for _, m in gens) - s:
            return failed("filtration", "filtration", _fmt_gens(L, gens), out.render(A.names),
                          f"shift s={s}", count)
    return passed("filtration", count)


def annihilation_suite(A: NlcaPresentation, p: int, max_total_degree: int) -> list[CheckReport]:
    L = AnnihilationAlgebra(A, p)
    return [
        check_dti_leibniz(A, p, max_total_degree, L),
        check_partial_module(A, p, max_total_degree, L),
        check_ann_filippov(A, p, max_total_degree, L),
        check_reconstruction_window(A, p, max_total_degree, L),
        check_filtration(A, p, max_total_degree, L),
    ]


def commutativity_check(A: NlcaPresentation, p: int, max_degree: int) -> tuple[bool, bool, CheckReport]:
    """Whether the table vanishes, whether all window brackets vanish, and their agreement."""
    L = AnnihilationAlgebra(A, p)
    table_zero = A.is_commutative()
    ann_zero = True
    for gens in _gen_tuples(L, A.n, max_degree):
        if L.bracket_generators(gens):
            ann_zero = False
            break
    if table_zero == ann_zero:
        rep = passed("commutativity", detail=f"table zero: {table_zero}; annihilation zero: {ann_zero}")
    else:
        rep = failed("commutativity", "commutativity", detail=f"table zero: {table_zero}; annihilation zero: {ann_zero}")
    return table_zero, ann_zero, rep


class NotEquivariantError(ValueError):
    """The annihilation map does not commute with some d/dt_i."""


class InconsistentHomError(ValueError):
    """No conformal map induces the given annihilation map."""


def _multinomial(js: Sequence[int]) -> int:
    out = factorial(sum(js))
    for j in js:
        out //= factorial(j)
    return out


def induce_hom(A: NlcaPresentation, B: NlcaPresentation, p: int,
               phi: Mapping[AnnGenerator, AnnElement] | Callable[[int, tuple], AnnElement],
               max_degree: int) -> tuple[list[PolyValue], CheckReport]:
    """Recover the conformal map R -> S inducing an annihilation map.

    ``phi`` gives the image of every generator ``a_m`` of A with
    ``sum(m) <= max_degree``.  Returns one element of S per generator of A
    (polynomials in d) and a report on bracket compatibility.
    """
    if A.n != B.n:
        raise ValueError("arity mismatch")
    get = phi if callable(phi) else (lambda g, m: phi[(g, tuple(m))])
    idx = multi_indices(p, max_degree)
    images = {(g, m): get(g, m) for m in idx for g in range(A.dim)}
    # equivariance: phi(d/dt_i a_m) = d/dt_i phi(a_m)
    for (g, m), img in images.items():
        for i in range(1, p + 1):
            lhs = dti_action(p, i, img)
            src = dti_action(p, i, AnnElement.gen(g, m))
            rhs = AnnElement()
            for (h, mm), c in src._t.items():
                rhs = rhs + images[(h, mm)].scale(c)
            res = lhs - rhs
            if res:
                raise NotEquivariantError(
                    f"{A.names[g]}[{','.join(map(str, m))}]: d/dt{i} residual {res.render(B.names)}")
    result = []
    for g in range(A.dim):
        # d^s_m = coefficient of s_0 in phi(a_m) divided by m!
        d: dict[tuple, dict] = {}
        for m in idx:
            mf = 1
            for x in m:
                mf *= factorial(x)
            for s in range(B.dim):
                c = images[(g, m)].coeff(s, (0,) * p)
                if c:
                    d.setdefault(m, {})[s] = Fraction(c) / mf
        # the ansatz phi(a_m) = sum_j (m!/j!) d_{m-j} s_j must reproduce phi
        for m in idx:
            pred: dict = {}
            for j in product(*[range(x + 1) for x in m]):
                w = Fraction(1)
                for a, b in zip(m, j):
                    w *= Fraction(factorial(a), factorial(b))
                diff = tuple(a - b for a, b in zip(m, j))
                for s, c in d.get(diff, {}).items():
                    _axpy(pred, w * c, {(s, j): 1})
            res = images[(g, m)] - AnnElement(pred)
            if res:
                raise InconsistentHomError(
                    f"{A.names[g]}[{','.join(map(str, m))}]: ansatz residual {res.render(B.names)}")
        # a polynomial in d requires d_j = c_|j| (-1)^|j| multinomial(j)
        coeffs: dict[int, dict] = {}
        for m in idx:
            k = sum(m)
            for s in range(B.dim):
                c = d.get(m, {}).get(s, 0)
                want = Fraction(c) / (_multinomial(m) * (-1) ** k)
                prev = coeffs.setdefault(k, {}).get(s)
                if prev is None:
                    coeffs[k][s] = want
                elif prev != want:
                    raise InconsistentHomError(
                        f"{A.names[g]}: coefficients at degree {k} are not a polynomial in d")
        el = {}
        for s in range(B.dim):
            poly = ZERO
            for k, row in coeffs.items():
                c = row.get(s, 0)
                if c:
                    poly = poly + MultiPoly.monomial({PARTIAL: k}, c)
            if poly:
                el[s] = poly
        result.append(PolyValue(el))
    return result, check_conformal_hom(A, B, result)


def apply_map(images: Sequence[PolyValue], x: PolyValue) -> PolyValue:
    """Extend a generator map d-linearly (d and lambdas in the coefficients pass through)."""
    acc = ZERO_VALUE
    for g, c in x.items():
        acc = acc + images[g].scale(c)
    return acc


def check_conformal_hom(A: NlcaPresentation, B: NlcaPresentation, images: Sequence[PolyValue]) -> CheckReport:
    """phi([e_i1 .. e_in]) = [phi e_i1 .. phi e_in] on every generator tuple."""
    count = 0
    for key in product(range(A.dim), repeat=A.n):
        count += 1
        lhs = apply_map(images, A.at(key))
        rhs = bracket(B, [images[k] for k in key])
        res = lhs - rhs
        if res:
            return failed("conformal-hom", "hom", tuple(A.names[k] for k in key), res.render(B.names),
                          count=count)
    return passed("conformal-hom", count)


def ann_map_from_conformal(images: Sequence[PolyValue]) -> Callable[[int, tuple], AnnElement]:
    """The annihilation map induced by a conformal map: a_m -> (phi a)_m."""
    def phi(g, m):
        return place(images[g], m)
    return phi
