"""Exact sparse multivariate polynomials over the rationals.

Variables are the formal derivation ``d`` (written ∂ in the math) and an
open-ended family of indexed lambda variables ``l<block>_<slot>``.  Every
value is immutable; arithmetic never rounds.

Monomials are packed into Python integers, 16 bits of exponent per
variable, with bit positions handed out by a process-wide append-only
registry.  The packing is an implementation detail: ordering, rendering and
equality only ever look at exponents keyed by :class:`VarId`.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache
from math import factorial
from numbers import Rational
from typing import Iterable, Mapping, NamedTuple, Sequence, Union

__all__ = [
    "VarId",
    "PARTIAL",
    "lam",
    "MultiPoly",
    "poly_add",
    "poly_mul",
    "substitute",
    "divided_power_coefficient",
    "ZERO",
    "ONE",
    "D",
]

_BITS = 16
_FIELD = (1 << _BITS) - 1


class VarId(NamedTuple):
    """A polynomial variable.

    ``kind`` is 0 for the derivation and 1 for lambda variables, so tuple
    comparison gives the fixed order: ∂ first, then lambdas by (block, slot).
    """

    kind: int
    block: int = 0
    slot: int = 0

    @property
    def is_partial(self) -> bool:
        return self.kind == 0

    def __str__(self) -> str:
        if self.kind == 0:
            return "d"
        if self.block == 0:
            return f"l{self.slot}"
        return f"l{self.block}_{self.slot}"


PARTIAL = VarId(0, 0, 0)


def lam(slot: int, block: int = 0) -> VarId:
    """The lambda variable ``l<slot>`` (block 0) or ``l<block>_<slot>``."""
    return VarId(1, block, slot)


class _Registry:
    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._pos: dict[VarId, int] = {}
        self._vars: list[VarId] = []

    def position(self, v: VarId) -> int:
        pos = self._pos.get(v)
        if pos is None:
            with self._lock:
                pos = self._pos.get(v)
                if pos is None:
                    pos = len(self._vars)
                    self._vars.append(v)
                    self._pos[v] = pos
        return pos

    def var(self, pos: int) -> VarId:
        return self._vars[pos]


_REG = _Registry()


def _shift(v: VarId) -> int:
    return _REG.position(v) * _BITS


@lru_cache(maxsize=1 << 16)
def _decode(mono: int) -> tuple[tuple[VarId, int], ...]:
    """Exponent list of a packed monomial, sorted by VarId."""
    out = []
    pos = 0
    while mono:
        e = mono & _FIELD
        if e:
            out.append((_REG.var(pos), e))
        mono >>= _BITS
        pos += 1
    out.sort()
    return tuple(out)


def _encode(exps: Mapping[VarId, int]) -> int:
    mono = 0
    for v, e in exps.items():
        if e < 0:
            raise ValueError(f"negative exponent for {v}")
        if e > _FIELD:
            raise OverflowError(f"exponent {e} of {v} exceeds {_FIELD}")
        if e:
            mono |= e << _shift(v)
    return mono


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


Coeff = Union[int, Fraction]
PolyLike = Union["MultiPoly", int, Fraction]


# images of bound monomials, per binding; shared across calls
_PATTERNS: dict[tuple, dict[int, "MultiPoly"]] = {}


class MultiPoly:
    """Immutable polynomial: a map from packed monomials to nonzero rationals."""

    __slots__ = ("_t", "_hash")

    def __init__(self, terms: Mapping[int, Coeff] | None = None, *, _clean: bool = False):
        if terms is None:
            self._t: dict[int, Coeff] = {}
        elif _clean:
            self._t = terms  # type: ignore[assignment]
        else:
            t = {}
            for m, c in terms.items():
                if c:
                    t[m] = _norm(c)
            self._t = t
        self._hash = None

    # -- construction -----------------------------------------------------
    @classmethod
    def const(cls, c: Rational) -> "MultiPoly":
        if isinstance(c, float):
            raise TypeError("floating point coefficients are not allowed")
        c = _norm(Fraction(c)) if not isinstance(c, int) else c
        return cls({0: c}, _clean=True) if c else cls()

    @classmethod
    def var(cls, v: VarId) -> "MultiPoly":
        return cls({1 << _shift(v): 1}, _clean=True)

    @classmethod
    def monomial(cls, exps: Mapping[VarId, int], coeff: Rational = 1) -> "MultiPoly":
        if not coeff:
            return cls()
        return cls({_encode(exps): _norm(Fraction(coeff)) if not isinstance(coeff, int) else coeff}, _clean=True)

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[Mapping[VarId, int], Rational]]) -> "MultiPoly":
        acc: dict[int, Coeff] = {}
        for exps, c in terms:
            m = _encode(exps)
            acc[m] = acc.get(m, 0) + c
        return cls(acc)

    @staticmethod
    def lift(x: PolyLike) -> "MultiPoly":
        if isinstance(x, MultiPoly):
            return x
        return MultiPoly.const(x)

    # -- inspection -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self) -> bool:
        return bool(self._t)

    def __len__(self) -> int:
        return len(self._t)

    def terms(self) -> list[tuple[tuple[tuple[VarId, int], ...], Coeff]]:
        """Terms in canonical graded-lex order, highest degree first."""
        items = [(_decode(m), c) for m, c in self._t.items()]
        items.sort(key=_grlex_key)
        return items

    def variables(self) -> frozenset[VarId]:
        out = set()
        for m in self._t:
            for v, _ in _decode(m):
                out.add(v)
        return frozenset(out)

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and 0 in self._t)

    def constant_term(self) -> Coeff:
        return self._t.get(0, 0)

    def total_degree(self, among: Iterable[VarId] | None = None) -> int:
        """Maximum total degree (optionally counting only ``among``); -1 for zero."""
        if not self._t:
            return -1
        sel = None if among is None else set(among)
        best = 0
        for m in self._t:
            deg = sum(e for v, e in _decode(m) if sel is None or v in sel)
            best = max(best, deg)
        return best

    def degree(self, v: VarId) -> int:
        if not self._t:
            return -1
        sh = _shift(v)
        return max((m >> sh) & _FIELD for m in self._t)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other: PolyLike) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            if isinstance(other, float):
                return NotImplemented
            other = MultiPoly.const(other)
        if not other._t:
            return self
        if not self._t:
            return other
        if len(other._t) > len(self._t):
            a, b = other._t, self._t
        else:
            a, b = self._t, other._t
        t = dict(a)
        for m, c in b.items():
            s = t.get(m)
            if s is None:
                t[m] = c
            else:
                s = s + c
                if s:
                    t[m] = _norm(s)
                else:
                    del t[m]
        return MultiPoly(t, _clean=True)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly({m: -c for m, c in self._t.items()}, _clean=True)

    def __sub__(self, other: PolyLike) -> "MultiPoly":
        return self + (-MultiPoly.lift(other))

    def __rsub__(self, other: PolyLike) -> "MultiPoly":
        return MultiPoly.lift(other) + (-self)

    def scale(self, c: Rational) -> "MultiPoly":
        if not c:
            return MultiPoly()
        if c == 1:
            return self
        return MultiPoly({m: _norm(v * c) for m, v in self._t.items()}, _clean=True)

    def __mul__(self, other: PolyLike) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            if isinstance(other, float):
                return NotImplemented
            return self.scale(other)
        a, b = self._t, other._t
        if not a or not b:
            return MultiPoly()
        if len(b) == 1:
            (mb, cb), = b.items()
            if mb == 0:
                return self.scale(cb)
            return MultiPoly({m + mb: _norm(c * cb) for m, c in a.items()}, _clean=True)
        if len(a) == 1:
            return other * self
        t: dict[int, Coeff] = {}
        get = t.get
        for ma, ca in a.items():
            for mb, cb in b.items():
                m = ma + mb
                t[m] = get(m, 0) + ca * cb
        return MultiPoly(t)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        if k < 0:
            raise ValueError("negative power")
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, MultiPoly):
            return self._t == other._t
        if isinstance(other, (int, Fraction)):
            return self._t == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    # -- substitution and coefficient extraction -------------------------
    def substitute(self, bindings: Mapping[VarId, PolyLike]) -> "MultiPoly":
        """Simultaneous substitution; unbound variables pass through."""
        if not self._t or not bindings:
            return self
        fields = []
        mask = 0
        for v, img in bindings.items():
            sh = _shift(v)
            fields.append((sh, MultiPoly.lift(img)))
            mask |= _FIELD << sh
        if not any(m & mask for m in self._t):
            return self
        keep = ~mask
        fields.sort(key=lambda f: f[0])
        bkey = tuple(fields)
        pattern_cache = _PATTERNS.get(bkey)
        if pattern_cache is None:
            if len(_PATTERNS) > 4096:
                _PATTERNS.clear()
            pattern_cache = _PATTERNS[bkey] = {}
        acc: dict[int, Coeff] = {}
        for m, c in self._t.items():
            bound = m & mask
            rest = m & keep
            img = pattern_cache.get(bound)
            if img is None:
                img = ONE
                for sh, p in fields:
                    e = (bound >> sh) & _FIELD
                    if e:
                        img = img * p ** e
                pattern_cache[bound] = img
            for mi, ci in img._t.items():
                mm = mi + rest
                acc[mm] = acc.get(mm, 0) + c * ci
        return MultiPoly(acc)

    def coefficients(self, vars: Sequence[VarId]) -> dict[tuple[int, ...], "MultiPoly"]:
        """Split into ``{exponents of vars: coefficient polynomial}``."""
        shifts = [_shift(v) for v in vars]
        mask = 0
        for sh in shifts:
            mask |= _FIELD << sh
        keep = ~mask
        out: dict[tuple[int, ...], dict[int, Coeff]] = {}
        for m, c in self._t.items():
            key = tuple((m >> sh) & _FIELD for sh in shifts)
            out.setdefault(key, {})[m & keep] = c
        return {k: MultiPoly(t, _clean=True) for k, t in out.items()}

    def divided_power_coefficients(self, vars: Sequence[VarId]) -> dict[tuple[int, ...], "MultiPoly"]:
        """Like :meth:`coefficients` but each scaled by ``prod k_i!``."""
        out = {}
        for k, p in self.coefficients(vars).items():
            f = 1
            for e in k:
                f *= factorial(e)
            out[k] = p.scale(f)
        return out

    def divided_power_coefficient(self, vars: Sequence[VarId], k: Sequence[int]) -> "MultiPoly":
        if len(vars) != len(k):
            raise ValueError("vars and k must have equal length")
        if len(set(vars)) != len(vars):
            raise ValueError("vars must be distinct")
        return self.divided_power_coefficients(vars).get(tuple(k), ZERO)

    # -- rendering --------------------------------------------------------
    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"MultiPoly({render(self)!r})"


def _grlex_key(item):
    # higher degree first; ties broken lexicographically under the VarId order,
    # larger exponent on the earlier variable first
    exps, _ = item
    return (-sum(e for _, e in exps), tuple((v, -e) for v, e in exps))


def _fmt_coeff(c: Coeff) -> str:
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def render_monomial(exps, names: Mapping[VarId, str] | None = None) -> str:
    parts = []
    for v, e in exps:
        s = names.get(v, str(v)) if names else str(v)
        parts.append(s if e == 1 else f"{s}^{e}")
    return "*".join(parts)


def render(p: MultiPoly, names: Mapping[VarId, str] | None = None) -> str:
    """Bit-stable text form, e.g. ``d^2 - 1/2*l1*l2_1 + 3``.

    ``names`` optionally overrides how individual variables are printed.
    """
    if p.is_zero():
        return "0"
    out = []
    for i, (exps, c) in enumerate(p.terms()):
        neg = c < 0
        a = -c if neg else c
        mono = render_monomial(exps, names)
        if not mono:
            body = _fmt_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_fmt_coeff(a)}*{mono}"
        if i == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


ZERO = MultiPoly()
ONE = MultiPoly.const(1)
D = MultiPoly.var(PARTIAL)


def poly_add(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    return a + b


def poly_mul(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    return a * b


def substitute(p: MultiPoly, bindings: Mapping[VarId, PolyLike]) -> MultiPoly:
    return p.substitute(bindings)


def divided_power_coefficient(p: MultiPoly, vars: Sequence[VarId], k: Sequence[int]) -> MultiPoly:
    """``prod k_i!`` times the coefficient of ``prod vars_i^k_i`` in ``p``."""
    return p.divided_power_coefficient(vars, k)


def L(slot: int, block: int = 0) -> MultiPoly:
    """Shorthand for the lambda variable as a polynomial."""
    return MultiPoly.var(lam(slot, block))
