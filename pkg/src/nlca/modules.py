"""Conformal modules, conformal linear maps, derivations and semidirect sums."""

from __future__ import annotations

from itertools import product
from typing import Mapping, Sequence

from .algebra import (NlcaPresentation, PolyValue, ZERO_VALUE, _sort_with_sign, bracket, lambdas)
from .annihilation import AnnElement, AnnGenerator, AnnihilationAlgebra, windows
from .poly import D, PARTIAL, ZERO, MultiPoly, PolyLike, VarId, lam
from .report import CheckReport, combine, failed, passed


class ConformalModule:
    """A free C[d]-module with an action of ``n-1`` algebra generators.

    ``action`` maps ``(i_1, .., i_{n-1}, j)`` with the algebra indices
    non-decreasing to the action on module generator ``j``: a PolyValue over
    module generators in ``d, l1..l(n-1)``.  Other orders follow from
    skew-symmetry in the algebra slots.
    """

    def __init__(self, n: int, alg_dim: int, names: Sequence[str],
                 action: Mapping[tuple, PolyValue] | None = None):
        if len(set(names)) != len(names):
            raise ValueError("module generator names must be distinct")
        self.n = n
        self.alg_dim = alg_dim
        self.names = list(names)
        self.labels = lambdas(n - 1)
        allowed = {PARTIAL} | {lam(i) for i in range(1, n)}
        K = len(names)
        clean = {}
        for key, val in (action or {}).items():
            key = tuple(key)
            if len(key) != n:
                raise ValueError(f"action key {key} has length {len(key)}, expected {n}")
            head, j = key[:-1], key[-1]
            if any(not 0 <= k < alg_dim for k in head) or not 0 <= j < K:
                raise ValueError(f"action key {key} uses an unknown generator")
            if list(head) != sorted(head):
                raise ValueError(f"action key {key} is not canonical")
            if any(k >= K for k in val.support()):
                raise ValueError(f"action value of {key} uses an unknown module generator")
            extra = val.variables() - allowed
            if extra:
                raise ValueError(f"action value of {key} uses variables {sorted(map(str, extra))}")
            if val:
                clean[key] = val
        self.action = clean
        self._cache: dict = {}

    @property
    def dim(self) -> int:
        return len(self.names)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ConformalModule):
            return NotImplemented
        return (self.n, self.alg_dim, self.names, self.action) == (other.n, other.alg_dim, other.names, other.action)

    def __repr__(self) -> str:
        return f"ConformalModule(n={self.n}, generators={self.names}, entries={len(self.action)})"

    def at(self, head: Sequence[int], j: int, labels: Sequence[MultiPoly] | None = None) -> PolyValue:
        head = tuple(head)
        labels = self.labels if labels is None else tuple(labels)
        ck = (head, j, labels)
        hit = self._cache.get(ck)
        if hit is not None:
            return hit
        order, sign = _sort_with_sign(head)
        val = self.action.get(tuple(head[i] for i in order) + (j,))
        if val is None:
            out = ZERO_VALUE
        else:
            binding = {lam(s + 1): labels[order[s]] for s in range(self.n - 1)}
            out = val.substitute(binding)
            if sign < 0:
                out = -out
        self._cache[ck] = out
        return out


def adjoint_module(A: NlcaPresentation, names: Sequence[str] | None = None) -> ConformalModule:
    """R acting on itself by the bracket."""
    names = list(names) if names else [f"m{i + 1}" for i in range(A.dim)]
    return ConformalModule(A.n, A.dim, names, A.table)


def trivial_module(A: NlcaPresentation, names: Sequence[str] = ("m1",)) -> ConformalModule:
    return ConformalModule(A.n, A.dim, names, {})


def eval_action(M: ConformalModule, A: NlcaPresentation, args: Sequence[PolyValue], v: PolyValue,
                labels: Sequence[PolyLike] | None = None) -> PolyValue:
    """``a^1_{l1} .. a^{n-1}_{l(n-1)} v`` for arbitrary elements and labels.

    A ``d`` in an algebra slot becomes minus its label; a ``d`` on the
    module element becomes ``d`` plus the sum of the labels.
    """
    n = M.n
    if len(args) != n - 1:
        raise ValueError(f"expected {n - 1} algebra arguments, got {len(args)}")
    labels = M.labels if labels is None else tuple(MultiPoly.lift(x) for x in labels)
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
    last = [(k, c.substitute(shift)) for k, c in v.items()]
    acc = ZERO_VALUE
    for combo in product(*slots):
        head = tuple(k for k, _ in combo)
        coef = MultiPoly.const(1)
        for _, c in combo:
            coef = coef * c
        for k, c in last:
            val = M.at(head, k, labels)
            if val:
                acc = acc + val.scale(coef * c)
    return acc


def _gens(dim: int) -> list[PolyValue]:
    return [PolyValue.gen(k) for k in range(dim)]


def _fmt(A, M, head, extra=()) -> tuple:
    return tuple(A.names[k] for k in head) + tuple(extra)


def check_module_skew(M: ConformalModule, A: NlcaPresentation) -> CheckReport:
    n = M.n
    L = M.labels
    count = 0
    for head in product(range(A.dim), repeat=n - 1):
        for j in range(M.dim):
            count += 1
            val = M.at(head, j)
            for i in range(n - 2):
                sh = list(head)
                sh[i], sh[i + 1] = sh[i + 1], sh[i]
                sl = list(L)
                sl[i], sl[i + 1] = sl[i + 1], sl[i]
                res = val + M.at(sh, j, sl)
                if res:
                    return failed("module-skew", "module-skew", _fmt(A, M, head, (M.names[j],)),
                                  res.render(M.names), f"slots {i + 1},{i + 2}", count)
    return passed("module-skew", count)


def module_filippov_a_residual(M, A, a, b, j) -> PolyValue:
    """The first module Filippov relation, LHS minus RHS, in ``l1..l(2n-2)``."""
    n = M.n
    lab = lambdas(2 * n - 2)
    tail = lab[n:]
    ge = _gens(A.dim)
    bs = [ge[k] for k in b]
    v = PolyValue.gen(j)
    res = ZERO_VALUE
    for i in range(n):
        inner = eval_action(M, A, [ge[a[i]]] + bs, v, (lab[i],) + tail)
        if not inner:
            continue
        outer = eval_action(M, A, [ge[a[k]] for k in range(n) if k != i], inner,
                            [lab[k] for k in range(n) if k != i])
        res = res + outer if (n - 1 - i) % 2 == 0 else res - outer
    br = bracket(A, [ge[k] for k in a], lab[: n - 1])
    if br:
        res = res - eval_action(M, A, [br] + bs, v, (sum(lab[:n], ZERO),) + tail)
    return res


def _block(count: int, block: int) -> tuple[MultiPoly, ...]:
    return tuple(MultiPoly.var(lam(s, block)) for s in range(1, count + 1))


def module_filippov_b_residual(M, A, a, b, j) -> PolyValue:
    """The commutator relation: a(b v) - b(a v) against the expansion of [L(a)_l L(b)].

    ``a`` carries labels in block 1 and ``b`` in block 2.
    """
    n = M.n
    la, lb = _block(n - 1, 1), _block(n - 1, 2)
    total_a = sum(la, ZERO)
    ge = _gens(A.dim)
    aa = [ge[k] for k in a]
    bb = [ge[k] for k in b]
    v = PolyValue.gen(j)
    lhs = eval_action(M, A, aa, eval_action(M, A, bb, v, lb), la) \
        - eval_action(M, A, bb, eval_action(M, A, aa, v, la), lb)
    rhs = ZERO_VALUE
    for s in range(n - 1):
        inner = bracket(A, aa + [bb[s]], la)
        if not inner:
            continue
        args = list(bb)
        args[s] = inner
        labels = list(lb)
        labels[s] = lb[s] + total_a
        rhs = rhs + eval_action(M, A, args, v, labels)
    return lhs - rhs


def _first_failure(name, residual, cases, M, A) -> CheckReport:
    count = 0
    for a, b, j in cases:
        count += 1
        res = residual(M, A, a, b, j)
        if res:
            return failed(name, name, _fmt(A, M, a + b, (M.names[j],)), res.render(M.names), count=count)
    return passed(name, count)


def check_module_filippov(M: ConformalModule, A: NlcaPresentation) -> list[CheckReport]:
    n, N, K = M.n, A.dim, M.dim
    cases_a = product(product(range(N), repeat=n), product(range(N), repeat=n - 2), range(K))
    cases_b = product(product(range(N), repeat=n - 1), product(range(N), repeat=n - 1), range(K))
    return [
        _first_failure("module-filippov-a", module_filippov_a_residual, cases_a, M, A),
        _first_failure("module-filippov-b", module_filippov_b_residual, cases_b, M, A),
    ]


def check_module_axioms(M: ConformalModule, A: NlcaPresentation) -> CheckReport:
    """Skew-symmetry in the algebra slots and both module Filippov relations."""
    if M.n != A.n or M.alg_dim != A.dim:
        raise ValueError("module does not match the algebra")
    return combine("module", [check_module_skew(M, A)] + check_module_filippov(M, A))


class CendOperator:
    """A conformal linear map ``f_x`` on a free C[d]-module with generators ``0..dim-1``.

    ``images[k]`` is ``f_x`` of generator ``k`` as a polynomial in ``d``, the
    evaluation variable ``x = var`` and any parameters.  On general elements
    ``f_x (d v) = (d + x + shift) f_x v``.
    """

    def __init__(self, images: Sequence[PolyValue], var: VarId, shift: PolyLike = 0):
        self.images = list(images)
        self.var = var
        self.shift = MultiPoly.lift(shift)
        if var in self.shift.variables():
            raise ValueError("the shift may not involve the evaluation variable")

    @property
    def dim(self) -> int:
        return len(self.images)

    def variables(self) -> set[VarId]:
        out = {self.var} | self.shift.variables()
        for im in self.images:
            out |= im.variables()
        return out - {PARTIAL}

    def apply(self, x: PolyValue, at: PolyLike | None = None) -> PolyValue:
        """``f_at x``; ``at`` defaults to the evaluation variable itself."""
        xv = MultiPoly.var(self.var)
        at = xv if at is None else MultiPoly.lift(at)
        if at == xv:
            imgs = self.images
        else:
            imgs = [im.substitute({self.var: at}) for im in self.images]
        sub = {PARTIAL: D + at + self.shift}
        acc = ZERO_VALUE
        for k, c in x.items():
            if imgs[k]:
                acc = acc + imgs[k].scale(c.substitute(sub))
        return acc

    def partial(self) -> "CendOperator":
        """``(d f)_x = -x f_x``."""
        xv = MultiPoly.var(self.var)
        return CendOperator([im.scale(-xv) for im in self.images], self.var, self.shift)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CendOperator):
            return NotImplemented
        return (self.images, self.var, self.shift) == (other.images, other.var, other.shift)

    def is_zero(self) -> bool:
        return all(not im for im in self.images)


def _fresh_block(*ops: CendOperator) -> int:
    used = 0
    for f in ops:
        for v in f.variables():
            used = max(used, v.block)
    return used + 1


def cend_bracket(f: CendOperator, g: CendOperator, lam_var: VarId | None = None,
                 mu_var: VarId | None = None) -> CendOperator:
    """``[f_l g]_m v = f_l(g_{m-l} v) - g_{m-l}(f_l v)``, an operator in ``m`` with ``l`` free."""
    if f.dim != g.dim:
        raise ValueError("operators act on different carriers")
    if lam_var is None or mu_var is None:
        b = _fresh_block(f, g)
        lam_var = lam_var or lam(1, b)
        mu_var = mu_var or lam(2, b)
    l = MultiPoly.var(lam_var)
    m = MultiPoly.var(mu_var)
    images = []
    for k in range(f.dim):
        v = PolyValue.gen(k)
        images.append(f.apply(g.apply(v, m - l), l) - g.apply(f.apply(v, l), m - l))
    return CendOperator(images, mu_var, f.shift + g.shift)


def inner_derivation(A: NlcaPresentation, a: Sequence[PolyValue], block: int = 1) -> CendOperator:
    """``r -> [a^1_{x1} .. a^{n-1}_x r]`` with parameters ``x1..x(n-2)`` and evaluation ``x``.

    The variables live in ``block``: parameters ``l<block>_1..`` and the
    evaluation variable in slot ``n-1``.
    """
    n = A.n
    if len(a) != n - 1:
        raise ValueError(f"expected {n - 1} elements, got {len(a)}")
    labels = _block(n - 1, block)
    images = [bracket(A, list(a) + [PolyValue.gen(k)], labels) for k in range(A.dim)]
    return CendOperator(images, lam(n - 1, block), sum(labels[:-1], ZERO))


def derivation_residual(f: CendOperator, A: NlcaPresentation, key: Sequence[int]) -> PolyValue:
    n = A.n
    xi = A.labels
    ge = _gens(A.dim)
    args = [ge[k] for k in key]
    x = MultiPoly.var(f.var)
    res = f.apply(bracket(A, args, xi))
    for i in range(n - 1):
        img = f.apply(args[i])
        if not img:
            continue
        new = list(args)
        new[i] = img
        labels = list(xi)
        labels[i] = xi[i] + x + f.shift
        res = res - bracket(A, new, labels)
    img = f.apply(args[-1])
    if img:
        res = res - bracket(A, args[:-1] + [img], xi)
    return res


def check_derivation(f: CendOperator, A: NlcaPresentation) -> CheckReport:
    """``f_x [a^1 .. a^n]`` against the sum over slots of ``f`` applied there."""
    if f.dim != A.dim:
        raise ValueError("operator does not act on the algebra")
    bad = {v for v in f.variables() if v.block == 0}
    if bad:
        raise ValueError("operator variables must avoid block 0, used for bracket labels")
    count = 0
    for key in product(range(A.dim), repeat=A.n):
        count += 1
        res = derivation_residual(f, A, key)
        if res:
            return failed("derivation", "derivation", tuple(A.names[k] for k in key), res.render(A.names),
                          count=count)
    return passed("derivation", count)


def inner_bracket_expansion(A: NlcaPresentation, a: Sequence[PolyValue], b: Sequence[PolyValue],
                            r: PolyValue, lam_var: VarId, mu_var: VarId) -> PolyValue:
    """The slot-replacement expansion of ``[L(a)_l L(b)]_m r``.

    ``a`` uses block 1 and ``b`` block 2 for their parameters, as built by
    :func:`inner_derivation`.
    """
    n = A.n
    la = _block(n - 2, 1)
    mb = _block(n - 2, 2)
    l = MultiPoly.var(lam_var)
    m = MultiPoly.var(mu_var)
    shift_a = sum(la, ZERO)
    out = ZERO_VALUE
    for s in range(n - 1):
        inner = bracket(A, list(a) + [b[s]], la + (l,))
        if not inner:
            continue
        args = list(b) + [r]
        args[s] = inner
        if s < n - 2:
            labels = list(mb) + [m - l]
            labels[s] = l + shift_a + mb[s]
        else:
            labels = list(mb) + [shift_a + m]
        out = out + bracket(A, args, labels)
    return out


def check_inner_bracket_expansion(A: NlcaPresentation, a: Sequence[PolyValue], b: Sequence[PolyValue]) -> CheckReport:
    La = inner_derivation(A, a, 1)
    Lb = inner_derivation(A, b, 2)
    lv, mv = lam(1, 3), lam(2, 3)
    h = cend_bracket(La, Lb, lv, mv)
    for k in range(A.dim):
        res = h.images[k] - inner_bracket_expansion(A, a, b, PolyValue.gen(k), lv, mv)
        if res:
            return failed("inner-bracket", "inner-bracket", (A.names[k],), res.render(A.names), count=k + 1)
    return passed("inner-bracket", A.dim)


def semidirect_sum(A: NlcaPresentation, M: ConformalModule, validate: bool = True) -> NlcaPresentation:
    """R + M with at most one module entry per bracket; module generators follow R's."""
    if validate:
        rep = check_module_axioms(M, A)
        if not rep:
            raise ValueError(f"module axioms fail: {rep.axiom} at {rep.where}")
    clash = set(A.names) & set(M.names)
    if clash:
        raise ValueError(f"generator names shared by algebra and module: {sorted(clash)}")
    n, N, K = A.n, A.dim, M.dim
    L = A.labels
    total = sum(L, ZERO)

    def lift_m(val: PolyValue) -> PolyValue:
        return PolyValue({N + k: c for k, c in val.items()})

    table = dict(A.table)
    for key in product(range(N + K), repeat=n):
        if list(key[:-1]) != sorted(key[:-1]):
            continue
        mods = [i for i, k in enumerate(key) if k >= N]
        if len(mods) != 1:
            continue
        i = mods[0]
        if i == n - 1:
            val = M.at(key[:-1], key[-1] - N)
        else:
            # move the module entry to the end; the last algebra entry takes label -d - sum
            head = [key[s] for s in range(n - 1) if s != i] + [key[-1]]
            labels = [L[s] for s in range(n - 1) if s != i] + [-D - total]
            val = M.at(head, key[i] - N, labels)
            if (n - 1 - i) % 2:
                val = -val
        if val:
            table[key] = lift_m(val)
    return NlcaPresentation(n, A.names + M.names, table, builder="semidirect")


def module_to_ann_rep(M: ConformalModule, A: NlcaPresentation, p: int, args: Sequence[AnnGenerator],
                      v: PolyValue) -> PolyValue:
    """``(a^1_{m^1}, .., a^{n-1}_{m^{n-1}}) v``: the divided-power coefficient at ``(|m^1|, ..)``."""
    n = M.n
    if len(args) != n - 1:
        raise ValueError(f"expected {n - 1} annihilation generators")
    k = []
    for g, m in args:
        if len(m) != p or any(x < 0 for x in m):
            raise ValueError("bad multi-index")
        k.append(sum(m))
    ge = _gens(A.dim)
    val = eval_action(M, A, [ge[g] for g, _ in args], v)
    vars_ = [lam(i) for i in range(1, n)]
    return val.map_coeffs(lambda c: c.divided_power_coefficient(vars_, k))


def _ann_rep(M, A, p, gens, x: PolyValue) -> PolyValue:
    return module_to_ann_rep(M, A, p, gens, x)


def check_ann_rep(M: ConformalModule, A: NlcaPresentation, p: int, max_total_degree: int) -> CheckReport:
    """The n-Lie representation identities for the induced action on truncated windows.

    Commutator form: rho(x) rho(y) - rho(y) rho(x) = sum_l rho(y_1 .. [x, y_l] .. y_{n-1}).
    Bracket form: rho([x_1..x_n], y) = sum_i (-1)^(n-i) rho(x_1..^i..x_n) rho(x_i, y).
    """
    n = A.n
    L = AnnihilationAlgebra(A, p)
    count = 0

    def rho_el(elem_terms, v):
        # multilinear in AnnElement arguments
        acc = ZERO_VALUE
        for combo in product(*elem_terms):
            c = 1
            for _, x in combo:
                c *= x
            acc = acc + _ann_rep(M, A, p, [g for g, _ in combo], v).scale(c)
        return acc

    def where(gens):
        return tuple(f"{A.names[g]}[{','.join(map(str, m))}]" for g, m in gens)

    for ms in windows(p, 2 * (n - 1), max_total_degree):
        for gs in product(range(A.dim), repeat=2 * (n - 1)):
            gens = list(zip(gs, ms))
            x, y = gens[: n - 1], gens[n - 1:]
            for j in range(M.dim):
                count += 1
                v = PolyValue.gen(j)
                lhs = _ann_rep(M, A, p, x, _ann_rep(M, A, p, y, v)) - _ann_rep(M, A, p, y, _ann_rep(M, A, p, x, v))
                rhs = ZERO_VALUE
                for l in range(n - 1):
                    inner = L.bracket([AnnElement.gen(*t) for t in x] + [AnnElement.gen(*y[l])])
                    if not inner:
                        continue
                    terms = [[(t, 1)] for t in y]
                    terms[l] = list(inner._t.items())
                    rhs = rhs + rho_el(terms, v)
                res = lhs - rhs
                if res:
                    return failed("ann-rep", "ann-rep-commutator", where(gens) + (M.names[j],),
                                  res.render(M.names), count=count)
    for ms in windows(p, 2 * n - 2, max_total_degree):
        for gs in product(range(A.dim), repeat=2 * n - 2):
            gens = list(zip(gs, ms))
            x, y = gens[:n], gens[n:]
            br = L.bracket_generators(x)
            for j in range(M.dim):
                count += 1
                v = PolyValue.gen(j)
                lhs = rho_el([list(br._t.items())] + [[(t, 1)] for t in y], v) if br else ZERO_VALUE
                rhs = ZERO_VALUE
                for i in range(n):
                    inner = _ann_rep(M, A, p, [x[i]] + y, v)
                    if not inner:
                        continue
                    term = _ann_rep(M, A, p, [x[k] for k in range(n) if k != i], inner)
                    rhs = rhs + term if (n - 1 - i) % 2 == 0 else rhs - term
                res = lhs - rhs
                if res:
                    return failed("ann-rep", "ann-rep-bracket", where(gens) + (M.names[j],),
                                  res.render(M.names), count=count)
    return passed("ann-rep", count)
