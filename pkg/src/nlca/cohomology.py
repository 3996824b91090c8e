"""The basic cochain complex of a conformal module and its comparison map.

A degree-``q`` cochain takes ``q-1`` blocks of ``n-1`` algebra arguments and
one last argument.  Its values are module elements polynomial in ``d`` and
the labels ``l<b>_<s>`` (block ``b``, slot ``s``) and ``l<q-1>_<n>`` for the
last argument.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations, product
from math import factorial
from typing import Callable, Mapping, Sequence

from .algebra import NlcaPresentation, PolyValue, ZERO_VALUE, _sort_with_sign, bracket
from .annihilation import AnnElement, AnnihilationAlgebra, multi_indices, partial_action, windows
from .modules import ConformalModule, eval_action, module_to_ann_rep
from .nlie import perm_sign
from .poly import D, PARTIAL, ZERO, MultiPoly, PolyLike, VarId, lam
from .report import CheckReport, combine, failed, passed


def cochain_variables(n: int, q: int) -> list[VarId]:
    """Block labels in reading order, then the last label."""
    out = [lam(s, b) for b in range(1, q) for s in range(1, n)]
    out.append(lam(n, q - 1))
    return out


def _canonical(n: int, gens: tuple) -> tuple[tuple, list[int], int]:
    """Sort each block; return the canonical tuple, the label permutation and the sign."""
    size = n - 1
    nb = (len(gens) - 1) // size
    order: list[int] = []
    sign = 1
    for b in range(nb):
        block = gens[b * size:(b + 1) * size]
        o, s = _sort_with_sign(block)
        sign *= s
        order.extend(b * size + i for i in o)
    order.append(len(gens) - 1)
    return tuple(gens[i] for i in order), order, sign


def is_canonical(n: int, gens: Sequence[int]) -> bool:
    size = n - 1
    nb = (len(gens) - 1) // size
    return all(list(gens[b * size:(b + 1) * size]) == sorted(gens[b * size:(b + 1) * size]) for b in range(nb))


def canonical_tuples(n: int, q: int, dim: int):
    size = n - 1
    blocks = [c for c in product(range(dim), repeat=size) if list(c) == sorted(c)]
    for bs in product(blocks, repeat=q - 1):
        for last in range(dim):
            yield tuple(x for b in bs for x in b) + (last,)


class Cochain:
    """A cochain stored on canonical generator tuples, or computed lazily.

    ``values`` maps canonical tuples to PolyValues; ``func`` computes the
    value at a canonical tuple on demand.  Values on other orders follow
    from blockwise skew-symmetry; values on ``d``-multiples from conformal
    antilinearity.
    """

    def __init__(self, n: int, q: int, alg_dim: int, mod_dim: int,
                 values: Mapping[tuple, PolyValue] | None = None,
                 func: Callable[[tuple], PolyValue] | None = None):
        if q < 1:
            raise ValueError("cochain degree must be at least 1")
        self.n, self.q = n, q
        self.alg_dim, self.mod_dim = alg_dim, mod_dim
        self.vars = cochain_variables(n, q)
        self.labels = tuple(MultiPoly.var(v) for v in self.vars)
        self.arity = (q - 1) * (n - 1) + 1
        self._func = func
        self._vals: dict[tuple, PolyValue] = {}
        self._subs: dict = {}
        if values:
            allowed = set(self.vars) | {PARTIAL}
            for key, val in values.items():
                key = tuple(key)
                if len(key) != self.arity or any(not 0 <= k < alg_dim for k in key):
                    raise ValueError(f"bad cochain key {key}")
                if not is_canonical(n, key):
                    raise ValueError(f"cochain key {key} is not block-sorted")
                if any(k >= mod_dim for k in val.support()):
                    raise ValueError(f"value at {key} uses an unknown module generator")
                extra = val.variables() - allowed
                if extra:
                    raise ValueError(f"value at {key} uses variables {sorted(map(str, extra))}")
                if val:
                    self._vals[key] = val
        self._stored = values is not None

    def value(self, key: tuple) -> PolyValue:
        """Value at a canonical tuple with the standard labels."""
        hit = self._vals.get(key)
        if hit is not None:
            return hit
        if self._func is None:
            return ZERO_VALUE
        val = self._func(key)
        self._vals[key] = val
        return val

    def stored(self) -> dict[tuple, PolyValue]:
        """All nonzero canonical values (forces lazy cochains)."""
        out = {}
        for key in canonical_tuples(self.n, self.q, self.alg_dim):
            v = self.value(key)
            if v:
                out[key] = v
        return out

    def at(self, gens: Sequence[int], labels: Sequence[MultiPoly] | None = None) -> PolyValue:
        gens = tuple(gens)
        labels = self.labels if labels is None else tuple(labels)
        ck = (gens, labels)
        hit = self._subs.get(ck)
        if hit is not None:
            return hit
        key, order, sign = _canonical(self.n, gens)
        val = self.value(key)
        if val:
            binding = {self.vars[i]: labels[order[i]] for i in range(self.arity)}
            if any(binding[v] != self.labels[i] for i, v in enumerate(self.vars)):
                val = val.substitute(binding)
            if sign < 0:
                val = -val
        self._subs[ck] = val
        return val

    def evaluate(self, args: Sequence[PolyValue], labels: Sequence[PolyLike] | None = None) -> PolyValue:
        """Multilinear value on arbitrary arguments; ``d`` in any slot becomes minus its label."""
        if len(args) != self.arity:
            raise ValueError(f"expected {self.arity} arguments, got {len(args)}")
        labels = self.labels if labels is None else tuple(MultiPoly.lift(x) for x in labels)
        slots = []
        for a, lab in zip(args, labels):
            terms = []
            for k, c in a.items():
                if PARTIAL in c.variables():
                    c = c.substitute({PARTIAL: -lab})
                if c:
                    terms.append((k, c))
            if not terms:
                return ZERO_VALUE
            slots.append(terms)
        acc = ZERO_VALUE
        for combo in product(*slots):
            coef = None
            for _, c in combo:
                if c != 1:
                    coef = c if coef is None else coef * c
            val = self.at(tuple(k for k, _ in combo), labels)
            if val:
                acc = acc + (val if coef is None else val.scale(coef))
        return acc

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Cochain):
            return NotImplemented
        return (self.n, self.q, self.alg_dim) == (other.n, other.q, other.alg_dim) and self.stored() == other.stored()


def check_block_skew(g: Cochain) -> CheckReport:
    """Stored values on blocks with repeated generators must be skew in those labels."""
    n = g.n
    size = n - 1
    count = 0
    for key in canonical_tuples(n, g.q, g.alg_dim):
        count += 1
        val = g.value(key)
        if not val:
            continue
        for b in range(g.q - 1):
            for i in range(size - 1):
                p = b * size + i
                if key[p] == key[p + 1]:
                    labels = list(g.labels)
                    labels[p], labels[p + 1] = labels[p + 1], labels[p]
                    res = val + val.substitute({g.vars[k]: labels[k] for k in range(g.arity)})
                    if res:
                        return failed("block-skew", "block-skew", key, res.render(), f"block {b + 1}", count)
    return passed("block-skew", count)


def validate_cochain(g: Cochain) -> None:
    rep = check_block_skew(g)
    if not rep:
        raise ValueError(f"cochain violates blockwise skew-symmetry at {rep.where}")


def _random_poly(rng: random.Random, vars_: Sequence[VarId], max_degree: int, partial_degree: int,
                 density: float) -> MultiPoly:
    terms = []
    for e in product(range(max_degree + 1), repeat=len(vars_)):
        if sum(e) > max_degree:
            continue
        for dpow in range(partial_degree + 1):
            if rng.random() < density:
                c = rng.randint(-3, 3)
                if c:
                    exps = {v: x for v, x in zip(vars_, e) if x}
                    if dpow:
                        exps[PARTIAL] = dpow
                    terms.append((exps, c))
    return MultiPoly.from_terms(terms)


def random_cochain(n: int, q: int, alg_dim: int, mod_dim: int, rng: random.Random | int | None = None,
                   max_degree: int = 2, partial_degree: int = 1, density: float = 0.3) -> Cochain:
    """A random cochain with values of label-degree at most ``max_degree``.

    Values on blocks with repeated generators are antisymmetrized over the
    labels of the equal entries, so the result always satisfies blockwise
    skew-symmetry.
    """
    rng = rng if isinstance(rng, random.Random) else random.Random(rng)
    vars_ = cochain_variables(n, q)
    size = n - 1
    values = {}
    for key in canonical_tuples(n, q, alg_dim):
        comps = {}
        for k in range(mod_dim):
            p = _random_poly(rng, vars_, max_degree, partial_degree, density)
            p = _antisymmetrize(p, key, vars_, size, q)
            if p:
                comps[k] = p
        if comps:
            values[key] = PolyValue(comps)
    return Cochain(n, q, alg_dim, mod_dim, values)


def _antisymmetrize(p: MultiPoly, key: tuple, vars_, size: int, q: int) -> MultiPoly:
    for b in range(q - 1):
        block = key[b * size:(b + 1) * size]
        # positions of each repeated generator inside the block
        groups = {}
        for i, g in enumerate(block):
            groups.setdefault(g, []).append(b * size + i)
        for pos in groups.values():
            if len(pos) < 2:
                continue
            acc = ZERO
            for perm in permutations(range(len(pos))):
                binding = {vars_[pos[i]]: MultiPoly.var(vars_[pos[perm[i]]]) for i in range(len(pos))}
                term = p.substitute(binding)
                acc = acc + term if perm_sign(perm) > 0 else acc - term
            p = acc
    return p


def _gens(dim):
    return [PolyValue.gen(k) for k in range(dim)]


def differential_D(g: Cochain, A: NlcaPresentation, M: ConformalModule) -> Cochain:
    """The coboundary of ``g``; a lazily evaluated cochain of degree ``q+1``."""
    n, q = g.n, g.q
    if A.n != n or M.n != n or g.alg_dim != A.dim or g.mod_dim != M.dim:
        raise ValueError("cochain, algebra and module do not match")
    size = n - 1
    ge = _gens(A.dim)
    out_vars = cochain_variables(n, q + 1)
    L = [MultiPoly.var(v) for v in out_vars]

    def blocks_of(seq):
        return [list(seq[b * size:(b + 1) * size]) for b in range(q)], seq[-1]

    def compute(key: tuple) -> PolyValue:
        gblocks, glast = blocks_of([ge[k] for k in key])
        lblocks, llast = blocks_of(L)
        acc = ZERO_VALUE
        # block i acting on block j, slot by slot
        for i in range(q):
            tot_i = sum(lblocks[i], ZERO)
            for j in range(i + 1, q):
                for l in range(size):
                    inner = bracket(A, gblocks[i] + [gblocks[j][l]], lblocks[i])
                    if not inner:
                        continue
                    nb = list(gblocks[j])
                    nb[l] = inner
                    nl = list(lblocks[j])
                    nl[l] = lblocks[j][l] + tot_i
                    args, labs = [], []
                    for b in range(q):
                        if b == i:
                            continue
                        args += nb if b == j else gblocks[b]
                        labs += nl if b == j else lblocks[b]
                    term = g.evaluate(args + [glast], labs + [llast])
                    acc = acc + term if (i + 1) % 2 == 0 else acc - term
        # block i bracketed into the last argument
        for i in range(q):
            inner = bracket(A, gblocks[i] + [glast], lblocks[i])
            if not inner:
                continue
            args, labs = [], []
            for b in range(q):
                if b != i:
                    args += gblocks[b]
                    labs += lblocks[b]
            term = g.evaluate(args + [inner], labs + [llast + sum(lblocks[i], ZERO)])
            acc = acc + term if (i + 1) % 2 == 0 else acc - term
        # block i acting on the value
        for i in range(q):
            args, labs = [], []
            for b in range(q):
                if b != i:
                    args += gblocks[b]
                    labs += lblocks[b]
            val = g.evaluate(args + [glast], labs + [llast])
            if not val:
                continue
            term = eval_action(M, A, gblocks[i], val, lblocks[i])
            acc = acc + term if i % 2 == 0 else acc - term
        # the last block with the last argument acting on the value at one of its entries
        args = [x for b in range(q - 1) for x in gblocks[b]]
        labs = [x for b in range(q - 1) for x in lblocks[b]]
        for i in range(size):
            val = g.evaluate(args + [gblocks[q - 1][i]], labs + [lblocks[q - 1][i]])
            if not val:
                continue
            actors = [gblocks[q - 1][k] for k in range(size) if k != i] + [glast]
            alabs = [lblocks[q - 1][k] for k in range(size) if k != i] + [llast]
            term = eval_action(M, A, actors, val, alabs)
            acc = acc + term if (n + q - (i + 1) + 1) % 2 == 0 else acc - term
        return acc

    return Cochain(n, q + 1, g.alg_dim, g.mod_dim, func=compute)


def partial_on_cochain(g: Cochain) -> Cochain:
    """``(d g) = (d + sum of all labels) g``."""
    factor = D + sum(g.labels, ZERO)

    def compute(key):
        return g.value(key).scale(factor)

    return Cochain(g.n, g.q, g.alg_dim, g.mod_dim, func=compute)


def add_cochains(a: Cochain, b: Cochain, c=1) -> Cochain:
    """``a + c b``."""
    if (a.n, a.q, a.alg_dim, a.mod_dim) != (b.n, b.q, b.alg_dim, b.mod_dim):
        raise ValueError("cochains live in different spaces")
    return Cochain(a.n, a.q, a.alg_dim, a.mod_dim, func=lambda k: a.value(k) + b.value(k).scale(c))


def first_nonzero(g: Cochain, name: str, axiom: str, names: Sequence[str] | None = None) -> CheckReport:
    count = 0
    for key in canonical_tuples(g.n, g.q, g.alg_dim):
        count += 1
        v = g.value(key)
        if v:
            return failed(name, axiom, key, v.render(names), count=count)
    return passed(name, count)


def check_D_squared(g: Cochain, A: NlcaPresentation, M: ConformalModule) -> CheckReport:
    DDg = differential_D(differential_D(g, A, M), A, M)
    return first_nonzero(DDg, "D-squared", "D-squared", M.names)


def check_D_partial(g: Cochain, A: NlcaPresentation, M: ConformalModule) -> CheckReport:
    lhs = differential_D(partial_on_cochain(g), A, M)
    rhs = partial_on_cochain(differential_D(g, A, M))
    return first_nonzero(add_cochains(lhs, rhs, -1), "D-partial", "D-partial", M.names)


def check_D_block_skew(g: Cochain, A: NlcaPresentation, M: ConformalModule) -> CheckReport:
    """D g computed directly on swapped orders agrees with blockwise skew-symmetry."""
    Dg = differential_D(g, A, M)
    n, q = Dg.n, Dg.q
    size = n - 1
    count = 0
    for key in canonical_tuples(n, q, A.dim):
        base = Dg.value(key)
        for b in range(q - 1):
            for i in range(size - 1):
                p = b * size + i
                count += 1
                sw = list(key)
                sw[p], sw[p + 1] = sw[p + 1], sw[p]
                labels = list(Dg.labels)
                labels[p], labels[p + 1] = labels[p + 1], labels[p]
                direct = Dg._func(tuple(sw))
                res = direct + base.substitute({Dg.vars[k]: labels[k] for k in range(Dg.arity)})
                if res:
                    return failed("D-block-skew", "block-skew", tuple(sw), res.render(M.names), count=count)
    return passed("D-block-skew", count)


def cohomology_suite(A: NlcaPresentation, M: ConformalModule, q: int, trials: int, seed: int = 0,
                     max_degree: int = 2) -> list[CheckReport]:
    rng = random.Random(seed)
    squares, partials = [], []
    for _ in range(trials):
        g = random_cochain(A.n, q, A.dim, M.dim, rng, max_degree)
        squares.append(check_D_squared(g, A, M))
        partials.append(check_D_partial(g, A, M))
    return [combine(f"D-squared q={q}", squares), combine(f"D-partial q={q}", partials)]


# -- comparison with the annihilation complex ------------------------------------------

def _dp_at(val: PolyValue, vars_: Sequence[VarId], k: Sequence[int]) -> PolyValue:
    return val.map_coeffs(lambda c: c.divided_power_coefficient(list(vars_), list(k)))


def phi_map(g: Cochain, p: int, args: Sequence[tuple]) -> PolyValue:
    """``(phi g)(a_{m}, ..) = g_{(|m|, ..)}(a, ..)``: a divided-power coefficient."""
    if len(args) != g.arity:
        raise ValueError(f"expected {g.arity} arguments")
    for _, m in args:
        if len(m) != p or any(x < 0 for x in m):
            raise ValueError("bad multi-index")
    val = g.at(tuple(gen for gen, _ in args))
    return _dp_at(val, g.vars, [sum(m) for _, m in args])


class AnnCochain:
    """A cochain of the annihilation algebra with values in the module, given pointwise."""

    def __init__(self, n: int, q: int, p: int, func: Callable[[tuple], PolyValue]):
        self.n, self.q, self.p = n, q, p
        self.arity = (q - 1) * (n - 1) + 1
        self._func = func
        self._cache: dict = {}

    def at(self, gens: tuple) -> PolyValue:
        hit = self._cache.get(gens)
        if hit is None:
            hit = self._func(gens)
            self._cache[gens] = hit
        return hit

    def evaluate(self, args: Sequence[AnnElement]) -> PolyValue:
        acc = ZERO_VALUE
        for combo in product(*[list(a._t.items()) for a in args]):
            c = 1
            for _, x in combo:
                c *= x
            val = self.at(tuple(k for k, _ in combo))
            if val:
                acc = acc + val.scale(c)
        return acc


def phi(g: Cochain, p: int) -> AnnCochain:
    return AnnCochain(g.n, g.q, p, lambda gens: phi_map(g, p, gens))


def ann_partial(c: AnnCochain) -> AnnCochain:
    """``(d c)(x..) = d (c(x..)) - sum_slots c(.., d x, ..)``."""
    p = c.p

    def compute(gens):
        out = c.at(gens).scale(D)
        for i in range(len(gens)):
            dx = partial_action(p, AnnElement.gen(*gens[i]))
            if not dx:
                continue
            args = [AnnElement.gen(*x) for x in gens]
            args[i] = dx
            out = out - c.evaluate(args)
        return out

    return AnnCochain(c.n, c.q, p, compute)


def _rho(M, A, p, actors: Sequence[AnnElement], v: PolyValue) -> PolyValue:
    acc = ZERO_VALUE
    for combo in product(*[list(a._t.items()) for a in actors]):
        c = 1
        for _, x in combo:
            c *= x
        acc = acc + module_to_ann_rep(M, A, p, [k for k, _ in combo], v).scale(c)
    return acc


def nlie_cochain_differential(c: AnnCochain, A: NlcaPresentation, M: ConformalModule, p: int,
                              args: Sequence[tuple], alg: AnnihilationAlgebra | None = None) -> PolyValue:
    """The n-Lie coboundary of an annihilation cochain evaluated at generators ``args``."""
    n, q = c.n, c.q
    size = n - 1
    L = alg or AnnihilationAlgebra(A, p)
    x = [AnnElement.gen(*a) for a in args]
    if len(x) != q * size + 1:
        raise ValueError("wrong number of arguments")
    blocks = [x[b * size:(b + 1) * size] for b in range(q)]
    last = x[-1]
    acc = ZERO_VALUE
    for i in range(q):
        for j in range(i + 1, q):
            for l in range(size):
                inner = L.bracket(blocks[i] + [blocks[j][l]])
                if not inner:
                    continue
                nb = list(blocks[j])
                nb[l] = inner
                flat = [y for b in range(q) if b != i for y in (nb if b == j else blocks[b])]
                term = c.evaluate(flat + [last])
                acc = acc + term if (i + 1) % 2 == 0 else acc - term
    for i in range(q):
        inner = L.bracket(blocks[i] + [last])
        if not inner:
            continue
        flat = [y for b in range(q) if b != i for y in blocks[b]]
        term = c.evaluate(flat + [inner])
        acc = acc + term if (i + 1) % 2 == 0 else acc - term
    for i in range(q):
        flat = [y for b in range(q) if b != i for y in blocks[b]]
        val = c.evaluate(flat + [last])
        if val:
            term = _rho(M, A, p, blocks[i], val)
            acc = acc + term if i % 2 == 0 else acc - term
    flat = [y for b in range(q - 1) for y in blocks[b]]
    for i in range(size):
        val = c.evaluate(flat + [blocks[q - 1][i]])
        if not val:
            continue
        actors = [blocks[q - 1][k] for k in range(size) if k != i] + [last]
        term = _rho(M, A, p, actors, val)
        acc = acc + term if (n + q - (i + 1) + 1) % 2 == 0 else acc - term
    return acc


def _ann_tuples(A, p, slots, max_degree, each):
    if each:
        ms_iter = product(multi_indices(p, max_degree), repeat=slots)
    else:
        ms_iter = windows(p, slots, max_degree)
    for ms in ms_iter:
        for gs in product(range(A.dim), repeat=slots):
            yield tuple(zip(gs, ms))


def _where(A, gens):
    return tuple(f"{A.names[g]}[{','.join(map(str, m))}]" for g, m in gens)


def check_phi_chain(g: Cochain, A: NlcaPresentation, M: ConformalModule, p: int, max_degree: int,
                    each: bool = True) -> CheckReport:
    """phi(D g) = D(phi g) at every argument tuple in the window."""
    Dg = differential_D(g, A, M)
    lhs_c = phi(Dg, p)
    rhs_c = phi(g, p)
    L = AnnihilationAlgebra(A, p)
    count = 0
    for gens in _ann_tuples(A, p, Dg.arity, max_degree, each):
        count += 1
        res = lhs_c.at(gens) - nlie_cochain_differential(rhs_c, A, M, p, gens, L)
        if res:
            return failed("phi-chain", "phi-chain", _where(A, gens), res.render(M.names), count=count)
    return passed("phi-chain", count)


def check_phi_partial(g: Cochain, A: NlcaPresentation, p: int, max_degree: int, each: bool = True,
                      names: Sequence[str] | None = None) -> CheckReport:
    """phi(d g) = d(phi g) at every argument tuple in the window."""
    lhs_c = phi(partial_on_cochain(g), p)
    rhs_c = ann_partial(phi(g, p))
    count = 0
    for gens in _ann_tuples(A, p, g.arity, max_degree, each):
        count += 1
        res = lhs_c.at(gens) - rhs_c.at(gens)
        if res:
            return failed("phi-partial", "phi-partial", _where(A, gens), res.render(names), count=count)
    return passed("phi-partial", count)


def label_degree(g: Cochain) -> int:
    vars_ = list(g.vars)
    return max((v.total_degree(vars_) for v in g.stored().values()), default=0)


def phi_inverse(c: AnnCochain, g_shape: Cochain, max_degree: int) -> Cochain:
    """Rebuild a cochain from the values of an annihilation cochain at level 1.

    ``g = sum_k l^(k) c(a_{k})`` over label exponents with every ``k`` up to
    ``max_degree``; ``g_shape`` supplies degree and dimensions.
    """
    if c.p != 1:
        raise ValueError("reconstruction reads level-1 values")
    vars_ = g_shape.vars
    r = len(vars_)

    def compute(key):
        acc = ZERO_VALUE
        for ks in product(range(max_degree + 1), repeat=r):
            val = c.at(tuple((g, (k,)) for g, k in zip(key, ks)))
            if not val:
                continue
            w = 1
            for k in ks:
                w *= factorial(k)
            mono = MultiPoly.monomial({v: k for v, k in zip(vars_, ks) if k}, Fraction(1, w))
            acc = acc + val.scale(mono)
        return acc

    return Cochain(g_shape.n, g_shape.q, g_shape.alg_dim, g_shape.mod_dim, func=compute)


def check_phi_injective(g: Cochain, p: int = 1, names: Sequence[str] | None = None) -> CheckReport:
    """Round trip: the values of phi g up to the label degree of g determine g."""
    bound = label_degree(g)
    back = phi_inverse(phi(g, 1), g, bound)
    count = 0
    for key in canonical_tuples(g.n, g.q, g.alg_dim):
        count += 1
        res = g.value(key) - back.value(key)
        if res:
            return failed("phi-injective", "phi-injective", key, res.render(names), count=count)
    if p > 1:
        # at higher level phi only depends on |m|; the level-1 values already pin g down
        for key in canonical_tuples(g.n, g.q, g.alg_dim):
            for ms in windows(p, g.arity, min(bound, 2)):
                count += 1
                gens = tuple(zip(key, ms))
                lvl1 = tuple((k, (sum(m),)) for k, m in gens)
                res = phi_map(g, p, gens) - phi_map(g, 1, lvl1)
                if res:
                    return failed("phi-injective", "phi-level", _where_plain(gens), res.render(names), count=count)
    return passed("phi-injective", count)


def _where_plain(gens):
    return tuple(f"{g}[{','.join(map(str, m))}]" for g, m in gens)
