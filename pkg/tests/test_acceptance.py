"""Acceptance criteria 1-10.

Every check is exact.  Each criterion prints one ``PASS``/``FAIL`` line with
its wall time; run ``python tests/test_acceptance.py`` for the lines alone.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction
from itertools import combinations_with_replacement, product

import pytest

from nlca.algebra import NlcaPresentation, PolyValue, check_axioms
from nlca.annihilation import (AnnElement, AnnihilationAlgebra, NotEquivariantError, annihilation_suite,
                               induce_hom, windows)
from nlca.cohomology import check_phi_chain, check_phi_injective, check_phi_partial, cohomology_suite, random_cochain
from nlca.constructions import (cur_simple3, filippov_constraint_residual, matrix_poly, plucker_check,
                                rank2_family_i, rank2_family_ii, rank2_family_ii_matrix, simple_3lie)
from nlca.modules import adjoint_module, cend_bracket, check_derivation, check_module_axioms, inner_derivation, semidirect_sum
from nlca.poly import D, PARTIAL, ZERO, MultiPoly, lam

X, Y = MultiPoly.var(lam(1)), MultiPoly.var(lam(2))
RESULTS: dict[int, tuple[bool, float, str]] = {}


def criterion_algebras() -> dict[str, NlcaPresentation]:
    return {
        "Cur(simple 3-Lie)": cur_simple3(),
        "family (i) g=1": rank2_family_i(3, 1),
        "family (i) g=l1+l2": rank2_family_i(3, X + Y),
        "family (i) g=d": rank2_family_i(3, D),
        "family (ii) h=l1-l2": rank2_family_ii(3, X - Y),
    }


def record(number: int, limit: float | None):
    """Run a criterion body returning (ok, detail), time it and store the line."""
    def wrap(body):
        def run():
            t0 = time.perf_counter()
            ok, detail = body()
            dt = time.perf_counter() - t0
            if limit is not None and dt >= limit:
                ok = False
                detail += f"; over the {limit:g} s limit"
            RESULTS[number] = (ok, dt, detail)
            return ok, dt, detail
        run.number = number
        return run
    return wrap


def _failures(reports) -> list[str]:
    return [f"{r.check} {r.axiom} at {r.where}: {r.residual}" for r in reports if not r]


@record(1, None)
def criterion_1():
    bad, slow = [], []
    for name, A in criterion_algebras().items():
        t0 = time.perf_counter()
        fails = _failures(check_axioms(A))
        dt = time.perf_counter() - t0
        if dt >= 10:
            slow.append(f"{name} {dt:.1f}s")
        bad += [f"{name}: {f}" for f in fails]
    detail = "; ".join(bad + slow) or "all axiom suites pass"
    return not bad and not slow, detail


@record(2, None)
def criterion_2():
    h = (Y - X) + (X ** 2 * Y ** 3 - X ** 3 * Y ** 2)
    reps = check_axioms(rank2_family_ii(3, h))
    fil = reps[1]
    pl = plucker_check([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]])
    rng = random.Random(2)
    three = all(plucker_check(_random_antisymmetric(rng, 3)) for _ in range(20))
    ok = (bool(reps[0]) and not fil and fil.residual != "" and not pl and pl.where == (0, 1, 2, 3)
          and pl.residual == "1" and three)
    return ok, f"filippov residual at {fil.where}; plucker at {pl.where} residual {pl.residual}"


def _random_poly(rng: random.Random, max_degree: int) -> MultiPoly:
    vs = [PARTIAL, lam(1), lam(2)]
    terms = []
    for e in product(range(max_degree + 1), repeat=3):
        if sum(e) <= max_degree and rng.random() < 0.35:
            c = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
            if c:
                terms.append(({v: k for v, k in zip(vs, e) if k}, c))
    return MultiPoly.from_terms(terms)


@record(3, None)
def criterion_3():
    rng = random.Random(3)
    survivors = []
    tried = 0
    while tried < 100:
        f = _random_poly(rng, 3)
        if f == ZERO:
            continue
        tried += 1
        A = NlcaPresentation(3, ["e"], {(0, 0, 0): PolyValue.gen(0, f)})
        if all(check_axioms(A)):
            survivors.append(str(f))
    zero_ok = all(check_axioms(NlcaPresentation(3, ["e"])))
    ok = not survivors and zero_ok
    return ok, f"{tried} nonzero brackets, {len(survivors)} passed; zero bracket passes: {zero_ok}"


def _random_antisymmetric(rng: random.Random, m: int) -> list[list[Fraction]]:
    a = [[Fraction(0)] * m for _ in range(m)]
    if rng.random() < 0.5:
        # decomposable u ^ v always satisfies the Pluecker relations
        u = [rng.randint(-2, 2) for _ in range(m)]
        v = [rng.randint(-2, 2) for _ in range(m)]
        for i in range(m):
            for j in range(m):
                a[i][j] = Fraction(u[i] * v[j] - u[j] * v[i])
        return a
    for i in range(m):
        for j in range(i + 1, m):
            c = Fraction(rng.randint(-3, 3))
            a[i][j], a[j][i] = c, -c
    return a


@record(4, None)
def criterion_4():
    rng = random.Random(4)
    disagree = []
    both = {True: 0, False: 0}
    for t in range(20):
        a = _random_antisymmetric(rng, rng.randint(3, 5))
        p = bool(plucker_check(a))
        r = filippov_constraint_residual(matrix_poly(a), 3) == ZERO
        c = bool(check_axioms(rank2_family_ii_matrix(a))[1])
        both[p] += 1
        if not p == r == c:
            disagree.append(t)
    return not disagree, f"20 matrices ({both[True]} satisfy, {both[False]} violate); disagreements {disagree}"


@record(5, 60)
def criterion_5():
    bad = []
    for name, A in criterion_algebras().items():
        for p in (1, 2):
            bad += [f"{name} p={p}: {f}" for f in _failures(annihilation_suite(A, p, 3))]
    return not bad, "; ".join(bad) or "annihilation suites pass"


@record(6, None)
def criterion_6():
    g = simple_3lie()
    A = cur_simple3()
    count = 0
    for p in (1, 2):
        L = AnnihilationAlgebra(A, p)
        for ms in windows(p, 3, 3):
            total = tuple(sum(m[i] for m in ms) for i in range(p))
            for key in product(range(4), repeat=3):
                count += 1
                expect = AnnElement({(k, total): c for k, c in g.bracket(key).items()})
                if L.bracket_generators(list(zip(key, ms))) != expect:
                    return False, f"mismatch at {key} {ms}"
    return True, f"{count} index tuples agree with the loop bracket"


@record(7, None)
def criterion_7():
    notes = []
    ok = True
    for name, A in (("Cur", cur_simple3()), ("family (ii)", rank2_family_ii(3, X - Y))):
        for p in (1, 2):
            images, rep = induce_hom(A, A, p, lambda g, m: AnnElement.gen(g, m), 3)
            ok &= images == [PolyValue.gen(k) for k in range(A.dim)] and bool(rep)
            for c in (Fraction(-1), Fraction(2), Fraction(1, 3)):
                images, rep = induce_hom(A, A, p, lambda g, m, c=c: AnnElement.gen(g, m, c), 3)
                ok &= images == [PolyValue.gen(k, MultiPoly.const(c)) for k in range(A.dim)]
                # c r is compatible with a 3-ary bracket exactly when c^3 = c
                ok &= bool(rep) == (c ** 3 == c)
            try:
                induce_hom(A, A, p, lambda g, m: AnnElement.gen(g, (m[0] + 1,) + m[1:]), 3)
                ok = False
                notes.append(f"{name} p={p}: shift accepted")
            except NotEquivariantError:
                pass
    return ok, "; ".join(notes) or "identity, scalars and shift behave"


@record(8, None)
def criterion_8():
    bad = []
    for name, A in criterion_algebras().items():
        M = adjoint_module(A)
        rep = check_module_axioms(M, A)
        if not rep:
            bad.append(f"{name} adjoint: {rep.axiom} at {rep.where}")
        tuples = list(combinations_with_replacement(range(A.dim), A.n - 1))
        ders = {a: inner_derivation(A, [PolyValue.gen(k) for k in a], 1) for a in tuples}
        for a, f in ders.items():
            if not check_derivation(f, A):
                bad.append(f"{name} L{a} not a derivation")
        for a, b in product(tuples, repeat=2):
            Lb = inner_derivation(A, [PolyValue.gen(k) for k in b], 2)
            if not check_derivation(cend_bracket(ders[a], Lb), A):
                bad.append(f"{name} [L{a}, L{b}] not a derivation")
        S = semidirect_sum(A, M)
        bad += [f"{name} semidirect: {f}" for f in _failures(check_axioms(S))]
    return not bad, "; ".join(bad) or "modules, derivations and semidirect sums pass"


@record(9, 120)
def criterion_9():
    bad = []
    for name, A in criterion_algebras().items():
        M = adjoint_module(A)
        for q in (1, 2):
            bad += [f"{name} q={q}: {f}" for f in _failures(cohomology_suite(A, M, q, 10, seed=9, max_degree=2))]
    return not bad, "; ".join(bad) or "D^2 = 0 and D d = d D on all trials"


@record(10, None)
def criterion_10():
    bad = []
    rng = random.Random(10)
    for name, A in criterion_algebras().items():
        M = adjoint_module(A)
        for _ in range(2):
            g = random_cochain(3, 1, A.dim, M.dim, rng, max_degree=2)
            reps = [check_phi_chain(g, A, M, 1, 2), check_phi_partial(g, A, 1, 2, names=M.names),
                    check_phi_injective(g, 1, M.names)]
            bad += [f"{name}: {f}" for f in _failures(reps)]
    return not bad, "; ".join(bad) or "chain map, d-compatibility and injectivity hold"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{c.number}" for c in CRITERIA])
def test_criterion(criterion):
    ok, dt, detail = criterion()
    assert ok, detail


def line(k: int) -> str:
    ok, dt, detail = RESULTS[k]
    return f"{'PASS' if ok else 'FAIL'} criterion {k}: {detail} ({dt:.2f} s)"


def summary_lines() -> list[str]:
    return [line(k) for k in sorted(RESULTS)]


if __name__ == "__main__":
    for c in CRITERIA:
        c()
        print(line(c.number), flush=True)
