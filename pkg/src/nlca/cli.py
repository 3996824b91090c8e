"""Command-line entry point.

Exit status: 0 when every requested check passes, 1 on a mathematical
failure, 2 on a usage error, 3 on a parse error and 4 when a file cannot
be read.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Sequence

from . import annihilation as ann
from . import cohomology as co
from .algebra import PolyValue, bracket, check_axioms, k_product_table
from .constructions import plucker_check, pseudo_translate
from .formats import (ParseError, parse_algebra, parse_ann_generator, parse_cochain, parse_matrix,
                      parse_module, parse_value)
from .modules import adjoint_module, check_module_axioms
from .poly import lam, render
from .report import CheckReport

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PARSE, EXIT_FILE = 0, 1, 2, 3, 4


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(message)


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _emit(reports: Sequence[CheckReport], machine: bool, out) -> int:
    for r in reports:
        print(r.machine() if machine else r.render(), file=out)
    return EXIT_OK if all(reports) else EXIT_FAIL


def _emit_value(label: str, text: str, machine: bool, out) -> None:
    if machine:
        print(json.dumps({"value": label, "result": text}, separators=(",", ":")), file=out)
    else:
        print(f"{label} = {text}", file=out)


def _module(args, A):
    if getattr(args, "module", None):
        return parse_module(_read(args.module), A)
    return adjoint_module(A)


def cmd_check(args, out) -> int:
    A = parse_algebra(_read(args.file))
    reports = check_axioms(A)
    if args.module:
        reports.append(check_module_axioms(parse_module(_read(args.module), A), A))
    return _emit(reports, args.machine, out)


def cmd_bracket(args, out) -> int:
    A = parse_algebra(_read(args.file))
    if args.ann is not None:
        gens = [parse_ann_generator(x, A.names) for x in args.args]
        if len(gens) != A.n:
            raise _Usage(f"expected {A.n} arguments")
        for _, m in gens:
            if len(m) != args.ann:
                raise _Usage(f"multi-indices must have {args.ann} entries")
        val = ann.AnnihilationAlgebra(A, args.ann).bracket_generators(gens)
        _emit_value("[" + " ".join(args.args) + "]", val.render(A.names), args.machine, out)
        return EXIT_OK
    if len(args.args) != A.n:
        raise _Usage(f"expected {A.n} arguments")
    els = [parse_value(x, [], A.names) for x in args.args]
    val = bracket(A, els)
    _emit_value("[" + " ".join(args.args) + "]", val.render(A.names), args.machine, out)
    return EXIT_OK


def cmd_kprod(args, out) -> int:
    A = parse_algebra(_read(args.file))
    names = args.tuple.split()
    if len(names) != A.n or any(x not in A.names for x in names):
        raise _Usage(f"expected {A.n} generator names")
    key = tuple(A.names.index(x) for x in names)
    table = k_product_table(A, key)
    if not table:
        _emit_value(f"({' '.join(names)})", "0", args.machine, out)
    for k in sorted(table):
        _emit_value(f"({' '.join(names)})_{tuple(k)}", table[k].render(A.names), args.machine, out)
    return EXIT_OK


def cmd_annihilate(args, out) -> int:
    A = parse_algebra(_read(args.file))
    reports = ann.annihilation_suite(A, args.p, args.max_degree)
    reports.append(ann.commutativity_check(A, args.p, min(args.max_degree, 2))[2])
    return _emit(reports, args.machine, out)


def cmd_cohomology(args, out) -> int:
    A = parse_algebra(_read(args.file))
    M = _module(args, A)
    if args.cochain:
        g = parse_cochain(_read(args.cochain), A, M)
        reports = [co.check_D_squared(g, A, M), co.check_D_partial(g, A, M), co.check_D_block_skew(g, A, M)]
    else:
        reports = co.cohomology_suite(A, M, args.q, args.trials, args.seed)
    return _emit(reports, args.machine, out)


def cmd_phi(args, out) -> int:
    A = parse_algebra(_read(args.file))
    M = _module(args, A)
    if args.cochain:
        cochains = [parse_cochain(_read(args.cochain), A, M)]
    else:
        rng = random.Random(args.seed)
        cochains = [co.random_cochain(A.n, args.q, A.dim, M.dim, rng) for _ in range(args.trials)]
    reports = []
    for g in cochains:
        reports.append(co.check_phi_chain(g, A, M, args.p, args.max_degree))
        reports.append(co.check_phi_partial(g, A, args.p, args.max_degree, names=M.names))
        reports.append(co.check_phi_injective(g, args.p, M.names))
    return _emit(reports, args.machine, out)


def cmd_plucker(args, out) -> int:
    size = None
    if args.matrix:
        try:
            r, c = (int(x) for x in args.matrix.lower().split("x"))
        except ValueError:
            raise _Usage("--matrix takes the form NxN") from None
        if r != c:
            raise _Usage("the matrix must be square")
        size = r
    a = parse_matrix(args.entries, size)
    try:
        rep = plucker_check(a)
    except ValueError as e:
        raise _Usage(str(e)) from None
    return _emit([rep], args.machine, out)


def cmd_pseudo(args, out) -> int:
    A = parse_algebra(_read(args.file))
    names = {lam(i): f"x{i}" for i in range(1, A.n + 1)}
    for key, val in sorted(pseudo_translate(A).items()):
        parts = []
        for g, c in val.items():
            parts.append(f"({render(c, names)})*{A.names[g]}")
        _emit_value("{" + " ".join(A.names[k] for k in key) + "}", " + ".join(parts), args.machine, out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="nlca", description="Exact computations with finite n-Lie conformal algebras.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def add(name, fn, help_, file=True):
        sp = sub.add_parser(name, help=help_)
        if file:
            sp.add_argument("file", help="algebra file")
        sp.add_argument("--machine", action="store_true", help="one JSON record per line")
        sp.set_defaults(fn=fn)
        return sp

    sp = add("check", cmd_check, "verify skew-symmetry and the Filippov identity")
    sp.add_argument("--module", help="also verify a module file")
    sp = add("bracket", cmd_bracket, "evaluate a lambda-bracket or an annihilation bracket")
    sp.add_argument("args", nargs="+", help="elements such as 'd*e1' or, with --ann, 'e1[2,0]'")
    sp.add_argument("--ann", type=int, metavar="P", help="annihilation algebra of level P")
    sp = add("kprod", cmd_kprod, "list the k-products of a generator tuple")
    sp.add_argument("tuple", help="generator names, e.g. 'e1 e1 e2'")
    sp = add("annihilate", cmd_annihilate, "run the annihilation-algebra checks")
    sp.add_argument("--p", type=int, default=1)
    sp.add_argument("--max-degree", type=int, default=3)
    sp = add("cohomology", cmd_cohomology, "check D^2 = 0 and D d = d D")
    sp.add_argument("--module", help="module file (default: adjoint)")
    sp.add_argument("--cochain", help="cochain file (default: random cochains)")
    sp.add_argument("--q", type=int, default=1)
    sp.add_argument("--trials", type=int, default=3)
    sp.add_argument("--seed", type=int, default=0)
    sp = add("phi", cmd_phi, "compare with the annihilation-algebra complex")
    sp.add_argument("--module", help="module file (default: adjoint)")
    sp.add_argument("--cochain", help="cochain file (default: random cochains)")
    sp.add_argument("--q", type=int, default=1)
    sp.add_argument("--p", type=int, default=1)
    sp.add_argument("--max-degree", type=int, default=2)
    sp.add_argument("--trials", type=int, default=2)
    sp.add_argument("--seed", type=int, default=0)
    sp = add("plucker", cmd_plucker, "test the Pluecker-type relations of an antisymmetric matrix", file=False)
    sp.add_argument("--matrix", help="size, e.g. 4x4")
    sp.add_argument("--entries", required=True,
                    help="rows 'a,b,..;c,d,..' or sparse upper entries 'i,j=v ...'")
    add("pseudo", cmd_pseudo, "print the pseudo-bracket polynomials")
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    err = sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        for name in ("p", "q", "trials", "max_degree"):
            v = getattr(args, name, None)
            if v is not None and v < (0 if name == "max_degree" else 1):
                raise _Usage(f"--{name.replace('_', '-')} is out of range")
        return args.fn(args, out)
    except _Usage as e:
        print(f"nlca: usage error: {e}", file=err)
        return EXIT_USAGE
    except ParseError as e:
        print(f"nlca: parse error: {e}", file=err)
        return EXIT_PARSE
    except OSError as e:
        print(f"nlca: cannot read {e.filename}: {e.strerror}", file=err)
        return EXIT_FILE


if __name__ == "__main__":
    sys.exit(main())
