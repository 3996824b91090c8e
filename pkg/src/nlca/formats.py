"""Line-oriented text formats for algebras, modules and cochains.

A file is a sequence of ``[section]`` headers followed by ``key = value``
lines; ``#`` starts a comment.  Bracket, action and cochain entries use
generator names on the left and a polynomial expression on the right,
for example ``e1 e1 e2 = (l1 - l2)*e2``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .algebra import NlcaPresentation, PolyValue, _sort_with_sign
from .poly import D, PARTIAL, ZERO, MultiPoly, VarId, lam, render

NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")
VAR_RE = re.compile(r"l(\d+)(?:_(\d+))?\Z")
BUILDERS = ("current", "rank2_i", "rank2_ii", "rank2_alt", "simple3lie")


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.message, self.line, self.col = message, line, col
        where = f"line {line}, column {col}: " if line else ""
        super().__init__(where + message)


# -- expressions ------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z0-9_']*)|(\*\*|[-+*^()]))")


@dataclass
class _Tok:
    kind: str  # num | name | op | end
    text: str
    col: int


def _tokenize(text: str, line: int, col0: int) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", line, col0 + bad)
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(_Tok("num", m.group(1), col0 + start))
        elif m.group(2):
            toks.append(_Tok("name", m.group(2), col0 + start))
        else:
            op = m.group(3)
            toks.append(_Tok("op", "^" if op == "**" else op, col0 + start))
        pos = m.end()
    toks.append(_Tok("end", "", col0 + len(text)))
    return toks


class _Linear:
    """A sum ``scalar + sum_g c_g * g`` with polynomial coefficients."""

    __slots__ = ("scalar", "gens")

    def __init__(self, scalar: MultiPoly = ZERO, gens: dict | None = None):
        self.scalar = scalar
        self.gens = gens or {}

    def __add__(self, o: "_Linear") -> "_Linear":
        g = dict(self.gens)
        for k, c in o.gens.items():
            g[k] = g.get(k, ZERO) + c
        return _Linear(self.scalar + o.scalar, g)

    def neg(self) -> "_Linear":
        return _Linear(-self.scalar, {k: -c for k, c in self.gens.items()})

    def is_scalar(self) -> bool:
        return all(not c for c in self.gens.values())


class _Parser:
    def __init__(self, text: str, variables: dict[str, VarId], generators: dict[str, int],
                 line: int, col0: int):
        self.toks = _tokenize(text, line, col0)
        self.i = 0
        self.vars = variables
        self.gens = generators
        self.line = line

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.peek()
        raise ParseError(msg, self.line, tok.col)

    def parse(self) -> _Linear:
        if self.peek().kind == "end":
            self.error("empty expression")
        out = self.expr()
        if self.peek().kind != "end":
            self.error(f"unexpected {self.peek().text!r}")
        return out

    def expr(self) -> _Linear:
        neg = False
        if self.peek().kind == "op" and self.peek().text in "+-":
            neg = self.take().text == "-"
        acc = self.term()
        if neg:
            acc = acc.neg()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.take().text
            t = self.term()
            acc = acc + (t.neg() if op == "-" else t)
        return acc

    def term(self) -> _Linear:
        acc = self.factor()
        while self.peek().kind == "op" and self.peek().text == "*":
            tok = self.take()
            rhs = self.factor()
            if acc.is_scalar():
                acc = _Linear(acc.scalar * rhs.scalar, {k: acc.scalar * c for k, c in rhs.gens.items()})
            elif rhs.is_scalar():
                acc = _Linear(ZERO, {k: c * rhs.scalar for k, c in acc.gens.items()})
            else:
                self.error("product of two generator terms", tok)
        return acc

    def factor(self) -> _Linear:
        base = self.atom()
        if self.peek().kind == "op" and self.peek().text == "^":
            tok = self.take()
            e = self.take()
            if e.kind != "num" or "/" in e.text:
                self.error("exponent must be a non-negative integer", e)
            if not base.is_scalar():
                self.error("power of a generator", tok)
            base = _Linear(base.scalar ** int(e.text))
        return base

    def atom(self) -> _Linear:
        t = self.take()
        if t.kind == "num":
            if "/" in t.text:
                p, q = t.text.split("/")
                if int(q) == 0:
                    self.error("zero denominator", t)
                return _Linear(MultiPoly.const(Fraction(int(p), int(q))))
            return _Linear(MultiPoly.const(int(t.text)))
        if t.kind == "name":
            if t.text in self.gens:
                return _Linear(ZERO, {self.gens[t.text]: MultiPoly.const(1)})
            if t.text in self.vars:
                return _Linear(MultiPoly.var(self.vars[t.text]))
            self.error(f"unknown name {t.text!r}", t)
        if t.kind == "op" and t.text == "(":
            inner = self.expr()
            if self.peek().kind != "op" or self.peek().text != ")":
                self.error("expected ')'")
            self.take()
            return inner
        self.error(f"unexpected {t.text!r}" if t.text else "unexpected end of expression", t)


def variable_names(vars_: Sequence[VarId]) -> dict[str, VarId]:
    out = {"d": PARTIAL}
    for v in vars_:
        out[str(v)] = v
    return out


def parse_poly(text: str, variables: Sequence[VarId], line: int = 0, col: int = 0) -> MultiPoly:
    """A polynomial in ``d`` and the given variables."""
    lin = _Parser(text, variable_names(variables), {}, line or 1, col or 1).parse()
    return lin.scalar


def parse_value(text: str, variables: Sequence[VarId], generators: Sequence[str],
                line: int = 0, col: int = 0, allow_zero: bool = True) -> PolyValue:
    """A combination of generators with polynomial coefficients."""
    gmap = {g: i for i, g in enumerate(generators)}
    p = _Parser(text, variable_names(variables), gmap, line or 1, col or 1)
    lin = p.parse()
    if lin.scalar:
        raise ParseError("every term needs a generator factor", line or 1, col or 1)
    return PolyValue({k: c for k, c in lin.gens.items() if c})


# -- section files ----------------------------------------------------------------------

@dataclass
class _Line:
    line: int
    key: str
    value: str
    key_col: int
    value_col: int


def _sections(text: str) -> dict[str, list[_Line]]:
    out: dict[str, list[_Line]] = {}
    current = None
    for no, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].rstrip()
        if not body.strip():
            continue
        s = body.strip()
        if s.startswith("[") and s.endswith("]") and "=" not in s:
            current = s[1:-1].strip()
            if current in out:
                raise ParseError(f"duplicate section [{current}]", no, raw.index("[") + 1)
            out[current] = []
            continue
        if current is None:
            raise ParseError("entry outside any section", no, 1)
        if "=" not in body:
            raise ParseError("expected 'key = value'", no, len(body) - len(body.lstrip()) + 1)
        eq = body.index("=")
        key = body[:eq]
        val = body[eq + 1:]
        kc = len(key) - len(key.lstrip()) + 1
        vc = eq + 2 + len(val) - len(val.lstrip())
        out[current].append(_Line(no, key.strip(), val.strip(), kc, vc))
    return out


def _settings(lines: list[_Line], allowed: Sequence[str], where: str) -> dict[str, _Line]:
    out = {}
    for ln in lines:
        if ln.key not in allowed:
            raise ParseError(f"unknown setting {ln.key!r} in [{where}]", ln.line, ln.key_col)
        if ln.key in out:
            raise ParseError(f"duplicate setting {ln.key!r}", ln.line, ln.key_col)
        out[ln.key] = ln
    return out


def _names(ln: _Line) -> list[str]:
    names = [x.strip() for x in ln.value.split(",")] if ln.value.strip() else []
    for nm in names:
        if not NAME_RE.match(nm) or nm == "d" or VAR_RE.match(nm):
            raise ParseError(f"invalid generator name {nm!r}", ln.line, ln.value_col)
    if len(set(names)) != len(names):
        raise ParseError("generator names must be distinct", ln.line, ln.value_col)
    return names


def _int(ln: _Line, lo: int = 0) -> int:
    try:
        v = int(ln.value)
    except ValueError:
        raise ParseError(f"{ln.key} must be an integer", ln.line, ln.value_col) from None
    if v < lo:
        raise ParseError(f"{ln.key} must be at least {lo}", ln.line, ln.value_col)
    return v


def _bool(ln: _Line) -> bool:
    v = ln.value.lower()
    if v in ("true", "yes", "1"):
        return True
    if v in ("false", "no", "0"):
        return False
    raise ParseError(f"{ln.key} must be true or false", ln.line, ln.value_col)


def _key(ln: _Line, names: Sequence[str], length: int, allow_bar: bool = False) -> tuple[int, ...]:
    text = ln.key
    if text.startswith("[") and text.endswith("]"):
        text = text[1:-1]
    parts = [p for p in text.replace("|", " ").split()] if allow_bar else text.split()
    idx = {g: i for i, g in enumerate(names)}
    out = []
    for p in parts:
        if p not in idx:
            raise ParseError(f"unknown generator {p!r}", ln.line, ln.key_col + ln.key.find(p))
        out.append(idx[p])
    if len(out) != length:
        raise ParseError(f"expected {length} generators, got {len(out)}", ln.line, ln.key_col)
    return tuple(out)


def _algebra_vars(n: int) -> list[VarId]:
    return [lam(i) for i in range(1, n)]


def complete_last_slot(n: int, table: dict[tuple, PolyValue]) -> dict[tuple, PolyValue]:
    """Fill canonical keys that are missing with the value forced by the last-slot relation."""
    ls = [MultiPoly.var(lam(i)) for i in range(1, n)]
    total = sum(ls, ZERO)
    out = dict(table)
    for key, val in table.items():
        sk = key[:-2] + (key[-1], key[-2])
        # [.. a_{l(n-1)} b] = -[.. b_{-d-sum} a]; rename so the new key is canonical
        moved = -val.substitute({lam(n - 1): -D - total})
        order, sign = _sort_with_sign(sk[:-1])
        ck = tuple(sk[i] for i in order) + (sk[-1],)
        inv = {lam(j + 1): ls[order.index(j)] for j in range(n - 1)}
        moved = moved.substitute(inv)
        if sign < 0:
            moved = -moved
        if ck not in out and moved:
            out[ck] = moved
    return out


def parse_algebra(text: str) -> NlcaPresentation:
    """Parse an algebra file; see the module docstring for the layout."""
    secs = _sections(text)
    for s in secs:
        if s not in ("algebra", "brackets"):
            raise ParseError(f"unknown section [{s}]")
    if "algebra" not in secs:
        raise ParseError("missing [algebra] section")
    st = _settings(secs["algebra"], ("n", "generators", "builder", "complete", "g", "h", "s", "matrix"),
                   "algebra")
    if "n" not in st:
        raise ParseError("missing setting n")
    n = _int(st["n"], 2)
    builder = st["builder"].value if "builder" in st else None
    if builder is not None and builder not in BUILDERS:
        raise ParseError(f"unknown builder {builder!r}", st["builder"].line, st["builder"].value_col)
    if builder in (None, "current") and "generators" not in st:
        raise ParseError("missing setting generators")
    names = _names(st["generators"]) if "generators" in st else None
    if builder in (None, "current"):
        table = _parse_entries(secs.get("brackets", []), names, n, _algebra_vars(n), canonical=True)
        if "complete" not in st or _bool(st["complete"]):
            table = complete_last_slot(n, table)
        A = NlcaPresentation(n, names, table, builder=builder)
        if builder == "current":
            from .constructions import current_algebra
            from .nlie import NLieAlgebra
            for key, val in table.items():
                if val.variables():
                    raise ParseError(f"current algebra entry {key} is not constant")
            A0 = NlcaPresentation(n, names, table)
            br = {}
            for key in product(range(len(names)), repeat=n):
                v = A0.at(key)
                if v:
                    br[key] = {g: c.constant_term() for g, c in v.items()}
            try:
                A = current_algebra(NLieAlgebra(n, len(names), br, names))
            except ValueError as e:
                raise ParseError(str(e)) from None
        return A
    if secs.get("brackets"):
        ln = secs["brackets"][0]
        raise ParseError("brackets are generated by the builder", ln.line, ln.key_col)
    from . import constructions as C
    two = names or ["e1", "e2"]

    def need(key):
        if key not in st:
            raise ParseError(f"builder {builder} needs setting {key}")
        return st[key]

    try:
        if builder == "simple3lie":
            if n != 3:
                raise ParseError("simple3lie has n = 3", st["n"].line, st["n"].value_col)
            A = C.cur_simple3()
            if names:
                A = NlcaPresentation(3, names, A.table, builder="simple3lie")
        elif builder == "rank2_i":
            ln = need("g")
            g = parse_poly(ln.value, _algebra_vars(n), ln.line, ln.value_col)
            A = C.rank2_family_i(n, g, two)
            A.params["g"] = ln.value
        elif builder == "rank2_alt":
            ln = st.get("s")
            s = parse_poly(ln.value, [lam(i) for i in range(1, n + 1)], ln.line, ln.value_col) if ln else MultiPoly.const(1)
            A = C.rank2_alternating(n, s, two)
            if ln:
                A.params["s"] = ln.value
        else:
            if "matrix" in st:
                ln = st["matrix"]
                a = parse_matrix(ln.value, line=ln.line, col=ln.value_col)
                if n != 3:
                    raise ParseError("matrix form needs n = 3", st["n"].line, st["n"].value_col)
                A = C.rank2_family_ii_matrix(a)
                if names:
                    A = NlcaPresentation(3, two, A.table, builder="rank2_ii", params=A.params)
            else:
                ln = need("h")
                h = parse_poly(ln.value, _algebra_vars(n), ln.line, ln.value_col)
                A = C.rank2_family_ii(n, h, two)
                A.params["h"] = ln.value
    except ParseError:
        raise
    except ValueError as e:
        raise ParseError(str(e)) from None
    return A


def _parse_entries(lines: list[_Line], names: Sequence[str], length: int, variables: Sequence[VarId],
                   value_names: Sequence[str] | None = None, key_names: Sequence[str] | None = None,
                   allow_bar: bool = False, canonical: bool = False) -> dict[tuple, PolyValue]:
    table: dict[tuple, PolyValue] = {}
    kn = list(key_names) if key_names is not None else list(names)
    for ln in lines:
        key = _key(ln, kn, length, allow_bar)
        if canonical and list(key[:-1]) != sorted(key[:-1]):
            raise ParseError("tuple is not canonical: list the first n-1 generators in order",
                             ln.line, ln.key_col)
        if key in table:
            raise ParseError("duplicate entry", ln.line, ln.key_col)
        table[key] = parse_value(ln.value, variables, value_names or names, ln.line, ln.value_col)
    return table


def parse_matrix(text: str, size: int | None = None, line: int = 1, col: int = 1) -> list[list[Fraction]]:
    """Rows separated by ``;`` and entries by ``,``; or sparse ``i,j=v`` items with (j,i) filled by -v."""
    text = text.strip()
    try:
        if "=" in text:
            item = re.compile(r"\s*(\d+)\s*,\s*(\d+)\s*=\s*(-?\d+(?:/\d+)?)\s*[,;]?")
            entries = {}
            pos = 0
            while pos < len(text):
                m = item.match(text, pos)
                if not m:
                    raise ParseError("expected sparse entries 'i,j=v'", line, col + pos)
                entries[(int(m.group(1)), int(m.group(2)))] = Fraction(m.group(3))
                pos = m.end()
            m = size if size is not None else 1 + max(max(i, j) for i, j in entries)
            a = [[Fraction(0)] * m for _ in range(m)]
            for (i, j), v in entries.items():
                if not (0 <= i < m and 0 <= j < m):
                    raise ParseError(f"index ({i},{j}) outside a {m}x{m} matrix", line, col)
                a[i][j] = v
                a[j][i] = -v
        else:
            a = [[Fraction(x) for x in row.split(",")] for row in text.split(";")]
    except (ValueError, ZeroDivisionError):
        raise ParseError("malformed matrix entries", line, col) from None
    if size is not None and len(a) != size:
        raise ParseError(f"expected {size} rows, got {len(a)}", line, col)
    return a


def render_algebra(A: NlcaPresentation) -> str:
    lines = ["[algebra]", f"n = {A.n}", f"generators = {', '.join(A.names)}", "complete = false"]
    if A.builder:
        lines.insert(1, f"# built by {A.builder}")
    lines.append("")
    lines.append("[brackets]")
    for key in sorted(A.table):
        lines.append(f"{' '.join(A.names[k] for k in key)} = {A.table[key].render(A.names)}")
    return "\n".join(lines) + "\n"


# -- modules ----------------------------------------------------------------------------

def parse_module(text: str, A: NlcaPresentation):
    """``[module]`` with ``generators`` (or ``adjoint = true``) and an ``[action]`` table."""
    from .modules import ConformalModule, adjoint_module, trivial_module
    secs = _sections(text)
    for s in secs:
        if s not in ("module", "action"):
            raise ParseError(f"unknown section [{s}]")
    if "module" not in secs:
        raise ParseError("missing [module] section")
    st = _settings(secs["module"], ("n", "generators", "adjoint", "trivial"), "module")
    if "n" in st and _int(st["n"], 2) != A.n:
        raise ParseError("module arity does not match the algebra", st["n"].line, st["n"].value_col)
    names = _names(st["generators"]) if "generators" in st else None
    if "adjoint" in st and _bool(st["adjoint"]):
        if secs.get("action"):
            raise ParseError("an adjoint module takes no [action] entries")
        return adjoint_module(A, names)
    if names is None:
        raise ParseError("missing setting generators")
    if "trivial" in st and _bool(st["trivial"]):
        return trivial_module(A, names)
    lines = secs.get("action", [])
    table = {}
    idx_a = {g: i for i, g in enumerate(A.names)}
    idx_m = {g: i for i, g in enumerate(names)}
    for ln in lines:
        parts = ln.key.strip("[]").split()
        if len(parts) != A.n:
            raise ParseError(f"expected {A.n} generators, got {len(parts)}", ln.line, ln.key_col)
        key = []
        for p in parts[:-1]:
            if p not in idx_a:
                raise ParseError(f"unknown algebra generator {p!r}", ln.line, ln.key_col + ln.key.find(p))
            key.append(idx_a[p])
        if parts[-1] not in idx_m:
            raise ParseError(f"unknown module generator {parts[-1]!r}", ln.line, ln.key_col + ln.key.rfind(parts[-1]))
        key.append(idx_m[parts[-1]])
        key = tuple(key)
        if list(key[:-1]) != sorted(key[:-1]):
            raise ParseError("tuple is not canonical: list the algebra generators in order",
                             ln.line, ln.key_col)
        if key in table:
            raise ParseError("duplicate entry", ln.line, ln.key_col)
        table[key] = parse_value(ln.value, _algebra_vars(A.n), names, ln.line, ln.value_col)
    try:
        return ConformalModule(A.n, A.dim, names, table)
    except ValueError as e:
        raise ParseError(str(e)) from None


def render_module(M, A: NlcaPresentation) -> str:
    lines = ["[module]", f"n = {M.n}", f"generators = {', '.join(M.names)}", "", "[action]"]
    for key in sorted(M.action):
        head = " ".join(A.names[k] for k in key[:-1])
        lines.append(f"{head} {M.names[key[-1]]} = {M.action[key].render(M.names)}")
    return "\n".join(lines) + "\n"


# -- cochains ---------------------------------------------------------------------------

def parse_cochain(text: str, A: NlcaPresentation, M):
    """``[cochain]`` with the degree ``q`` and a ``[values]`` table keyed by generator tuples.

    Blocks may be separated by ``|`` for readability.
    """
    from .cohomology import Cochain, cochain_variables, validate_cochain
    secs = _sections(text)
    for s in secs:
        if s not in ("cochain", "values"):
            raise ParseError(f"unknown section [{s}]")
    if "cochain" not in secs:
        raise ParseError("missing [cochain] section")
    st = _settings(secs["cochain"], ("q",), "cochain")
    if "q" not in st:
        raise ParseError("missing setting q")
    q = _int(st["q"], 1)
    arity = (q - 1) * (A.n - 1) + 1
    vars_ = cochain_variables(A.n, q)
    values = {}
    for ln in secs.get("values", []):
        key = _key(ln, A.names, arity, allow_bar=True)
        if key in values:
            raise ParseError("duplicate entry", ln.line, ln.key_col)
        values[key] = parse_value(ln.value, vars_, M.names, ln.line, ln.value_col)
    try:
        g = Cochain(A.n, q, A.dim, M.dim, values)
        validate_cochain(g)
    except ValueError as e:
        raise ParseError(str(e)) from None
    return g


def render_cochain(g, A: NlcaPresentation, M) -> str:
    size = g.n - 1
    lines = ["[cochain]", f"q = {g.q}", "", "[values]"]
    for key, val in sorted(g.stored().items()):
        blocks = [" ".join(A.names[k] for k in key[b * size:(b + 1) * size]) for b in range(g.q - 1)]
        lhs = " | ".join(blocks + [A.names[key[-1]]])
        lines.append(f"{lhs} = {val.render(M.names)}")
    return "\n".join(lines) + "\n"


def parse_element(text: str, names: Sequence[str], variables: Sequence[VarId] = ()) -> PolyValue:
    return parse_value(text, variables, names)


_ANN_RE = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_']*)\[([\d,\s]*)\]\s*\Z")


def parse_ann_generator(text: str, names: Sequence[str]) -> tuple[int, tuple[int, ...]]:
    """``e1[2,0]`` -> ``(0, (2, 0))``."""
    m = _ANN_RE.match(text)
    if not m:
        raise ParseError(f"expected name[m1,...,mp], got {text!r}")
    if m.group(1) not in names:
        raise ParseError(f"unknown generator {m.group(1)!r}")
    idx = tuple(int(x) for x in m.group(2).split(",") if x.strip())
    if not idx:
        raise ParseError("empty multi-index")
    return names.index(m.group(1)), idx
