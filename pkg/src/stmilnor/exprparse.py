"""Expression grammar for the command line: tokenizer, AST, parser, printer.

Grammar (no unary minus; exponents are literal integers):

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' INT)?
    atom   := 'x(' INT ')' | 'y(' INT ')' | INT | invariant | op | '(' expr ')'
    invariant := 'L(' INT ')' | 'Ls(' INT ',' INT ')' | 'Q(' INT ',' INT ')'
               | 'V(' INT ')' | 'M(' INT ';' intlist ')'
               | 'Md(' INT ',' INT ';' intlist ')'
               | 'B(' INT ';' '[' intlist ']' ';' INT ')'
    op     := 'Stu(' INT ',' expr ')' | 'StDelta(' INT ',' expr ')'
            | 'P(' INT ',' expr ')' | 'StSR(' '[' intlist ']' ',' '[' intlist ']' ',' expr ')'

`unparse` emits canonical source with minimal parentheses and round-trips:
parse(unparse(ast)) == ast for every well-formed tree.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .context import ParseError

__all__ = [
    "Lit", "Var", "LInv", "LsInv", "QInv", "VInv", "MInv", "MdInv", "BInv",
    "StuOp", "StDeltaOp", "POp", "StSROp", "Add", "Sub", "Mul", "Pow",
    "parse_expr", "unparse", "random_ast",
]


@dataclass(frozen=True)
class Lit:
    value: int


@dataclass(frozen=True)
class Var:
    kind: str  # 'x' or 'y'
    index: int


@dataclass(frozen=True)
class LInv:
    m: int


@dataclass(frozen=True)
class LsInv:
    m: int
    s: int


@dataclass(frozen=True)
class QInv:
    m: int
    s: int


@dataclass(frozen=True)
class VInv:
    m: int


@dataclass(frozen=True)
class MInv:
    m: int
    ss: tuple[int, ...]


@dataclass(frozen=True)
class MdInv:
    m: int
    d: int
    ss: tuple[int, ...]


@dataclass(frozen=True)
class BInv:
    k: int
    es: tuple[int, ...]
    m: int


@dataclass(frozen=True)
class StuOp:
    u: int
    arg: object


@dataclass(frozen=True)
class StDeltaOp:
    i: int
    arg: object


@dataclass(frozen=True)
class POp:
    r: int
    arg: object


@dataclass(frozen=True)
class StSROp:
    s_part: tuple[int, ...]
    r_part: tuple[int, ...]
    arg: object


@dataclass(frozen=True)
class Add:
    left: object
    right: object


@dataclass(frozen=True)
class Sub:
    left: object
    right: object


@dataclass(frozen=True)
class Mul:
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int


_KEYWORDS = {
    "x", "y", "L", "Ls", "Q", "V", "M", "Md", "B", "Stu", "StDelta", "P", "StSR",
}

_SYMBOLS = "()[],;+-*^"


@dataclass(frozen=True)
class _Tok:
    kind: str   # 'int' | 'name' | one of _SYMBOLS | 'end'
    value: object
    pos: int    # 0-based column of the first character


def _tokenize(src: str) -> list[_Tok]:
    toks = []
    i = 0
    while i < len(src):
        ch = src[i]
        if ch in " \t\r\n":
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(src) and src[j].isdigit():
                j += 1
            toks.append(_Tok("int", int(src[i:j]), i))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < len(src) and src[j].isalpha():
                j += 1
            name = src[i:j]
            if name not in _KEYWORDS:
                raise ParseError(f"unknown identifier {name!r}", i)
            toks.append(_Tok("name", name, i))
            i = j
            continue
        if ch in _SYMBOLS:
            toks.append(_Tok(ch, ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    toks.append(_Tok("end", None, len(src)))
    return toks


class _Parser:
    def __init__(self, toks: list[_Tok]):
        self.toks = toks
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def next(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, kind: str) -> _Tok:
        t = self.peek()
        if t.kind != kind:
            what = "end of input" if t.kind == "end" else repr(t.value)
            raise ParseError(f"expected {kind!r}, found {what}", t.pos)
        return self.next()

    def expect_int(self) -> int:
        t = self.peek()
        if t.kind != "int":
            what = "end of input" if t.kind == "end" else repr(t.value)
            raise ParseError(f"expected an integer, found {what}", t.pos)
        return self.next().value

    def intlist(self, closer: str) -> tuple[int, ...]:
        out = []
        if self.peek().kind == "int":
            out.append(self.expect_int())
            while self.peek().kind == ",":
                self.next()
                out.append(self.expect_int())
        if self.peek().kind != closer:
            t = self.peek()
            what = "end of input" if t.kind == "end" else repr(t.value)
            raise ParseError(f"expected {closer!r}, found {what}", t.pos)
        return tuple(out)

    def bracketed_intlist(self) -> tuple[int, ...]:
        self.expect("[")
        out = self.intlist("]")
        self.expect("]")
        return out

    # grammar productions -------------------------------------------------

    def expr(self):
        node = self.term()
        while self.peek().kind in "+-":
            op = self.next().kind
            rhs = self.term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def term(self):
        node = self.factor()
        while self.peek().kind == "*":
            self.next()
            node = Mul(node, self.factor())
        return node

    def factor(self):
        node = self.atom()
        if self.peek().kind == "^":
            self.next()
            node = Pow(node, self.expect_int())
        return node

    def atom(self):
        t = self.peek()
        if t.kind == "int":
            return Lit(self.next().value)
        if t.kind == "(":
            self.next()
            node = self.expr()
            self.expect(")")
            return node
        if t.kind != "name":
            what = "end of input" if t.kind == "end" else repr(t.value)
            raise ParseError(f"expected an atom, found {what}", t.pos)
        name = self.next().value
        self.expect("(")
        if name in ("x", "y"):
            idx = self.expect_int()
            self.expect(")")
            return Var(name, idx)
        if name == "L":
            m = self.expect_int()
            self.expect(")")
            return LInv(m)
        if name == "Ls":
            m = self.expect_int()
            self.expect(",")
            s = self.expect_int()
            self.expect(")")
            return LsInv(m, s)
        if name == "Q":
            m = self.expect_int()
            self.expect(",")
            s = self.expect_int()
            self.expect(")")
            return QInv(m, s)
        if name == "V":
            m = self.expect_int()
            self.expect(")")
            return VInv(m)
        if name == "M":
            m = self.expect_int()
            self.expect(";")
            ss = self.intlist(")")
            self.expect(")")
            return MInv(m, ss)
        if name == "Md":
            m = self.expect_int()
            self.expect(",")
            d = self.expect_int()
            self.expect(";")
            ss = self.intlist(")")
            self.expect(")")
            return MdInv(m, d, ss)
        if name == "B":
            k = self.expect_int()
            self.expect(";")
            es = self.bracketed_intlist()
            self.expect(";")
            m = self.expect_int()
            self.expect(")")
            return BInv(k, es, m)
        if name == "Stu":
            u = self.expect_int()
            self.expect(",")
            arg = self.expr()
            self.expect(")")
            return StuOp(u, arg)
        if name == "StDelta":
            i = self.expect_int()
            self.expect(",")
            arg = self.expr()
            self.expect(")")
            return StDeltaOp(i, arg)
        if name == "P":
            r = self.expect_int()
            self.expect(",")
            arg = self.expr()
            self.expect(")")
            return POp(r, arg)
        if name == "StSR":
            s_part = self.bracketed_intlist()
            self.expect(",")
            r_part = self.bracketed_intlist()
            self.expect(",")
            arg = self.expr()
            self.expect(")")
            return StSROp(s_part, r_part, arg)
        raise ParseError(f"unknown constructor {name!r}", t.pos)


def parse_expr(src: str):
    """Parse a full expression; raises ParseError with a column on bad input."""
    p = _Parser(_tokenize(src))
    node = p.expr()
    t = p.peek()
    if t.kind != "end":
        raise ParseError(f"unexpected trailing input {t.value!r}", t.pos)
    return node


# printing -------------------------------------------------------------

def _ints(xs) -> str:
    return ",".join(str(x) for x in xs)


def _emit(node, level: int) -> str:
    # levels: 0 expr, 1 term, 2 factor, 3 atom
    if isinstance(node, Add):
        s, own = f"{_emit(node.left, 0)} + {_emit(node.right, 1)}", 0
    elif isinstance(node, Sub):
        s, own = f"{_emit(node.left, 0)} - {_emit(node.right, 1)}", 0
    elif isinstance(node, Mul):
        s, own = f"{_emit(node.left, 1)}*{_emit(node.right, 2)}", 1
    elif isinstance(node, Pow):
        s, own = f"{_emit(node.base, 3)}^{node.exp}", 2
    else:
        own = 3
        if isinstance(node, Lit):
            s = str(node.value)
        elif isinstance(node, Var):
            s = f"{node.kind}({node.index})"
        elif isinstance(node, LInv):
            s = f"L({node.m})"
        elif isinstance(node, LsInv):
            s = f"Ls({node.m},{node.s})"
        elif isinstance(node, QInv):
            s = f"Q({node.m},{node.s})"
        elif isinstance(node, VInv):
            s = f"V({node.m})"
        elif isinstance(node, MInv):
            s = f"M({node.m};{_ints(node.ss)})"
        elif isinstance(node, MdInv):
            s = f"Md({node.m},{node.d};{_ints(node.ss)})"
        elif isinstance(node, BInv):
            s = f"B({node.k};[{_ints(node.es)}];{node.m})"
        elif isinstance(node, StuOp):
            s = f"Stu({node.u},{_emit(node.arg, 0)})"
        elif isinstance(node, StDeltaOp):
            s = f"StDelta({node.i},{_emit(node.arg, 0)})"
        elif isinstance(node, POp):
            s = f"P({node.r},{_emit(node.arg, 0)})"
        elif isinstance(node, StSROp):
            s = f"StSR([{_ints(node.s_part)}],[{_ints(node.r_part)}],{_emit(node.arg, 0)})"
        else:
            raise TypeError(f"not an AST node: {node!r}")
    if own < level:
        return f"({s})"
    return s


def unparse(node) -> str:
    return _emit(node, 0)


# fuzzing --------------------------------------------------------------

def random_ast(rng: random.Random, n: int = 3, depth: int = 3):
    """A random well-formed AST over a rank-n context, for round-trip tests."""
    if depth <= 0:
        kind = rng.randrange(8)
        if kind == 0:
            return Lit(rng.randrange(0, 9))
        if kind == 1:
            return Var(rng.choice("xy"), rng.randint(1, n))
        if kind == 2:
            return LInv(rng.randint(0, n))
        if kind == 3:
            m = rng.randint(1, n)
            return LsInv(m, rng.randint(0, m))
        if kind == 4:
            m = rng.randint(1, n)
            return QInv(m, rng.randint(0, m))
        if kind == 5:
            return VInv(rng.randint(1, n))
        if kind == 6:
            m = rng.randint(1, n)
            ss = tuple(sorted(rng.sample(range(m), rng.randint(0, m))))
            if rng.random() < 0.5:
                return MInv(m, ss)
            return MdInv(m, rng.randint(1, 4), ss)
        m = rng.randint(1, n)
        k = rng.randint(0, m)
        es = tuple(sorted(rng.sample(range(6), m - k)))
        return BInv(k, es, m)
    kind = rng.randrange(8)
    if kind == 0:
        return Add(random_ast(rng, n, depth - 1), random_ast(rng, n, depth - 1))
    if kind == 1:
        return Sub(random_ast(rng, n, depth - 1), random_ast(rng, n, depth - 1))
    if kind == 2:
        return Mul(random_ast(rng, n, depth - 1), random_ast(rng, n, depth - 1))
    if kind == 3:
        return Pow(random_ast(rng, n, depth - 1), rng.randrange(0, 5))
    if kind == 4:
        return StuOp(rng.randrange(0, 4), random_ast(rng, n, depth - 1))
    if kind == 5:
        return StDeltaOp(rng.randint(1, 4), random_ast(rng, n, depth - 1))
    if kind == 6:
        return POp(rng.randrange(0, 30), random_ast(rng, n, depth - 1))
    s_part = tuple(sorted(rng.sample(range(4), rng.randint(0, 2))))
    r_part = tuple(rng.randrange(0, 3) for _ in range(rng.randint(0, 3)))
    return StSROp(s_part, r_part, random_ast(rng, n, depth - 1))
