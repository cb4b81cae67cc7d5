"""Sparse exact arithmetic in P_n = E(x_1,...,x_n) (x) F_p[y_1,...,y_n].

A term is (ext, exps, c): ext is a strictly increasing tuple of exterior
indices, exps the length-n vector of y-exponents, c a residue in [1, p-1].
An Element is a dict {(ext, exps): c} kept fully reduced: no zero
coefficients, coefficients in [1, p-1], exponents checked against EXP_LIMIT.

Term order (used for canonical output, leading terms and division): compare
(total degree, ext lexicographically, y-exponents by graded reverse
lexicographic order realised as tuple(-e for e in reversed(exps))).  Larger
key = later in the order = "leading".  The y-part of the order is compatible
with multiplication, which is what exact division needs.
"""

from __future__ import annotations

import json
from typing import Iterable, Iterator

from .context import (
    EXP_LIMIT,
    Context,
    ContextMismatchError,
    ExactDivisionError,
    ExponentOverflowError,
    ParseError,
)
from . import fastmul

TermKey = tuple[tuple[int, ...], tuple[int, ...]]


def term_degree(key: TermKey) -> int:
    ext, exps = key
    return len(ext) + 2 * sum(exps)


def term_sort_key(key: TermKey):
    ext, exps = key
    return (term_degree(key), ext, tuple(-e for e in reversed(exps)))


def _heap_key(key: TermKey):
    # Inverts term_sort_key so a min-heap pops the leading term first.
    ext, exps = key
    iext = tuple(-i for i in ext) + (1,)
    return (-term_degree(key), iext, tuple(reversed(exps)))


def merge_ext(a: tuple[int, ...], b: tuple[int, ...]):
    """Merge two increasing index tuples; returns (merged, sign) or (None, 0)
    when an index repeats.  sign is the Koszul sign of the shuffle."""
    if not a:
        return b, 1
    if not b:
        return a, 1
    out = []
    i = j = 0
    inv = 0
    la = len(a)
    while i < la and j < len(b):
        if a[i] == b[j]:
            return None, 0
        if a[i] < b[j]:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            inv += la - i
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out), (-1 if inv & 1 else 1)


class Element:
    """Immutable-by-convention sparse element of P_n."""

    __slots__ = ("ctx", "_terms")

    def __init__(self, ctx: Context, terms: dict, _trusted: bool = False):
        self.ctx = ctx
        if _trusted:
            self._terms = terms
            return
        p, n = ctx.p, ctx.n
        clean: dict[TermKey, int] = {}
        for (ext, exps), c in terms.items():
            c %= p
            if c == 0:
                continue
            ext = tuple(ext)
            exps = tuple(exps)
            if len(exps) != n:
                raise ValueError(f"exponent vector must have length {n}: {exps}")
            if any(e < 0 or e >= EXP_LIMIT for e in exps):
                raise ExponentOverflowError(f"exponent out of range in {exps}")
            if any(i < 1 or i > n for i in ext) or list(ext) != sorted(set(ext)):
                raise ValueError(f"bad exterior index tuple {ext}")
            k = (ext, exps)
            c = (clean.get(k, 0) + c) % p
            if c:
                clean[k] = c
            else:
                clean.pop(k, None)
        self._terms = clean

    # -- basic queries ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def term_count(self) -> int:
        return len(self._terms)

    def terms(self) -> list[tuple[TermKey, int]]:
        """Terms in canonical (descending) order."""
        return sorted(self._terms.items(), key=lambda kv: term_sort_key(kv[0]), reverse=True)

    def iter_terms(self) -> Iterator[tuple[TermKey, int]]:
        return iter(self._terms.items())

    def is_homogeneous(self) -> bool:
        degs = {term_degree(k) for k in self._terms}
        return len(degs) <= 1

    def degree(self):
        """Degree of a homogeneous element; None for 0; raises otherwise."""
        degs = {term_degree(k) for k in self._terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError("degree undefined: element is inhomogeneous")
        return degs.pop()

    def y_degree(self):
        if not self._terms:
            return None
        degs = {sum(exps) for (_, exps) in self._terms}
        if len(degs) > 1:
            raise ValueError("y-degree undefined")
        return degs.pop()

    def is_y_only(self) -> bool:
        return all(not ext for (ext, _) in self._terms)

    def leading_term(self) -> tuple[TermKey, int]:
        if not self._terms:
            raise ValueError("zero element has no leading term")
        k = max(self._terms, key=term_sort_key)
        return k, self._terms[k]

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = scalar(self.ctx, other)
        if not isinstance(other, Element):
            return NotImplemented
        self.ctx.check_same(other.ctx)
        p = self.ctx.p
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        out = dict(a)
        for k, c in b.items():
            s = (out.get(k, 0) + c) % p
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return Element(self.ctx, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        p = self.ctx.p
        return Element(self.ctx, {k: p - c for k, c in self._terms.items()}, _trusted=True)

    def __sub__(self, other):
        return self + (-other if isinstance(other, Element) else -scalar(self.ctx, other))

    def __rsub__(self, other):
        return scalar(self.ctx, other) + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            return scalar_mul(other, self)
        if not isinstance(other, Element):
            return NotImplemented
        return mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return scalar_mul(other, self)
        return NotImplemented

    def __pow__(self, m: int):
        return power(self, m)

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.ctx == other.ctx and self._terms == other._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __repr__(self) -> str:
        s = serialize(self)
        if len(s) > 120:
            s = s[:117] + "..."
        return f"<Element p={self.ctx.p} n={self.ctx.n}: {s}>"

    def twist(self, e: int):
        """Frobenius twist: the p^e-th power of a y-only element, computed by
        scaling every exponent (Fermat keeps the coefficients fixed)."""
        if e == 0:
            return self
        if e < 0:
            raise ValueError("twist exponent must be >= 0")
        if not self.is_y_only():
            raise ValueError("twist is only defined for y-only elements")
        q = self.ctx.p ** e
        out = {}
        for (ext, exps), c in self._terms.items():
            new = tuple(v * q for v in exps)
            if any(v >= EXP_LIMIT for v in new):
                raise ExponentOverflowError("twist overflows exponent range")
            out[(ext, new)] = c
        return Element(self.ctx, out, _trusted=True)


# -- constructors ----------------------------------------------------------


def scalar(ctx: Context, c: int) -> Element:
    c %= ctx.p
    if c == 0:
        return Element(ctx, {}, _trusted=True)
    return Element(ctx, {((), (0,) * ctx.n): c}, _trusted=True)


def make_generator(ctx: Context, kind: str, i: int) -> Element:
    """x_i or y_i.  kind is 'x' or 'y'; 1 <= i <= n."""
    if not 1 <= i <= ctx.n:
        raise ValueError(f"generator index {i} out of range 1..{ctx.n}")
    if kind == "x":
        return Element(ctx, {((i,), (0,) * ctx.n): 1}, _trusted=True)
    if kind == "y":
        exps = [0] * ctx.n
        exps[i - 1] = 1
        return Element(ctx, {((), tuple(exps)): 1}, _trusted=True)
    raise ValueError(f"kind must be 'x' or 'y', got {kind!r}")


def from_terms(ctx: Context, items: Iterable[tuple[tuple[int, ...], tuple[int, ...], int]]) -> Element:
    """Build from (ext, exps, coeff) triples (summed, reduced)."""
    acc: dict[TermKey, int] = {}
    for ext, exps, c in items:
        k = (tuple(ext), tuple(exps))
        acc[k] = acc.get(k, 0) + c
    return Element(ctx, acc)


# -- free-function operation names (thin wrappers over the methods) ---------


def add(a: Element, b: Element) -> Element:
    return a + b


def neg(a: Element) -> Element:
    return -a


def scalar_mul(c: int, a: Element) -> Element:
    c %= a.ctx.p
    if c == 0:
        return a.ctx.zero()
    if c == 1:
        return a
    p = a.ctx.p
    return Element(a.ctx, {k: (c * v) % p for k, v in a._terms.items()}, _trusted=True)


def mul(a: Element, b: Element) -> Element:
    """Product with the Koszul sign rule on exterior parts."""
    a.ctx.check_same(b.ctx)
    if a.is_zero() or b.is_zero():
        return a.ctx.zero()
    p, n = a.ctx.p, a.ctx.n

    # Group terms by exterior part so the y-parts can be convolved in bulk.
    ga: dict[tuple[int, ...], dict[tuple[int, ...], int]] = {}
    for (ext, exps), c in a._terms.items():
        ga.setdefault(ext, {})[exps] = c
    gb: dict[tuple[int, ...], dict[tuple[int, ...], int]] = {}
    for (ext, exps), c in b._terms.items():
        gb.setdefault(ext, {})[exps] = c

    out: dict[TermKey, int] = {}

    def accumulate(ext: tuple[int, ...], sign: int, prod: dict) -> None:
        for exps, c in prod.items():
            k = (ext, exps)
            s = (out.get(k, 0) + sign * c) % p
            if s:
                out[k] = s
            else:
                out.pop(k, None)

    def run_jobs(jobs: list, shared: dict) -> None:
        # batch many ext groups against one shared y-map when it pays off
        if len(jobs) > 1 and sum(len(m) for _, _, m in jobs) * len(shared) >= fastmul.DICT_PAIRS_MAX:
            prods = fastmul.mul_grouped(p, n, [m for _, _, m in jobs], shared)
            if prods is not None:
                for (ext, sign, _), prod in zip(jobs, prods):
                    accumulate(ext, sign, prod)
                return
        for ext, sign, m in jobs:
            accumulate(ext, sign, fastmul.mul_maps(p, n, m, shared))

    if len(gb) == 1:
        (ext2, mb), = gb.items()
        jobs = []
        for ext1, ma in ga.items():
            ext, sign = merge_ext(ext1, ext2)
            if ext is not None:
                jobs.append((ext, sign, ma))
        run_jobs(jobs, mb)
    elif len(ga) == 1:
        (ext1, ma), = ga.items()
        jobs = []
        for ext2, mb in gb.items():
            ext, sign = merge_ext(ext1, ext2)
            if ext is not None:
                jobs.append((ext, sign, mb))
        run_jobs(jobs, ma)
    else:
        for ext1, ma in ga.items():
            for ext2, mb in gb.items():
                ext, sign = merge_ext(ext1, ext2)
                if ext is None:
                    continue
                accumulate(ext, sign, fastmul.mul_maps(p, n, ma, mb))
    return Element(a.ctx, out, _trusted=True)


def power(a: Element, m: int) -> Element:
    """a**m.  For y-only elements uses the base-p expansion of m and
    Frobenius twists; otherwise square-and-multiply."""
    if not isinstance(m, int) or m < 0:
        raise ValueError(f"exponent must be a non-negative integer, got {m!r}")
    if m == 0:
        return a.ctx.one()
    if m == 1:
        return a
    p = a.ctx.p
    if a.is_y_only() and m >= p:
        digits = []
        mm = m
        while mm:
            digits.append(mm % p)
            mm //= p
        small = [None, a]  # small[d] = a**d for 1 <= d < p, filled lazily
        result = None
        for e, d in enumerate(digits):
            if d == 0:
                continue
            while len(small) <= d:
                small.append(mul(small[-1], a))
            piece = small[d].twist(e)
            result = piece if result is None else mul(result, piece)
        return result
    # generic square-and-multiply
    result = a.ctx.one()
    base = a
    mm = m
    while mm:
        if mm & 1:
            result = mul(result, base)
        mm >>= 1
        if mm:
            base = mul(base, base)
    return result


def exact_div(a: Element, b: Element) -> Element:
    """Quotient a / b for a y-only divisor b that divides exactly.

    Leading-term elimination in the term order; raises ExactDivisionError
    as soon as a leading term is not divisible."""
    a.ctx.check_same(b.ctx)
    if b.is_zero():
        raise ZeroDivisionError("division by the zero element")
    if not b.is_y_only():
        raise ExactDivisionError("divisor must be y-only")
    if a.is_zero():
        return a.ctx.zero()
    p = a.ctx.p

    (b_ext, b_exps), b_lead_c = b.leading_term()
    b_rest = [(exps, c) for (ext, exps), c in b._terms.items() if exps != b_exps]
    b_lead_inv = pow(b_lead_c, p - 2, p)

    import heapq

    rem: dict[TermKey, int] = dict(a._terms)
    heap = [(_heap_key(k), k) for k in rem]
    heapq.heapify(heap)
    quot: dict[TermKey, int] = {}

    while heap:
        _, k = heapq.heappop(heap)
        c = rem.get(k)
        if not c:
            continue  # stale heap entry
        del rem[k]
        ext, exps = k
        qexps = tuple(e - f for e, f in zip(exps, b_exps))
        if any(v < 0 for v in qexps):
            raise ExactDivisionError(
                f"not exactly divisible: leading term {serialize_term(k, c)} "
                f"not divisible by {serialize_term((b_ext, b_exps), b_lead_c)}"
            )
        qc = (c * b_lead_inv) % p
        qk = (ext, qexps)
        quot[qk] = (quot.get(qk, 0) + qc) % p
        for exps2, c2 in b_rest:
            nk = (ext, tuple(e + f for e, f in zip(qexps, exps2)))
            s = (rem.get(nk, 0) - qc * c2) % p
            if s:
                if nk not in rem:
                    heapq.heappush(heap, (_heap_key(nk), nk))
                rem[nk] = s
            else:
                rem.pop(nk, None)
    if rem:
        raise ExactDivisionError("nonzero remainder")  # pragma: no cover
    return Element(a.ctx, quot)


def apply_matrix(g, a: Element) -> Element:
    """Linear substitution x_i -> sum_j g[i][j] x_j, y_i -> sum_j g[i][j] y_j
    (row convention), extended to the whole algebra."""
    from .sampling import MatrixFp

    if not isinstance(g, MatrixFp):
        raise TypeError("first argument must be a MatrixFp")
    g.ctx.check_same(a.ctx)
    ctx = a.ctx
    p, n = ctx.p, ctx.n

    x_img: dict[int, Element] = {}
    lin_pows: dict[tuple[int, int], Element] = {}  # (i, d) -> (sum_j g_ij y_j)**d
    y_img: dict[tuple[int, int], Element] = {}

    def x_image(i: int) -> Element:
        e = x_img.get(i)
        if e is None:
            e = from_terms(ctx, (((j,), (0,) * n, g.rows[i - 1][j - 1]) for j in range(1, n + 1)))
            x_img[i] = e
        return e

    def lin_pow(i: int, d: int) -> Element:
        e = lin_pows.get((i, d))
        if e is None:
            if d == 1:
                items = []
                for j in range(1, n + 1):
                    exps = [0] * n
                    exps[j - 1] = 1
                    items.append(((), tuple(exps), g.rows[i - 1][j - 1]))
                e = from_terms(ctx, items)
            else:
                e = mul(lin_pow(i, d - 1), lin_pow(i, 1))
            lin_pows[(i, d)] = e
        return e

    def y_image(i: int, m: int) -> Element:
        e = y_img.get((i, m))
        if e is None:
            # base-p expansion: (sum g y)^m = prod_e twist_e((sum g y)^{d_e})
            e = ctx.one()
            mm, pos = m, 0
            while mm:
                d = mm % p
                if d:
                    e = mul(e, lin_pow(i, d).twist(pos))
                mm //= p
                pos += 1
            y_img[(i, m)] = e
        return e

    total = ctx.zero()
    for (ext, exps), c in a._terms.items():
        piece = scalar(ctx, c)
        for i in ext:
            piece = mul(piece, x_image(i))
        for i, m in enumerate(exps, start=1):
            if m:
                piece = mul(piece, y_image(i, m))
        total = total + piece
    return total


# -- serialization -----------------------------------------------------------


def serialize_term(key: TermKey, c: int) -> str:
    ext, exps = key
    parts = []
    for i in ext:
        parts.append(f"x{i}")
    for i, m in enumerate(exps, start=1):
        if m == 1:
            parts.append(f"y{i}")
        elif m > 1:
            parts.append(f"y{i}^{m}")
    if not parts:
        return str(c)
    if c != 1:
        parts.insert(0, str(c))
    return "*".join(parts)


def serialize(a: Element, fmt: str = "text") -> str:
    """Canonical text ('x1*x2*y1^3 + 2*y2') or JSON form."""
    if fmt == "text":
        if a.is_zero():
            return "0"
        return " + ".join(serialize_term(k, c) for k, c in a.terms())
    if fmt == "json":
        return json.dumps(
            {
                "p": a.ctx.p,
                "n": a.ctx.n,
                "terms": [
                    {"c": c, "ext": list(k[0]), "exp": list(k[1])} for k, c in a.terms()
                ],
            }
        )
    raise ValueError(f"unknown format {fmt!r}")


class _TextParser:
    def __init__(self, ctx: Context, s: str):
        self.ctx = ctx
        self.s = s
        self.i = 0

    def error(self, msg: str):
        raise ParseError(msg, self.i)

    def skip_ws(self):
        while self.i < len(self.s) and self.s[self.i] in " \t":
            self.i += 1

    def peek(self):
        self.skip_ws()
        return self.s[self.i] if self.i < len(self.s) else ""

    def take(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.i += 1

    def int_(self) -> int:
        self.skip_ws()
        j = self.i
        while j < len(self.s) and self.s[j].isdigit():
            j += 1
        if j == self.i:
            self.error("expected an integer")
        v = int(self.s[self.i : j])
        self.i = j
        return v

    def factor(self):
        ch = self.peek()
        if ch in "xy":
            self.i += 1
            idx = self.int_()
            if not 1 <= idx <= self.ctx.n:
                self.error(f"generator index {idx} out of range 1..{self.ctx.n}")
            m = 1
            if ch == "y" and self.peek() == "^":
                self.i += 1
                m = self.int_()
            return ch, idx, m
        self.error("expected a factor x<i> or y<i>")

    def term(self):
        coeff = 1
        ext: list[int] = []
        exps = [0] * self.ctx.n
        if self.peek().isdigit():
            coeff = self.int_()
            while self.peek() == "*":
                self.i += 1
                kind, idx, m = self.factor()
                self._push(ext, exps, kind, idx, m)
        else:
            kind, idx, m = self.factor()
            self._push(ext, exps, kind, idx, m)
            while self.peek() == "*":
                self.i += 1
                kind, idx, m = self.factor()
                self._push(ext, exps, kind, idx, m)
        return tuple(ext), tuple(exps), coeff

    def _push(self, ext, exps, kind, idx, m):
        if kind == "x":
            if idx in ext:
                self.error(f"repeated exterior generator x{idx}")
            ext.append(idx)
        else:
            exps[idx - 1] += m
        if kind == "x" and ext != sorted(ext):
            self.error("exterior generators must appear in increasing order")

    def parse(self) -> Element:
        self.skip_ws()
        if self.peek() == "0":
            save = self.i
            self.i += 1
            if self.peek() == "":
                return self.ctx.zero()
            self.i = save
        items = [self.term()]
        while self.peek() == "+":
            self.i += 1
            items.append(self.term())
        self.skip_ws()
        if self.i != len(self.s):
            self.error("trailing input")
        return from_terms(self.ctx, items)


def parse_element(ctx: Context, s: str) -> Element:
    """Inverse of serialize; accepts the text grammar or the JSON form."""
    s = s.strip()
    if s.startswith("{"):
        data = json.loads(s)
        if data.get("p") != ctx.p or data.get("n") != ctx.n:
            raise ContextMismatchError(
                f"serialized context (p={data.get('p')}, n={data.get('n')}) "
                f"does not match {ctx}"
            )
        return from_terms(
            ctx, ((tuple(t["ext"]), tuple(t["exp"]), t["c"]) for t in data["terms"])
        )
    return _TextParser(ctx, s).parse()
