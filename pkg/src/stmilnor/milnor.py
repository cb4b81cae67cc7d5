"""Steenrod operations indexed by Milnor pairs (S; R).

An operation St^{S,R} is indexed by a strictly increasing tuple S of
non-negative integers (exterior part) and a tuple R = (r_1, r_2, ...) of
non-negative integers (polynomial part).  It raises degree by

    sum_{s in S} (2 p^s - 1)  +  sum_i r_i (2 p^i - 2).

On generators:

    St^{(),()}   x = x          St^{(),()}      y = y
    St^{(u),()}  x = y^{p^u}    St^{(),Delta_i} y = y^{p^i}

and all other (S; R) act by zero on generators.  Products follow the Cartan
rule: St^{S,R}(uv) = sum over S = S1 | S2 (disjoint) and R = R1 + R2 of

    (-1)^{(dim u + l(S1)) l(S2)} sign(S; S1, S2) St^{S1,R1}(u) St^{S2,R2}(v)

where sign(S; S1, S2) counts inversions between S1 and S2.  `apply` runs
this recursion with a power rule for y-blocks (digitwise multinomials mod p),
while `naive_apply` unfolds every y^m into m single factors and uses no
shortcuts; the two are checked against each other in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .algebra import Element
from .context import Context


@dataclass(frozen=True)
class MilnorOp:
    """Operation index (S; R), normalized: S strictly increasing, R stripped."""

    S: tuple[int, ...]
    R: tuple[int, ...]

    def __post_init__(self) -> None:
        s = tuple(int(v) for v in self.S)
        if any(v < 0 for v in s):
            raise ValueError("entries of S must be non-negative")
        if any(a >= b for a, b in zip(s, s[1:])):
            raise ValueError("S must be strictly increasing")
        r = list(int(v) for v in self.R)
        if any(v < 0 for v in r):
            raise ValueError("entries of R must be non-negative")
        while r and r[-1] == 0:
            r.pop()
        object.__setattr__(self, "S", s)
        object.__setattr__(self, "R", tuple(r))

    @classmethod
    def identity(cls) -> MilnorOp:
        return cls((), ())

    @property
    def is_identity(self) -> bool:
        return not self.S and not self.R

    def degree_shift(self, p: int) -> int:
        return sum(2 * p**s - 1 for s in self.S) + sum(
            r * (2 * p**i - 2) for i, r in enumerate(self.R, start=1)
        )

    def __str__(self) -> str:
        return f"St^({list(self.S)};{list(self.R)})"


def delta(i: int, length: int | None = None) -> tuple[int, ...]:
    """R-tuple with a single 1 in slot i (1-based)."""
    if i < 1:
        raise ValueError("slot index must be >= 1")
    L = i if length is None else length
    return tuple(1 if j == i else 0 for j in range(1, L + 1))


@lru_cache(maxsize=None)
def _fact_table(p: int) -> tuple[int, ...]:
    t = [1] * p
    for i in range(2, p):
        t[i] = t[i - 1] * i % p
    return tuple(t)


def multinomial_mod_p(p: int, m: int, parts: tuple[int, ...]) -> int:
    """m! / (parts! * (m - sum parts)!) mod p via digitwise reduction."""
    rest = m - sum(parts)
    if rest < 0:
        return 0
    fact = _fact_table(p)
    result = 1
    vals = list(parts)
    while m:
        am = m % p
        ds = [v % p for v in vals]
        if sum(ds) > am:
            return 0
        num = fact[am]
        den = fact[am - sum(ds)]
        for d in ds:
            den = den * fact[d] % p
        result = result * num * pow(den, p - 2, p) % p
        m //= p
        vals = [v // p for v in vals]
    if any(vals):
        return 0
    return result


def binomial_mod_p(p: int, m: int, k: int) -> int:
    if k < 0 or k > m:
        return 0
    return multinomial_mod_p(p, m, (k,))


def _digits(m: int, p: int) -> list[int]:
    out = []
    while m:
        out.append(m % p)
        m //= p
    return out


def _compositions_at_most(total: int, slots: int):
    """All tuples of `slots` non-negative ints with sum <= total."""
    if slots == 0:
        yield ()
        return
    for first in range(total + 1):
        for rest in _compositions_at_most(total - first, slots - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _block_absorptions(p: int, m: int, R: tuple[int, ...]):
    """All ways a block y^m can absorb part of R.

    Returns tuples (A, coeff, shift): St^{(),A}(y^m) = coeff * y^{m+shift}
    over compositions A <= R componentwise with nonzero multinomial mod p.
    """
    L = len(R)
    if L == 0:
        return (((), 1, 0),)
    alphas = _digits(m, p)
    # enough base-p digit positions to cover every r_i
    npos = 1
    top = max(R)
    q = p
    while q <= top:
        npos += 1
        q *= p
    fact = _fact_table(p)
    out = []

    def rec(j: int, pw: int, acc: list[int], coeff: int) -> None:
        if j == npos:
            shift = sum(a * (p**i - 1) for i, a in enumerate(acc, start=1))
            out.append((tuple(acc), coeff, shift))
            return
        alpha = alphas[j] if j < len(alphas) else 0
        for combo in _compositions_at_most(alpha, L):
            nacc = [a + d * pw for a, d in zip(acc, combo)]
            if any(a > r for a, r in zip(nacc, R)):
                continue
            den = fact[alpha - sum(combo)]
            for d in combo:
                den = den * fact[d] % p
            c = coeff * fact[alpha] * pow(den, p - 2, p) % p
            if c:
                rec(j + 1, pw * p, nacc, c)

    rec(0, 1, [0] * L, 1)
    return tuple(out)


def _sub_r(R: tuple[int, ...], A: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(r - a for r, a in zip(R, A))


def apply(op: MilnorOp, a: Element) -> Element:
    """St^{S,R} applied to an element, term by term."""
    ctx = a.ctx
    if op.is_identity:
        return a
    out = ctx.zero()
    for (ext, exps), c in a.iter_terms():
        out = out + c * _apply_term(ctx, op, ext, exps, naive=False)
    return out


def naive_apply(op: MilnorOp, a: Element) -> Element:
    """Same operation via single-factor Cartan steps only (test oracle)."""
    ctx = a.ctx
    if op.is_identity:
        return a
    out = ctx.zero()
    for (ext, exps), c in a.iter_terms():
        out = out + c * _apply_term(ctx, op, ext, exps, naive=True)
    return out


def _apply_term(ctx: Context, op: MilnorOp, ext, exps, naive: bool) -> Element:
    p = ctx.p
    factors: list[tuple[str, int, int]] = [("x", k, 1) for k in ext]
    for k, m in enumerate(exps, start=1):
        if m:
            if naive:
                factors.extend(("y", k, 1) for _ in range(m))
            else:
                factors.append(("y", k, m))

    # x-count suffix for pruning: S entries can only land on x factors
    nfac = len(factors)
    x_left = [0] * (nfac + 1)
    for i in range(nfac - 1, -1, -1):
        x_left[i] = x_left[i + 1] + (factors[i][0] == "x")

    memo: dict = {}
    zero = ctx.zero()
    one = ctx.one()

    def y_power(k: int, m: int) -> Element:
        e = [0] * ctx.n
        e[k - 1] = m
        return Element(ctx, {((), tuple(e)): 1}, _trusted=True)

    def rec(idx: int, S: tuple[int, ...], R: tuple[int, ...]) -> Element:
        if idx == nfac:
            return one if (not S and not any(R)) else zero
        if len(S) > x_left[idx]:
            return zero
        key = (idx, S, R)
        hit = memo.get(key)
        if hit is not None:
            return hit
        kind, k, m = factors[idx]
        res = zero
        if kind == "x":
            sub = rec(idx + 1, S, R)
            if sub:
                sgn = -1 if len(S) % 2 else 1
                res = res + sgn * (ctx.x(k) * sub)
            for t, u in enumerate(S):
                sub = rec(idx + 1, S[:t] + S[t + 1 :], R)
                if sub:
                    sgn = -1 if t % 2 else 1
                    res = res + sgn * (y_power(k, p**u) * sub)
        elif naive:
            sub = rec(idx + 1, S, R)
            if sub:
                res = res + y_power(k, 1) * sub
            for i, r in enumerate(R, start=1):
                if r:
                    A = tuple(1 if j == i else 0 for j in range(1, len(R) + 1))
                    sub = rec(idx + 1, S, _sub_r(R, A))
                    if sub:
                        res = res + y_power(k, p**i) * sub
        else:
            for A, coeff, shift in _block_absorptions(p, m, R):
                sub = rec(idx + 1, S, _sub_r(R, A))
                if sub:
                    res = res + coeff * (y_power(k, m + shift) * sub)
        memo[key] = res
        return res

    return rec(0, op.S, op.R)


def st_u(u: int, a: Element) -> Element:
    """St^{(u),()}: kills each x_k in turn, leaving y_k^{p^u} (antiderivation)."""
    if u < 0:
        raise ValueError("u must be non-negative")
    ctx = a.ctx
    q = ctx.p**u
    terms: dict = {}
    for (ext, exps), c in a.iter_terms():
        for t, k in enumerate(ext):
            ne = list(exps)
            ne[k - 1] += q
            key = (ext[:t] + ext[t + 1 :], tuple(ne))
            s = (terms.get(key, 0) + (-c if t % 2 else c)) % ctx.p
            if s:
                terms[key] = s
            else:
                terms.pop(key, None)
    return Element(ctx, terms)


def st_delta(i: int, a: Element) -> Element:
    """St^{(),Delta_i}: derivation sending y_k to y_k^{p^i}."""
    if i < 1:
        raise ValueError("slot index must be >= 1")
    ctx = a.ctx
    shift = ctx.p**i - 1
    terms: dict = {}
    for (ext, exps), c in a.iter_terms():
        for k0, m in enumerate(exps):
            if not m or m % ctx.p == 0:
                continue
            ne = list(exps)
            ne[k0] += shift
            key = (ext, tuple(ne))
            s = (terms.get(key, 0) + c * m) % ctx.p
            if s:
                terms[key] = s
            else:
                terms.pop(key, None)
    return Element(ctx, terms)


def steenrod_p(r: int, a: Element) -> Element:
    """The power operation P^r = St^{(); (r)}."""
    if r < 0:
        raise ValueError("r must be non-negative")
    if r == 0:
        return a
    return apply(MilnorOp((), (r,)), a)
