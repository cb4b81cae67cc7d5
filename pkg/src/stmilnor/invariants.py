"""Determinant-type invariants: brackets, Dickson and Mui invariants.

The basic object is the bracket [k; e_{k+1}, ..., e_m] in the first m
variables, an alternating sum over permutations with k exterior slots and
a determinant of p-power Frobenius twists in the remaining slots.  From it:

    L_m      = [0; 0, 1, ..., m-1]           (the full determinant)
    L_{m,s}  = [0; 0, ..., s-1, s+1, ..., m] (one exponent skipped)
    Q_{m,s}  = L_{m,s} / L_m                  (Dickson invariant)
    V_m      = L_m / L_{m-1}                  (top linear-form product)
    M_{m,S}  = [k; complement of S in 0..m-1] (Mui invariant, |S| = k)

Q and V are produced by exact division of determinants; the classical
recursion Q_{m,s} = Q_{m-1,s-1}^p + Q_{m-1,s} V_m^{p-1} is provided
separately as an independent cross-check.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations

from .algebra import Element, exact_div
from .context import Context


def _perm_sign(perm) -> int:
    inv = 0
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                inv += 1
    return -1 if inv % 2 else 1


def bracket(ctx: Context, k: int, es, m: int | None = None) -> Element:
    """[k; e_{k+1}, ..., e_m] in the first m variables.

    Sum over k-subsets I of {1..m} (exterior slots, shuffle-signed) times
    the determinant det(y_c^{p^{e_u}}) over the complementary variables.
    The exponent list may be in any order; its order carries the row sign.
    """
    es = tuple(int(e) for e in es)
    if m is None:
        m = k + len(es)
    if k < 0 or len(es) != m - k:
        raise ValueError("need exactly m - k exponents")
    if m > ctx.n:
        raise ValueError(f"bracket needs {m} variables but context has n={ctx.n}")
    if any(e < 0 for e in es):
        raise ValueError("exponents must be non-negative")

    p, n = ctx.p, ctx.n
    pows = [p**e for e in es]
    terms: dict = {}
    for I in combinations(range(1, m + 1), k):
        shuffle = -1 if (sum(I) - k * (k + 1) // 2) % 2 else 1
        comp = [v for v in range(1, m + 1) if v not in I]
        for tau in permutations(range(m - k)):
            exps = [0] * n
            for u, col in enumerate(tau):
                exps[comp[col] - 1] += pows[u]
            key = (I, tuple(exps))
            c = (terms.get(key, 0) + shuffle * _perm_sign(tau)) % p
            if c:
                terms[key] = c
            else:
                terms.pop(key, None)
    return Element(ctx, terms)


@lru_cache(maxsize=None)
def l_det(ctx: Context, m: int) -> Element:
    """L_m = [0; 0, 1, ..., m-1]; L_0 = 1."""
    if m < 0 or m > ctx.n:
        raise ValueError(f"m must be in 0..{ctx.n}")
    if m == 0:
        return ctx.one()
    return bracket(ctx, 0, range(m), m)


def l_omit(ctx: Context, m: int, s: int) -> Element:
    """L_{m,s} = [0; 0..m with s omitted]; L_{m,m} = L_m."""
    if not 0 <= s <= m:
        raise ValueError("s must be in 0..m")
    return bracket(ctx, 0, [e for e in range(m + 1) if e != s], m)


@lru_cache(maxsize=None)
def dickson_q(ctx: Context, m: int, s: int) -> Element:
    """Dickson invariant Q_{m,s} = L_{m,s} / L_m.

    Conventions: Q_{m,m} = 1, Q_{m,s} = 0 for s < 0 or s > m, Q_{0,0} = 1.
    """
    if s == m:
        return ctx.one()
    if s < 0 or s > m:
        return ctx.zero()
    if m > ctx.n:
        raise ValueError(f"m must be in 0..{ctx.n}")
    return exact_div(l_omit(ctx, m, s), l_det(ctx, m))


@lru_cache(maxsize=None)
def dickson_q_recursive(ctx: Context, m: int, s: int) -> Element:
    """Q_{m,s} via Q_{m-1,s-1}^p + Q_{m-1,s} V_m^{p-1} (independent path)."""
    if s == m:
        return ctx.one()
    if s < 0 or s > m:
        return ctx.zero()
    prev = dickson_q_recursive(ctx, m - 1, s - 1)
    lower = dickson_q_recursive(ctx, m - 1, s)
    return prev.twist(1) + lower * v_det(ctx, m) ** (ctx.p - 1)


@lru_cache(maxsize=None)
def v_det(ctx: Context, m: int) -> Element:
    """V_m = L_m / L_{m-1}, the product of all monic linear forms in y_m."""
    if not 1 <= m <= ctx.n:
        raise ValueError(f"m must be in 1..{ctx.n}")
    return exact_div(l_det(ctx, m), l_det(ctx, m - 1))


def v_by_sum(ctx: Context, m: int) -> Element:
    """V_m as sum_s (-1)^{m-1+s} Q_{m-1,s} y_m^{p^s} (cross-check path)."""
    if not 1 <= m <= ctx.n:
        raise ValueError(f"m must be in 1..{ctx.n}")
    acc = ctx.zero()
    for s in range(m):
        sgn = -1 if (m - 1 + s) % 2 else 1
        acc = acc + sgn * dickson_q(ctx, m - 1, s) * ctx.y(m) ** (ctx.p**s)
    return acc


def mui_m(ctx: Context, m: int, ss, d: int = 1) -> Element:
    """Mui invariant M_{m,S} = [|S|; 0..m-1 minus S], times L_m^{d-1}.

    S must be distinct values in 0..m-1; S empty gives L_m (times the power).
    """
    ss = tuple(sorted(int(s) for s in ss))
    if len(set(ss)) != len(ss):
        raise ValueError("S must have distinct entries")
    if ss and not (0 <= ss[0] and ss[-1] <= m - 1):
        raise ValueError("entries of S must be in 0..m-1")
    if d < 1:
        raise ValueError("d must be >= 1")
    base = bracket(ctx, len(ss), [e for e in range(m) if e not in ss], m)
    if d == 1:
        return base
    return base * l_det(ctx, m) ** (d - 1)
