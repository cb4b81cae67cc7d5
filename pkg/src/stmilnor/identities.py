"""Registry of verifiable identities with parameter sweeps.

Each registry entry binds an id string to a checker over named integer
parameters and to two parameter grids ("quick" and "full").  A checker
builds both sides of one identity inside a fresh context and reports
pass/fail; for polynomial identities the failure detail carries the leading
term of the difference, for set identities it describes the mismatch.

The ids are stable tokens used by the command line (`verify --id <tag>`).
Grids are chosen so that every case satisfies the hypotheses of the
identity it instantiates, every branch of multi-case identities is hit,
and the full profile stays within desk-scale runtime.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from typing import Callable, Iterable

from . import fastmul
from . import invariants as inv
from . import milnor, padic
from .algebra import Element, merge_ext, power, serialize_term
from .context import Context


@dataclass
class CaseResult:
    id: str
    p: int
    params: dict
    ok: bool
    detail: str = ""


@dataclass
class SweepReport:
    id: str
    profile: str
    total: int
    passed: int
    seconds: float
    first_failure: CaseResult | None = None

    @property
    def failed(self) -> int:
        return self.total - self.passed

    @property
    def ok(self) -> bool:
        return self.failed == 0


@dataclass(frozen=True)
class IdentityDef:
    id: str
    summary: str
    check: Callable[[int, dict], CaseResult]
    plan: Callable[[str], list[tuple[int, dict]]]


REGISTRY: dict[str, IdentityDef] = {}

PROFILES = ("quick", "full")


def _register(ident: str, summary: str, check, plan) -> None:
    REGISTRY[ident] = IdentityDef(ident, summary, check, plan)


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


def _poly_case(ident: str, p: int, params: dict, lhs: Element, rhs: Element) -> CaseResult:
    diff = lhs - rhs
    if diff.is_zero():
        return CaseResult(ident, p, params, True)
    key, c = diff.leading_term()
    detail = f"difference has {diff.term_count()} terms; leading {serialize_term(key, c)}"
    return CaseResult(ident, p, params, False, detail)


def _ext_groups(a: Element) -> dict:
    g: dict = {}
    for (ext, exps), c in a.iter_terms():
        g.setdefault(ext, {})[exps] = c
    return g


def _combo_case(ident: str, p: int, params: dict, ctx: Context, combos: list) -> CaseResult:
    """Check that sum of coef * a * b over combos vanishes, without building
    the products.  Falls back to element arithmetic if packing fails."""
    jobs = []
    try:
        for coef, a, b in combos:
            if a.is_zero() or b.is_zero():
                continue
            for ext1, ma in _ext_groups(a).items():
                for ext2, mb in _ext_groups(b).items():
                    ext, sign = merge_ext(ext1, ext2)
                    if ext is None:
                        continue
                    tag = 0
                    for i in ext:
                        tag |= 1 << (i - 1)
                    jobs.append((coef * sign, tag, ma, mb))
        wit = fastmul.lincomb_witness(ctx.p, ctx.n, jobs)
    except fastmul.PackUnavailable:
        diff = ctx.zero()
        for coef, a, b in combos:
            diff = diff + coef * (a * b)
        return _poly_case(ident, p, params, diff, ctx.zero())
    if wit is None:
        return CaseResult(ident, p, params, True)
    tag, exps, coeff = wit
    ext = tuple(i + 1 for i in range(ctx.n) if (tag >> i) & 1)
    detail = f"combination nonzero at {serialize_term((ext, exps), coeff)}"
    return CaseResult(ident, p, params, False, detail)


@lru_cache(maxsize=None)
def _l_pow(ctx: Context, m: int, d: int) -> Element:
    return power(inv.l_det(ctx, m), d)


@lru_cache(maxsize=None)
def _q_tw(ctx: Context, m: int, s: int, e: int = 0) -> Element:
    q = inv.dickson_q(ctx, m, s)
    return q.twist(e) if e else q


@lru_cache(maxsize=None)
def _v_tw(ctx: Context, m: int, e: int = 0) -> Element:
    v = inv.v_det(ctx, m)
    return v.twist(e) if e else v


def _incr_lists(top: int, length: int):
    """Strictly increasing tuples from {0..top} of the given length."""
    return list(combinations(range(top + 1), length))


# ---------------------------------------------------------------- lem2.2

def _check_lem22(p: int, q: dict) -> CaseResult:
    n, k, e, u = q["n"], q["k"], q["e"], q["u"]
    ctx = Context(p, n)
    lhs = milnor.st_u(u, inv.bracket(ctx, k, e, n))
    if k == 0:
        rhs = ctx.zero()
    else:
        rhs = _sign(k - 1) * inv.bracket(ctx, k - 1, (u,) + e, n)
    return _poly_case("lem2.2", p, q, lhs, rhs)


def _plan_lem22(profile: str):
    caps = {"quick": (3,), "full": (3, 5)}[profile]
    nmax = 3 if profile == "quick" else 4
    etop = 3 if profile == "quick" else 4
    umax = 3 if profile == "quick" else 5
    out = []
    for p in caps:
        for n in range(1, nmax + 1):
            for k in range(0, n):
                for e in _incr_lists(etop, n - k):
                    for u in range(0, umax + 1):
                        out.append((p, {"n": n, "k": k, "e": e, "u": u}))
    return out


# ---------------------------------------------------------------- lem2.3

def _check_lem23(p: int, q: dict) -> CaseResult:
    n, k, e, i = q["n"], q["k"], q["e"], q["i"]
    ctx = Context(p, n)
    lhs = milnor.st_delta(i, inv.bracket(ctx, k, e, n))
    if e[0] == 0:
        rhs = inv.bracket(ctx, k, (i,) + e[1:], n)
    else:
        rhs = ctx.zero()
    return _poly_case("lem2.3", p, q, lhs, rhs)


def _plan_lem23(profile: str):
    caps = {"quick": (3,), "full": (3, 5)}[profile]
    nmax = 3 if profile == "quick" else 4
    etop = 3 if profile == "quick" else 4
    imax = 3 if profile == "quick" else 5
    out = []
    for p in caps:
        for n in range(1, nmax + 1):
            for k in range(0, n):
                for e in _incr_lists(etop, n - k):
                    for i in range(1, imax + 1):
                        out.append((p, {"n": n, "k": k, "e": e, "i": i}))
    return out


# ------------------------------------------------------- thm2.4 (ct5/ct6)

def _check_ct5(p: int, q: dict) -> CaseResult:
    n, e = q["n"], q["e"]
    ctx = Context(p, n)
    en = e[-1]
    combos = [(1, inv.bracket(ctx, 0, e[:-1] + (en + n - 1,), n), ctx.one())]
    for s in range(0, n - 1):
        combos.append(
            (-_sign(n + s), inv.bracket(ctx, 0, e[:-1] + (en + s,), n), _q_tw(ctx, n - 1, s, en))
        )
    combos.append((-1, inv.bracket(ctx, 0, e[:-1], n - 1), _v_tw(ctx, n, en)))
    return _combo_case("thm2.4-ct5", p, q, ctx, combos)


def _check_ct6(p: int, q: dict) -> CaseResult:
    n, k, e = q["n"], q["k"], q["e"]
    ctx = Context(p, n)
    en = e[-1]
    combos = [(1, inv.bracket(ctx, k, e[:-1] + (en + n,), n), ctx.one())]
    for s in range(0, n):
        combos.append(
            (-_sign(n + s - 1), inv.bracket(ctx, k, e[:-1] + (en + s,), n), _q_tw(ctx, n, s, en))
        )
    return _combo_case("thm2.4-ct6", p, q, ctx, combos)


def _plan_ct5(profile: str):
    caps = {"quick": (3,), "full": (3, 5)}[profile]
    nmax = 3 if profile == "quick" else 4
    etop = 2 if profile == "quick" else 3
    out = []
    for p in caps:
        for n in range(1, nmax + 1):
            for e in product(range(etop + 1), repeat=n):
                out.append((p, {"n": n, "e": e}))
    return out


def _plan_ct6(profile: str):
    caps = {"quick": (3,), "full": (3, 5)}[profile]
    nmax = 3 if profile == "quick" else 4
    etop = 2 if profile == "quick" else 3
    out = []
    for p in caps:
        for n in range(1, nmax + 1):
            for k in range(0, n):
                for e in product(range(etop + 1), repeat=n - k):
                    out.append((p, {"n": n, "k": k, "e": e}))
    return out


# ---------------------------------------------------------------- thm3.1

def _check_thm31(p: int, q: dict) -> CaseResult:
    n, s, i = q["n"], q["s"], q["i"]
    ctx = Context(p, n)
    lhs = milnor.st_delta(i, inv.dickson_q(ctx, n, s))
    es = tuple(t for t in range(n) if t != s) + (i,)
    rhs = _sign(n) * inv.bracket(ctx, 0, es, n) * _l_pow(ctx, n, p - 2)
    return _poly_case("thm3.1", p, q, lhs, rhs)


def _plan_thm31(profile: str):
    caps = {"quick": (3,), "full": (3, 5)}[profile]
    pad = 2 if profile == "quick" else 3
    out = []
    for p in caps:
        for n in range(1, 4):
            for s in range(0, n):
                for i in range(1, n + pad + 1):
                    out.append((p, {"n": n, "s": s, "i": i}))
    return out


# ---------------------------------------------------------------- cor3.2

def _check_cor32(p: int, q: dict) -> CaseResult:
    n, s, i = q["n"], q["s"], q["i"]
    ctx = Context(p, n)
    lhs = milnor.st_delta(i, inv.dickson_q(ctx, n, s))
    if i == s and s > 0:
        rhs = _sign(s - 1) * inv.dickson_q(ctx, n, 0)
    elif i == n:
        rhs = _sign(n) * inv.dickson_q(ctx, n, 0) * inv.dickson_q(ctx, n, s)
    else:
        rhs = ctx.zero()
    return _poly_case("cor3.2", p, q, lhs, rhs)


def _plan_cor32(profile: str):
    caps = {"quick": (3,), "full": (3, 5)}[profile]
    out = []
    for p in caps:
        for n in range(1, 4):
            for s in range(0, n):
                for i in range(1, n + 1):
                    out.append((p, {"n": n, "s": s, "i": i}))
    return out


# --------------------------------------------------------------- prop3.3

def _check_prop33(p: int, q: dict) -> CaseResult:
    n, k, e = q["n"], q["k"], q["e"]
    ctx = Context(p, n)
    br = inv.bracket(ctx, k, e, n)
    tops = [p**ej for ej in e]
    valid = {}
    for eps in product((0, 1), repeat=len(e)):
        r = sum(ep * t for ep, t in zip(eps, tops))
        valid[r] = tuple(ej + ep for ej, ep in zip(e, eps))
    for r in range(0, sum(tops) + 1):
        got = milnor.steenrod_p(r, br)
        want = inv.bracket(ctx, k, valid[r], n) if r in valid else ctx.zero()
        if got != want:
            return CaseResult("prop3.3", p, q, False, f"power operation mismatch at r={r}")
    return CaseResult("prop3.3", p, q, True)


def _plan_prop33(profile: str):
    etop = 2 if profile == "quick" else 3
    out = []
    for p in (3,):
        for n in range(1, 4):
            for k in range(0, n):
                for e in _incr_lists(etop, n - k):
                    out.append((p, {"n": n, "k": k, "e": e}))
    return out


# ---------------------------------------------------------------- thm3.4

def _check_thm34(p: int, q: dict) -> CaseResult:
    n, s, i = q["n"], q["s"], q["i"]
    ctx = Context(p, n)
    qq = inv.dickson_q(ctx, n, s)
    lhs = milnor.st_delta(i + 1, qq)
    rhs = milnor.steenrod_p(p**i, milnor.st_delta(i, qq))
    return _poly_case("thm3.4", p, q, lhs, rhs)


def _plan_thm34(profile: str):
    caps = {"quick": (3,), "full": (3, 5)}[profile]
    spread = 2 if profile == "quick" else 3
    out = []
    for p in caps:
        for n in range(1, 4):
            for s in range(0, n):
                for i in range(n, n + spread):
                    out.append((p, {"n": n, "s": s, "i": i}))
    return out


# ---------------------------------------------------------------- thm3.5

def _check_thm35(p: int, q: dict) -> CaseResult:
    n, i = q["n"], q["i"]
    ctx = Context(p, n)
    lhs = milnor.st_delta(i, inv.v_det(ctx, n))
    es = tuple(range(n - 1)) + (i,)
    rhs = _sign(n - 1) * inv.bracket(ctx, 0, es, n) * _l_pow(ctx, n - 1, p - 2)
    return _poly_case("thm3.5", p, q, lhs, rhs)


def _plan_thm35(profile: str):
    caps = {"quick": (3,), "full": (3, 5)}[profile]
    pad = 2 if profile == "quick" else 3
    out = []
    for p in caps:
        for n in range(1, 4):
            for i in range(1, n + pad + 1):
                out.append((p, {"n": n, "i": i}))
    return out


# ---------------------------------------------------------------- cor3.6

def _check_cor36(p: int, q: dict) -> CaseResult:
    n, i = q["n"], q["i"]
    ctx = Context(p, n)
    v = inv.v_det(ctx, n)
    lhs = milnor.st_delta(i, v)
    if i < n - 1:
        rhs = ctx.zero()
    elif i == n - 1:
        rhs = _sign(n - 1) * inv.dickson_q(ctx, n - 1, 0) * v
    else:
        inner = inv.dickson_q(ctx, n - 1, n - 2).twist(1) * v + v.twist(1)
        rhs = _sign(n - 1) * inv.dickson_q(ctx, n - 1, 0) * inner
    return _poly_case("cor3.6", p, q, lhs, rhs)


def _plan_cor36(profile: str):
    caps = {"quick": (3,), "full": (3, 5)}[profile]
    out = []
    for p in caps:
        for n in range(1, 4):
            for i in range(1, n + 1):
                out.append((p, {"n": n, "i": i}))
    return out


# ---------------------------------------------------------------- thm3.7

def _sublists(n: int):
    """Nonempty increasing tuples inside {0..n-1}."""
    out = []
    for k in range(1, n + 1):
        out.extend(combinations(range(n), k))
    return out


def _check_thm37(p: int, q: dict) -> CaseResult:
    n, ss, d, i = q["n"], q["ss"], q["d"], q["i"]
    ctx = Context(p, n)
    k = len(ss)
    md = inv.mui_m(ctx, n, ss, d)
    lhs = milnor.st_delta(i, md)
    s1 = ss[0]
    if s1 > 0 and i in ss:
        t = ss.index(i) + 1
        new_ss = (0,) + tuple(x for x in ss if x != i)
        rhs = _sign(ss[t - 1] - t) * inv.mui_m(ctx, n, new_ss, d)
    elif i >= n and s1 == 0:
        if d == 1:
            rhs = ctx.zero()
        else:
            mixed = inv.mui_m(ctx, n, ss, 1) * inv.bracket(
                ctx, 0, tuple(range(1, n)) + (i,), n
            )
            rhs = _sign(n - 1) * (d - 1) * mixed * _l_pow(ctx, n, d - 2)
    elif i >= n and s1 > 0:
        es = tuple(t for t in range(1, n) if t not in ss) + (i,)
        first = _sign(k) * inv.bracket(ctx, k, es, n) * _l_pow(ctx, n, d - 1)
        if d == 1:
            second = ctx.zero()
        else:
            second = (d - 1) * inv.mui_m(ctx, n, ss, 1) * inv.bracket(
                ctx, 0, tuple(range(1, n)) + (i,), n
            ) * _l_pow(ctx, n, d - 2)
        rhs = _sign(n - 1) * (first + second)
    else:
        rhs = ctx.zero()
    return _poly_case("thm3.7", p, q, lhs, rhs)


def _plan_thm37(profile: str):
    caps = {"quick": (3,), "full": (3, 5)}[profile]
    pad = 2 if profile == "quick" else 3
    out = []
    for p in caps:
        for n in range(1, 4):
            for ss in _sublists(n):
                for d in range(1, p):
                    for i in range(1, n + pad + 1):
                        out.append((p, {"n": n, "ss": ss, "d": d, "i": i}))
    return out


# ---------------------------------------------------------------- thm3.8

def _check_thm38(p: int, q: dict) -> CaseResult:
    n, ss, d, u = q["n"], q["ss"], q["d"], q["u"]
    ctx = Context(p, n)
    k = len(ss)
    lhs = milnor.st_u(u, inv.mui_m(ctx, n, ss, d))
    if u in ss:
        t = ss.index(u) + 1
        rhs = _sign(k + ss[t - 1] - t) * inv.mui_m(ctx, n, tuple(x for x in ss if x != u), d)
    elif u >= n:
        es = tuple(t for t in range(n) if t not in ss) + (u,)
        rhs = _sign(n - 1) * inv.bracket(ctx, k - 1, es, n) * _l_pow(ctx, n, d - 1)
    else:
        rhs = ctx.zero()
    return _poly_case("thm3.8", p, q, lhs, rhs)


def _plan_thm38(profile: str):
    caps = {"quick": (3,), "full": (3, 5)}[profile]
    pad = 2 if profile == "quick" else 3
    out = []
    for p in caps:
        for n in range(1, 4):
            for ss in _sublists(n):
                for d in range(1, p):
                    for u in range(0, n + pad + 1):
                        out.append((p, {"n": n, "ss": ss, "d": d, "u": u}))
    return out


# ---------------------------------------------------------------- thm3.9

def _check_thm39(p: int, q: dict) -> CaseResult:
    n, part, j = q["n"], q["part"], q["j"]
    ctx = Context(p, n)
    if part == 1:
        v = inv.v_det(ctx, n)
        lhs = milnor.st_delta(j, v)
        rhs = milnor.steenrod_p(p ** (j - 1), milnor.st_delta(j - 1, v))
    else:
        md = inv.mui_m(ctx, n, q["ss"], q["d"])
        if part == 2:
            lhs = milnor.st_delta(j + 1, md)
            rhs = milnor.steenrod_p(p**j, milnor.st_delta(j, md))
        else:
            lhs = milnor.st_u(j + 1, md)
            rhs = milnor.steenrod_p(p**j, milnor.st_u(j, md))
    return _poly_case("thm3.9", p, q, lhs, rhs)


def _plan_thm39(profile: str):
    nmax = 2 if profile == "quick" else 3
    spread = 2 if profile == "quick" else 3
    out = []
    for p in (3,):
        for n in range(1, nmax + 1):
            for j in range(n, n + spread):
                if j >= 2:
                    out.append((p, {"n": n, "part": 1, "j": j}))
                for ss in _sublists(n):
                    for d in range(1, p):
                        out.append((p, {"n": n, "part": 2, "j": j, "ss": ss, "d": d}))
                        out.append((p, {"n": n, "part": 3, "j": j, "ss": ss, "d": d}))
    return out


# --------------------------------------------------------------- rem3.10

def _check_rem310(p: int, q: dict) -> CaseResult:
    n, f = q["n"], q["f"]
    ctx = Context(p, n)

    def Q(s: int) -> Element:
        return inv.dickson_q(ctx, n, s)

    if f == 1:
        s = q["s"]
        lhs = milnor.st_delta(n + 1, Q(s))
        rhs = _sign(n) * Q(0) * (_q_tw(ctx, n, n - 1, 1) * Q(s) - _q_tw(ctx, n, s - 1, 1))
    elif f == 2:
        s = q["s"]
        lhs = milnor.st_delta(n + 2, Q(s))
        rhs = _sign(n) * Q(0) * (
            _q_tw(ctx, n, n - 1, 1) * _q_tw(ctx, n, n - 1, 2) * Q(s)
            - _q_tw(ctx, n, n - 2, 2) * Q(s)
            + _q_tw(ctx, n, s - 2, 2)
            - _q_tw(ctx, n, s - 1, 1) * _q_tw(ctx, n, n - 1, 2)
        )
    elif f == 3:
        v = inv.v_det(ctx, n)
        lhs = milnor.st_delta(n + 1, v)
        rhs = _sign(n - 1) * inv.dickson_q(ctx, n - 1, 0) * (
            (_q_tw(ctx, n - 1, n - 2, 1) * _q_tw(ctx, n - 1, n - 2, 2)
             - _q_tw(ctx, n - 1, n - 3, 2)) * v
            + _q_tw(ctx, n - 1, n - 2, 2) * _v_tw(ctx, n, 1)
            + _v_tw(ctx, n, 2)
        )
    else:
        ss, d = q["ss"], q["d"]
        k = len(ss)
        md = inv.mui_m(ctx, n, ss, d)
        if f == 4:
            lhs = milnor.st_u(n, md)
            rhs = ctx.zero()
            for t, st in enumerate(ss, start=1):
                rhs = rhs + _sign(n - 1 + k - t) * inv.mui_m(
                    ctx, n, tuple(x for x in ss if x != st), d
                ) * Q(st)
        elif f == 5:
            lhs = milnor.st_delta(n, md)
            acc = d * md * Q(0)
            for t, st in enumerate(ss, start=1):
                acc = acc + _sign(t) * inv.mui_m(
                    ctx, n, (0,) + tuple(x for x in ss if x != st), d
                ) * Q(st)
            rhs = _sign(n - 1) * acc
        else:
            lhs = milnor.st_delta(n, md)
            rhs = _sign(n - 1) * (d - 1) * md * Q(0)
    return _poly_case("rem3.10", p, q, lhs, rhs)


def _plan_rem310(profile: str):
    caps = {"quick": (3,), "full": (3, 5)}[profile]
    out = []
    for p in caps:
        for n in (2, 3):
            for s in range(0, n):
                out.append((p, {"n": n, "f": 1, "s": s}))
                out.append((p, {"n": n, "f": 2, "s": s}))
            out.append((p, {"n": n, "f": 3}))
            for ss in _sublists(n):
                for d in range(1, p):
                    out.append((p, {"n": n, "f": 4, "ss": ss, "d": d}))
                    if ss[0] > 0:
                        out.append((p, {"n": n, "f": 5, "ss": ss, "d": d}))
                    else:
                        out.append((p, {"n": n, "f": 6, "ss": ss, "d": d}))
    return out


# ------------------------------------------------------ digit-set identities

def _check_ct7(p: int, q: dict) -> CaseResult:
    u, v = q["u"], q["v"]
    ctx = Context(p, 2)
    lhs = inv.bracket(ctx, 0, (u, v), 2)
    rhs = ctx.zero()
    v2 = inv.v_det(ctx, 2)
    for s in range(u, v):
        rhs = rhs + ctx.y(1) ** (p**v - p ** (s + 1) + p**u) * v2.twist(s)
    return _poly_case("prop4.1-ct7", p, q, lhs, rhs)


def _check_ct8(p: int, q: dict) -> CaseResult:
    u, v, w = q["u"], q["v"], q["w"]
    ctx = Context(p, 3)
    l2 = inv.l_det(ctx, 2)
    v3 = inv.v_det(ctx, 3)
    lhs = inv.bracket(ctx, 0, (u, v, w), 3) * l2.twist(w)

    def b2(a: int, b: int) -> Element:
        return inv.bracket(ctx, 0, (a, b), 2)

    rhs = ctx.zero()
    for s in range(u, v):
        rhs = rhs + b2(u, s + 1) * b2(v, w) * power(l2, p**w - p ** (s + 1)) * v3.twist(s)
    for s in range(v, w):
        rhs = rhs + b2(u, v) * b2(s + 1, w) * power(l2, p**w - p ** (s + 1)) * v3.twist(s)
    return _poly_case("prop4.1-ct8", p, q, lhs, rhs)


def _check_ct9(p: int, q: dict) -> CaseResult:
    u, v = q["u"], q["v"]
    ctx = Context(p, 3)
    l2 = inv.l_det(ctx, 2)
    v3 = inv.v_det(ctx, 3)
    lhs = inv.bracket(ctx, 0, (u, v, v + 1), 3)
    rhs = ctx.zero()
    for s in range(u, v):
        rhs = rhs + inv.bracket(ctx, 0, (u, s + 1), 2) * power(
            l2, p**v - p ** (s + 1)
        ) * v3.twist(s)
    return _poly_case("ct9", p, q, lhs, rhs)


def _check_prop42(p: int, q: dict) -> CaseResult:
    u, v = q["u"], q["v"]
    ctx = Context(p, 2)
    lhs = inv.bracket(ctx, 0, (u, v), 2)
    l2 = inv.l_det(ctx, 2)
    q21 = inv.dickson_q(ctx, 2, 1)
    rhs = ctx.zero()
    base = (p ** (v - 1) - p**u) // (p - 1)
    for a in padic.index_set_I(p, u, v):
        exp = base - (p + 1) * a
        if exp < 0:
            return CaseResult("prop4.2", p, q, False, f"negative exponent {exp} at a={a}")
        rhs = rhs + _sign(a) * power(l2, p**u + p * (p - 1) * a) * power(q21, exp)
    return _poly_case("prop4.2", p, q, lhs, rhs)


def _check_prop43(p: int, q: dict) -> CaseResult:
    u, v = q["u"], q["v"]
    ctx = Context(p, 3)
    lhs = inv.bracket(ctx, 0, (u, v, v + 1), 3)
    l3 = inv.l_det(ctx, 3)
    q31 = inv.dickson_q(ctx, 3, 1)
    q32 = inv.dickson_q(ctx, 3, 2)
    rhs = ctx.zero()
    for a in padic.index_set_J(p, u, v):
        try:
            b = padic.b_func(p, u, v, a)
        except ValueError as exc:
            return CaseResult("prop4.3", p, q, False, str(exc))
        c = padic.c_func(p, u, v, a)
        rhs = rhs + _sign(a) * power(l3, p**u + p * (p - 1) * a) * power(q31, b) * power(q32, c)
    return _poly_case("prop4.3", p, q, lhs, rhs)


def _check_lem44(p: int, q: dict) -> CaseResult:
    u, v = q["u"], q["v"]
    big = set(padic.index_set_J(p, u, v + 3))
    j2 = padic.index_set_J(p, u, v + 2)
    j1 = padic.index_set_J(p, u, v + 1)
    j0 = padic.index_set_J(p, u, v)
    pieces = [set(j2), {p**v + a for a in j1}, {p**v + p ** (v - 1) + a for a in j0}]
    if sum(len(s) for s in pieces) != len(set().union(*pieces)):
        return CaseResult("lem4.4", p, q, False, "recursion pieces are not disjoint")
    if set().union(*pieces) != big:
        return CaseResult("lem4.4", p, q, False, "recursion pieces do not cover the set")
    for a in j2:
        if padic.b_func(p, u, v + 3, a) != p ** (v + 1) + padic.b_func(p, u, v + 2, a):
            return CaseResult("lem4.4", p, q, False, f"b transfer fails on kept element a={a}")
        if padic.c_func(p, u, v + 3, a) != padic.c_func(p, u, v + 2, a):
            return CaseResult("lem4.4", p, q, False, f"c transfer fails on kept element a={a}")
    for a in j1:
        if padic.b_func(p, u, v + 3, p**v + a) != padic.b_func(p, u, v + 1, a):
            return CaseResult("lem4.4", p, q, False, f"b transfer fails on shifted element a={a}")
        if padic.c_func(p, u, v + 3, p**v + a) != p**v + padic.c_func(p, u, v + 1, a):
            return CaseResult("lem4.4", p, q, False, f"c transfer fails on shifted element a={a}")
    for a in j0:
        key = p**v + p ** (v - 1) + a
        if padic.b_func(p, u, v + 3, key) != padic.b_func(p, u, v, a):
            return CaseResult("lem4.4", p, q, False, f"b transfer fails on block element a={a}")
        if padic.c_func(p, u, v + 3, key) != padic.c_func(p, u, v, a):
            return CaseResult("lem4.4", p, q, False, f"c transfer fails on block element a={a}")
    table = padic.j_table_recursive(p, u, v + 3)
    for a in big:
        if table[a] != (padic.b_func(p, u, v + 3, a), padic.c_func(p, u, v + 3, a)):
            return CaseResult("lem4.4", p, q, False, f"recursive table disagrees at a={a}")
    return CaseResult("lem4.4", p, q, True)


def _check_lem45(p: int, q: dict) -> CaseResult:
    u, v = q["u"], q["v"]
    ctx = Context(p, 3)

    def b3(a: int, b: int, c: int) -> Element:
        return inv.bracket(ctx, 0, (a, b, c), 3)

    lhs = b3(u, v + 3, v + 4)
    rhs = (
        b3(u, v + 2, v + 3) * _q_tw(ctx, 3, 1, v + 1)
        - b3(u, v + 1, v + 2) * _q_tw(ctx, 3, 0, v + 1) * _q_tw(ctx, 3, 2, v)
        + b3(u, v, v + 1) * _q_tw(ctx, 3, 0, v + 1) * _q_tw(ctx, 3, 0, v)
    )
    return _poly_case("lem4.5", p, q, lhs, rhs)


def _tiered_uv(profile: str, p: int, gap_caps: dict[int, int]):
    """(u, v) pairs: gap v-u up to the profile cap, u shrinking as gap grows."""
    cap = gap_caps[p] if profile == "full" else max(1, gap_caps[p] - 2)
    out = []
    for gap in range(1, cap + 1):
        utop = max(0, min(2, cap - gap))
        for u in range(0, utop + 1):
            out.append((u, u + gap))
    return out


def _plan_ct7(profile: str):
    out = []
    for p in (3, 5):
        for u, v in _tiered_uv(profile, p, {3: 5, 5: 3}):
            out.append((p, {"u": u, "v": v}))
    return out


def _plan_ct8(profile: str):
    wcap = 5 if profile == "full" else 4
    out = []
    for p in (3,):
        for u in range(0, 3):
            for v in range(u + 1, u + wcap):
                for w in range(v + 1, u + wcap + 1):
                    if w - u > wcap or (w - u == wcap and u > 0) or (w - u == wcap - 1 and u > 1):
                        continue
                    out.append((p, {"u": u, "v": v, "w": w}))
    return out


def _plan_ct9(profile: str):
    vcap = 4 if profile == "full" else 3
    out = []
    for p in (3,):
        for gap in range(1, vcap + 1):
            utop = 0 if gap == vcap else min(2, vcap - gap)
            for u in range(0, utop + 1):
                out.append((p, {"u": u, "v": u + gap}))
    return out


def _plan_prop42(profile: str):
    out = []
    for p in (3, 5):
        for u, v in _tiered_uv(profile, p, {3: 5, 5: 3}):
            out.append((p, {"u": u, "v": v}))
    return out


def _plan_prop43(profile: str):
    gaps = {"full": {3: 5, 5: 3}, "quick": {3: 3, 5: 1}}[profile]
    out = []
    for p in (3, 5):
        cap = gaps[p]
        for gap in range(1, cap + 1):
            utop = 0 if gap >= 4 else min(2, max(0, cap - gap))
            for u in range(0, utop + 1):
                out.append((p, {"u": u, "v": u + gap}))
    return out


def _plan_lem44(profile: str):
    gapmax = 6 if profile == "full" else 4
    out = []
    for p in (3, 5):
        for u in range(0, 3):
            for gap in range(1, gapmax + 1):
                out.append((p, {"u": u, "v": u + gap}))
    return out


def _plan_lem45(profile: str):
    gapmax = 3 if profile == "full" else 1
    out = []
    for p in (3, 5):
        cap = gapmax if p == 3 else 1
        for u in range(0, 2):
            for gap in range(1, cap + 1):
                out.append((p, {"u": u, "v": u + gap}))
    return out


# --------------------------------------------------------- mui-expansion

def _check_mui_expansion(p: int, q: dict) -> CaseResult:
    n, k, e = q["n"], q["k"], q["e"]
    ctx = Context(p, n)
    ln = inv.l_det(ctx, n)
    lhs = inv.bracket(ctx, k, e, n) * ln
    rhs = ctx.zero()
    for ss in combinations(range(n), k):
        rhs = rhs + _sign(sum(ss)) * inv.mui_m(ctx, n, ss, 1) * inv.bracket(
            ctx, 0, ss + e, n
        )
    rhs = _sign(k * (k - 1) // 2) * rhs
    return _poly_case("mui-expansion", p, q, lhs, rhs)


def _plan_mui_expansion(profile: str):
    caps = {"quick": (3,), "full": (3, 5)}[profile]
    out = []
    for p in caps:
        nmax = 3 if (p == 5 or profile == "quick") else 4
        for n in range(1, nmax + 1):
            for k in range(1, n + 1):
                for e in _incr_lists(3, n - k):
                    out.append((p, {"n": n, "k": k, "e": e}))
    return out


# ----------------------------------------------------------- registration

_register("lem2.2", "antiderivation of exponent u maps a k-fold exterior bracket to the (k-1)-fold bracket with u prepended", _check_lem22, _plan_lem22)
_register("lem2.3", "the i-th polynomial derivation replaces a leading zero exponent in a bracket by i, else kills it", _check_lem23, _plan_lem23)
_register("thm2.4-ct5", "a determinant with top exponent raised by n-1 expands over Dickson invariants of rank n-1 plus a V_n term", _check_ct5, _plan_ct5)
_register("thm2.4-ct6", "a bracket with top exponent raised by n expands over rank-n Dickson invariants", _check_ct6, _plan_ct6)
_register("thm3.1", "the i-th derivation of Q_{n,s} is a signed bracket times L_n^{p-2}", _check_thm31, _plan_thm31)
_register("cor3.2", "the i-th derivation of Q_{n,s} in Dickson terms for 1 <= i <= n (three cases)", _check_cor32, _plan_cor32)
_register("prop3.3", "power operations shift bracket exponents by 0/1 vectors and vanish otherwise", _check_prop33, _plan_prop33)
_register("thm3.4", "composing with P^{p^i} raises the derivation index on Q_{n,s} by one (i >= n)", _check_thm34, _plan_thm34)
_register("thm3.5", "the i-th derivation of V_n is a signed bracket times L_{n-1}^{p-2}", _check_thm35, _plan_thm35)
_register("cor3.6", "the i-th derivation of V_n in invariant terms for 1 <= i <= n (three cases)", _check_cor36, _plan_cor36)
_register("thm3.7", "the i-th derivation of M^{(d)} invariants (four cases)", _check_thm37, _plan_thm37)
_register("thm3.8", "the exponent-u antiderivation of M^{(d)} invariants (three cases)", _check_thm38, _plan_thm38)
_register("thm3.9", "P^{p^j} compositions raise derivation/antiderivation indices on V_n and M^{(d)} (three parts)", _check_thm39, _plan_thm39)
_register("rem3.10", "six closed-form expansions of derivations of Q, V and M^{(d)} in invariant terms", _check_rem310, _plan_rem310)
_register("prop4.1-ct7", "the two-variable determinant [u,v] as a V_1/V_2 sum", _check_ct7, _plan_ct7)
_register("prop4.1-ct8", "the three-variable determinant [u,v,w] expanded over two-variable ones (denominator-cleared)", _check_ct8, _plan_ct8)
_register("ct9", "[u,v,v+1] as a sum of two-variable determinants times L_2 powers and V_3 twists", _check_ct9, _plan_ct9)
_register("prop4.2", "[u,v] as a signed sum over the no-adjacent-ones digit set I(u,v)", _check_prop42, _plan_prop42)
_register("prop4.3", "[u,v,v+1] as a signed sum over the no-three-consecutive-ones digit set J(u,v)", _check_prop43, _plan_prop43)
_register("lem4.4", "three-piece recursion for J(u,v) with b/c transfer rules (set identity)", _check_lem44, _plan_lem44)
_register("lem4.5", "four-term recursion of [u,v+3,v+4] over rank-3 Dickson invariants", _check_lem45, _plan_lem45)
_register("mui-expansion", "a k-fold bracket times L_n expands over the rank-n exterior invariants", _check_mui_expansion, _plan_mui_expansion)


# ------------------------------------------------------------- execution

def run_case(ident: str, p: int, params: dict) -> CaseResult:
    if ident not in REGISTRY:
        raise KeyError(f"unknown identity id: {ident}")
    return REGISTRY[ident].check(p, params)


def _match(value, want) -> bool:
    if isinstance(value, tuple):
        return tuple(value) == tuple(want) if isinstance(want, (tuple, list)) else False
    return value == want


def sweep(
    ident: str,
    profile: str = "full",
    p_filter: int | None = None,
    param_filter: dict | None = None,
) -> SweepReport:
    """Run all planned cases of one identity, optionally filtered."""
    if ident not in REGISTRY:
        raise KeyError(f"unknown identity id: {ident}")
    entry = REGISTRY[ident]
    cases = entry.plan(profile)
    if p_filter is not None:
        cases = [(p, q) for p, q in cases if p == p_filter]
    if param_filter:
        cases = [
            (p, q)
            for p, q in cases
            if all(k in q and _match(q[k], v) for k, v in param_filter.items())
        ]
    t0 = time.perf_counter()
    passed = 0
    first_failure = None
    for p, q in cases:
        res = entry.check(p, q)
        if res.ok:
            passed += 1
        elif first_failure is None:
            first_failure = res
    return SweepReport(
        ident, profile, len(cases), passed, time.perf_counter() - t0, first_failure
    )


def verify_all(
    profile: str = "quick",
    primes: Iterable[int] | None = None,
    ids: Iterable[str] | None = None,
) -> list[SweepReport]:
    """Sweep every registered identity; one report per id (deterministic)."""
    wanted = list(ids) if ids is not None else sorted(REGISTRY)
    reports = []
    for ident in wanted:
        if primes is None:
            reports.append(sweep(ident, profile))
        else:
            merged = None
            for p in primes:
                r = sweep(ident, profile, p_filter=p)
                if merged is None:
                    merged = r
                else:
                    merged = SweepReport(
                        ident,
                        profile,
                        merged.total + r.total,
                        merged.passed + r.passed,
                        merged.seconds + r.seconds,
                        merged.first_failure or r.first_failure,
                    )
            reports.append(merged)
    return reports
