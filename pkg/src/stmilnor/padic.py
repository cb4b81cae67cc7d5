"""Base-p digit sets and block decompositions used as exponent books.

I(u, v): integers whose base-p digits are 0/1, supported in [u, v-3], with
no two adjacent ones.  J(u, v): same support and 0/1 digits, but with no
three consecutive ones (so runs of ones have length 1 or 2).

Every a in J(u, v) splits uniquely into "blocks" (runs of two ones, worth
p^i + p^{i+1}) and "parts" (the isolated ones between consecutive blocks);
the part between blocks i_j and i_{j+1} is an element of I(i_j+3, i_{j+1}+1)
with the conventions i_0 = u-3 and i_{k+1} = v-1.  From the decomposition:

    b(a) = (p^{v-1} - p^u)/(p - 1) - (p+1) a + p (p^{i_1} + ... + p^{i_k})
    c(a) = sum of the parts

`j_table_recursive` rebuilds {a: (b, c)} bottom-up from the three-piece
recursion J(u,v+3) = J(u,v+2) | (p^v + J(u,v+1)) | (p^v + p^{v-1} + J(u,v))
with its b/c transfer rules, as an independent path for the tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product


def digits(a: int, p: int) -> list[int]:
    """Base-p digits of a, least significant first; empty for a = 0."""
    if a < 0:
        raise ValueError("a must be non-negative")
    out = []
    while a:
        out.append(a % p)
        a //= p
    return out


def alpha(i: int, a: int, p: int) -> int:
    """Digit of p^i in a; zero for i < 0."""
    if i < 0:
        return 0
    return (a // p**i) % p


def _check_window(u: int, v: int) -> None:
    if u < 0 or v < 0:
        raise ValueError("u and v must be non-negative")
    if u >= v:
        raise ValueError("need u < v")


def index_set_I(p: int, u: int, v: int) -> tuple[int, ...]:
    """All a with 0/1 digits in [u, v-3] and no two adjacent ones, sorted."""
    _check_window(u, v)
    w = v - u - 2
    if w <= 0:
        return (0,)
    out = []
    for mask in range(1 << w):
        if mask & (mask >> 1):
            continue
        out.append(sum(p ** (u + t) for t in range(w) if mask >> t & 1))
    return tuple(sorted(out))


def index_set_J(p: int, u: int, v: int) -> tuple[int, ...]:
    """All a with 0/1 digits in [u, v-3] and no three consecutive ones."""
    _check_window(u, v)
    w = v - u - 2
    if w <= 0:
        return (0,)
    out = []
    for mask in range(1 << w):
        if mask & (mask >> 1) & (mask >> 2):
            continue
        out.append(sum(p ** (u + t) for t in range(w) if mask >> t & 1))
    return tuple(sorted(out))


def in_index_set_I(p: int, u: int, v: int, a: int) -> bool:
    ds = digits(a, p)
    if any(d > 1 for d in ds):
        return False
    supp = [i for i, d in enumerate(ds) if d]
    if any(i < u or i > v - 3 for i in supp):
        return False
    return all(b - a_ > 1 for a_, b in zip(supp, supp[1:]))


def in_index_set_J(p: int, u: int, v: int, a: int) -> bool:
    ds = digits(a, p)
    if any(d > 1 for d in ds):
        return False
    supp = [i for i, d in enumerate(ds) if d]
    if any(i < u or i > v - 3 for i in supp):
        return False
    run = 1
    for x, y in zip(supp, supp[1:]):
        run = run + 1 if y == x + 1 else 1
        if run == 3:
            return False
    return True


@dataclass(frozen=True)
class JDecomposition:
    """Blocks and parts of one a in J(u, v); reassembles to a exactly."""

    p: int
    u: int
    v: int
    a: int
    blocks: tuple[int, ...]   # lower positions i_j of the two-digit runs
    parts: tuple[int, ...]    # k+1 part values, one per window

    def reassemble(self) -> int:
        p = self.p
        return sum(self.parts) + sum(p**i + p ** (i + 1) for i in self.blocks)


def j_decompose(p: int, u: int, v: int, a: int) -> JDecomposition:
    """The unique block/part decomposition of a in J(u, v)."""
    if not in_index_set_J(p, u, v, a):
        raise ValueError(f"{a} is not in J({u},{v})")
    supp = [i for i, d in enumerate(digits(a, p)) if d]
    runs: list[list[int]] = []
    for i in supp:
        if runs and i == runs[-1][-1] + 1:
            runs[-1].append(i)
        else:
            runs.append([i])
    blocks = tuple(r[0] for r in runs if len(r) == 2)
    singles = [r[0] for r in runs if len(r) == 1]

    bounds = (u - 3,) + blocks + (v - 1,)
    parts = []
    for j in range(len(blocks) + 1):
        lo, hi = bounds[j] + 3, bounds[j + 1] + 1
        val = sum(p**i for i in singles if lo <= i <= hi - 3)
        parts.append(val)
    dec = JDecomposition(p, u, v, a, blocks, tuple(parts))
    assert dec.reassemble() == a, "decomposition failed to cover every digit"
    return dec


def b_func(p: int, u: int, v: int, a: int) -> int:
    """Exponent b(a); non-negative for every a in J(u, v) (checked)."""
    dec = j_decompose(p, u, v, a)
    b = (p ** (v - 1) - p**u) // (p - 1) - (p + 1) * a + p * sum(
        p**i for i in dec.blocks
    )
    if b < 0:
        raise ValueError(f"negative exponent b({a}) = {b} on J({u},{v})")
    return b


def c_func(p: int, u: int, v: int, a: int) -> int:
    """Exponent c(a) = sum of the isolated parts."""
    return sum(j_decompose(p, u, v, a).parts)


def enumerate_decompositions(p: int, u: int, v: int, a: int):
    """Brute-force all block/part decompositions summing to a (test oracle).

    Tries every admissible block tuple and every choice of window parts;
    used to confirm the decomposition of a J-element is unique."""
    found = []
    top = max(u, v - 3)  # blocks need i and i+1 inside [u, v-3]
    for k in range(0, (top - u) // 3 + 2):
        for blocks in combinations(range(u, top), k):
            if any(b2 - b1 < 3 for b1, b2 in zip(blocks, blocks[1:])):
                continue
            bounds = (u - 3,) + blocks + (v - 1,)
            windows = [
                index_set_I(p, bounds[j] + 3, bounds[j + 1] + 1)
                for j in range(k + 1)
            ]
            base = sum(p**i + p ** (i + 1) for i in blocks)
            for parts in product(*windows):
                if base + sum(parts) == a:
                    found.append((blocks, parts))
    return found


@lru_cache(maxsize=None)
def j_table_recursive(p: int, u: int, v: int) -> dict:
    """{a: (b, c)} over J(u, v) built from the three-piece recursion."""
    _check_window(u, v)
    base_b = (p ** (v - 1) - p**u) // (p - 1)
    if v - u <= 2:
        return {0: (base_b, 0)}
    if v - u == 3:
        return {0: (base_b, 0), p**u: (base_b - (p + 1) * p**u, p**u)}
    w = v - 3
    out = {}
    for a, (b, c) in j_table_recursive(p, u, v - 1).items():
        out[a] = (b + p ** (w + 1), c)
    for a, (b, c) in j_table_recursive(p, u, v - 2).items():
        key = p**w + a
        if key in out:
            raise AssertionError("recursion pieces overlap")
        out[key] = (b, c + p**w)
    for a, (b, c) in j_table_recursive(p, u, v - 3).items():
        key = p**w + p ** (w - 1) + a
        if key in out:
            raise AssertionError("recursion pieces overlap")
        out[key] = (b, c)
    return out
