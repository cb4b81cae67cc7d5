"""Matrices over F_p acting on the algebra, plus random samplers for tests.

A matrix g sends x_i to sum_j g[i][j] x_j and y_i to sum_j g[i][j] y_j
(row convention).  Random sampling is used by the test suite to probe
invariance properties; everything takes an explicit random.Random so runs
are reproducible from a seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .context import Context


@dataclass(frozen=True)
class MatrixFp:
    """Square matrix over F_p, rows as a tuple of tuples."""

    ctx: Context
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n, p = self.ctx.n, self.ctx.p
        if len(self.rows) != n or any(len(r) != n for r in self.rows):
            raise ValueError(f"matrix must be {n}x{n}")
        fixed = tuple(tuple(v % p for v in r) for r in self.rows)
        object.__setattr__(self, "rows", fixed)

    @classmethod
    def identity(cls, ctx: Context) -> MatrixFp:
        n = ctx.n
        return cls(ctx, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def diagonal(cls, ctx: Context, diag) -> MatrixFp:
        n = ctx.n
        d = list(diag)
        if len(d) != n:
            raise ValueError(f"need {n} diagonal entries")
        return cls(ctx, tuple(tuple(d[i] % ctx.p if i == j else 0 for j in range(n)) for i in range(n)))

    def __matmul__(self, other: MatrixFp) -> MatrixFp:
        self.ctx.check_same(other.ctx)
        n, p = self.ctx.n, self.ctx.p
        rows = tuple(
            tuple(sum(self.rows[i][k] * other.rows[k][j] for k in range(n)) % p for j in range(n))
            for i in range(n)
        )
        return MatrixFp(self.ctx, rows)

    def det(self) -> int:
        """Determinant mod p by Gaussian elimination."""
        n, p = self.ctx.n, self.ctx.p
        m = [list(r) for r in self.rows]
        d = 1
        for col in range(n):
            piv = next((r for r in range(col, n) if m[r][col]), None)
            if piv is None:
                return 0
            if piv != col:
                m[col], m[piv] = m[piv], m[col]
                d = -d
            d = d * m[col][col] % p
            inv = pow(m[col][col], p - 2, p)
            for r in range(col + 1, n):
                f = m[r][col] * inv % p
                if f:
                    m[r] = [(a - f * b) % p for a, b in zip(m[r], m[col])]
        return d % p

    def is_invertible(self) -> bool:
        return self.det() != 0


def random_matrix(ctx: Context, rng: random.Random) -> MatrixFp:
    return MatrixFp(ctx, tuple(tuple(rng.randrange(ctx.p) for _ in range(ctx.n)) for _ in range(ctx.n)))


def random_gl(ctx: Context, rng: random.Random) -> MatrixFp:
    while True:
        g = random_matrix(ctx, rng)
        if g.is_invertible():
            return g


def random_sl(ctx: Context, rng: random.Random) -> MatrixFp:
    """Random matrix of determinant 1 (scale one row of a GL sample)."""
    g = random_gl(ctx, rng)
    inv = pow(g.det(), ctx.p - 2, ctx.p)
    rows = list(g.rows)
    rows[0] = tuple(v * inv % ctx.p for v in rows[0])
    return MatrixFp(ctx, tuple(rows))


def random_unitriangular(ctx: Context, rng: random.Random) -> MatrixFp:
    n, p = ctx.n, ctx.p
    rows = tuple(
        tuple(1 if i == j else (rng.randrange(p) if j > i else 0) for j in range(n))
        for i in range(n)
    )
    return MatrixFp(ctx, rows)


def random_element(
    ctx: Context,
    rng: random.Random,
    max_terms: int = 5,
    max_exp: int = 6,
    y_only: bool = False,
):
    """Random element with small exponents, possibly zero."""
    from .algebra import Element

    n, p = ctx.n, ctx.p
    terms = {}
    for _ in range(rng.randrange(max_terms + 1)):
        if y_only:
            ext = ()
        else:
            ext = tuple(i for i in range(1, n + 1) if rng.random() < 0.3)
        exps = tuple(rng.randrange(max_exp + 1) for _ in range(n))
        terms[(ext, exps)] = rng.randrange(1, p)
    return Element(ctx, terms)
