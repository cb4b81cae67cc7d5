"""Determinant invariants: cross-checked constructions and equivariance."""

from __future__ import annotations

import random

import pytest

from stmilnor.algebra import apply_matrix, from_terms, power, serialize
from stmilnor.context import Context
from stmilnor.invariants import (
    bracket,
    dickson_q,
    dickson_q_recursive,
    l_det,
    l_omit,
    mui_m,
    v_by_sum,
    v_det,
)
from stmilnor.sampling import MatrixFp, random_gl, random_sl, random_unitriangular


def lower_unitriangular(ctx, rng):
    t = random_unitriangular(ctx, rng)
    n = ctx.n
    return MatrixFp(ctx, tuple(tuple(t.rows[j][i] for j in range(n)) for i in range(n)))


def test_small_closed_forms():
    ctx2 = Context(3, 2)
    y1, y2 = ctx2.y(1), ctx2.y(2)
    assert l_det(ctx2, 1) == y1
    assert v_det(ctx2, 1) == y1
    assert l_det(ctx2, 2) == y1 * y2**3 - y1**3 * y2
    # omitting exponent s from the window {0..m}; omitting m recovers L
    assert l_omit(ctx2, 1, 0) == y1**3
    assert l_omit(ctx2, 1, 1) == y1
    assert l_omit(ctx2, 2, 2) == l_det(ctx2, 2)
    assert serialize(bracket(ctx2, 2, (), 2)) == "x1*x2"
    assert bracket(ctx2, 0, (0, 1), 2) == l_det(ctx2, 2)


def test_division_and_recursive_dickson_constructions_agree():
    for p, top in ((3, 3), (5, 2)):
        for m in range(1, top + 1):
            ctx = Context(p, m)
            for s in range(m + 1):
                assert dickson_q(ctx, m, s) == dickson_q_recursive(ctx, m, s), (p, m, s)


def test_dickson_edge_values():
    ctx = Context(3, 3)
    assert dickson_q(ctx, 3, 3) == ctx.one()
    assert dickson_q(ctx, 3, 0) == power(l_det(ctx, 3), 2)  # Q_{m,0} = L^{p-1}
    assert dickson_q(ctx, 1, 0) == ctx.y(1) ** 2
    # out-of-range s is the zero invariant, not an error
    assert dickson_q(ctx, 3, 4).is_zero()
    assert dickson_q(ctx, 3, -1).is_zero()
    with pytest.raises(ValueError):
        dickson_q(ctx, 4, 0)  # m exceeds the number of generators


def test_v_constructions_agree_and_divide_l():
    for p, top in ((3, 3), (5, 2)):
        for m in range(1, top + 1):
            ctx = Context(p, m)
            v = v_det(ctx, m)
            assert v == v_by_sum(ctx, m), (p, m)
            if m > 1:
                assert v * l_det(ctx, m - 1) == l_det(ctx, m)


def test_bracket_is_alternating_in_the_exponents():
    ctx = Context(3, 3)
    base = bracket(ctx, 1, (0, 2), 3)
    assert bracket(ctx, 1, (2, 0), 3) == -base
    assert bracket(ctx, 0, (1, 0, 2), 3) == -bracket(ctx, 0, (0, 1, 2), 3)
    assert bracket(ctx, 0, (0, 0, 1), 3).is_zero()  # repeated rows
    assert bracket(ctx, 1, (1, 1), 3).is_zero()


def test_bracket_validation():
    ctx = Context(3, 2)
    with pytest.raises(ValueError):
        bracket(ctx, 3, (), 2)  # more exterior rows than columns
    with pytest.raises(ValueError):
        bracket(ctx, 0, (0,), 2)  # wrong exponent count
    with pytest.raises(ValueError):
        bracket(ctx, -1, (0, 1, 2), 2)


def test_mui_with_no_indices_collapses_to_l_power():
    ctx = Context(3, 2)
    for d in (1, 2):
        assert mui_m(ctx, 2, (), d) == power(l_det(ctx, 2), d)


def test_brackets_and_l_scale_by_the_determinant():
    # columns transform linearly even after Frobenius twists, so every
    # bracket picks up exactly one determinant factor, invertible or not
    rng = random.Random(29)
    for p, n in ((3, 2), (3, 3), (5, 2)):
        ctx = Context(p, n)
        L = l_det(ctx, n)
        B = bracket(ctx, 1, tuple(range(n - 1)), n)
        for _ in range(8):
            g = MatrixFp(ctx, tuple(tuple(rng.randrange(p) for _ in range(n)) for _ in range(n)))
            d = g.det() % p
            assert apply_matrix(g, L) == d * L
            assert apply_matrix(g, B) == d * B


def test_dickson_invariants_are_gl_invariant():
    rng = random.Random(31)
    for p, n in ((3, 2), (3, 3), (5, 2)):
        ctx = Context(p, n)
        qs = [dickson_q(ctx, n, s) for s in range(n)]
        for _ in range(8):
            g = random_gl(ctx, rng)
            for s, q in enumerate(qs):
                assert apply_matrix(g, q) == q, (p, n, s)


def test_v_and_m_are_invariant_under_lower_unitriangular_matrices():
    rng = random.Random(37)
    for p, n in ((3, 2), (3, 3), (5, 2)):
        ctx = Context(p, n)
        V = v_det(ctx, n)
        M = mui_m(ctx, n, (n - 1,))
        for _ in range(8):
            t = lower_unitriangular(ctx, rng)
            assert apply_matrix(t, V) == V
            assert apply_matrix(t, M) == M


def test_m_picks_up_det_power_d_so_sl_fixes_it():
    rng = random.Random(41)
    ctx = Context(3, 3)
    for ss, d in (((0,), 2), ((0, 2), 3), ((1,), 1)):
        M = mui_m(ctx, 3, ss, d)
        for _ in range(6):
            g = random_gl(ctx, rng)
            assert apply_matrix(g, M) == pow(g.det(), d, 3) * M
            s = random_sl(ctx, rng)
            assert apply_matrix(s, M) == M


def test_mui_is_bracket_times_l_power():
    # M^{(d)} with index set ss is the complementary bracket times L^{d-1}
    ctx = Context(3, 3)
    for ss in ((0,), (1,), (0, 1), (0, 2), (0, 1, 2)):
        comp = tuple(s for s in range(3) if s not in ss)
        want = bracket(ctx, len(ss), comp, 3) * power(l_det(ctx, 3), 1)
        assert mui_m(ctx, 3, ss, 2) == want
