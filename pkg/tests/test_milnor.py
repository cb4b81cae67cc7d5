"""Steenrod operations: generator values, Cartan laws, engine cross-checks."""

from __future__ import annotations

import random

import pytest

from stmilnor.context import Context
from stmilnor.milnor import (
    MilnorOp,
    apply,
    delta,
    multinomial_mod_p,
    naive_apply,
    st_delta,
    st_u,
    steenrod_p,
)
from stmilnor.sampling import random_element


def test_op_normalization_and_validation():
    op = MilnorOp((0, 2), (1, 0, 0))
    assert op.S == (0, 2)
    assert op.R == (1,)  # trailing zeros stripped
    assert MilnorOp((), ()).is_identity
    with pytest.raises(ValueError):
        MilnorOp((1, 1), ())
    with pytest.raises(ValueError):
        MilnorOp((2, 0), ())
    with pytest.raises(ValueError):
        MilnorOp((-1,), ())
    with pytest.raises(ValueError):
        MilnorOp((), (-1,))


def test_degree_shift_formula():
    p = 5
    op = MilnorOp((0, 2), (3, 1))
    want = (2 * 1 - 1) + (2 * 25 - 1) + 3 * (2 * 5 - 2) + 1 * (2 * 25 - 2)
    assert op.degree_shift(p) == want


def test_generator_values():
    ctx = Context(3, 2)
    x1, y1 = ctx.x(1), ctx.y(1)
    assert apply(MilnorOp.identity(), x1) == x1
    assert apply(MilnorOp.identity(), y1) == y1
    for u in range(4):
        assert apply(MilnorOp((u,), ()), x1) == y1 ** (3**u)
    for i in range(1, 4):
        assert apply(MilnorOp((), delta(i)), y1) == y1 ** (3**i)
    # every other single operation kills a generator
    assert apply(MilnorOp((0, 1), ()), x1).is_zero()
    assert apply(MilnorOp((), (2,)), y1).is_zero()
    assert apply(MilnorOp((0,), ()), y1).is_zero()
    assert apply(MilnorOp((), (1,)), x1).is_zero()


def test_shorthand_wrappers_agree_with_general_form():
    ctx = Context(3, 2)
    rng = random.Random(3)
    for _ in range(25):
        a = random_element(ctx, rng, max_terms=3, max_exp=4)
        for u in range(3):
            assert st_u(u, a) == apply(MilnorOp((u,), ()), a)
        for i in range(1, 3):
            assert st_delta(i, a) == apply(MilnorOp((), delta(i)), a)
        for r in range(4):
            assert steenrod_p(r, a) == apply(MilnorOp((), (r,)), a)
    with pytest.raises(ValueError):
        st_delta(0, ctx.one())


def test_apply_is_linear():
    ctx = Context(5, 2)
    rng = random.Random(7)
    op = MilnorOp((0,), (1,))
    for _ in range(15):
        a = random_element(ctx, rng, max_terms=3, max_exp=4)
        b = random_element(ctx, rng, max_terms=3, max_exp=4)
        assert apply(op, a + b) == apply(op, a) + apply(op, b)
        assert apply(op, 2 * a) == 2 * apply(op, a)


def test_st_u_is_a_signed_derivation_and_st_delta_an_unsigned_one():
    # the Cartan sign tracks only the odd S-part, so
    #   st_u(u, ab) = st_u(u, a) b + (-1)^{deg a} a st_u(u, b)
    #   st_delta(i, ab) = st_delta(i, a) b + a st_delta(i, b)
    ctx = Context(3, 3)
    rng = random.Random(11)
    for _ in range(40):
        ea = tuple(sorted(rng.sample((1, 2, 3), rng.randrange(3))))
        a_exps = tuple(rng.randrange(5) for _ in range(3))
        from stmilnor.algebra import from_terms

        a = from_terms(ctx, [(ea, a_exps, rng.randrange(1, 3))])
        b = random_element(ctx, rng, max_terms=3, max_exp=4)
        sign = -1 if a.degree() % 2 else 1
        for u in range(2):
            assert st_u(u, a * b) == st_u(u, a) * b + sign * (a * st_u(u, b))
        for i in range(1, 3):
            assert st_delta(i, a * b) == st_delta(i, a) * b + a * st_delta(i, b)


def test_steenrod_p_cartan_formula():
    ctx = Context(3, 2)
    rng = random.Random(13)
    for _ in range(20):
        a = random_element(ctx, rng, max_terms=3, max_exp=4)
        b = random_element(ctx, rng, max_terms=3, max_exp=4)
        for r in range(4):
            total = ctx.zero()
            for i in range(r + 1):
                total = total + steenrod_p(i, a) * steenrod_p(r - i, b)
            assert steenrod_p(r, a * b) == total


def test_composition_laws_of_the_odd_and_even_indexed_operations():
    # st_u composites anticommute and square to zero; st_delta composites
    # commute (their Cartan expansion carries no Koszul sign)
    ctx = Context(3, 2)
    rng = random.Random(17)
    for _ in range(20):
        a = random_element(ctx, rng, max_terms=4, max_exp=5)
        assert st_u(0, st_u(0, a)).is_zero()
        assert st_u(1, st_u(1, a)).is_zero()
        assert st_u(0, st_u(1, a)) == -st_u(1, st_u(0, a))
        assert st_delta(1, st_delta(2, a)) == st_delta(2, st_delta(1, a))


def test_fast_engine_matches_naive_engine():
    rng = random.Random(19)
    ops = [
        MilnorOp((), ()),
        MilnorOp((0,), ()),
        MilnorOp((1,), ()),
        MilnorOp((0, 1), ()),
        MilnorOp((), (1,)),
        MilnorOp((), (2,)),
        MilnorOp((), (0, 1)),
        MilnorOp((), (1, 1)),
        MilnorOp((0,), (2,)),
        MilnorOp((0, 2), (1,)),
        MilnorOp((1,), (0, 1)),
    ]
    for p, n in ((3, 2), (5, 2), (3, 3)):
        ctx = Context(p, n)
        for _ in range(12):
            a = random_element(ctx, rng, max_terms=3, max_exp=20)
            for op in ops:
                assert apply(op, a) == naive_apply(op, a), (p, n, op)


def test_degree_shift_is_respected():
    ctx = Context(5, 2)
    rng = random.Random(23)
    ops = [MilnorOp((0,), ()), MilnorOp((), (1,)), MilnorOp((1,), (2,))]
    for _ in range(20):
        a = random_element(ctx, rng, max_terms=1, max_exp=6)
        if a.is_zero():
            continue
        for op in ops:
            b = apply(op, a)
            if not b.is_zero():
                assert b.degree() == a.degree() + op.degree_shift(5)


def test_multinomial_mod_p_matches_factorial_formula():
    from math import factorial

    for p in (3, 5):
        for m in range(0, 40):
            for k in range(0, m + 1):
                want = factorial(m) // (factorial(k) * factorial(m - k)) % p
                assert multinomial_mod_p(p, m, (k, m - k)) == want
    # three parts
    assert multinomial_mod_p(3, 6, (2, 2, 2)) == 90 % 3
    assert multinomial_mod_p(5, 6, (2, 2, 2)) == 90 % 5
