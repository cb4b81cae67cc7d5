"""Digit index sets, block decompositions, and the b/c exponent tables."""

from __future__ import annotations

import pytest

from stmilnor.padic import (
    alpha,
    b_func,
    c_func,
    digits,
    enumerate_decompositions,
    in_index_set_I,
    in_index_set_J,
    index_set_I,
    index_set_J,
    j_decompose,
    j_table_recursive,
)

WINDOWS_3 = [(u, u + g) for u in (0, 1, 2) for g in range(1, 8)]
WINDOWS_5 = [(u, u + g) for u in (0, 1) for g in range(1, 6)]


def digit_string_ok(a, p, u, v, max_run):
    ds = digits(a, p)
    if any(d > 1 for d in ds):
        return False
    supp = [i for i, d in enumerate(ds) if d]
    if any(not (u <= i <= v - 3) for i in supp):
        return False
    # longest run of consecutive support positions
    run = best = 0
    prev = None
    for i in supp:
        run = run + 1 if prev == i - 1 else 1
        best = max(best, run)
        prev = i
    return best <= max_run


@pytest.mark.parametrize("p,windows", [(3, WINDOWS_3), (5, WINDOWS_5)])
def test_index_sets_match_the_digit_filters(p, windows):
    for u, v in windows:
        hi = p ** max(v - 2, 1)
        want_i = tuple(a for a in range(hi) if digit_string_ok(a, p, u, v, 1))
        want_j = tuple(a for a in range(hi) if digit_string_ok(a, p, u, v, 2))
        assert index_set_I(p, u, v) == want_i, (p, u, v)
        assert index_set_J(p, u, v) == want_j, (p, u, v)
        assert all(in_index_set_I(p, u, v, a) for a in want_i)
        assert all(in_index_set_J(p, u, v, a) for a in want_j)
        assert not any(in_index_set_I(p, u, v, a) for a in range(hi) if a not in want_i)
        assert not any(in_index_set_J(p, u, v, a) for a in range(hi) if a not in want_j)


def test_narrow_windows_collapse():
    for p in (3, 5):
        for u in (0, 1, 4):
            assert index_set_I(p, u, u + 1) == (0,)
            assert index_set_I(p, u, u + 2) == (0,)
            assert index_set_J(p, u, u + 2) == (0,)
            assert index_set_J(p, u, u + 3) == (0, p**u)


def test_window_validation():
    with pytest.raises(ValueError):
        index_set_I(3, 2, 2)
    with pytest.raises(ValueError):
        index_set_J(3, 3, 1)
    with pytest.raises(ValueError):
        index_set_I(3, -1, 2)
    with pytest.raises(ValueError):
        digits(-1, 3)


def test_digits_and_alpha():
    assert digits(0, 3) == []
    assert digits(35, 3) == [2, 2, 0, 1]
    assert alpha(0, 35, 3) == 2
    assert alpha(3, 35, 3) == 1
    assert alpha(-1, 35, 3) == 0
    assert alpha(7, 35, 3) == 0


@pytest.mark.parametrize("p,windows", [(3, WINDOWS_3), (5, WINDOWS_5)])
def test_closed_form_b_c_match_the_recursive_table(p, windows):
    for u, v in windows:
        table = j_table_recursive(p, u, v)
        elems = index_set_J(p, u, v)
        assert set(table) == set(elems)
        for a in elems:
            assert table[a] == (b_func(p, u, v, a), c_func(p, u, v, a)), (p, u, v, a)


def test_b_is_non_negative_and_attains_zero():
    for p in (3, 5):
        for u, v in ((0, 5), (1, 7)):
            bs = [b_func(p, u, v, a) for a in index_set_J(p, u, v)]
            assert all(b >= 0 for b in bs)
            assert min(bs) == 0


def test_block_part_decomposition_is_unique():
    for p in (3, 5):
        for u, v in ((0, 4), (0, 6), (1, 8) if p == 3 else (0, 5)):
            for a in index_set_J(p, u, v):
                found = enumerate_decompositions(p, u, v, a)
                assert len(found) == 1, (p, u, v, a)
                dec = j_decompose(p, u, v, a)
                assert found[0] == (dec.blocks, dec.parts)


def test_decomposition_shape():
    p, u, v = 3, 0, 8
    for a in index_set_J(p, u, v):
        dec = j_decompose(p, u, v, a)
        assert dec.reassemble() == a
        assert len(dec.parts) == len(dec.blocks) + 1
        assert all(b2 - b1 >= 3 for b1, b2 in zip(dec.blocks, dec.blocks[1:]))
        # parts live in the window between the adjacent blocks
        bounds = (u - 3,) + dec.blocks + (v - 1,)
        for j, part in enumerate(dec.parts):
            assert in_index_set_I(p, bounds[j] + 3, bounds[j + 1] + 1, part)


def test_j_decompose_rejects_non_members():
    with pytest.raises(ValueError):
        j_decompose(3, 0, 6, 2)  # digit 2 not allowed
    with pytest.raises(ValueError):
        j_decompose(3, 2, 6, 1)  # support below the window
    with pytest.raises(ValueError):
        j_decompose(3, 0, 9, 1 + 3 + 9)  # three consecutive ones
