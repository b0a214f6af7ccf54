from fractions import Fraction
from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from heapable.hooks import (
    corners,
    count_fillings,
    gen_T_rk,
    gen_W_r,
    hook_bound,
    hook_lengths,
    hook_walk,
)
from heapable.tableaux import HeapTableau, Shape, insert, shape_of

NINE_CELL_SHAPE = Shape(2, {"": 3, "0": 3, "1": 2, "10": 1})

# frozen regression constants, confirmed against the naive filter below
NINE_CELL_FILLINGS = 499
W4_FILLINGS = 112


def random_shape(rng, max_cells, k=None) -> Shape:
    k = k if k is not None else int(rng.integers(1, 4))
    size = int(rng.integers(1, max_cells + 1))
    t = HeapTableau(k)
    for v in (rng.permutation(size) + 1).tolist():
        t, _ = insert(t, v)
    return shape_of(t)


def naive_filling_count(shape: Shape) -> int:
    cells = shape.cells()
    idx = {c: i for i, c in enumerate(cells)}
    total = 0
    for perm in permutations(range(1, len(cells) + 1)):
        ok = True
        for (addr, i), j in idx.items():
            v = perm[j]
            if i > 1 and perm[idx[(addr, i - 1)]] >= v:
                ok = False
                break
            if addr and perm[idx[(addr[:-1], i)]] > v:
                ok = False
                break
        if ok:
            total += 1
    return total


def test_nine_cell_hook_table():
    assert hook_lengths(NINE_CELL_SHAPE) == {
        ("", 1): 6, ("", 2): 4, ("", 3): 2,
        ("0", 1): 3, ("0", 2): 2, ("0", 3): 1,
        ("1", 1): 3, ("1", 2): 1,
        ("10", 1): 1,
    }


def test_hook_table_degenerate_shapes():
    assert hook_lengths(Shape(2, {"": 1})) == {("", 1): 1}
    column = Shape(1, {"": 4})
    assert hook_lengths(column) == {("", i): 4 - i + 1 for i in range(1, 5)}


def test_hook_bound_values():
    assert hook_bound(NINE_CELL_SHAPE) == 420
    assert hook_bound(Shape(1, {"": 5})) == 1
    assert hook_bound(Shape(2, {})) == 1
    assert count_fillings(Shape(2, {})).exact == 1


def test_count_fillings_regressions():
    fc = count_fillings(NINE_CELL_SHAPE)
    assert fc.exact == NINE_CELL_FILLINGS
    assert fc.bound == 420
    assert fc.exact >= fc.bound

    w4 = count_fillings(gen_W_r(4))
    assert w4.bound == Fraction(189, 2)
    assert w4.exact == W4_FILLINGS
    assert w4.exact > w4.bound


def test_count_fillings_cap():
    with pytest.raises(ValueError, match="cap"):
        count_fillings(Shape(1, {"": 20}))
    shape, _ = gen_T_rk(4, 2)
    with pytest.raises(ValueError, match="cap"):
        count_fillings(shape, cap=10)


def test_count_fillings_matches_naive_filter():
    rng = np.random.default_rng(23)
    for _ in range(25):
        shape = random_shape(rng, 7)
        assert count_fillings(shape).exact == naive_filling_count(shape)


@given(seed=st.integers(0, 10_000))
@settings(max_examples=120, deadline=None)
def test_bound_never_exceeds_count(seed):
    shape = random_shape(np.random.default_rng(seed), 11)
    fc = count_fillings(shape)
    assert fc.exact >= fc.bound


def test_single_path_shapes_attain_bound():
    # arity-1 shapes are column diagrams: parts of a partition
    def partitions(n, largest):
        if n == 0:
            yield ()
            return
        for part in range(min(n, largest), 0, -1):
            for rest in partitions(n - part, part):
                yield (part,) + rest

    for n in range(1, 9):
        for parts in partitions(n, n):
            shape = Shape(1, {"0" * i: length for i, length in enumerate(parts)})
            fc = count_fillings(shape)
            assert fc.exact == fc.bound, parts


def test_corner_cells():
    assert corners(NINE_CELL_SHAPE) == {("0", 3), ("1", 2), ("10", 1)}
    assert corners(Shape(2, {"": 1})) == {("", 1)}
    # a corner's removal leaves a valid shape
    for addr, row in corners(NINE_CELL_SHAPE):
        lengths = dict(NINE_CELL_SHAPE.lengths)
        assert lengths[addr] == row
        lengths[addr] -= 1
        if not lengths[addr]:
            del lengths[addr]
        Shape(2, lengths).validate()


def test_hook_walk_degenerate_cases():
    assert hook_walk(Shape(2, {"": 1}), seed=0) == ("", 1)
    for seed in range(10):
        assert hook_walk(Shape(1, {"": 5}), seed=seed) == ("", 5)
    with pytest.raises(ValueError, match="empty"):
        hook_walk(Shape(2, {}), seed=0)


def test_hook_walk_reaches_corners():
    cs = corners(NINE_CELL_SHAPE)
    seen = set()
    for seed in range(400):
        cell = hook_walk(NINE_CELL_SHAPE, seed=seed)
        assert cell in cs
        seen.add(cell)
    assert seen == cs
    assert hook_walk(NINE_CELL_SHAPE, seed=7) == hook_walk(NINE_CELL_SHAPE, seed=7)


def test_tight_family_small_case():
    shape, count = gen_T_rk(2, 2)
    assert shape.n == 4
    assert count == 6
    fc = count_fillings(shape)
    assert fc.exact == count
    assert fc.bound == count


@pytest.mark.parametrize("r,k", [(2, 1), (5, 1), (2, 2), (3, 2), (2, 3), (2, 4)])
def test_tight_family_bound_attained(r, k):
    shape, count = gen_T_rk(r, k)
    hooks = hook_lengths(shape)
    assert hooks[("", 1)] == shape.n
    assert sorted(hooks[("", j)] for j in range(2, k + 1)) == list(range(1, k))
    fc = count_fillings(shape)
    assert fc.bound == count
    assert fc.exact == count


def test_tight_family_validation():
    with pytest.raises(ValueError):
        gen_T_rk(1, 2)
    with pytest.raises(ValueError):
        gen_T_rk(2, 0)


def test_strict_family_structure():
    shape = gen_W_r(4)
    assert shape.n == 9
    hooks = hook_lengths(shape)
    assert hooks[("", 1)] == 8
    assert hooks[("0", 1)] == 2
    assert [hooks[("1" * j, 1)] for j in range(1, 6)] == [5, 4, 3, 2, 1]
    assert hooks[("", 2)] == 2
    assert hooks[("0", 2)] == 1
    with pytest.raises(ValueError):
        gen_W_r(1)


@pytest.mark.parametrize("r", [2, 4, 6])
def test_strict_family_even_bound_is_half_integer(r):
    shape = gen_W_r(r)
    assert shape.n == 2 * r + 1
    bound = hook_bound(shape)
    assert bound.denominator == 2
    expected = Fraction((2 * r + 1) * (2 * r - 1) * (2 * r - 2), 4)
    assert bound == expected


@pytest.mark.parametrize("r", [2, 3, 4, 5])
def test_strict_family_hook_decomposition_gap(r):
    # the root hook strictly exceeds the two-leg decomposition, which is
    # why the bound cannot be tight here
    hooks = hook_lengths(gen_W_r(r))
    root = hooks[("", 1)] - 1
    legs = (hooks[("", 2)] - 1) + (hooks[("0", 1)] - 1)
    assert root > legs


def test_strict_family_count_exceeds_bound():
    fc = count_fillings(gen_W_r(2))
    assert fc.exact > fc.bound
    assert naive_filling_count(gen_W_r(2)) == fc.exact
