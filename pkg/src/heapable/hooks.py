"""Hook lengths on heap-tableau shapes and the filling-count lower bound.

The hook of a cell (address, row) gathers the same-row cells of every
descendant address together with the deeper rows of its own vector.
``n!`` divided by the product of all hook lengths bounds the number of
ways to fill the shape with 1..n from below; the bound is exact on
single-path shapes and on the ``gen_T_rk`` family, and provably not
exact on ``gen_W_r`` for even r, where it is not even an integer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import numpy as np

from .tableaux import Shape


def hook_lengths(shape: Shape) -> dict[tuple[str, int], int]:
    """Hook length of every cell, keyed by (address, 1-based row)."""
    shape.validate()
    lengths = shape.lengths
    addrs = list(lengths)
    hooks = {}
    for addr in addrs:
        below = [lengths[b] for b in addrs if b.startswith(addr)]
        for i in range(1, lengths[addr] + 1):
            heap_part = sum(1 for lb in below if lb >= i)
            vec_part = lengths[addr] - i + 1
            hooks[(addr, i)] = heap_part + vec_part - 1
    return hooks


def hook_bound(shape: Shape) -> Fraction:
    """n! over the product of all hook lengths, as an exact fraction.

    Kept exact on purpose: non-integrality of the bound is itself
    meaningful (it certifies the bound is not attained).
    """
    hooks = hook_lengths(shape)
    denom = 1
    for h in hooks.values():
        denom *= h
    return Fraction(factorial(shape.n), denom)


def corners(shape: Shape) -> set[tuple[str, int]]:
    """Cells whose removal leaves a valid shape (hook length 1)."""
    return {cell for cell, h in hook_lengths(shape).items() if h == 1}


@dataclass
class FillingCount:
    """Exact number of valid fillings next to the hook-product bound."""

    exact: int
    bound: Fraction


def count_fillings(shape: Shape, cap: int = 16) -> FillingCount:
    """Count bijective fillings with 1..n that keep every vector
    increasing and every row heap-ordered.

    These are the linear extensions of the cell poset generated by
    (parent, i) < (addr, i) and (addr, i-1) < (addr, i), counted by
    dynamic programming over downsets (bitmask per cell).  Shapes larger
    than ``cap`` cells are refused.
    """
    shape.validate()
    n = shape.n
    if n > cap:
        raise ValueError(f"shape with {n} cells exceeds enumeration cap {cap}")
    cells = shape.cells()
    index = {cell: i for i, cell in enumerate(cells)}
    preds = [0] * n
    for (addr, i), j in index.items():
        if i > 1:
            preds[j] |= 1 << index[(addr, i - 1)]
        if addr:
            preds[j] |= 1 << index[(addr[:-1], i)]
    full = (1 << n) - 1
    memo = {full: 1}

    def extensions(mask: int) -> int:
        if mask in memo:
            return memo[mask]
        total = 0
        for j in range(n):
            bit = 1 << j
            if not mask & bit and mask & preds[j] == preds[j]:
                total += extensions(mask | bit)
        memo[mask] = total
        return total

    return FillingCount(exact=extensions(0), bound=hook_bound(shape))


def hook_walk(shape: Shape, seed: int) -> tuple[str, int]:
    """Random walk over hooks: start at a uniform cell, jump uniformly
    within the current cell's hook until the hook shrinks to the cell
    itself.  Always ends at a corner; deterministic given the seed."""
    hooks = hook_lengths(shape)
    if not hooks:
        raise ValueError("empty shape has no cells to walk")
    rng = np.random.default_rng(seed)
    cells = shape.cells()
    addr, i = cells[int(rng.integers(len(cells)))]
    lengths = shape.lengths
    while hooks[(addr, i)] > 1:
        options = [(b, i) for b in lengths
                   if b.startswith(addr) and lengths[b] >= i and b != addr]
        options += [(addr, j) for j in range(i + 1, lengths[addr] + 1)]
        addr, i = options[int(rng.integers(len(options)))]
    return addr, i


def _tree_sum(k: int, levels: int) -> int:
    """Nodes in a complete k-ary tree with the given number of levels."""
    if k == 1:
        return levels
    return (k ** levels - 1) // (k - 1)


def gen_T_rk(r: int, k: int) -> tuple[Shape, int]:
    """Shape whose hook bound is attained: a root vector of length k over
    a complete k-ary tree of depth r with single-cell vectors.

    Returns the shape together with the exact filling count
    (n-1)! / ((k-1)! * prod over depth i of tree_sum(r-i)^(k^i)), which
    equals the hook bound.
    """
    if r < 2:
        raise ValueError(f"depth must be >= 2, got {r}")
    if k < 1:
        raise ValueError(f"arity must be >= 1, got {k}")
    lengths = {"": k}
    level = [""]
    for _ in range(r - 1):
        level = [addr + chr(ord("0") + d) for addr in level for d in range(k)]
        lengths.update((addr, 1) for addr in level)
    shape = Shape(k, lengths)
    n = _tree_sum(k, r) + k - 1
    denom = factorial(k - 1)
    for i in range(1, r):
        denom *= _tree_sum(k, r - i) ** (k ** i)
    return shape, factorial(n - 1) // denom


def gen_W_r(r: int) -> Shape:
    """Shape where the hook bound is strict: two rows at the root and its
    left child, plus a right-leaning chain of 2r-3 single cells.

    Has 2r+1 cells; for even r the hook bound is a half-integer, so no
    filling count can attain it.
    """
    if r < 2:
        raise ValueError(f"parameter must be >= 2, got {r}")
    lengths = {"": 2, "0": 2}
    lengths.update(("1" * j, 1) for j in range(1, 2 * r - 2))
    return Shape(2, lengths)
