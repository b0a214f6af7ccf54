"""Greedy partition of a sequence into k-heapable subsequences.

A sequence is k-heapable if its elements can be inserted, in arrival
order, into a single k-ary min-heap without rearrangement: every element
becomes a child of an earlier, smaller element, and no node acquires
more than k children.  The minimum number of k-heapable subsequences a
sequence decomposes into is computed by a patience-sorting-style greedy
sweep over *slots*: every node of the growing forest offers
``k - children`` free child positions, each usable by any later value
greater than or equal to the node's value.

The greedy rule places each value at the slot with the largest value
still less than or equal to it (the tightest fit) and opens a new heap
when no slot fits.  For k=1 this is classical patience sorting:

>>> greedy_mhs([2, 4, 3, 1], 1).count
3
>>> greedy_mhs([2, 4, 3, 1], 2).count
2

``brute_force_mhs`` is an independent exhaustive oracle for small
inputs, used by the test suite to confirm that the greedy count is the
true minimum.
"""

from __future__ import annotations

from bisect import bisect_right, insort
from dataclasses import dataclass, field
from typing import Iterable, Sequence


def check_distinct(values: Sequence) -> None:
    """Raise ValueError unless all values are pairwise distinct."""
    if len(set(values)) != len(values):
        raise ValueError("sequence values must be pairwise distinct")


class HeapForest:
    """A forest of k-ary min-heaps built by slot insertion.

    Nodes are numbered by insertion order; per-node arrays hold the
    value, the parent node id (None for roots) and the heap id.  The
    free slots are tracked as a sorted list of node values with
    remaining child capacity, which makes the greedy choice a single
    bisection.
    """

    def __init__(self, k: int):
        if k < 1:
            raise ValueError(f"arity must be >= 1, got {k}")
        self.k = k
        self.values: list = []
        self.parents: list[int | None] = []
        self.heap_ids: list[int] = []
        self.num_heaps = 0
        self._capacity: list[int] = []     # free child positions per node
        self._slot_values: list = []       # sorted values of nodes with capacity > 0
        self._node_at: dict = {}           # value -> node id (values are distinct)
        self._seen: set = set()

    def __len__(self) -> int:
        return len(self.values)

    def greedy_parent(self, x) -> int | None:
        """Node offering the tightest slot <= x, or None (new heap)."""
        i = bisect_right(self._slot_values, x)
        if i == 0:
            return None
        return self._node_at[self._slot_values[i - 1]]

    def legal_parents(self, x) -> list[int]:
        """All nodes with a free slot usable by x, in value order."""
        i = bisect_right(self._slot_values, x)
        return [self._node_at[v] for v in self._slot_values[:i]]

    def insert(self, x, parent: int | None = None, greedy: bool = True) -> int:
        """Add x under ``parent`` (or greedily when ``greedy``); return its node id.

        ``parent=None`` with ``greedy=False`` forces a new heap.
        """
        if x in self._seen:
            raise ValueError(f"duplicate value {x!r}")
        if greedy:
            parent = self.greedy_parent(x)
        node = len(self.values)
        if parent is None:
            heap = self.num_heaps
            self.num_heaps += 1
        else:
            pv = self.values[parent]
            if pv > x:
                raise ValueError(f"value {x!r} cannot sit under larger parent {pv!r}")
            if self._capacity[parent] == 0:
                raise ValueError(f"node {parent} has no free slot")
            heap = self.heap_ids[parent]
            self._capacity[parent] -= 1
            if self._capacity[parent] == 0:
                self._slot_values.pop(bisect_right(self._slot_values, pv) - 1)
                del self._node_at[pv]
        self.values.append(x)
        self.parents.append(parent)
        self.heap_ids.append(heap)
        self._capacity.append(self.k)
        insort(self._slot_values, x)
        self._node_at[x] = node
        self._seen.add(x)
        return node

    def free_slots(self) -> list[tuple]:
        """All free slots as (slot value, heap id, parent node id) triples."""
        out = []
        for node, cap in enumerate(self._capacity):
            out.extend([(self.values[node], self.heap_ids[node], node)] * cap)
        out.sort()
        return out

    def slot_counter(self) -> dict:
        """Free slots as a value -> multiplicity mapping."""
        counts: dict = {}
        for node, cap in enumerate(self._capacity):
            if cap:
                counts[self.values[node]] = cap
        return counts

    def children_counts(self) -> list[int]:
        counts = [0] * len(self.values)
        for p in self.parents:
            if p is not None:
                counts[p] += 1
        return counts

    def validate(self) -> None:
        """Check the heap-forest invariants; raise ValueError on failure."""
        counts = self.children_counts()
        for node, parent in enumerate(self.parents):
            if counts[node] > self.k:
                raise ValueError(f"node {node} has {counts[node]} > k children")
            if parent is None:
                continue
            if parent >= node:
                raise ValueError(f"node {node} precedes its parent {parent}")
            if self.values[parent] > self.values[node]:
                raise ValueError(f"heap order violated at node {node}")
            if self.heap_ids[parent] != self.heap_ids[node]:
                raise ValueError(f"node {node} not in its parent's heap")
        d = self.num_heaps
        n = len(self.values)
        if n and len(self.free_slots()) != self.k * n - (n - d):
            raise ValueError("slot count does not match k*n - (n - d)")


def signature(forest: HeapForest) -> list:
    """The sorted multiset of free slot values of a forest."""
    return [value for value, _, _ in forest.free_slots()]


def dominates(a: Sequence, b: Sequence) -> bool:
    """True iff signature ``a`` dominates ``b``.

    ``a`` dominates ``b`` when it is no longer and is componentwise no
    larger over its length:

    >>> dominates([1, 3], [2, 3, 7])
    True
    >>> dominates([1, 4], [2, 3])
    False
    """
    if len(a) > len(b):
        return False
    return all(x <= y for x, y in zip(a, b))


@dataclass
class MhsResult:
    """Outcome of the greedy partition.

    ``assignment[i]`` is a (heap id, parent node id) pair for element i,
    with parent None when the element started a new heap.  Node ids
    coincide with element indices.
    """

    k: int
    count: int
    assignment: list[tuple[int, int | None]] = field(repr=False)
    forest: HeapForest = field(repr=False)

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "count": self.count,
            "assignment": [
                {"index": i, "heap": heap, "parent": parent}
                for i, (heap, parent) in enumerate(self.assignment)
            ],
        }


def greedy_mhs(seq: Sequence, k: int) -> MhsResult:
    """Partition ``seq`` into the minimum number of k-heapable subsequences.

    Deterministic; an empty sequence yields count 0 and an empty forest.
    Duplicate values are rejected.
    """
    if k < 1:
        raise ValueError(f"arity must be >= 1, got {k}")
    check_distinct(seq)
    forest = HeapForest(k)
    assignment: list[tuple[int, int | None]] = []
    for x in seq:
        node = forest.insert(x)
        assignment.append((forest.heap_ids[node], forest.parents[node]))
    return MhsResult(k=k, count=forest.num_heaps, assignment=assignment, forest=forest)


def greedy_count(seq: Iterable, k: int) -> int:
    """Heap count of the greedy partition, without building the forest."""
    slots: list = []    # sorted values with free capacity
    cap: dict = {}
    seen: set = set()
    count = 0
    for x in seq:
        if x in seen:
            raise ValueError(f"duplicate value {x!r}")
        seen.add(x)
        i = bisect_right(slots, x)
        if i == 0:
            count += 1
        else:
            v = slots[i - 1]
            cap[v] -= 1
            if cap[v] == 0:
                slots.pop(i - 1)
                del cap[v]
        insort(slots, x)
        cap[x] = k
    return count


def brute_force_mhs(seq: Sequence, k: int, cap: int = 10) -> int:
    """Exact minimum heap count by exhaustive search over slot assignments.

    Every element is tried in every feasible slot of every existing heap
    and as a fresh root; states are memoized on the multiset of free
    slot values, which fully determines the future.  Exponential: inputs
    longer than ``cap`` are refused.
    """
    n = len(seq)
    if n > cap:
        raise ValueError(f"sequence of length {n} exceeds brute-force cap {cap}")
    if k < 1:
        raise ValueError(f"arity must be >= 1, got {k}")
    check_distinct(seq)
    rank = {v: i for i, v in enumerate(sorted(seq))}
    ranks = [rank[v] for v in seq]

    def with_slot(state: tuple, r: int) -> tuple:
        lst = list(state)
        insort(lst, (r, k))
        return tuple(lst)

    memo: dict = {}

    def best(i: int, state: tuple) -> int:
        if i == n:
            return 0
        key = (i, state)
        if key in memo:
            return memo[key]
        r = ranks[i]
        res = 1 + best(i + 1, with_slot(state, r))
        for idx, (v, c) in enumerate(state):
            if v > r:
                break
            reduced = (
                state[:idx] + state[idx + 1:]
                if c == 1
                else state[:idx] + ((v, c - 1),) + state[idx + 1:]
            )
            cand = best(i + 1, with_slot(reduced, r))
            if cand < res:
                res = cand
        memo[key] = res
        return res

    return best(0, ())


def gen_family_simple(k: int) -> list[int]:
    """The length-(k+1) sequence [1, k+1, k, ..., 2].

    Its greedy heap count at arity j is k - j + 1 for every 1 <= j <= k,
    so the arity hierarchy is strict at every level.
    """
    if k < 2:
        raise ValueError(f"family requires k >= 2, got {k}")
    return [1] + list(range(k + 1, 1, -1))


def gen_family_X(k: int, n: int) -> list[int]:
    """Blocks of descending runs that separate arities k-1 and k.

    The sequence starts with 1 and continues with n blocks; block t is
    the descending run from ``sum((t+1-i) * (k-1)**i for i in 0..t)``
    down to one more than the previous block's top, so consecutive
    blocks use consecutive integer ranges.  It is k-heapable as a whole
    (count 1) while arity k-1 needs n+1 heaps.  The block length formula
    divides by k-2, hence k >= 3.
    """
    if k < 3:
        raise ValueError(f"block family requires k >= 3, got {k}")
    if n < 1:
        raise ValueError(f"block count must be >= 1, got {n}")
    seq = [1]
    for t in range(1, n + 1):
        hi = sum((t + 1 - i) * (k - 1) ** i for i in range(t + 1))
        lo = 1 + sum((t - i) * (k - 1) ** i for i in range(t))
        seq.extend(range(hi, lo - 1, -1))
    return seq


def is_k_heapable(seq: Sequence, k: int) -> bool:
    """True iff the whole sequence fits in a single k-ary min-heap."""
    return greedy_mhs(seq, k).count <= 1
