"""Heap tableaux and a heap-shaped Robinson-Schensted correspondence.

A heap tableau of arity k maps tree addresses (strings over the first k
digits, "" for the root) to strictly increasing integer vectors, such
that row a of the address tree is a min-heap: a cell's value is at least
the value in the same row of the parent address.  Row 1 holds the heads
of all vectors, row 2 their second elements, and so on; column lengths
never grow along an address.

``insert`` performs column insertion with bumping: an incoming value is
appended to the first vector (in digit order) that stays increasing,
otherwise it displaces the smallest larger element, which descends into
the children of its address.  Feeding a permutation through ``build_PQ``
yields an insertion tableau P and a recording tableau Q of the same
shape, with Q *standard*; ``invert_PQ`` recovers the permutation, making
the map a bijection.
"""

from __future__ import annotations

import json
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field


def digit_char(d: int) -> str:
    return chr(ord("0") + d)


def child_addresses(addr: str, k: int) -> list[str]:
    """The k child addresses of ``addr``, in digit order."""
    return [addr + digit_char(d) for d in range(k)]


def parent_address(addr: str) -> str:
    if not addr:
        raise ValueError("the root has no parent")
    return addr[:-1]


def address_ok(addr: str, k: int) -> bool:
    return all("0" <= c <= digit_char(k - 1) for c in addr)


def lex_leq(x: str, y: str) -> bool:
    """Partial order on addresses: prefixes come first, then a smaller
    final digit beats any continuation of a larger one.

    Generated by x <= xw and za <= zb for digits a < b; the closure is
    exactly: x is a prefix of y, or dropping x's last digit leaves a
    prefix of y continued by a strictly larger digit.  Addresses such as
    "01" and "10" stay incomparable.
    """
    if y.startswith(x):
        return True
    if not x:
        return False
    z = x[:-1]
    return y.startswith(z) and len(y) > len(z) and y[len(z)] > x[-1]


def _sorted_addresses(vectors: dict) -> list[str]:
    return sorted(vectors, key=lambda a: (len(a), a))


class HeapTableau:
    """Arity-k tableau: a mapping from addresses to increasing vectors.

    The constructor does not validate; use ``tableau_violations`` to
    check arbitrary candidates.
    """

    def __init__(self, k: int, vectors: dict | None = None):
        if k < 1:
            raise ValueError(f"arity must be >= 1, got {k}")
        self.k = k
        self.vectors: dict[str, list[int]] = {a: list(v) for a, v in (vectors or {}).items()}

    @property
    def n(self) -> int:
        return sum(len(v) for v in self.vectors.values())

    def copy(self) -> "HeapTableau":
        return HeapTableau(self.k, self.vectors)

    def cells(self):
        """All (address, row) cells, rows 1-based."""
        for addr in _sorted_addresses(self.vectors):
            for i in range(1, len(self.vectors[addr]) + 1):
                yield addr, i

    def value_at(self, addr: str, row: int):
        return self.vectors[addr][row - 1]

    def all_values(self) -> list[int]:
        return [v for vec in self.vectors.values() for v in vec]

    def frozen(self) -> tuple:
        return (self.k, tuple(sorted((a, tuple(v)) for a, v in self.vectors.items())))

    def __eq__(self, other) -> bool:
        return (isinstance(other, HeapTableau)
                and self.k == other.k and self.vectors == other.vectors)

    def __repr__(self) -> str:
        body = ", ".join(f"{a or 'root'}:{v}" for a, v in sorted(self.vectors.items()))
        return f"HeapTableau(k={self.k}, {body})"


@dataclass
class BumpTrace:
    """Displacements caused by one insertion.

    ``steps`` lists (address, displaced value) from the root downward;
    ``final_address`` is where the chain stopped, ``created`` telling a
    fresh vector from an append.  ``path`` flattens both into the
    (address, event) list form.
    """

    steps: list[tuple[str, int]]
    final_address: str
    created: bool

    @property
    def path(self) -> list[tuple[str, object]]:
        return self.steps + [(self.final_address, "created" if self.created else "appended")]


def insert(t: HeapTableau, x: int) -> tuple[HeapTableau, BumpTrace]:
    """Insert x into a copy of ``t``; return it with the bump trace.

    Candidate vectors are scanned strictly in digit order; a missing
    child is created on first contact (children always fill left to
    right, so no occupied vector is ever skipped by an earlier gap).
    """
    if x in set(t.all_values()):
        raise ValueError(f"value {x!r} already present")
    out = t.copy()
    steps: list[tuple[str, int]] = []
    addrs = [""]
    val = x
    while True:
        placed = None
        for r in addrs:
            vec = out.vectors.get(r)
            if vec is None:
                out.vectors[r] = [val]
                placed = (r, True)
                break
            if val > vec[-1]:
                vec.append(val)
                placed = (r, False)
                break
        if placed is not None:
            final_address, created = placed
            break
        # every candidate rejected: displace the smallest larger element
        best = None
        for r in addrs:
            vec = out.vectors[r]
            j = bisect_right(vec, val)
            if j < len(vec) and (best is None or vec[j] < best[0]):
                best = (vec[j], r, j)
        y, r, j = best
        out.vectors[r][j] = val
        steps.append((r, y))
        val = y
        addrs = child_addresses(r, out.k)
    return out, BumpTrace(steps=steps, final_address=final_address, created=created)


def tableau_violations(t: HeapTableau) -> list[tuple[str, tuple[str, int]]]:
    """Violated tableau conditions as (condition, (address, row)) pairs.

    "a" flags malformed support (empty vector, address outside the
    arity alphabet), "b" a missing or larger same-row parent cell, "c" a
    non-increasing column.
    """
    out = []
    for addr, vec in t.vectors.items():
        if not address_ok(addr, t.k):
            out.append(("a", (addr, 0)))
        if not vec:
            out.append(("a", (addr, 0)))
            continue
        for i in range(len(vec) - 1):
            if vec[i] >= vec[i + 1]:
                out.append(("c", (addr, i + 2)))
        if addr:
            parent = t.vectors.get(addr[:-1])
            for i, v in enumerate(vec, 1):
                if parent is None or len(parent) < i:
                    out.append(("b", (addr, i)))
                elif parent[i - 1] > v:
                    out.append(("b", (addr, i)))
    return sorted(out)


def is_heap_tableau(t: HeapTableau) -> bool:
    return not tableau_violations(t)


def _required_below(y: str) -> set[str]:
    """Addresses ordered below y: its prefixes and every smaller sibling
    of a prefix."""
    req = {y[:i] for i in range(len(y) + 1)}
    for i in range(len(y)):
        req.update(y[:i] + digit_char(d) for d in range(ord(y[i]) - ord("0")))
    return req


def is_standard(t: HeapTableau) -> bool:
    """True iff t holds 1..n once each and row-1 values grow along the
    address order.

    Assumes t is a heap tableau.  Row-1 monotonicity is checked against
    every address ordered below an occupied one, which must itself be
    occupied; incomparable addresses are unconstrained.
    """
    values = t.all_values()
    n = len(values)
    if sorted(values) != list(range(1, n + 1)):
        return False
    for y in t.vectors:
        top = t.vectors[y][0]
        for x in _required_below(y):
            if x not in t.vectors or t.vectors[x][0] > top:
                return False
    return True


def build_PQ(perm, k: int) -> tuple[HeapTableau, HeapTableau]:
    """Insert a permutation of 1..n; return (insertion, recording) tableaux.

    Step i inserts perm[i-1] into P and stamps i into Q at the cell the
    insertion added, so the shapes match after every step and Q ends up
    standard.
    """
    P, Q = HeapTableau(k), HeapTableau(k)
    for P, Q, _ in iter_build_PQ(perm, k):
        pass
    return P, Q


def iter_build_PQ(perm, k: int):
    """Yield (P, Q, trace) after each insertion of ``build_PQ``."""
    perm = list(perm)
    if sorted(perm) != list(range(1, len(perm) + 1)):
        raise ValueError("input must be a permutation of 1..n")
    P, Q = HeapTableau(k), HeapTableau(k)
    for i, v in enumerate(perm, 1):
        P, trace = insert(P, v)
        Q = Q.copy()
        Q.vectors.setdefault(trace.final_address, []).append(i)
        yield P, Q, trace


class TableauPairError(ValueError):
    """A (P, Q) pair outside the bijection's image; ``cell`` names the
    offending (address, row) when one is identifiable."""

    def __init__(self, message: str, cell=None):
        super().__init__(message)
        self.cell = cell


def invert_PQ(p: HeapTableau, q: HeapTableau, k: int) -> list[int]:
    """Recover the permutation that ``build_PQ`` maps to (p, q).

    Works backward from the largest recording label: its cell in p
    holds the last value of a bump chain, which is pushed back up by
    swapping with the largest smaller element of each parent vector
    until the root pops the inserted value.
    """
    if p.k != k or q.k != k:
        raise TableauPairError("arity mismatch between tableaux and k")
    for name, t in (("insertion", p), ("recording", q)):
        bad = tableau_violations(t)
        if bad:
            raise TableauPairError(f"{name} tableau is malformed", cell=bad[0][1])
    sp = shape_of(p).lengths
    sq = shape_of(q).lengths
    if sp != sq:
        for addr in sorted(set(sp) | set(sq)):
            if sp.get(addr) != sq.get(addr):
                raise TableauPairError(f"shapes differ at address {addr!r}", cell=(addr, 1))
    values = p.all_values()
    if len(set(values)) != len(values):
        raise TableauPairError("insertion tableau has duplicate values")
    if not is_standard(q):
        raise TableauPairError("recording tableau is not standard")

    P, Q = p.copy(), q.copy()
    out: list[int] = []
    for m in range(Q.n, 0, -1):
        addr = next(a for a, vec in Q.vectors.items() if vec[-1] == m)
        Q.vectors[addr].pop()
        if not Q.vectors[addr]:
            del Q.vectors[addr]
        x = P.vectors[addr].pop()
        if not P.vectors[addr]:
            del P.vectors[addr]
        while addr:
            addr = addr[:-1]
            vec = P.vectors[addr]
            j = bisect_left(vec, x) - 1
            if j < 0:
                raise TableauPairError(
                    f"no element below {x!r} in vector at address {addr!r}",
                    cell=(addr, 1),
                )
            x, vec[j] = vec[j], x
        out.append(x)
    out.reverse()
    return out


def delete_max_standard(q: HeapTableau) -> HeapTableau:
    """Remove the largest label from a standard tableau (stays standard)."""
    if not is_standard(q):
        raise ValueError("input tableau is not standard")
    out = q.copy()
    n = out.n
    if n == 0:
        raise ValueError("cannot delete from an empty tableau")
    addr = next(a for a, vec in out.vectors.items() if vec[-1] == n)
    out.vectors[addr].pop()
    if not out.vectors[addr]:
        del out.vectors[addr]
    return out


@dataclass
class Shape:
    """Column lengths per address: the silhouette a tableau fills."""

    k: int
    lengths: dict[str, int] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return sum(self.lengths.values())

    def cells(self) -> list[tuple[str, int]]:
        return [(addr, i)
                for addr in _sorted_addresses(self.lengths)
                for i in range(1, self.lengths[addr] + 1)]

    def validate(self) -> None:
        for addr, length in self.lengths.items():
            if not address_ok(addr, self.k):
                raise ValueError(f"address {addr!r} outside arity-{self.k} alphabet")
            if not isinstance(length, int) or length < 1:
                raise ValueError(f"length at {addr!r} must be a positive integer")
            if addr:
                parent = self.lengths.get(addr[:-1])
                if parent is None:
                    raise ValueError(f"address {addr!r} lacks its parent")
                if parent < length:
                    raise ValueError(f"vector at {addr!r} longer than its parent")


def shape_of(t: HeapTableau) -> Shape:
    return Shape(t.k, {addr: len(vec) for addr, vec in t.vectors.items()})


def tableau_to_json_dict(t: HeapTableau) -> dict:
    return {"k": t.k,
            "vectors": {a: list(t.vectors[a]) for a in _sorted_addresses(t.vectors)}}


def tableau_from_json_dict(data: dict) -> HeapTableau:
    t = HeapTableau(int(data["k"]), {str(a): [int(v) for v in vec]
                                     for a, vec in data["vectors"].items()})
    for addr in t.vectors:
        if not address_ok(addr, t.k):
            raise ValueError(f"address {addr!r} outside arity-{t.k} alphabet")
    return t


def shape_to_json_dict(s: Shape) -> dict:
    return {"k": s.k,
            "lengths": {a: s.lengths[a] for a in _sorted_addresses(s.lengths)}}


def shape_from_json_dict(data: dict) -> Shape:
    s = Shape(int(data["k"]), {str(a): int(v) for a, v in data["lengths"].items()})
    s.validate()
    return s


def tableau_to_json(t: HeapTableau) -> str:
    return json.dumps(tableau_to_json_dict(t))


def tableau_from_json(text: str) -> HeapTableau:
    return tableau_from_json_dict(json.loads(text))


def shape_to_json(s: Shape) -> str:
    return json.dumps(shape_to_json_dict(s))


def shape_from_json(text: str) -> Shape:
    return shape_from_json_dict(json.loads(text))
