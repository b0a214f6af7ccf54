"""Lifeline particle process on [0,1] and scaling-law estimation.

Arrivals land uniformly in the unit interval; each new particle carries
k lifelines and removes one lifeline from the largest live particle
below it, if any.  Arrivals smaller than every live particle are
*minimum events*.  The live particles, counted with their remaining
lifelines, evolve exactly like the free slots of the greedy heap forest
of :mod:`heapable.partition` run on the same values, and minimum events
coincide with new heaps; ``min_had_equals_greedy`` replays both sides
step by step to confirm it.

Two state representations are provided: ``ParticleState`` keeps the
live particles as (value, lifelines) pairs, while ``WordState`` is the
two-lifeline combinatorial form, a letter per particle (its remaining
lifelines, 0 for dead) behind a -1 sentinel, where an arrival is just a
choice of letter position.

Monte Carlo estimation (``estimate_E_MHS``, ``run_trajectory``) uses a
Fenwick tree over value ranks so a trajectory costs O(n log n), and
derives every trial's generator from (master seed, trial index) so results
are reproducible bit for bit at any parallelism level.
"""

from __future__ import annotations

import math
from bisect import bisect_left, insort
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np


class ParticleState:
    """Live particles of the lifeline process, ordered by value.

    Dead particles are dropped.  ``step`` mutates the state in place
    (use ``copy`` to keep snapshots) and records the decremented value,
    if any, in ``last_decremented``.
    """

    def __init__(self, k: int, particles=()):
        if k < 1:
            raise ValueError(f"arity must be >= 1, got {k}")
        self.k = k
        self.values: list = []
        self.lives: list[int] = []
        self.time = 0
        self.min_events = 0
        self.last_decremented = None
        for value, lives in sorted(particles):
            if not 1 <= lives <= k:
                raise ValueError(f"lifelines must be in 1..{k}, got {lives}")
            self.values.append(value)
            self.lives.append(lives)

    @property
    def particles(self) -> list[tuple]:
        return list(zip(self.values, self.lives))

    def copy(self) -> "ParticleState":
        new = ParticleState(self.k)
        new.values = list(self.values)
        new.lives = list(self.lives)
        new.time = self.time
        new.min_events = self.min_events
        new.last_decremented = self.last_decremented
        return new

    def lifeline_counter(self) -> dict:
        """Live particles as a value -> lifelines mapping."""
        return dict(zip(self.values, self.lives))

    def live_count(self) -> int:
        return len(self.values)

    def single_life_count(self) -> int:
        return sum(1 for c in self.lives if c == 1)

    def total_lifelines(self) -> int:
        return sum(self.lives)

    def step(self, x) -> bool:
        """Insert x; return True iff x was below every live particle."""
        i = bisect_left(self.values, x)
        if i < len(self.values) and self.values[i] == x:
            raise ValueError(f"duplicate value {x!r}")
        self.last_decremented = None
        was_minimum = i == 0
        if not was_minimum:
            j = i - 1
            self.last_decremented = self.values[j]
            self.lives[j] -= 1
            if self.lives[j] == 0:
                self.values.pop(j)
                self.lives.pop(j)
                i -= 1
        self.values.insert(i, x)
        self.lives.insert(i, self.k)
        self.time += 1
        if was_minimum:
            self.min_events += 1
        return was_minimum


def step_particles(state: ParticleState, x) -> tuple[ParticleState, bool]:
    """Advance the particle state by one arrival (in place).

    Returns the state together with the minimum-event flag.  The value
    must be distinct from every stored particle.
    """
    was_minimum = state.step(x)
    return state, was_minimum


SENTINEL = -1


class WordState:
    """Two-lifeline process as a word over {-1, 0, 1, 2}.

    ``letters[0]`` is the -1 sentinel; every later letter is one
    particle's remaining lifelines, in value order, dead particles
    keeping their position as 0.
    """

    def __init__(self):
        self.letters: list[int] = [SENTINEL]
        self.time = 0
        self.min_events = 0

    def copy(self) -> "WordState":
        new = WordState()
        new.letters = list(self.letters)
        new.time = self.time
        new.min_events = self.min_events
        return new

    def live_count(self) -> int:
        return sum(1 for c in self.letters[1:] if c >= 1)

    def single_life_count(self) -> int:
        return self.letters.count(1)


def step_word(state: WordState, position: int, k: int = 2) -> WordState:
    """Insert an arrival at the given letter position (in place).

    The position picks the value gap just right of that letter.  The
    nearest letter at or left of it that is not 0 identifies what
    happens: the sentinel means a minimum event, a 1 becomes 0 and a 2
    becomes 1.  The new particle's letter 2 lands right after the
    chosen position.  Only the two-lifeline alphabet is supported.
    """
    if k != 2:
        raise ValueError("the word form is defined for two lifelines only")
    if not 0 <= position < len(state.letters):
        raise ValueError(f"position {position} outside word of length {len(state.letters)}")
    i = position
    while state.letters[i] == 0:
        i -= 1
    hit = state.letters[i]
    if hit == SENTINEL:
        state.min_events += 1
    else:
        state.letters[i] = hit - 1
    state.letters.insert(position + 1, 2)
    state.time += 1
    return state


@dataclass
class TrajectoryStats:
    """Minimum events and letter counts sampled along one trajectory.

    ``L_series[i]`` is the number of live particles at time
    ``checkpoints[i]`` and ``C_series[i]`` the number of them down to a
    single lifeline; ``min_series`` gives the running minimum-event
    count at the same times.
    """

    n: int
    k: int
    seed: int
    min_events: int
    checkpoints: list[int]
    min_series: list[int]
    L_series: list[int]
    C_series: list[int]


def default_checkpoints(n: int, ratio: float = 1.2) -> list[int]:
    """Geometrically spaced sample times 1, ..., n (logarithmic statistics
    make uniform sampling wasteful on long runs)."""
    points = set()
    t = 1.0
    while t < n:
        points.add(math.ceil(t))
        t *= ratio
    points.add(n)
    return sorted(p for p in points if p <= n)


def _simulate_ranks(ranks, k: int, checkpoints=()) -> tuple[int, list[tuple[int, int, int, int]]]:
    """Run the lifeline process over a rank sequence.

    ``ranks`` must be a permutation of 0..n-1 giving each arrival's rank
    among all n values.  Returns the minimum-event total and a
    (t, min_events, live, single_life) row per requested checkpoint.
    Fenwick tree over ranks: one descent finds the largest live rank
    below the arrival.
    """
    n = len(ranks)
    tree = [0] * (n + 1)
    lives = [0] * (n + 1)
    top = 1 << max(n.bit_length() - 1, 0)
    if top * 2 <= n:
        top <<= 1
    live = ones = mins = 0
    rows = []
    cps = iter(sorted({c for c in checkpoints if c >= 1}))
    next_cp = next(cps, 0)
    t = 0
    for r in ranks:
        t += 1
        pos = r + 1
        i = pos - 1
        below = 0
        while i > 0:
            below += tree[i]
            i -= i & -i
        if below == 0:
            mins += 1
        else:
            # smallest index whose prefix sum reaches `below`: the
            # largest rank holding a lifeline strictly below pos
            idx = 0
            bit = top
            rem = below
            while bit:
                nxt = idx + bit
                if nxt <= n and tree[nxt] < rem:
                    idx = nxt
                    rem -= tree[nxt]
                bit >>= 1
            j = idx + 1
            i = j
            while i <= n:
                tree[i] -= 1
                i += i & -i
            lives[j] -= 1
            if lives[j] == 0:
                live -= 1
                ones -= 1
            elif lives[j] == 1:
                ones += 1
        i = pos
        while i <= n:
            tree[i] += k
            i += i & -i
        lives[pos] = k
        live += 1
        if k == 1:
            ones += 1
        if t == next_cp:
            rows.append((t, mins, live, ones))
            next_cp = next(cps, 0)
    return mins, rows


def _ranks_of(values: np.ndarray) -> np.ndarray:
    ranks = np.empty(len(values), dtype=np.int64)
    ranks[np.argsort(values, kind="stable")] = np.arange(len(values))
    return ranks


def _uniforms(rng: np.random.Generator, n: int) -> np.ndarray:
    u = rng.random(n)
    while np.unique(u).size < n:    # exact float collision: redraw the batch
        u = rng.random(n)
    return u


def run_trajectory(n: int, k: int, seed: int, checkpoints=None, trial: int | None = None) -> TrajectoryStats:
    """Simulate n uniform arrivals; deterministic given the seed.

    ``trial`` selects the sub-stream derived from (seed, trial), the
    same derivation the estimation harness uses, so trajectories of a
    multi-trial run can be reproduced individually.
    """
    if n < 1:
        raise ValueError(f"need at least one arrival, got n={n}")
    if k < 1:
        raise ValueError(f"arity must be >= 1, got {k}")
    if checkpoints is None:
        checkpoints = default_checkpoints(n)
    spawn_key = () if trial is None else (trial,)
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=spawn_key))
    ranks = _ranks_of(_uniforms(rng, n))
    mins, rows = _simulate_ranks(ranks.tolist(), k, checkpoints)
    return TrajectoryStats(
        n=n,
        k=k,
        seed=seed,
        min_events=mins,
        checkpoints=[r[0] for r in rows],
        min_series=[r[1] for r in rows],
        L_series=[r[2] for r in rows],
        C_series=[r[3] for r in rows],
    )


def min_had_equals_greedy(values, k: int) -> bool:
    """Replay the particle process and the greedy forest on one sequence.

    True iff minimum events coincide with new-heap events at every step
    and the live particles (with lifeline multiplicities) equal the
    forest's free slot multiset throughout.  Both sides start empty and
    each step applies one removal and one k-fold addition, so checking
    that the removed values agree step by step, plus a full multiset
    comparison at the end, verifies equality after every step.
    """
    from .partition import HeapForest

    forest = HeapForest(k)
    state = ParticleState(k)
    for x in values:
        node = forest.insert(x)
        parent = forest.parents[node]
        new_heap = parent is None
        removed_slot = None if new_heap else forest.values[parent]
        was_minimum = state.step(x)
        if was_minimum != new_heap:
            return False
        if removed_slot != state.last_decremented:
            return False
    return forest.slot_counter() == state.lifeline_counter()


@dataclass
class EstimateReport:
    """Sample mean of the heap count (equivalently minimum events)."""

    n: int
    k: int
    trials: int
    seed: int
    method: str
    mean: float
    stderr: float
    ratio_to_log: float = field(init=False)

    def __post_init__(self):
        self.ratio_to_log = self.mean / math.log(self.n)


def _estimate_one(args) -> int:
    seed, trial, n, k, method = args
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(trial,)))
    if method == "greedy":
        ranks = rng.permutation(n)
    else:
        ranks = _ranks_of(_uniforms(rng, n))
    mins, _ = _simulate_ranks(ranks.tolist(), k)
    return mins


def estimate_E_MHS(
    n: int,
    k: int,
    trials: int,
    seed: int,
    method: str = "greedy",
    parallel: int = 1,
) -> EstimateReport:
    """Estimate the expected heap count of a random length-n permutation.

    ``method="greedy"`` partitions shuffled permutations;
    ``method="minhad"`` counts minimum events over uniform trajectories.
    The two agree in expectation, and trial i always draws from the
    stream derived from (seed, i), so any degree of parallelism yields
    the same report.
    """
    if trials < 1:
        raise ValueError(f"need at least one trial, got {trials}")
    if method not in ("greedy", "minhad"):
        raise ValueError(f"unknown method {method!r}")
    jobs = [(seed, trial, n, k, method) for trial in range(trials)]
    if parallel > 1:
        chunk = max(1, trials // (4 * parallel))
        with ProcessPoolExecutor(max_workers=parallel) as pool:
            counts = list(pool.map(_estimate_one, jobs, chunksize=chunk))
    else:
        counts = [_estimate_one(job) for job in jobs]
    mean = math.fsum(counts) / trials
    if trials > 1:
        var = math.fsum((c - mean) ** 2 for c in counts) / (trials - 1)
        stderr = math.sqrt(var / trials)
    else:
        stderr = 0.0
    return EstimateReport(n=n, k=k, trials=trials, seed=seed, method=method,
                          mean=mean, stderr=stderr)


def phi_k(k: int, tolerance: float = 1e-12) -> float:
    """The unique root in (0,1) of x + x^2 + ... + x^k = 1, by bisection.

    For k=2 this is (sqrt(5)-1)/2, the inverse golden ratio; the root
    decreases toward 1/2 as k grows.
    """
    if k < 2:
        raise ValueError(f"root is defined for k >= 2, got {k}")
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    lo, hi = 0.0, 1.0
    while hi - lo > tolerance:
        mid = (lo + hi) / 2
        total = 0.0
        p = 1.0
        for _ in range(k):
            p *= mid
            total += p
        if total < 1.0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def _survivors(values, k: int, initial: dict | None = None) -> dict:
    """Lifelines of the particles added during ``values`` that survive it.

    ``initial`` seeds the process with preexisting particles; those do
    not count as survivors even if still alive at the end.
    """
    state = ParticleState(k, initial.items() if initial else ())
    added = set()
    for x in values:
        state.step(x)
        added.add(x)
    return {v: c for v, c in zip(state.values, state.lives) if v in added}


@dataclass
class SubadditivityReport:
    """Slot-count relations between a trajectory and its two halves.

    ``a_*`` count lifelines with multiplicity, ``u_*`` the values held
    with multiplicity exactly two.  The two subadditivity inequalities
    and the two multiset inclusions (survivors of the second half, run
    cold versus run on top of the first half's slots) are reported
    separately.
    """

    a_x: int
    a_y: int
    a_xy: int
    u_x: int
    u_y: int
    u_xy: int
    s_x: dict = field(repr=False)
    s_y: dict = field(repr=False)
    s_xy: dict = field(repr=False)
    s_y_given_x: dict = field(repr=False)
    a_subadditive: bool
    u_subadditive: bool
    multiset_included: bool
    doubles_included: bool

    @property
    def all_hold(self) -> bool:
        return (self.a_subadditive and self.u_subadditive
                and self.multiset_included and self.doubles_included)


def check_subadditivity(x, y, k: int = 2) -> SubadditivityReport:
    """Verify the slot-multiset relations on one concatenated trajectory."""
    values = list(x) + list(y)
    if len(set(values)) != len(values):
        raise ValueError("concatenated trajectory must have distinct values")
    s_x = _survivors(x, k)
    s_y = _survivors(y, k)
    s_xy = _survivors(values, k)
    s_y_given_x = _survivors(y, k, initial=s_x)

    def a(s: dict) -> int:
        return sum(s.values())

    def u(s: dict) -> int:
        return sum(1 for c in s.values() if c == 2)

    return SubadditivityReport(
        a_x=a(s_x), a_y=a(s_y), a_xy=a(s_xy),
        u_x=u(s_x), u_y=u(s_y), u_xy=u(s_xy),
        s_x=s_x, s_y=s_y, s_xy=s_xy, s_y_given_x=s_y_given_x,
        a_subadditive=a(s_xy) <= a(s_x) + a(s_y),
        u_subadditive=u(s_xy) <= u(s_x) + u(s_y),
        multiset_included=all(c <= s_y_given_x.get(v, 0) for v, c in s_y.items()),
        doubles_included=all(s_y_given_x.get(v, 0) == 2
                             for v, c in s_y.items() if c == 2),
    )


def word_matches_particles(values, checkpoints=()) -> bool:
    """Drive the word and particle forms with the same values; compare.

    Each arrival's word position is its rank among all previous values
    (dead particles keep their letter).  Minimum events are compared at
    every step, live and single-life counts at the checkpoints.  Only
    the two-lifeline case has a word form.
    """
    word = WordState()
    state = ParticleState(2)
    inserted: list = []     # every value so far, dead ones included
    cps = set(checkpoints)
    for t, x in enumerate(values, 1):
        position = bisect_left(inserted, x)
        before = word.min_events
        step_word(word, position)
        insort(inserted, x)
        was_minimum = state.step(x)
        if (word.min_events > before) != was_minimum:
            return False
        if len(word.letters) != t + 1:
            return False
        if t in cps:
            if word.live_count() != state.live_count():
                return False
            if word.single_life_count() != state.single_life_count():
                return False
    return True


def left_to_right_minima(seq) -> int:
    """Number of values smaller than everything before them."""
    count = 0
    best = None
    for v in seq:
        if best is None or v < best:
            best = v
            count += 1
    return count


def harmonic(n: int) -> float:
    """The n-th harmonic number."""
    return math.fsum(1.0 / i for i in range(1, n + 1))
