"""Exact van der Waerden search: DFS over r-colorings with progression pruning.

The searcher assigns colors to positions 1, 2, ... in order, pruning as
soon as the newly placed position completes a monochromatic k-term
arithmetic progression. Only progressions that *end* at the current
position can be new, so the check is incremental. The reference engine
keeps per-color occupancy in integer bitmasks (bit p-1 = position p), so
one progression test is an AND-and-compare against a precomputed mask; a
compiled kernel with the identical placement order and counting is used
when available.

Witness selection is deterministic. Colorings are enumerated in
lexicographic order with position 1 pinned to color 0 (color-permutation
symmetry), so the first witness of any length is the lexicographically
least one. W(r, k) itself falls out of one traversal of the whole pruned
tree: witness existence is monotone in N, the first time the walk
reaches depth N it has the lex-least witness for [1, N], and exhausting
the tree refutes depth W = max_depth + 1 and everything above it.

The optional multi-process mode splits the tree at a fixed prefix depth
and recombines worker results in prefix order, which reproduces the
sequential outcome (value, witness, and node count) exactly.

A "node" is one attempted placement of a color on a position, whether or
not the placement survives pruning. Budgets are measured in nodes; when a
budget is exhausted the reported node count equals the budget.
"""

from __future__ import annotations

import itertools
import multiprocessing
import time
from concurrent.futures import ProcessPoolExecutor, wait
from dataclasses import dataclass

try:
    from . import _fastdfs as _fast
except Exception:  # pragma: no cover - numba genuinely absent
    _fast = None

DEFAULT_BUDGET = 10**9

# default depth cap for open-ended scans: reaching it means W exceeds it,
# which is far outside anything this artifact computes
DEPTH_CAP = 2048

# verify_unavoidable_exhaustive refuses to enumerate more colorings than this
EXHAUSTIVE_GUARD = 2**24

# sequential probe run before falling back to the multi-process splitter;
# tests shrink this to force the parallel path on small instances
_PROBE_NODES = 1_000_000

# nodes per compiled-kernel slice when a cancel flag needs polling, and
# the poll interval of the reference engine
_FAST_CHUNK = 1 << 21
_CANCEL_POLL_MASK = 0xFFFF

# compiled kernel stores colors as int8
_FAST_MAX_COLORS = 120

# tests flip this to force the reference engine everywhere
_USE_FAST = True

_REACHED_CAP = 0
_TREE_DONE = 1
_EXHAUSTED = 2
_CANCELLED = 3


class TractabilityError(ValueError):
    """Raised when an exhaustive enumeration would exceed the guard size."""


@dataclass(frozen=True)
class Coloring:
    """Assignment of one of ``num_colors`` colors to each of [1, n_points]."""

    num_colors: int
    assignment: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.num_colors < 2:
            raise ValueError(f"num_colors must be >= 2, got {self.num_colors}")
        for i, c in enumerate(self.assignment):
            if not 0 <= c < self.num_colors:
                raise ValueError(
                    f"color {c} at position {i + 1} outside [0, {self.num_colors - 1}]"
                )

    @property
    def n_points(self) -> int:
        return len(self.assignment)


@dataclass(frozen=True)
class WitnessResult:
    """Outcome of one witness search on [1, N].

    ``witness`` present: a progression-free coloring was found.
    ``witness`` absent: either the whole tree was refuted
    (``exhausted`` False) or the node budget ran out (``exhausted`` True).
    """

    witness: Coloring | None
    exhausted: bool
    nodes: int

    @property
    def proven_none(self) -> bool:
        return self.witness is None and not self.exhausted


@dataclass(frozen=True)
class SearchOutcome:
    """Result of a W(r, k) computation."""

    r: int
    k: int
    w_value: int | None
    witness: Coloring | None
    nodes_explored: int
    budget_exhausted: bool
    elapsed: float


# ---------------------------------------------------------------------------
# progression checkers
# ---------------------------------------------------------------------------


def _seq_has_mono_ap(assignment, k: int) -> bool:
    n = len(assignment)
    if k == 1:
        return n >= 1
    span = k - 1
    for a in range(1, n + 1):
        for d in range(1, (n - a) // span + 1):
            c = assignment[a - 1]
            for j in range(1, k):
                if assignment[a + j * d - 1] != c:
                    break
            else:
                return True
    return False


def has_mono_ap(c: Coloring, k: int) -> bool:
    """Naive full scan over all start/gap pairs; the verification oracle.

    True iff some a >= 1, d >= 1 with a + (k-1)d <= n_points has one color
    on all of a, a+d, ..., a+(k-1)d. k=1 is true whenever a point exists.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return _seq_has_mono_ap(c.assignment, k)


def has_mono_ap_ending_at(c: Coloring, k: int, pos: int) -> bool:
    """True iff a monochromatic k-term progression has last element pos.

    Scans gaps d in [1, (pos-1)//(k-1)] only.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if not 1 <= pos <= c.n_points:
        raise ValueError(f"pos {pos} outside [1, {c.n_points}]")
    if k == 1:
        return True
    assignment = c.assignment
    color = assignment[pos - 1]
    span = k - 1
    for d in range(1, (pos - 1) // span + 1):
        for j in range(1, k):
            if assignment[pos - j * d - 1] != color:
                break
        else:
            return True
    return False


def _full_ap_masks(n: int, k: int) -> list[int]:
    """Bitmask of every k-term progression inside [1, n] (bit p-1 = pos p)."""
    masks = []
    span = k - 1
    for a in range(1, n + 1):
        for d in range(1, (n - a) // span + 1):
            m = 0
            for j in range(k):
                m |= 1 << (a + j * d - 1)
            masks.append(m)
    return masks


def has_mono_ap_bitset(c: Coloring, k: int) -> bool:
    """Bitset-accelerated equivalent of :func:`has_mono_ap`."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    n = c.n_points
    if k == 1:
        return n >= 1
    bits = [0] * c.num_colors
    for i, col in enumerate(c.assignment):
        bits[col] |= 1 << i
    for m in _full_ap_masks(n, k):
        for b in bits:
            if b & m == m:
                return True
    return False


def verify_unavoidable_exhaustive(n: int, r: int, k: int) -> bool:
    """True iff every one of the r**n colorings of [1, n] has a mono k-AP.

    Enumerates all colorings with no pruning and checks each with the
    naive scanner; this is the independent oracle for the DFS.
    """
    if r < 2:
        raise ValueError(f"r must be >= 2, got {r}")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if r**n > EXHAUSTIVE_GUARD:
        raise TractabilityError(f"{r}**{n} colorings exceed the guard {EXHAUSTIVE_GUARD}")
    for assignment in itertools.product(range(r), repeat=n):
        if not _seq_has_mono_ap(assignment, k):
            return False
    return True


# ---------------------------------------------------------------------------
# DFS engines
#
# An engine explores colorings of [1, cap] below a fixed valid prefix and
# returns (status, nodes, max_depth, best): max_depth is the length of the
# deepest valid path seen (at least the prefix length) and best is the
# first path that attained it. REACHED_CAP reports the first depth-cap
# path; TREE_DONE means every extension of the prefix was exhausted.
# ---------------------------------------------------------------------------


def _ap_end_masks(n: int, k: int) -> list[tuple[int, ...]]:
    """masks[p]: one bitmask per gap d covering the k-1 earlier members of
    the progression p-(k-1)d, ..., p-d, p. Placing a color on p completes
    a monochromatic progression iff some mask is fully set in that color's
    occupancy bitset."""
    masks: list[tuple[int, ...]] = [()] * (n + 1)
    span = k - 1
    for p in range(2, n + 1):
        row = []
        for d in range(1, (p - 1) // span + 1):
            m = 0
            q = p - d
            for _ in range(span):
                m |= 1 << (q - 1)
                q -= d
            row.append(m)
        masks[p] = tuple(row)
    return masks


def _engine_python(r, k, cap, budget, prefix, cancel=None):
    """Reference engine: integer-bitset occupancy, pure Python.

    Color-permutation symmetry is broken fully: a position may reuse a
    color already on the path or introduce exactly the next unused one
    (maxu[p] tracks the largest color among positions < p). The lex-least
    witness introduces colors in first-appearance order, so the
    restriction never hides it, and any valid coloring relabels to a
    canonical one, so refutations stay complete. Position 1 getting only
    color 0 is the first consequence of the rule.

    A position that blocks on entry (every one of the r colors completes
    a progression) triggers a backjump: each color c is excluded by the
    progression with its largest gap d(c), which lives within positions
    <= pos - d(c), so any extension of the path truncated at
    m = pos - min_c d(c) blocks there again, and depth pos-1 was already
    attained lexicographically earlier. Jumps are capped at the level the
    multi-process mode splits at, so splitting cannot change the walk.
    """
    jf = _prefix_depth(cap, r)
    masks = _ap_end_masks(cap, k)
    colors = [-1] * (cap + 2)
    maxu = [-1] * (cap + 2)
    placed = [0] * (cap + 2)
    bits = [0] * r
    for i, c in enumerate(prefix):
        colors[i + 1] = c
        bits[c] |= 1 << i
        maxu[i + 2] = max(maxu[i + 1], c)
    start = len(prefix) + 1
    best_depth = len(prefix)
    best = tuple(prefix)
    if start > cap:
        return _REACHED_CAP, 0, best_depth, best
    nodes = 0
    pos = start
    nxt = [0] * (cap + 2)
    while True:
        c = nxt[pos]
        limit = min(r, maxu[pos] + 2)
        if c >= limit:
            target = pos - 1
            if limit == r and not placed[pos] and pos > jf:
                dmin = pos
                for cb in range(r):
                    cbits = bits[cb]
                    row = masks[pos]
                    for i in range(len(row) - 1, -1, -1):
                        m = row[i]
                        if cbits & m == m:
                            if i + 1 < dmin:
                                dmin = i + 1
                            break
                    if dmin == 1:
                        break
                target = max(pos - dmin, jf)
            if target < start:
                return _TREE_DONE, nodes, best_depth, best
            while pos > target:
                pos -= 1
                bits[colors[pos]] ^= 1 << (pos - 1)
                colors[pos] = -1
            continue
        if nodes >= budget:
            return _EXHAUSTED, nodes, best_depth, best
        nxt[pos] = c + 1
        nodes += 1
        if cancel is not None and nodes & _CANCEL_POLL_MASK == 0 and cancel.is_set():
            return _CANCELLED, nodes, best_depth, best
        bc = bits[c]
        ok = True
        for m in masks[pos]:
            if bc & m == m:
                ok = False
                break
        if ok:
            colors[pos] = c
            placed[pos] = 1
            if pos > best_depth:
                best_depth = pos
                best = tuple(colors[1 : pos + 1])
            if pos == cap:
                return _REACHED_CAP, nodes, best_depth, best
            bits[c] = bc | (1 << (pos - 1))
            pos += 1
            nxt[pos] = 0
            placed[pos] = 0
            maxu[pos] = c if c > maxu[pos - 1] else maxu[pos - 1]


def _engine_fast(r, k, cap, budget, prefix, cancel=None):
    """Compiled engine: same walk, same counting, run in budget slices so
    the driver can poll the cancel flag between slices."""
    jf = _prefix_depth(cap, r)
    colors, nxt, maxu, placed, best, state = _fast.make_arrays(cap, prefix)
    start = len(prefix) + 1
    if start > cap:
        return _REACHED_CAP, 0, len(prefix), tuple(prefix)
    total = 0
    while True:
        room = budget - total
        slice_cap = room if cancel is None else min(_FAST_CHUNK, room)
        status, used = _fast.dfs_chunk(
            r, k, cap, start, jf, slice_cap, colors, nxt, maxu, placed, best, state
        )
        total += used
        depth = int(state[1])
        if status == _fast.RC_CAP:
            return _REACHED_CAP, total, depth, _as_tuple(best, depth)
        if status == _fast.RC_DONE:
            return _TREE_DONE, total, depth, _as_tuple(best, depth)
        if total >= budget:
            return _EXHAUSTED, total, depth, _as_tuple(best, depth)
        if cancel is not None and cancel.is_set():
            return _CANCELLED, total, depth, _as_tuple(best, depth)


def _as_tuple(best, depth) -> tuple[int, ...]:
    return tuple(int(x) for x in best[1 : depth + 1])


def _engine(r, k, cap, budget, prefix=(), cancel=None):
    if _USE_FAST and _fast is not None and r <= _FAST_MAX_COLORS:
        return _engine_fast(r, k, cap, budget, prefix, cancel)
    return _engine_python(r, k, cap, budget, prefix, cancel)


def _enumerate_prefixes(r, k, depth, masks):
    """Depth-limited DFS over positions 1..depth, in the exact order the
    full walk visits them.

    Returns (events, trailing, sh_depth, sh_best): events[i] =
    (shallow_nodes, prefix) where shallow_nodes counts the placement
    attempts at positions <= depth made since the previous completed
    prefix, including the attempt completing this one; trailing counts
    attempts after the last completed prefix. sh_depth/sh_best track the
    first deepest shallow path for the case where no prefix completes.
    """
    events: list[tuple[int, tuple[int, ...]]] = []
    delta = 0
    assign = [0] * depth
    maxu = [-1] * (depth + 2)
    bits = [0] * r
    sh_depth = 0
    sh_best: tuple[int, ...] = ()
    pos = 1
    nxt = [0] * (depth + 2)
    while True:
        c = nxt[pos]
        if c >= min(r, maxu[pos] + 2):
            pos -= 1
            if pos < 1:
                return events, delta, sh_depth, sh_best
            bits[assign[pos - 1]] ^= 1 << (pos - 1)
            continue
        nxt[pos] = c + 1
        delta += 1
        bc = bits[c]
        ok = True
        for m in masks[pos]:
            if bc & m == m:
                ok = False
                break
        if ok:
            assign[pos - 1] = c
            if pos > sh_depth:
                sh_depth = pos
                sh_best = tuple(assign[:pos])
            if pos == depth:
                # leaf of the shallow tree: hand the subtree to a worker;
                # the occupancy bit is never set because we backtrack here
                events.append((delta, tuple(assign)))
                delta = 0
                continue
            bits[c] = bc | (1 << (pos - 1))
            pos += 1
            nxt[pos] = 0
            maxu[pos] = c if c > maxu[pos - 1] else maxu[pos - 1]


# worker-process state, installed by the pool initializer
_worker_cancel = None


def _init_worker(cancel_event):
    global _worker_cancel
    _worker_cancel = cancel_event


def _subtree_task(r, k, cap, prefix, node_cap):
    return _engine(r, k, cap, node_cap, prefix, _worker_cancel)


def _prefix_depth(cap: int, r: int) -> int:
    """Depth the multi-process mode splits the tree at and the engines cap
    backjumps at. A fixed function of the problem, never of the worker
    count, so every mode performs the identical walk."""
    if cap < 5:
        return 1
    depth = 2
    count = r
    while count < 256 and depth < min(cap - 2, 14):
        depth += 1
        count *= r
    return depth


class _SearchPool:
    """Reusable process pool with a shared cancel flag.

    The flag lets the driver stop workers whose subtrees became
    irrelevant once the outcome of the current tree is decided; without
    it a long refutation could keep running behind later work.
    """

    def __init__(self, workers: int):
        ctx = multiprocessing.get_context()
        self.cancel = ctx.Event()
        self.executor = ProcessPoolExecutor(
            max_workers=workers,
            mp_context=ctx,
            initializer=_init_worker,
            initargs=(self.cancel,),
        )

    def shutdown(self) -> None:
        self.cancel.set()
        self.executor.shutdown(wait=True, cancel_futures=True)


def _run_parallel(r, k, cap, budget, pool: _SearchPool, depth):
    """Split the tree at ``depth`` and recombine worker results in prefix
    order so that status, witness, and node count match the sequential
    walk exactly: whatever the sequential walk would never have visited
    is discarded, and budget exhaustion is re-derived from per-subtree
    counts (workers each run against the full budget as a cap, which is
    always at least the true remainder)."""
    events, trailing, sh_depth, sh_best = _enumerate_prefixes(
        r, k, depth, _ap_end_masks(depth, k)
    )
    pool.cancel.clear()
    futures = [
        pool.executor.submit(_subtree_task, r, k, cap, prefix, budget)
        for _, prefix in events
    ]
    try:
        used = 0
        best_depth, best = (sh_depth, sh_best) if not events else (0, ())
        for (delta, _), fut in zip(events, futures):
            if used + delta > budget:
                return _EXHAUSTED, budget, 0, ()
            used += delta
            status, sub_nodes, sub_depth, sub_best = fut.result()
            if status == _CANCELLED:  # cannot happen before a decision
                raise RuntimeError("worker cancelled while its result was still needed")
            remaining = budget - used
            if status == _REACHED_CAP and sub_nodes <= remaining:
                return _REACHED_CAP, used + sub_nodes, sub_depth, sub_best
            if status == _EXHAUSTED or sub_nodes > remaining:
                return _EXHAUSTED, budget, 0, ()
            if sub_depth > best_depth:
                best_depth, best = sub_depth, sub_best
            used += sub_nodes
        if used + trailing > budget:
            return _EXHAUSTED, budget, 0, ()
        return _TREE_DONE, used + trailing, best_depth, best
    finally:
        pool.cancel.set()
        for fut in futures:
            fut.cancel()
        wait(futures)
        pool.cancel.clear()


def _run_tree(r, k, cap, budget, pool: _SearchPool | None):
    """Dispatch one tree walk, sequential or split; the mode never changes
    the returned (status, nodes, max_depth, best)."""
    if pool is None:
        return _engine(r, k, cap, budget)
    depth = _prefix_depth(cap, r)
    if depth + 2 > cap:
        return _engine(r, k, cap, budget)
    # cheap sequential probe first: most walks are decided quickly and
    # skipping the pool avoids per-task overhead; an undecided probe is
    # discarded and the split walk recomputes the same numbers in full
    probe = min(_PROBE_NODES, budget)
    result = _engine(r, k, cap, probe)
    if result[0] != _EXHAUSTED or probe >= budget:
        return result
    return _run_parallel(r, k, cap, budget, pool, depth)


def _check_search_args(n, r, k, budget):
    if n < 0:
        raise ValueError(f"N must be >= 0, got {n}")
    if r < 2:
        raise ValueError(f"r must be >= 2, got {r}")
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if budget <= 0:
        raise ValueError(f"budget must be > 0, got {budget}")


def find_witness(
    n: int, r: int, k: int, budget: int = DEFAULT_BUDGET, workers: int = 1
) -> WitnessResult:
    """Search for a coloring of [1, n] with no monochromatic k-term
    progression.

    Returns the lexicographically least witness under color order
    0 < 1 < ... (position 1 fixed to color 0), or reports a refutation of
    the whole tree, or budget exhaustion. Worker count never changes the
    result, only how the tree is explored.
    """
    _check_search_args(n, r, k, budget)
    if n == 0:
        return WitnessResult(Coloring(r, ()), False, 0)
    if workers > 1:
        pool = _SearchPool(workers)
        try:
            status, nodes, _, best = _run_tree(r, k, n, budget, pool, workers)
        finally:
            pool.shutdown()
    else:
        status, nodes, _, best = _run_tree(r, k, n, budget, None, 1)
    if status == _REACHED_CAP:
        return WitnessResult(Coloring(r, best), False, nodes)
    if status == _TREE_DONE:
        return WitnessResult(None, False, nodes)
    return WitnessResult(None, True, nodes)


def compute_w(
    r: int,
    k: int,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    max_n: int | None = None,
) -> SearchOutcome:
    """Compute W(r, k): the least N whose every r-coloring contains a
    monochromatic k-term progression.

    One lexicographic walk of the pruned tree scans N upward from the
    trivial lower bound: witness existence is monotone, the first path
    reaching depth N is the lex-least witness for [1, N], and exhausting
    the tree pins W = max_depth + 1, with the witness for W - 1 as a
    byproduct. k = 1 and k = 2 use closed forms (W = 1 and W = r + 1 by
    pigeonhole). If ``max_n`` (or the module depth cap) is reached the
    outcome reports exhaustion: only W > max_n is known. Not reentrant
    while a multi-process walk is live; every other entry point here is
    pure.
    """
    if r < 2:
        raise ValueError(f"r must be >= 2, got {r}")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if budget <= 0:
        raise ValueError(f"budget must be > 0, got {budget}")
    if max_n is not None and max_n < 1:
        raise ValueError(f"max_n must be >= 1, got {max_n}")
    start = time.perf_counter()
    if k == 1:
        return SearchOutcome(r, k, 1, Coloring(r, ()), 0, False, time.perf_counter() - start)
    if k == 2:
        witness = Coloring(r, tuple(range(r)))
        return SearchOutcome(r, k, r + 1, witness, 0, False, time.perf_counter() - start)

    cap = max_n if max_n is not None else DEPTH_CAP
    pool = _SearchPool(workers) if workers > 1 else None
    try:
        status, nodes, max_depth, best = _run_tree(r, k, cap, budget, pool, workers)
    finally:
        if pool is not None:
            pool.shutdown()
    elapsed = time.perf_counter() - start
    if status == _TREE_DONE:
        witness = Coloring(r, best)
        if witness.n_points != max_depth or _seq_has_mono_ap(best, k):
            raise RuntimeError("search produced a witness the naive checker rejects")
        return SearchOutcome(r, k, max_depth + 1, witness, nodes, False, elapsed)
    # REACHED_CAP: a witness of length cap exists, so only W > cap is
    # known; EXHAUSTED: the node budget ran out. Both are budget outcomes.
    return SearchOutcome(r, k, None, None, nodes, True, elapsed)
