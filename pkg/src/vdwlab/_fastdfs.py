"""Compiled DFS kernel. Optional: the pure-Python engine in ``search`` is
the reference implementation and the importer falls back to it when this
module cannot load.

The kernel is resumable so a driver can interleave node slices with
budget and cancellation checks: all search state lives in the arrays the
caller owns, and a call advances the walk by at most ``max_nodes``
placement attempts. Placement order, pruning, backjumping, and node
counting are identical to the reference engine, so statuses, witnesses,
and node counts agree exactly.
"""

from __future__ import annotations

import numpy as np
from numba import njit

RC_CAP = 0  # a valid path of length cap was completed
RC_DONE = 1  # the tree at or above the floor is exhausted
RC_BUDGET = 2  # max_nodes attempts consumed; call again to resume


@njit(cache=True)
def dfs_chunk(r, k, cap, floor, jf, max_nodes, colors, nxt, maxu, placed, best, state):
    """Advance the lexicographic DFS by at most max_nodes attempts.

    colors, nxt, best: int8 arrays indexed by position 1..cap; colors is
    the current path (-1 above it), best the first deepest path seen.

    maxu[p] is the largest color used among positions < p: a position may
    reuse a seen color or introduce exactly the next one, which breaks
    the full color-permutation symmetry (the lex-least witness always
    introduces colors in first-appearance order, so none is missed).

    When a position blocks on entry (every one of the r colors completes
    a progression; placed[p] still 0), each color c is excluded by the
    progression with the largest gap d(c), which lives entirely within
    positions <= p - d(c). Any extension of the path truncated at
    m = p - min_c d(c) blocks at p again, and depth p-1 was already
    attained lexicographically earlier, so the walk may unwind straight
    to m. Jumps are capped at level jf so that splitting the tree at
    that depth cannot change the walk; below-floor targets end the walk.

    state: int64[2] = (current position, best depth), updated in place.
    Returns (status, nodes_used).
    """
    pos = state[0]
    best_depth = state[1]
    span = k - 1
    nodes = 0
    status = RC_BUDGET
    while True:
        c = nxt[pos]
        limit = maxu[pos] + 2
        if limit > r:
            limit = r
        if c >= limit:
            target = pos - 1
            if limit == r and placed[pos] == 0 and pos > jf:
                # fully blocked on entry: unwind to the deepest culprit
                dmin = pos
                for cc in range(r):
                    for d in range((pos - 1) // span, 0, -1):
                        q = pos - d
                        good = True
                        for _ in range(span):
                            if colors[q] != cc:
                                good = False
                                break
                            q -= d
                        if good:
                            if d < dmin:
                                dmin = d
                            break
                    if dmin == 1:
                        break
                m = pos - dmin
                target = m if m > jf else jf
            if target < floor:
                status = RC_DONE
                break
            while pos > target + 1:
                pos -= 1
                colors[pos] = -1
            pos = target
            colors[pos] = -1
            continue
        if nodes >= max_nodes:
            break
        nxt[pos] = c + 1
        nodes += 1
        conflict = False
        if span == 2:
            for d in range(1, (pos - 1) // 2 + 1):
                if colors[pos - d] == c and colors[pos - 2 * d] == c:
                    conflict = True
                    break
        else:
            for d in range(1, (pos - 1) // span + 1):
                q = pos - d
                good = True
                for _ in range(span):
                    if colors[q] != c:
                        good = False
                        break
                    q -= d
                if good:
                    conflict = True
                    break
        if not conflict:
            colors[pos] = c
            placed[pos] = 1
            if pos > best_depth:
                best_depth = pos
                for i in range(1, pos + 1):
                    best[i] = colors[i]
            if pos == cap:
                status = RC_CAP
                break
            pos += 1
            nxt[pos] = 0
            placed[pos] = 0
            maxu[pos] = c if c > maxu[pos - 1] else maxu[pos - 1]
    state[0] = pos
    state[1] = best_depth
    return status, nodes


def make_arrays(cap: int, prefix) -> tuple:
    """Fresh kernel state with ``prefix`` placed on positions 1..len(prefix)."""
    colors = np.full(cap + 2, -1, dtype=np.int8)
    nxt = np.zeros(cap + 2, dtype=np.int8)
    maxu = np.full(cap + 2, -1, dtype=np.int8)
    placed = np.zeros(cap + 2, dtype=np.int8)
    best = np.full(cap + 2, -1, dtype=np.int8)
    for i, c in enumerate(prefix):
        colors[i + 1] = c
        best[i + 1] = c
        maxu[i + 2] = max(maxu[i + 1], c)
    state = np.array([len(prefix) + 1, len(prefix)], dtype=np.int64)
    return colors, nxt, maxu, placed, best, state
