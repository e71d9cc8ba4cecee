"""
Bounded multiplicity search, pure Python.

Find ``t[g]`` with ``0 <= t[g] <= sizes[g]`` and ``sum(t[g] * vectors[g]) == target``.
Vector entries are in {-1, 0, 1}.  Depth-first over groups, multiplicities tried
in increasing order; the first solution in that order is returned, so every
backend must explore in exactly this order.
"""
from __future__ import annotations

from .errors import ResourceLimitError


def suffix_bounds(vectors, sizes, dim):
    """Per level g, componentwise [lo, hi] reachable by groups g.. (inclusive)."""
    G = len(vectors)
    lo = [[0] * dim for _ in range(G + 1)]
    hi = [[0] * dim for _ in range(G + 1)]
    for g in range(G - 1, -1, -1):
        v, s = vectors[g], sizes[g]
        for m in range(dim):
            x = v[m] * s
            lo[g][m] = lo[g + 1][m] + min(0, x)
            hi[g][m] = hi[g + 1][m] + max(0, x)
    return lo, hi


def _t_range(v, size, R, lo, hi):
    # multiplicities t keeping R - t*v inside [lo, hi]
    tlo, thi = 0, size
    for m, vm in enumerate(v):
        if vm == 0:
            if R[m] < lo[m] or R[m] > hi[m]:
                return 1, 0
        elif vm > 0:
            tlo = max(tlo, R[m] - hi[m])
            thi = min(thi, R[m] - lo[m])
        else:
            tlo = max(tlo, lo[m] - R[m])
            thi = min(thi, hi[m] - R[m])
    return tlo, thi


def search(vectors, sizes, target, max_states=10**7):
    """Return the list of multiplicities, or None when no choice reaches ``target``."""
    dim = len(target)
    G = len(vectors)
    target = tuple(target)
    if G == 0:
        return [] if not any(target) else None
    lo, hi = suffix_bounds(vectors, sizes, dim)
    if any(not lo[0][m] <= target[m] <= hi[0][m] for m in range(dim)):
        return None

    failed = set()
    states = 1
    tlo, thi = _t_range(vectors[0], sizes[0], target, lo[1], hi[1])
    # frame: [residual, next t, last t]
    stack = [[target, tlo, thi]]
    while stack:
        g = len(stack) - 1
        frame = stack[-1]
        R, t, thi = frame
        if t > thi:
            failed.add((g, R))
            stack.pop()
            if stack:
                stack[-1][1] += 1
            continue
        v = vectors[g]
        R2 = tuple(R[m] - t * v[m] for m in range(dim))
        if g + 1 == G:
            return [f[1] for f in stack]
        if (g + 1, R2) in failed:
            frame[1] += 1
            continue
        states += 1
        if states > max_states:
            raise ResourceLimitError(f"feasibility search exceeded {max_states} states")
        tlo2, thi2 = _t_range(vectors[g + 1], sizes[g + 1], R2, lo[g + 2], hi[g + 2])
        stack.append([R2, tlo2, thi2])
    return None
