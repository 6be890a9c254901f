"""Exact minimum-cost assignment (Hungarian method, shortest augmenting paths).

Works on Python integers so costs can carry an exact lexicographic tie-break
term on top of the real cost without any floating point rounding.
"""

from __future__ import annotations

from typing import Sequence

INF = float("inf")


def hungarian(cost: Sequence[Sequence[int]]) -> list[int]:
    """Minimum-cost perfect matching on a square matrix.

    Returns ``assign`` with ``assign[row] = col``.
    """
    n = len(cost)
    if n == 0:
        return []
    if any(len(row) != n for row in cost):
        raise ValueError("cost matrix must be square")
    u = [0] * (n + 1)
    v = [0] * (n + 1)
    p = [0] * (n + 1)  # p[col] = row, 1-based, 0 = free
    way = [0] * (n + 1)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = [INF] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = p[j0]
            row = cost[i0 - 1]
            delta, j1 = INF, 0
            ui0 = u[i0]
            for j in range(1, n + 1):
                if not used[j]:
                    cur = row[j - 1] - ui0 - v[j]
                    if cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                    if minv[j] < delta:
                        delta, j1 = minv[j], j
            for j in range(n + 1):
                if used[j]:
                    u[p[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
    assign = [0] * n
    for j in range(1, n + 1):
        assign[p[j] - 1] = j - 1
    return assign


def rectangular_assignment(cost: Sequence[Sequence[int]], n_cols: int | None = None):
    """Optimal one-to-one assignment for an ``n x m`` integer matrix.

    Exactly ``min(n, m)`` pairs are returned, sorted by row. Among optimal
    assignments the one whose per-row column vector is lexicographically
    smallest wins (an unmatched row counts as a column past the end), so the
    result is fully determined by the matrix.
    """
    n = len(cost)
    m = n_cols if n_cols is not None else (len(cost[0]) if n else 0)
    size = max(n, m)
    if size == 0:
        return []
    base = size
    scale = base ** size
    padded = []
    for i in range(size):
        weight = base ** (size - 1 - i) if i < n else 0
        row = []
        for j in range(size):
            real = cost[i][j] if i < n and j < m else 0
            row.append(real * scale + j * weight)
        padded.append(row)
    assign = hungarian(padded)
    return [(i, assign[i]) for i in range(n) if assign[i] < m]

