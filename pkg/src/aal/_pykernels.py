"""Pure-Python inner loops; the reference semantics for aal._ckernels."""

from __future__ import annotations

from typing import Sequence


def fusion_violation(n: int, fuse: Sequence[int], meet: Sequence[int], neg: Sequence[int], e: int) -> int:
    F, M, N = fuse, meet, neg
    r = range(n)
    if any(F[e * n + x] != x for x in r):
        return 0
    if any(F[x * n + y] != F[y * n + x] for x in r for y in r):
        return 1
    if any(M[x * n + F[x * n + x]] != x for x in r):
        return 2
    if any(F[x * n + F[y * n + z]] != F[F[x * n + y] * n + z] for x in r for y in r for z in r):
        return 3
    for x in r:
        for y in r:
            xy = F[x * n + y]
            for z in r:
                xnz = F[x * n + N[z]]
                if (M[xy * n + z] == xy) != (M[xnz * n + N[y]] == xnz):
                    return 4
    return -1


def closure_labels(n: int, trans: Sequence[int], pairs) -> list[int]:
    m = len(trans) // n if n else 0
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    stack = []
    for u, v in pairs:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
            stack.append((u, v))
    while stack:
        u, v = stack.pop()
        for t in range(m):
            x, y = trans[t * n + u], trans[t * n + v]
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)
                stack.append((x, y))
    return [find(x) for x in range(n)]


def refine_labels(n: int, trans: Sequence[int], labels: Sequence[int]) -> list[int]:
    m = len(trans) // n if n else 0
    cur = list(labels)
    while True:
        keys = [(cur[x],) + tuple(cur[trans[t * n + x]] for t in range(m)) for x in range(n)]
        renumber: dict[tuple, int] = {}
        new = [renumber.setdefault(k, len(renumber)) for k in keys]
        if len(renumber) == len(set(cur)):
            return cur
        cur = new
