# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled inner loops; semantics identical to aal._pykernels."""

from libc.stdlib cimport free, malloc


cdef int* _carray(object seq, Py_ssize_t size) except NULL:
    cdef int* out = <int*> malloc(max(size, 1) * sizeof(int))
    if out == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(size):
        out[i] = seq[i]
    return out


def fusion_violation(int n, fuse, meet, neg, int e):
    """Index into FUSION_LAWS of the first violated law, or -1."""
    cdef int* F = _carray(fuse, n * n)
    cdef int* M = _carray(meet, n * n)
    cdef int* N = _carray(neg, n)
    cdef int x, y, z, lhs, rhs
    try:
        for x in range(n):
            if F[e * n + x] != x:
                return 0
        for x in range(n):
            for y in range(n):
                if F[x * n + y] != F[y * n + x]:
                    return 1
        for x in range(n):
            if M[x * n + F[x * n + x]] != x:
                return 2
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    if F[x * n + F[y * n + z]] != F[F[x * n + y] * n + z]:
                        return 3
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    lhs = M[F[x * n + y] * n + z] == F[x * n + y]
                    rhs = M[F[x * n + N[z]] * n + N[y]] == F[x * n + N[z]]
                    if lhs != rhs:
                        return 4
        return -1
    finally:
        free(F)
        free(M)
        free(N)


cdef int _find(int* parent, int x) nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def closure_labels(int n, trans, pairs):
    """Union-find closure of ``pairs`` under the flat translation rows."""
    cdef Py_ssize_t m = len(trans) // n if n else 0
    cdef Py_ssize_t k = len(pairs)
    cdef int* T = _carray(trans, m * n)
    cdef int* parent = <int*> malloc(n * sizeof(int))
    cdef int* stack = <int*> malloc(2 * (n + k + 1) * sizeof(int))
    cdef int top = 0, i, u, v, x, y, rx, ry
    cdef Py_ssize_t t
    try:
        for i in range(n):
            parent[i] = i
        for i in range(k):
            u, v = pairs[i]
            rx, ry = _find(parent, u), _find(parent, v)
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)
                stack[top] = u
                stack[top + 1] = v
                top += 2
        while top:
            top -= 2
            u = stack[top]
            v = stack[top + 1]
            for t in range(m):
                x = T[t * n + u]
                y = T[t * n + v]
                rx, ry = _find(parent, x), _find(parent, y)
                if rx != ry:
                    parent[max(rx, ry)] = min(rx, ry)
                    stack[top] = x
                    stack[top + 1] = y
                    top += 2
        return [_find(parent, i) for i in range(n)]
    finally:
        free(T)
        free(parent)
        free(stack)


def refine_labels(int n, trans, labels):
    """Coarsest refinement of ``labels`` stable under every translation row."""
    cdef Py_ssize_t m = len(trans) // n if n else 0
    cdef int* T = _carray(trans, m * n)
    cdef Py_ssize_t t
    cdef int x
    cur = list(labels)
    try:
        while True:
            keys = []
            for x in range(n):
                key = [cur[x]]
                for t in range(m):
                    key.append(cur[T[t * n + x]])
                keys.append(tuple(key))
            renumber = {}
            new = [renumber.setdefault(key, len(renumber)) for key in keys]
            if len(renumber) == len(set(cur)):
                return cur
            cur = new
    finally:
        free(T)
