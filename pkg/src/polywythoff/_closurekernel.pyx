# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled closure kernels.

Same contract as polywythoff._closure_py: BFS over products element*generator,
insertion-order output, (parent, generator) production per element, None on
cap overflow. Elements are flattened int tuples; the hot loop works on C
arrays and only boxes a tuple when a new element is actually inserted.
"""

from libc.stdlib cimport free, malloc


def close_perms(list gens, long cap):
    cdef int deg = len(gens[0])
    cdef int ngens = len(gens)
    cdef int i, gi, k
    cdef long ei
    cdef int *garr = <int *> malloc(ngens * deg * sizeof(int))
    cdef int *buf = <int *> malloc(deg * sizeof(int))
    if garr == NULL or buf == NULL:
        raise MemoryError()
    try:
        for gi in range(ngens):
            g = gens[gi]
            for k in range(deg):
                garr[gi * deg + k] = g[k]
        identity = tuple(range(1, deg + 1))
        elements = [identity]
        prods = [(-1, -1)]
        index = {identity: 0}
        frontier = [identity]
        while frontier:
            new_frontier = []
            for e in frontier:
                ei = <long> index[e]
                for k in range(deg):
                    buf[k] = e[k]
                for gi in range(ngens):
                    prod = tuple([garr[gi * deg + buf[k] - 1] for k in range(deg)])
                    if prod not in index:
                        if len(elements) >= cap:
                            return None
                        index[prod] = len(elements)
                        elements.append(prod)
                        prods.append((ei, gi))
                        new_frontier.append(prod)
            frontier = new_frontier
        return elements, prods
    finally:
        free(garr)
        free(buf)


def close_mats(list gens, int dim, long p, long cap):
    cdef int ngens = len(gens)
    cdef int sz = dim * dim
    cdef int i, j, k, gi
    cdef long ei, acc
    cdef long *garr = <long *> malloc(ngens * sz * sizeof(long))
    cdef long *buf = <long *> malloc(sz * sizeof(long))
    cdef long *out = <long *> malloc(sz * sizeof(long))
    if garr == NULL or buf == NULL or out == NULL:
        raise MemoryError()
    try:
        for gi in range(ngens):
            g = gens[gi]
            for k in range(sz):
                garr[gi * sz + k] = g[k]
        identity = tuple(1 if i == j else 0 for i in range(dim) for j in range(dim))
        elements = [identity]
        prods = [(-1, -1)]
        index = {identity: 0}
        frontier = [identity]
        while frontier:
            new_frontier = []
            for e in frontier:
                ei = <long> index[e]
                for k in range(sz):
                    buf[k] = e[k]
                for gi in range(ngens):
                    for i in range(dim):
                        for j in range(dim):
                            acc = 0
                            for k in range(dim):
                                acc += buf[i * dim + k] * garr[gi * sz + k * dim + j]
                            out[i * dim + j] = acc % p
                    prod = tuple([out[k] for k in range(sz)])
                    if prod not in index:
                        if len(elements) >= cap:
                            return None
                        index[prod] = len(elements)
                        elements.append(prod)
                        prods.append((ei, gi))
                        new_frontier.append(prod)
            frontier = new_frontier
        return elements, prods
    finally:
        free(garr)
        free(buf)
        free(out)
