"""Pure-Python closure kernels (fallback for the compiled extension).

Both kernels take raw tuples, return elements in deterministic BFS insertion
order together with a production record per element: (parent_index,
generator_index), where the identity (always element 0) gets (-1, -1).
Returns None when more than ``cap`` elements are found.
"""

from __future__ import annotations


def close_perms(gens: list[tuple[int, ...]], cap: int):
    deg = len(gens[0])
    identity = tuple(range(1, deg + 1))
    elements = [identity]
    prods = [(-1, -1)]
    index = {identity: 0}
    frontier = [identity]
    while frontier:
        new_frontier = []
        for e in frontier:
            ei = index[e]
            for gi, g in enumerate(gens):
                prod = tuple(g[i - 1] for i in e)
                if prod not in index:
                    if len(elements) >= cap:
                        return None
                    index[prod] = len(elements)
                    elements.append(prod)
                    prods.append((ei, gi))
                    new_frontier.append(prod)
        frontier = new_frontier
    return elements, prods


def close_mats(gens: list[tuple[int, ...]], dim: int, p: int, cap: int):
    rng = range(dim)
    identity = tuple(1 if i == j else 0 for i in rng for j in rng)
    elements = [identity]
    prods = [(-1, -1)]
    index = {identity: 0}
    frontier = [identity]
    while frontier:
        new_frontier = []
        for e in frontier:
            ei = index[e]
            rows = [e[i * dim : (i + 1) * dim] for i in rng]
            for gi, g in enumerate(gens):
                prod = tuple(
                    sum(row[k] * g[k * dim + j] for k in rng) % p
                    for row in rows
                    for j in rng
                )
                if prod not in index:
                    if len(elements) >= cap:
                        return None
                    index[prod] = len(elements)
                    elements.append(prod)
                    prods.append((ei, gi))
                    new_frontier.append(prod)
        frontier = new_frontier
    return elements, prods
