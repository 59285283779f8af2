"""Finite group arithmetic: closures, subgroups, cosets, intersections.

Everything here is exact and deterministic. Groups remember the BFS
production of each element, which later powers homomorphism extension and
word recovery without any extra group theory.
"""

from __future__ import annotations

import os

from . import kernels
from .elements import KindMismatch, MatModP, Perm, identity_like, same_kind

DEFAULT_CAP = 10_000_000


class CapExceeded(RuntimeError):
    """Closure grew past the element cap (group too large or infinite)."""


def closure_cap(cap: int | None = None) -> int:
    if cap is not None:
        return cap
    env = os.environ.get("POLYWYTHOFF_CAP")
    return int(env) if env else DEFAULT_CAP


class FiniteGroup:
    """A concrete finite group given by generators, fully enumerated."""

    def __init__(self, generators, elements, prods):
        self.generators = tuple(generators)
        self.elements = tuple(elements)
        self.element_set = frozenset(elements)
        self.prods = tuple(prods)  # (parent_index, generator_index) per element
        self.identity = identity_like(self.generators[0])
        self._index = {e: i for i, e in enumerate(self.elements)}
        self._words: tuple | None = None

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g) -> bool:
        return g in self.element_set

    def __len__(self) -> int:
        return len(self.elements)

    def index_of(self, g) -> int:
        return self._index[g]

    def is_subgroup_of(self, other: "FiniteGroup") -> bool:
        return self.element_set <= other.element_set

    def subgroup(self, gens, cap: int | None = None) -> "FiniteGroup":
        gens = tuple(gens)
        if not all(g in self.element_set for g in gens):
            raise ValueError("subgroup generators not in parent group")
        return closure(gens, cap=cap) if gens else trivial_group(self.identity)

    def words(self) -> tuple[tuple[int, ...], ...]:
        """For each element, a generator-index word reaching it from 1."""
        if self._words is None:
            words: list[tuple[int, ...]] = [()]
            for parent, gi in self.prods[1:]:
                words.append(words[parent] + (gi,))
            self._words = tuple(words)
        return self._words


def trivial_group(identity) -> FiniteGroup:
    return FiniteGroup([identity], [identity], [(-1, -1)])


def closure(generators, cap: int | None = None) -> FiniteGroup:
    """Breadth-first closure of the generators, deterministic element order."""
    generators = tuple(generators)
    if not generators:
        raise ValueError("empty generator list")
    first = generators[0]
    if not all(same_kind(first, g) for g in generators[1:]):
        raise KindMismatch("generators of mixed kind")
    cap = closure_cap(cap)
    if isinstance(first, Perm):
        raw = kernels.close_perms([g.images for g in generators], cap)
        if raw is None:
            raise CapExceeded(f"closure exceeded cap of {cap} elements")
        elems = [Perm._raw(t) for t in raw[0]]
    elif isinstance(first, MatModP):
        raw = kernels.close_mats(
            [g.entries for g in generators], first.dim, first.p, cap
        )
        if raw is None:
            raise CapExceeded(f"closure exceeded cap of {cap} elements")
        elems = [MatModP._raw(first.p, first.dim, t) for t in raw[0]]
    else:
        raise KindMismatch(f"unknown element kind: {type(first)!r}")
    return FiniteGroup(generators, elems, raw[1])


def subgroup(parent: FiniteGroup, gens, cap: int | None = None) -> FiniteGroup:
    return parent.subgroup(gens, cap=cap)


def coset_partition(G: FiniteGroup, H: FiniteGroup):
    """Right cosets Hg of H in G.

    Returns (reps, rep_of): canonical (minimal) representative per coset in
    a deterministic order, and the element -> representative map.
    """
    if not H.is_subgroup_of(G):
        raise ValueError("H is not a subgroup of G")
    rep_of: dict = {}
    reps = []
    for g in G.elements:
        if g in rep_of:
            continue
        coset = [h * g for h in H.elements]
        rep = min(coset, key=lambda e: e.key)
        for e in coset:
            rep_of[e] = rep
        reps.append(rep)
    reps.sort(key=lambda e: e.key)
    return reps, rep_of


def right_cosets(G: FiniteGroup, H: FiniteGroup) -> list:
    return coset_partition(G, H)[0]


def intersect(H: FiniteGroup, K: FiniteGroup) -> FiniteGroup:
    """Set intersection of two subgroups of a common parent, as a group."""
    if not same_kind(H.identity, K.identity):
        raise KindMismatch("intersecting groups of different kinds")
    small, big = (H, K) if H.order <= K.order else (K, H)
    common = [e for e in small.elements if e in big.element_set]
    prods = [(-1, -1)] * len(common)
    # keep identity first for the FiniteGroup invariant
    common.remove(small.identity)
    common.insert(0, small.identity)
    return FiniteGroup(common, common, prods)


def element_order(g, cap: int | None = None) -> int:
    """Least m >= 1 with g^m = 1; raises CapExceeded past the cap."""
    cap = closure_cap(cap)
    power = g
    m = 1
    while not power.is_identity():
        power = power * g
        m += 1
        if m > cap:
            raise CapExceeded(f"element order exceeds {cap}")
    return m


def extend_homomorphism(G: FiniteGroup, images, target_identity=None):
    """Try to extend generator assignments to a homomorphism on all of G.

    ``images[i]`` is the desired image of ``G.generators[i]``. Returns the
    full element -> image dict, or None when the assignment violates some
    relation of G (detected as an inconsistency in the Cayley graph).
    """
    images = tuple(images)
    if len(images) != len(G.generators):
        raise ValueError("one image per generator required")
    if target_identity is None:
        target_identity = identity_like(images[0])
    phi: list = [None] * G.order
    phi[0] = target_identity
    # productions are topologically ordered, so parents are always filled in
    for i in range(1, G.order):
        parent, gi = G.prods[i]
        phi[i] = phi[parent] * images[gi]
    # verify the full multiplication action of each generator
    for i, e in enumerate(G.elements):
        for gi, g in enumerate(G.generators):
            j = G.index_of(e * g)
            if phi[j] != phi[i] * images[gi]:
                return None
    return {e: phi[i] for i, e in enumerate(G.elements)}
