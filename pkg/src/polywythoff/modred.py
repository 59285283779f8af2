"""Crystallographic tail-triangle Coxeter groups reduced modulo a prime.

Pipeline: validate the diagram (label set + triangle circuit parity), build
an integral reflection system from user-supplied squared lengths, reduce the
generator matrices mod p, and hand the finite matrix group to the usual
tail-triangle machinery.  All arithmetic is exact — cosines enter only via
the integer identity 4cos^2(pi/m) in {0, 1, 2, 3, 4}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .elements import MatModP
from .groups import closure, closure_cap
from .ttgroup import (
    INF,
    TailTriangleDiagram,
    TailTriangleGroup,
    check_intersection_reduced,
    gen_name,
    verify_tail_triangle,
)

# 4cos^2(pi/m) for the crystallographic labels
_COS2 = {2: 0, 3: 1, 4: 2, 6: 3, INF: 4}


class NonIntegralSystem(ValueError):
    """The requested squared lengths do not yield integer structure constants."""

    def __init__(self, i, j, n):
        self.pair = (gen_name(i, n), gen_name(j, n))
        super().__init__(f"non-integral constant for pair {self.pair}")


class IntersectionFailure(ValueError):
    """The reduced group is not a tail-triangle C-group."""

    def __init__(self, result):
        self.result = result
        super().__init__(f"intersection condition failed: {result.witness}")


@dataclass(frozen=True)
class CrystallographicResult:
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


def is_crystallographic(d: TailTriangleDiagram) -> CrystallographicResult:
    """Label set in {2,3,4,6,inf}; if the triangle closes into a circuit,
    it must carry zero or two 4-labels and zero or two 6-labels."""
    m = d.n + 1
    for i in range(m):
        for j in range(i + 1, m):
            lab = d.label(i, j)
            if lab not in _COS2:
                return CrystallographicResult(
                    False, f"label {lab} on ({gen_name(i, d.n)},{gen_name(j, d.n)})"
                )
    if d.n >= 2:
        circuit = d.triangle
        if all(lab >= 3 for lab in circuit):
            for bad in (4, 6):
                if sum(1 for lab in circuit if lab == bad) == 1:
                    return CrystallographicResult(
                        False, f"triangle circuit has exactly one {bad}-label"
                    )
    return CrystallographicResult(True)


def _integer_sqrt(x: Fraction):
    """Exact integer square root of a rational, or None."""
    if x.denominator != 1 or x < 0:
        return None
    r = isqrt(x.numerator)
    return r if r * r == x.numerator else None


@dataclass(frozen=True)
class IntegralReflectionSystem:
    diagram: TailTriangleDiagram
    squared_lengths: tuple  # of Fraction, one per basis vector
    l: tuple  # integer structure constants, l[i][i] = -2
    matrices: tuple  # integer reflection matrices, row tuples
    gram: tuple  # rational Gram matrix of the basic system

    @property
    def dim(self):
        return self.diagram.n + 1


def rescale(d: TailTriangleDiagram, squared_lengths) -> IntegralReflectionSystem:
    cryst = is_crystallographic(d)
    if not cryst:
        raise ValueError(f"not crystallographic: {cryst.reason}")
    s = tuple(Fraction(x) for x in squared_lengths)
    m = d.n + 1
    if len(s) != m or any(x <= 0 for x in s):
        raise ValueError(f"need {m} positive squared lengths")

    l = [[0] * m for _ in range(m)]
    for i in range(m):
        l[i][i] = -2
        for j in range(m):
            if i == j:
                continue
            c = _COS2[d.label(i, j)]
            # l[i][j] * l[j][i] = c and l[i][j] / l[j][i] = s[j] / s[i]
            val = _integer_sqrt(c * s[j] / s[i])
            if val is None:
                raise NonIntegralSystem(i, j, d.n)
            l[i][j] = val

    matrices = []
    for i in range(m):
        rows = [
            tuple(l[i][j] + (1 if i == j else 0) for j in range(m)) if r == i
            else tuple(1 if r == j else 0 for j in range(m))
            for r in range(m)
        ]
        matrices.append(tuple(rows))
    gram = tuple(
        tuple(2 * s[i] if i == j else -l[i][j] * s[i] for j in range(m))
        for i in range(m)
    )

    sys_ = IntegralReflectionSystem(d, s, tuple(map(tuple, l)), tuple(matrices), gram)
    for M in sys_.matrices:
        assert _mat_mul(M, M) == _identity(m), "reflection is not an involution"
        assert _mat_mul(_transpose(M), _mat_mul(gram, M)) == gram, "form not preserved"
    return sys_


def _identity(m):
    return tuple(tuple(1 if i == j else 0 for j in range(m)) for i in range(m))


def _transpose(M):
    return tuple(zip(*M))


def _mat_mul(A, B):
    cols = _transpose(B)
    return tuple(
        tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in A
    )


def _det(M):
    M = [list(row) for row in M]
    m, sign, det = len(M), 1, Fraction(1)
    for c in range(m):
        piv = next((r for r in range(c, m) if M[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            sign = -sign
        det *= M[c][c]
        inv = Fraction(1, 1) / M[c][c]
        for r in range(c + 1, m):
            f = M[r][c] * inv
            if f:
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return sign * det


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    for q in range(2, isqrt(p) + 1):
        if p % q == 0:
            return False
    return True


@dataclass(frozen=True)
class ModPGroupSpec:
    p: int
    diagram: TailTriangleDiagram
    generators: tuple  # MatModP, alpha matrices then the beta matrix last
    gram_mod_p: tuple
    det_mod_p: int
    disc_class: str  # "zero", "square" or "nonsquare" (mod squares)

    @property
    def singular(self):
        return self.det_mod_p == 0


def reduce_mod_p(sys_: IntegralReflectionSystem, p: int) -> ModPGroupSpec:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    m = sys_.dim

    # clear Gram denominators; a unit scale factor keeps invariance intact
    den = 1
    for row in sys_.gram:
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)
    if den % p == 0:
        raise ValueError("squared-length denominators collide with p")
    gram_int = tuple(tuple(int(x * den) % p for x in row) for row in sys_.gram)

    gens = tuple(
        MatModP(p, m, tuple(x % p for row in M for x in row)) for M in sys_.matrices
    )
    ident = MatModP(p, m, tuple(int(i == j) for i in range(m) for j in range(m)))
    for M in gens:
        if M * M != ident:
            raise ValueError("reduced generator is not an involution")
    for M in sys_.matrices:
        lhs = _mat_mul(_transpose(M), _mat_mul(gram_int, M))
        if tuple(tuple(x % p for x in row) for row in lhs) != gram_int:
            raise ValueError("reduced form not preserved")

    det = int(_det(gram_int)) % p
    if det == 0:
        cls = "zero"
    elif p == 2:
        cls = "square"
    else:
        cls = "square" if pow(det, (p - 1) // 2, p) == 1 else "nonsquare"
    return ModPGroupSpec(p, sys_.diagram, gens, gram_int, det, cls)


def _ringing_gens(spec: ModPGroupSpec, ringing: int):
    n = spec.diagram.n
    r, s = spec.generators[:n], spec.generators[n]
    if ringing == 1:
        return list(r), s
    if n != 3:
        raise ValueError("ringings 2 and 3 require the rank-3 star diagram")
    if ringing == 2:
        return [r[2], r[1], r[0]], s
    if ringing == 3:
        return [s, r[1], r[0]], r[2]
    raise ValueError("ringing must be 1, 2 or 3")


def build_tail_triangle_modp(
    spec: ModPGroupSpec, ringing: int = 1, cap: int | None = None
) -> TailTriangleGroup:
    """Measure the actual pair orders in G^p and certify the C-group axioms.

    Labels are *not* copied from the real diagram — they can shrink under
    reduction (an infinite branch typically drops to a small finite order).
    """
    alphas, beta = _ringing_gens(spec, ringing)
    G = verify_tail_triangle(alphas, beta, cap=closure_cap(cap))
    res = check_intersection_reduced(G)
    if not res.ok:
        raise IntersectionFailure(res)
    return G


@dataclass(frozen=True)
class RingingReport:
    groups: tuple  # TailTriangleGroup per ringing
    posets: tuple  # FacePoset per ringing
    isomorphic: dict  # (i, j) -> bool for 1 <= i < j <= 3


def three_ringings(spec: ModPGroupSpec, cap: int | None = None) -> RingingReport:
    from .wythoff import build_polytope, poset_isomorphic

    if spec.diagram.n != 3 or spec.diagram.tail != (spec.diagram.tail[0],):
        raise ValueError("three ringings require the rank-3 star diagram")
    groups, posets = [], []
    for r in (1, 2, 3):
        G = build_tail_triangle_modp(spec, ringing=r, cap=cap)
        groups.append(G)
        posets.append(build_polytope(G))
    iso = {
        (i + 1, j + 1): poset_isomorphic(posets[i], posets[j]) is not None
        for i in range(3)
        for j in range(i + 1, 3)
    }
    return RingingReport(tuple(groups), tuple(posets), iso)


def search_lengths(d: TailTriangleDiagram, values=(1, 2, 3, 4, 6)):
    """All squared-length tuples over ``values`` giving an integral system.

    Tuples that are scalar multiples of an earlier hit are dropped — the
    structure constants depend only on length ratios.
    """
    from itertools import product

    found = []
    seen_ratios = set()
    for combo in product(values, repeat=d.n + 1):
        ratio = tuple(Fraction(x, combo[0]) for x in combo)
        if ratio in seen_ratios:
            continue
        try:
            rescale(d, combo)
        except NonIntegralSystem:
            continue
        seen_ratios.add(ratio)
        found.append(combo)
    return found


def group_order_modp(spec: ModPGroupSpec, cap: int | None = None) -> int:
    """Order of G^p by brute-force closure of the reduced generators."""
    return closure(list(spec.generators), cap=closure_cap(cap)).order


def form_radical(spec: ModPGroupSpec):
    """Basis (row vectors) of the radical of the reduced Gram form."""
    p, m = spec.p, len(spec.gram_mod_p)
    rows = [list(r) for r in spec.gram_mod_p]
    basis = [[int(i == j) for j in range(m)] for i in range(m)]
    # column-reduce the Gram matrix while tracking the change of basis
    rank = 0
    for c in range(m):
        piv = next((r for r in range(rank, m) if rows[r][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        basis[rank], basis[piv] = basis[piv], basis[rank]
        inv = pow(rows[rank][c], -1, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        basis[rank] = [x * inv % p for x in basis[rank]]
        for r in range(m):
            if r != rank and rows[r][c]:
                f = rows[r][c]
                rows[r] = [(x - f * y) % p for x, y in zip(rows[r], rows[rank])]
                basis[r] = [(x - f * y) % p for x, y in zip(basis[r], basis[rank])]
        rank += 1
    return [tuple(v) for v in basis[rank:]]
