from fractions import Fraction

import pytest

from polywythoff.elements import MatModP
from polywythoff.groups import closure, element_order
from polywythoff.modred import (
    IntersectionFailure,
    NonIntegralSystem,
    build_tail_triangle_modp,
    form_radical,
    group_order_modp,
    is_crystallographic,
    is_prime,
    reduce_mod_p,
    rescale,
    search_lengths,
    three_ringings,
)
from polywythoff.oracles import toroid_434_330
from polywythoff.ttgroup import (
    INF,
    NotInvolution,
    TailTriangleDiagram,
    parse_diagram,
)
from polywythoff.wythoff import (
    build_polytope,
    classify,
    poset_isomorphic,
    vertex_figure,
)

# the star diagram: tail branch 3, triangle branches 4 and inf, open bottom
STAR = parse_diagram("tail=[3] triangle=(4,inf,2)")
LENGTHS = (1, 1, 2, 4)


def star_spec(p):
    return reduce_mod_p(rescale(STAR, LENGTHS), p)


# ---------------------------------------------------------------- criterion


@pytest.mark.parametrize(
    "text,ok",
    [
        ("tail=[3] triangle=(4,inf,2)", True),  # the star diagram
        ("tail=[3] triangle=(3,3,2)", True),  # simply laced
        ("tail=[] triangle=(5,3,2)", False),  # label 5
        ("tail=[7] triangle=(3,3,2)", False),  # label 7
        ("tail=[] triangle=(4,3,3)", False),  # circuit with one 4
        ("tail=[] triangle=(4,4,3)", True),  # circuit with two 4s
        ("tail=[] triangle=(6,3,3)", False),  # circuit with one 6
        ("tail=[] triangle=(6,6,3)", True),  # circuit with two 6s
        ("tail=[] triangle=(4,3,2)", True),  # open circuit, lone 4 fine
        ("tail=[] triangle=(6,4,2)", True),  # open circuit, lone labels fine
        ("tail=[] triangle=(4,6,3)", False),  # circuit: one 4 and one 6
        ("tail=[3] triangle=(inf,inf,inf)", True),  # inf everywhere
    ],
)
def test_crystallographic_table(text, ok):
    assert bool(is_crystallographic(parse_diagram(text))) == ok


def test_crystallographic_reason_strings():
    r = is_crystallographic(parse_diagram("tail=[] triangle=(5,3,2)"))
    assert not r and "5" in r.reason
    r = is_crystallographic(parse_diagram("tail=[] triangle=(4,3,3)"))
    assert not r and "one 4" in r.reason


# ------------------------------------------------------------------ rescale


def test_rescale_star_system():
    sys_ = rescale(STAR, LENGTHS)
    assert sys_.l == ((-2, 1, 0, 0), (1, -2, 2, 4), (0, 1, -2, 0), (0, 1, 0, -2))
    assert sys_.gram == (
        (2, -1, 0, 0),
        (-1, 2, -2, -4),
        (0, -2, 4, 0),
        (0, -4, 0, 8),
    )


def test_rescale_label_product_identity():
    sys_ = rescale(STAR, LENGTHS)
    want = {2: 0, 3: 1, 4: 2, 6: 3, INF: 4}
    for i in range(4):
        for j in range(4):
            if i != j:
                assert sys_.l[i][j] * sys_.l[j][i] == want[STAR.label(i, j)]


def test_rescale_simply_laced_equal_lengths():
    d = TailTriangleDiagram(3, (3,), (3, 3, 2))
    sys_ = rescale(d, (1, 1, 1, 1))
    offdiag = {sys_.l[i][j] for i in range(4) for j in range(4) if i != j}
    assert offdiag == {0, 1}


def test_rescale_non_integral():
    with pytest.raises(NonIntegralSystem) as exc:
        rescale(STAR, (1, 1, 1, 1))
    assert exc.value.pair == ("a1", "a2")


def test_rescale_scale_invariance():
    half = tuple(Fraction(x, 2) for x in LENGTHS)
    assert rescale(STAR, half).l == rescale(STAR, LENGTHS).l


def test_rescale_rejects_non_crystallographic():
    with pytest.raises(ValueError, match="crystallographic"):
        rescale(parse_diagram("tail=[] triangle=(5,3,2)"), (1, 1, 1))


def test_search_lengths_star():
    found = search_lengths(STAR)
    assert (1, 1, 2, 4) in found
    assert all(
        tuple(Fraction(x, c[0]) for x in c) != (1, 1, 1, 1) for c in found
    )


# ------------------------------------------------------------------- reduce


def test_reduce_orders_and_discriminant():
    sys_ = rescale(STAR, LENGTHS)
    for p, order, det in [(2, 96, 0), (3, 1296, 0)]:
        spec = reduce_mod_p(sys_, p)
        assert spec.det_mod_p == det and spec.singular
        assert group_order_modp(spec) == order


def test_reduce_large_primes_match_orthogonal_orders():
    sys_ = rescale(STAR, LENGTHS)
    spec5 = reduce_mod_p(sys_, 5)
    assert not spec5.singular and spec5.disc_class == "square"
    # full orthogonal group of plus type: 2 * p^2 * (p^2-1)^2 at p=5
    assert group_order_modp(spec5) == 28800
    spec7 = reduce_mod_p(sys_, 7)
    # index-2 spinor kernel inside the plus-type group at p=7
    assert group_order_modp(spec7) == 112896


def test_reduce_rejects_bad_input():
    sys_ = rescale(STAR, LENGTHS)
    with pytest.raises(ValueError, match="prime"):
        reduce_mod_p(sys_, 6)
    third = tuple(Fraction(x, 3) for x in LENGTHS)
    with pytest.raises(ValueError, match="denominators"):
        reduce_mod_p(rescale(STAR, third), 3)


def test_is_prime():
    assert [n for n in range(2, 20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert not is_prime(1) and not is_prime(0)


# ----------------------------------------------------------------- p=2 case


def test_g2_polytope():
    G = build_tail_triangle_modp(star_spec(2))
    assert G.group.order == 96
    # the infinite branch collapses to order 4 in the reduction
    assert G.diagram.triangle == (4, 4, 2)
    assert element_order(G.alphas[1] * G.beta) == 4
    P = build_polytope(G)
    assert P.f_vector_str() == "(3, 12, 16, 4+4)"
    assert len(P.flags()) == 192
    c = classify(P, G)
    assert c.kind == "Regular" and c.aut_order == 192
    # all eight hemioctahedral facets pass through every vertex
    vf = vertex_figure(P, P.faces(0)[0])
    assert vf.f_vector() == (8, 16, 8)


def test_g2_other_length_systems_degenerate():
    # the other integral systems collapse a generator mod 2
    for lengths in search_lengths(STAR):
        if lengths == LENGTHS:
            continue
        spec = reduce_mod_p(rescale(STAR, lengths), 2)
        with pytest.raises(NotInvolution):
            build_tail_triangle_modp(spec)


# ----------------------------------------------------------------- p=3 case


@pytest.fixture(scope="module")
def ringings3():
    return three_ringings(star_spec(3))


def test_g3_three_ringings(ringings3):
    fvecs = [P.f_vector_str() for P in ringings3.posets]
    assert fvecs == [
        "(27, 162, 216, 27+54)",
        "(54, 162, 162, 27+27)",
        "(27, 162, 216, 54+27)",
    ]
    kinds = [classify(P, G).kind for G, P in zip(ringings3.groups, ringings3.posets)]
    assert kinds == ["TwoOrbit", "Regular", "TwoOrbit"]
    assert ringings3.isomorphic == {(1, 2): False, (1, 3): True, (2, 3): False}


def test_g3_regular_ringing_is_cubic_toroid(ringings3):
    assert poset_isomorphic(ringings3.posets[1], toroid_434_330()) is not None


def test_g3_tetrahedra_octahedra_split(ringings3):
    P = ringings3.posets[2]
    split = {}
    for f in P.faces(3):
        split.setdefault(f.kind, []).append(f)
    assert (len(split["P"]), len(split["Q"])) == (54, 27)
    from polywythoff.wythoff import facet_section

    assert facet_section(P, split["P"][0]).f_vector() == (4, 6, 4)  # tetrahedron
    assert facet_section(P, split["Q"][0]).f_vector() == (6, 12, 8)  # octahedron


def test_g3_translation_subgroup():
    spec = star_spec(3)
    rad = form_radical(spec)
    assert len(rad) == 1
    G3 = closure(list(spec.generators))
    assert G3.order == 1296
    p, m, r = 3, 4, rad[0]

    def trivial_mod_rad(g):
        for j in range(m):
            col = [(g.entries[i * m + j] - (i == j)) % p for i in range(m)]
            k = None
            for a, b in zip(col, r):
                if b == 0:
                    if a:
                        return False
                else:
                    kk = a * pow(b, -1, p) % p
                    if k is None:
                        k = kk
                    elif kk != k:
                        return False
        return True

    T = [g for g in G3.elements if trivial_mod_rad(g)]
    assert len(T) == 27 and G3.order // len(T) == 48
    Tset = set(T)
    assert all(g.inverse() * t * g in Tset for t in T for g in G3.generators)
    assert all(a * b == b * a for a in T for b in T)


# ------------------------------------------------------- failure reporting


def test_intersection_failure_reported():
    from polywythoff.fixtureio import builtin_fixture
    from polywythoff.modred import ModPGroupSpec

    fx = builtin_fixture("sc2_fail.tt")
    p = 2
    mats = tuple(
        MatModP(p, g.degree, tuple(
            int(g.apply(j + 1) == i + 1) for i in range(g.degree) for j in range(g.degree)
        ))
        for g in fx.gens
    )
    spec = ModPGroupSpec(p, TailTriangleDiagram(2, (), (3, 3, 2)), mats,
                         gram_mod_p=(), det_mod_p=1, disc_class="square")
    with pytest.raises(IntersectionFailure) as exc:
        build_tail_triangle_modp(spec)
    assert exc.value.result.witness is not None


def test_ringing_requires_star():
    spec = star_spec(3)
    with pytest.raises(ValueError):
        build_tail_triangle_modp(spec, ringing=4)
