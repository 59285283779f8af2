import random

import pytest

from polywythoff.fixtureio import builtin_fixture
from polywythoff.oracles import dihedral_tt_gens, polygon_poset, toroid_44
from polywythoff.ttgroup import verify_tail_triangle
from polywythoff.wythoff import (
    Face,
    FacePoset,
    UnverifiedGroup,
    build_polytope,
    build_regular,
    classify,
    export_hasse,
    facet_section,
    flag_orbits,
    poset_isomorphic,
    two_sections,
    verify_diamond,
    verify_facet_sections,
    verify_strong_connectivity,
    verify_vertex_figure,
    vertex_figure,
    vertex_transitive,
)


def build(name):
    fx = builtin_fixture(name)
    G = verify_tail_triangle(fx.alphas, fx.beta)
    return G, build_polytope(G)


@pytest.fixture(scope="module")
def tomotope():
    return build("tomotope.tt")


def test_tomotope_f_vector(tomotope):
    G, P = tomotope
    assert P.f_vector() == (4, 12, 16, 8)
    assert P.facet_split() == (4, 4)
    assert P.f_vector_str() == "(4, 12, 16, 4+4)"


def test_tomotope_axioms(tomotope):
    _, P = tomotope
    ok, witness = verify_diamond(P)
    assert ok, witness
    assert verify_strong_connectivity(P)


def test_tomotope_sections_alternate(tomotope):
    _, P = tomotope
    secs = two_sections(P)
    assert len(secs) == 12  # one per edge
    assert all(s.is_polygon and s.size == 4 and s.alternating for s in secs)


def test_tomotope_flags_and_class(tomotope):
    G, P = tomotope
    orbits, flags, free = flag_orbits(P, G)
    assert (orbits, flags, free) == (2, 192, True)
    c = classify(P, G)
    assert c.kind == "TwoOrbit" and c.aut_order == 96


def test_tomotope_facet_sections(tomotope):
    G, P = tomotope
    tet = next(f for f in P.faces(3) if f.kind == "P")
    hemi = next(f for f in P.faces(3) if f.kind == "Q")
    assert facet_section(P, tet).f_vector() == (4, 6, 4)
    assert facet_section(P, hemi).f_vector() == (3, 6, 4)
    assert verify_facet_sections(P, G)
    # tetrahedron vs hemioctahedron: different f-vectors, not isomorphic
    assert poset_isomorphic(facet_section(P, tet), facet_section(P, hemi)) is None


def test_tomotope_vertex_figure(tomotope):
    G, P = tomotope
    assert verify_vertex_figure(P, G)
    vf = vertex_figure(P, P.faces(0)[0])
    assert len(vf.faces(0)) == 6  # vertex degree 6: 24 incidences over 4 vertices


def test_facet_kinds_never_equal_or_incident(tomotope):
    _, P = tomotope
    tops = P.faces(3)
    reps_p = {f.rep for f in tops if f.kind == "P"}
    reps_q = {f.rep for f in tops if f.kind == "Q"}
    # faces are distinguished by kind even where coset reps collide
    assert all(f.kind in ("P", "Q") for f in tops)
    for f in tops:
        assert all(g.kind in ("G_2",) for g in P.down[f])
    # distinct ranks never compare equal
    assert len({(f.rank, f.kind, f.rep) for f in P.all_faces()}) == sum(
        len(P.faces(r)) for r in P.faces_by_rank
    )
    assert len(reps_p) == len(reps_q) == 4


def test_common_representative_exists_on_flags(tomotope):
    # constructive check: each flag's cosets share a common group element
    G, P = tomotope
    rng = random.Random(3)
    flags = P.flags()
    for fl in rng.sample(flags, 20):
        assert any(
            all(P.rep_maps[f.kind][e] == f.rep for f in fl)
            for e in G.group.elements
        )


def test_ridge_covers_exactly_p_and_q(tomotope):
    _, P = tomotope
    for ridge in P.faces(2):
        kinds = sorted(f.kind for f in P.up[ridge])
        assert kinds == ["P", "Q"]


def test_vertex_transitivity(tomotope):
    G, P = tomotope
    assert vertex_transitive(P, G)


def test_m66_240a_truncation():
    G, P = build("m66_240a.tt")
    assert P.f_vector_str() == "(60, 120, 20+20)"
    orbits, flags, free = flag_orbits(P, G)
    assert flags == 480 and orbits == 2 and free
    c = classify(P, G)
    assert c.kind == "TwoOrbit" and c.aut_order == 240
    # both facet kinds are hexagons
    for kind in ("P", "Q"):
        f = next(x for x in P.faces(2) if x.kind == kind)
        assert poset_isomorphic(facet_section(P, f), polygon_poset(6))


def test_b3_digon():
    G, P = build("b3_digon.tt")
    assert P.f_vector_str() == "(8, 24, 6+12)"
    sq = next(f for f in P.faces(2) if f.kind == "P")
    dg = next(f for f in P.faces(2) if f.kind == "Q")
    assert poset_isomorphic(facet_section(P, sq), polygon_poset(4))
    assert poset_isomorphic(facet_section(P, dg), polygon_poset(2))
    secs = two_sections(P)
    assert all(s.size == 6 and s.is_polygon and s.alternating for s in secs)
    fv = P.f_vector()
    # |Gamma|/|Gamma_j| arithmetic
    assert fv[0] == 48 // G.gamma(0).order
    assert fv[1] == 48 // G.gamma(1).order
    assert P.facet_split() == (48 // G.gamma_P().order, 48 // G.gamma_Q().order)


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_polygon_base_case(k):
    a, b = dihedral_tt_gens(k)
    G = verify_tail_triangle([a], b)
    assert G.group.order == 2 * k
    P = build_polytope(G)
    assert P.f_vector() == (2 * k, 2 * k)
    assert P.facet_split() == (k, k)
    ok, _ = verify_diamond(P)
    assert ok and verify_strong_connectivity(P)
    assert poset_isomorphic(P, polygon_poset(2 * k))


def test_hexagon_flags():
    G, P = build("hexagon.tt")
    orbits, flags, free = flag_orbits(P, G)
    assert (orbits, flags) == (2, 12) and free


def test_d4_three_ringings_isomorphic_regular():
    fx = builtin_fixture("d4.tt")
    x, c, y, z = fx.gens
    ringings = [((x, c, y), z), ((y, c, x), z), ((z, c, x), y)]
    posets = []
    for alphas, beta in ringings:
        G = verify_tail_triangle(alphas, beta)
        P = build_polytope(G)
        assert classify(P, G).kind == "Regular"
        assert classify(P, G).aut_order == 384
        posets.append(P)
    assert poset_isomorphic(posets[0], posets[1]) is not None
    assert poset_isomorphic(posets[0], posets[2]) is not None
    assert poset_isomorphic(posets[1], posets[2]) is not None


def test_build_refuses_unverified():
    fx = builtin_fixture("sc2_fail.tt")
    G = verify_tail_triangle(fx.alphas, fx.beta)
    with pytest.raises(UnverifiedGroup):
        build_polytope(G)


def test_diamond_fails_with_one_facet_kind_deleted(tomotope):
    _, P = tomotope
    faces_by_rank = {
        r: [f for f in P.faces(r) if f.kind != "Q"] for r in P.faces_by_rank
    }
    covers = [
        (a, b)
        for a in P.up
        if a.kind != "Q"
        for b in P.up[a]
        if b.kind != "Q"
    ]
    broken = FacePoset(faces_by_rank, covers)
    ok, witness = verify_diamond(broken)
    assert not ok
    low, high, count = witness
    assert count == 1 and low.rank == 2  # a ridge saw only one facet


def test_connectivity_fails_on_disjoint_union():
    hexa = polygon_poset(6)
    bot, top = Face(-1, "bot", None), Face(2, "top", None)
    faces = {-1: [bot], 0: [], 1: [], 2: [top]}
    covers = []
    for tag in ("A", "B"):
        verts = [Face(0, "G_0", (tag, "v", i)) for i in range(6)]
        edges = [Face(1, "G_1", (tag, "e", i)) for i in range(6)]
        faces[0] += verts
        faces[1] += edges
        covers += [(bot, v) for v in verts] + [(e, top) for e in edges]
        for i in range(6):
            covers += [(verts[i], edges[i]), (verts[(i + 1) % 6], edges[i])]
    assert not verify_strong_connectivity(FacePoset(faces, covers))
    assert verify_strong_connectivity(hexa)


def test_poset_isomorphic_basics():
    tet = build_regular(builtin_fixture("tet.sg").gens)
    tet2 = build_regular(builtin_fixture("tet.sg").gens)
    assert tet.f_vector() == (4, 6, 4)
    assert poset_isomorphic(tet, tet2) is not None
    oct_ = build_regular(builtin_fixture("oct.sg").gens)
    assert oct_.f_vector() == (6, 12, 8)
    assert poset_isomorphic(tet, oct_) is None


def test_toroid_44_oracle():
    t = toroid_44(2)
    assert t.f_vector() == (4, 8, 4)
    assert len(t.flags()) == 32
    ok, _ = verify_diamond(t)
    assert ok and verify_strong_connectivity(t)


def test_export_hasse(tomotope):
    G, P = tomotope
    text = export_hasse(P, summary="fvec = (4, 12, 16, 4+4) flags=192 orbits=2 class=TwoOrbit")
    lines = text.splitlines()
    assert sum(1 for ln in lines if ln.startswith("face ")) == 4 + 12 + 16 + 8
    assert any(ln.startswith("cover ") for ln in lines)
    assert lines[-1].startswith("fvec = ")
    # deterministic output
    assert text == export_hasse(P, summary=lines[-1])
