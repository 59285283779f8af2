import pytest

from polywythoff import _closure_py, kernels
from polywythoff.fixtureio import builtin_fixture
from polywythoff.modred import reduce_mod_p, rescale
from polywythoff.ttgroup import parse_diagram

compiled = pytest.importorskip("polywythoff._closurekernel")


def test_perm_kernels_agree():
    for name in ("tomotope.tt", "m66_240a.tt", "d4.tt", "hexagon.tt"):
        gens = [g.images for g in builtin_fixture(name).gens]
        assert compiled.close_perms(gens, 10**6) == _closure_py.close_perms(gens, 10**6)


def test_mat_kernels_agree():
    sys_ = rescale(parse_diagram("tail=[3] triangle=(4,inf,2)"), (1, 1, 2, 4))
    for p in (2, 3):
        spec = reduce_mod_p(sys_, p)
        gens = [g.entries for g in spec.generators]
        dim = spec.generators[0].dim
        assert compiled.close_mats(gens, dim, p, 10**6) == _closure_py.close_mats(
            gens, dim, p, 10**6
        )


def test_kernels_cap():
    gens = [g.images for g in builtin_fixture("m66_240a.tt").gens]
    assert compiled.close_perms(gens, 100) is None
    assert _closure_py.close_perms(gens, 100) is None


def test_active_kernel_reported():
    assert kernels.KERNEL in ("compiled", "pure-python", "pure-python (forced)")
