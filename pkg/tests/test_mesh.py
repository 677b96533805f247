import pytest

from dpic.catalog import builtin
from dpic.errors import InputError, InsufficientWindowError
from dpic.meshcat import (hom_dim, hom_space, path_space,
                          verify_mesh_nilpotence)
from dpic.translation import ZV, build_window


@pytest.fixture(scope="module")
def wa2():
    return build_window(builtin("@A2"), -2, 4)


@pytest.fixture(scope="module")
def wa3():
    return build_window(builtin("@A3"), -2, 4)


@pytest.fixture(scope="module")
def wo2():
    return build_window(builtin("@O2"), -2, 4)


def test_path_space_examples(wa2, wa3):
    ps = path_space(wa2, ZV(0, "1"), ZV(1, "1"))
    assert ps.dimension == 1
    assert path_space(wa2, ZV(0, "1"), ZV(0, "1")).basis == ((),)
    assert path_space(wa3, ZV(0, "1"), ZV(1, "2")).dimension == 2


def test_path_space_range_error(wa2):
    with pytest.raises(InputError):
        path_space(wa2, ZV(9, "1"), ZV(0, "1"))


def test_hom_dim_examples(wa2, wo2):
    assert hom_dim(wa2, ZV(0, "1"), ZV(0, "1")) == 1
    assert hom_dim(wa2, ZV(0, "1"), ZV(1, "1")) == 0
    assert hom_dim(wa2, ZV(0, "1"), ZV(0, "2")) == 1
    assert hom_dim(wo2, ZV(0, "1"), ZV(0, "2")) == 2


def test_hom_relation_rank(wa2):
    hs = hom_space(wa2, ZV(0, "1"), ZV(1, "1"))
    assert (hs.dimension, hs.relation_rank) == (0, 1)
    assert hs.quotient_basis == ()


def test_insufficient_window_is_an_error():
    w = build_window(builtin("@A2"), 0, 1)
    with pytest.raises(InsufficientWindowError):
        hom_dim(w, ZV(0, "1"), ZV(1, "1"))


def test_hom_stability_under_enlargement():
    q = builtin("@A3")
    pairs = [(ZV(0, "1"), ZV(1, "2")), (ZV(0, "2"), ZV(2, "1")),
             (ZV(0, "1"), ZV(0, "3"))]
    small = build_window(q, -1, 3)
    for big_range in [(-2, 4), (-3, 6)]:
        big = build_window(q, *big_range)
        for v, u in pairs:
            assert hom_dim(small, v, u) == hom_dim(big, v, u)


def test_hom_tau_equivariance():
    for tok in ["A3", "D4", "O2"]:
        w = build_window(builtin("@" + tok), -3, 4)
        pairs = [(ZV(0, "1"), ZV(1, "1")), (ZV(0, "2"), ZV(2, "1")),
                 (ZV(0, "1"), ZV(0, "2"))]
        for v, u in pairs:
            shifted_v, shifted_u = ZV(v.level - 1, v.base), ZV(u.level - 1, u.base)
            assert hom_dim(w, v, u) == hom_dim(w, shifted_v, shifted_u)


def test_hom_vanishes_on_level_decreasing_pairs():
    for tok in ["A3", "D4"]:
        w = build_window(builtin("@" + tok), -2, 3)
        for x in w.delta.vertices:
            for y in w.delta.vertices:
                assert hom_dim(w, ZV(1, x), ZV(0, y)) == 0


def test_endomorphisms_are_scalars():
    for tok in ["A4", "D4", "O3"]:
        w = build_window(builtin("@" + tok), -2, 3)
        for x in w.delta.vertices:
            for lvl in (0, 1):
                assert hom_dim(w, ZV(lvl, x), ZV(lvl, x)) == 1


def test_mesh_nilpotence_reports():
    for tok in ["A3", "D4", "E6", "O2", "T3_2"]:
        rep = verify_mesh_nilpotence(build_window(builtin("@" + tok), -2, 3))
        assert rep.passed
        assert rep.checked_meshes > 0


def test_a3_single_middle_composite_is_zero():
    w = build_window(builtin("@A3"), -2, 3)
    # the composite through the unique middle of the mesh at (1,1)
    assert hom_dim(w, ZV(0, "1"), ZV(1, "1")) == 0
