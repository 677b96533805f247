import pytest

from dpic.catalog import builtin
from dpic.errors import InputError, InsufficientRadiusError
from dpic.translation import (SliceAutomorphism, ZV, aut_commuting_with_tau,
                              build_window, mesh_at, meshes, polarization,
                              sigma_shift, tau, tau_inv)


def test_tau_and_sigma_shift():
    v = ZV(3, "x", 5)
    assert tau(v) == ZV(2, "x", 5)
    assert tau_inv(tau(v)) == v
    assert sigma_shift(ZV(0, "x", 0)) == ZV(0, "x", 1)
    assert sigma_shift(sigma_shift(v), -1) == v
    # sigma and tau act on disjoint coordinates
    assert sigma_shift(tau(v)) == tau(sigma_shift(v))


def test_build_window_a2():
    w = build_window(builtin("@A2"), 0, 1)
    assert [str(v) for v in w.vertices] == ["(0,1)", "(0,2)", "(1,1)", "(1,2)"]
    edges = [(str(a.source), str(a.target)) for a in w.arrows]
    assert edges == [("(0,1)", "(0,2)"), ("(0,2)", "(1,1)"), ("(1,1)", "(1,2)")]


def test_build_window_a3_matches_reference_region():
    w = build_window(builtin("@A3"), 0, 1)
    edges = {(str(a.source), str(a.target)) for a in w.arrows}
    assert {("(0,1)", "(0,2)"), ("(0,2)", "(0,3)"), ("(0,2)", "(1,1)"),
            ("(0,3)", "(1,2)"), ("(1,1)", "(1,2)"), ("(1,2)", "(1,3)")} == edges


def test_build_window_omega2_single_level():
    w = build_window(builtin("@O2"), 0, 0)
    assert len(w.vertices) == 2
    assert len(w.arrows) == 2


def test_build_window_errors():
    with pytest.raises(InputError):
        build_window(builtin("@A2"), 2, 1)


def test_window_restriction_consistency():
    for tok in ["A3", "D4", "O2", "T3_2"]:
        q = builtin("@" + tok)
        big = build_window(q, -2, 4)
        small = build_window(q, 0, 2)
        big_vs = {v for v in big.vertices if 0 <= v.level <= 2}
        assert big_vs == set(small.vertices)
        big_as = {a for a in big.arrows
                  if 0 <= a.source.level and a.target.level <= 2}
        assert {a for a in small.arrows} == big_as


def test_polarization_rules():
    w = build_window(builtin("@A2"), 0, 2)
    level1 = w.arrow(1, "a1", False)
    star0 = w.arrow(0, "a1", True)
    assert polarization(w, level1) == star0
    assert polarization(w, star0) == w.arrow(0, "a1", False)
    # double application walks one mesh back
    again = polarization(w, polarization(w, level1))
    assert again == w.arrow(0, "a1", False)
    with pytest.raises(InputError):
        polarization(w, w.arrow(0, "a1", False))  # image would sit at level -1


def test_meshes_a2_a3():
    w = build_window(builtin("@A2"), 0, 1)
    m = mesh_at(w, ZV(1, "1"))
    assert m.start == ZV(0, "1")
    assert [mid.vertex for mid in m.middles] == [ZV(0, "2")]

    w3 = build_window(builtin("@A3"), 0, 1)
    m = mesh_at(w3, ZV(1, "2"))
    assert {mid.vertex for mid in m.middles} == {ZV(1, "1"), ZV(0, "3")}


def test_mesh_multiplicity_omega2():
    w = build_window(builtin("@O2"), 0, 1)
    m = mesh_at(w, ZV(1, "1"))
    assert len(m.middles) == 1
    mid = m.middles[0]
    assert mid.vertex == ZV(0, "2")
    assert len(mid.alphas) == 2 and len(mid.betas) == 2


def test_translation_axiom_on_meshes():
    # alpha and beta arrow counts agree at every middle
    for tok in ["A4", "D5", "O3", "T3_2"]:
        w = build_window(builtin("@" + tok), -1, 3)
        for m in meshes(w):
            for mid in m.middles:
                assert len(mid.alphas) == len(mid.betas)
                assert len(mid.betas) == w.multiplicity(mid.vertex, m.end)


SLICE_EXPECTATIONS = {
    # token -> (index over tau, torsion order, fractional generator count)
    "A2": (2, 1, 1),
    "A3": (2, 2, 0),
    "A4": (2, 1, 1),
    "D4": (6, 6, 0),
    "D5": (2, 2, 0),
    "E6": (2, 2, 0),
    "E7": (1, 1, 0),
    "E8": (1, 1, 0),
    "Dt4": (24, 24, 0),
    "Dt5": (8, 4, 2),
    "Dt6": (8, 8, 0),
    "Dt7": (8, 4, 2),
    "Dt8": (8, 8, 0),
    "Et6": (6, 6, 0),
    "Et7": (2, 2, 0),
    "Et8": (1, 1, 0),
    "O2": (2, 1, 1),
    "O3": (2, 1, 1),
    "T2_1": (3, 1, 1),
    "T3_2": (5, 1, 1),
    "T3_3": (12, 6, 4),
}


@pytest.mark.parametrize("tok", sorted(SLICE_EXPECTATIONS))
def test_slice_group_invariants(tok):
    group = aut_commuting_with_tau(builtin("@" + tok))
    idx, tor, frac = SLICE_EXPECTATIONS[tok]
    assert group.index_over_tau == idx
    assert group.torsion_order == tor
    assert len(group.fractional_generators()) == frac


def test_slice_reps_survive_larger_radius():
    for tok in ["A3", "D4", "Dt5", "T3_3"]:
        group = aut_commuting_with_tau(builtin("@" + tok))
        for rep in group.reps:
            assert rep.preserves_d(group.radius + 3)


def test_a2_eta_generates():
    group = aut_commuting_with_tau(builtin("@A2"))
    eta = next(c.rep for c in group.cosets if not c.rep.is_identity())
    # tau = eta^-2: the arrow-direction flip is a square root of tau^-1
    assert eta.compose(eta).tau_exponent() == -1


def test_omega_rho_formula():
    group = aut_commuting_with_tau(builtin("@O3"))
    rho = SliceAutomorphism.from_mapping(
        builtin("@O3"), {"1": ZV(0, "2"), "2": ZV(1, "1")})
    assert group.contains(rho)
    assert rho.compose(rho).tau_exponent() == -1


def test_insufficient_radius():
    with pytest.raises(InsufficientRadiusError):
        aut_commuting_with_tau(builtin("@A5"), search_radius=2)


def test_dt_odd_eta_squares_to_tau():
    for tok in ["Dt5", "Dt7"]:
        group = aut_commuting_with_tau(builtin("@" + tok))
        for eta in group.fractional_generators():
            assert eta.compose(eta).tau_exponent() == 1


def test_slice_automorphism_algebra():
    q = builtin("@A3")
    t = SliceAutomorphism.tau_element(q)
    assert t.compose(t.inverse()).is_identity()
    assert t.power(3)(ZV(0, "1")) == ZV(-3, "1")
    assert t.power(-2)(ZV(0, "2")) == ZV(2, "2")


def _brute_slice_autos(delta, radius):
    """Filter-everything oracle for the slice search: no ordering, no pruning."""
    import itertools
    from dpic.translation import multiplicity_z

    vs = delta.vertices
    n = len(vs)
    cands = [ZV(lvl, b) for lvl in range(-radius, radius + 1) for b in vs]
    found = set()
    for images in itertools.product(cands, repeat=n):
        if len({im.base for im in images}) != n:
            continue
        ok = True
        for i in range(n):
            for j in range(n):
                vi, vj = images[i], images[j]
                for k in range(-2 * radius - 2, 2 * radius + 3):
                    lhs = multiplicity_z(delta, vi, ZV(vj.level + k, vj.base))
                    rhs = delta.multiplicity(vs[i], vs[j]) if k == 0 else (
                        delta.multiplicity(vs[j], vs[i]) if k == 1 else 0)
                    if lhs != rhs:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
        if ok:
            m = min(im.level for im in images)
            found.add(tuple(ZV(im.level - m, im.base) for im in images))
    return found


@pytest.mark.parametrize("tok,radius", [("A2", 3), ("A3", 3), ("O2", 3),
                                        ("T2_1", 3)])
def test_slice_search_matches_brute_force(tok, radius):
    q = builtin("@" + tok)
    brute = _brute_slice_autos(q, radius)
    search = {tuple(r.images)
              for r in aut_commuting_with_tau(q, search_radius=radius).reps}
    assert search == brute
