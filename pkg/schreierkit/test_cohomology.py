"""
Tests for H², realizations, Baer sums and section-induced actions
"""

import pytest

from schreierkit.core.cohomology import (
    baer_inverse, baer_sum, cocycles, h2, inner_factor_sets, realize, section_action,
    unit_preserving_sections,
)
from schreierkit.core.extension import diagram_from_maps, find_extension_isomorphism
from schreierkit.core.isomorphism import is_isomorphic
from schreierkit.core.oracle import catalog_upto
from schreierkit.core.relaxed import Relaxation, RelaxedAction, enumerate_relaxed_actions
from schreierkit.core.standard import cyclic_group, klein_four, two, w3
from schreierkit.core.strict import (
    Action, FactorSystem, crossed_product, enumerate_actions, semidirect, trivial_action,
)
from schreierkit.errors import ActionsDiffer, KernelNotAbelianGroup, NotSchreier

Z2 = cyclic_group(2)
Z3 = cyclic_group(3)


def z4_extension():
    return crossed_product(FactorSystem(trivial_action(Z2, Z2), [[0, 0], [0, 1]]))


def klein_extension():
    return crossed_product(FactorSystem(trivial_action(Z2, Z2), [[0, 0], [0, 0]]))


def w3_extension():
    return diagram_from_maps(Z2, w3(), two(), [0, 1], [0, 0, 1], [0, 2])


def w3_relaxed_action():
    return RelaxedAction(Relaxation.from_labels(two(), Z2, [[0, 1], [0, 0]]), [[0, 1], [0, 0]])


# ============================================================
# H²
# ============================================================

def test_h2_of_z2_by_z2():
    result = h2(trivial_action(Z2, Z2))
    assert result.cocycle_count == 2
    assert result.coboundary_count == 1
    assert result.h2_order == 2
    assert result.h2_classes[0] == ((0, 0), (0, 0))
    assert is_isomorphic(result.group(), Z2)


def test_h2_realizations_are_klein_and_z4():
    action = trivial_action(Z2, Z2)
    result = h2(action)
    groups = [realize(action, chi).G for chi in result.h2_classes]
    assert is_isomorphic(groups[0], klein_four())
    assert is_isomorphic(groups[1], cyclic_group(4))


def test_h2_vanishes_for_coprime_orders():
    result = h2(trivial_action(Z2, Z3))
    assert result.cocycle_count == 3
    assert result.coboundary_count == 3
    assert result.h2_order == 1


def test_cocycles_contain_inner_factor_sets():
    action = trivial_action(Z2, Z3)
    Z = cocycles(action)
    for b in inner_factor_sets(action):
        assert b in Z


def test_classify_cocycle():
    result = h2(trivial_action(Z2, Z2))
    assert result.classify_cocycle(((0, 0), (0, 1))) == 1
    assert result.to_dict()["h2_order"] == 2


def test_relaxed_h2_of_w3():
    result = h2(w3_relaxed_action())
    assert result.cocycle_count == 1
    assert result.coboundary_count == 1
    assert result.h2_order == 1
    assert is_isomorphic(realize(w3_relaxed_action(), result.h2_classes[0]).G, w3())


def test_h2_needs_an_abelian_group_kernel():
    with pytest.raises(KernelNotAbelianGroup):
        h2(trivial_action(Z2, two()))


# ============================================================
# BAER SUM
# ============================================================

def test_baer_sum_adds_classes():
    z4, klein = z4_extension(), klein_extension()
    assert is_isomorphic(baer_sum(z4, z4).G, klein_four())
    assert is_isomorphic(baer_sum(klein, z4).G, cyclic_group(4))
    assert find_extension_isomorphism(baer_sum(klein, klein), klein) is not None


def test_baer_sum_is_associative_on_classes():
    z4, klein = z4_extension(), klein_extension()
    left = baer_sum(baer_sum(z4, z4), z4)
    right = baer_sum(z4, baer_sum(z4, z4))
    assert find_extension_isomorphism(left, right) is not None
    assert find_extension_isomorphism(left, baer_sum(klein, z4)) is not None


def test_baer_inverse():
    z4 = z4_extension()
    inv = baer_inverse(z4)
    assert is_isomorphic(inv.G, cyclic_group(4))
    assert is_isomorphic(baer_sum(z4, inv).G, klein_four())


def test_baer_sum_of_weakly_schreier_extensions():
    d = w3_extension().without_splitting()
    assert is_isomorphic(baer_sum(d, d).G, w3())


def test_baer_sum_needs_matching_actions():
    inversion = Action(Z2, Z3, [[0, 1, 2], [0, 2, 1]])
    with pytest.raises(ActionsDiffer):
        baer_sum(semidirect(trivial_action(Z2, Z3)), semidirect(inversion))


@pytest.mark.slow
def test_baer_sum_is_commutative_with_the_trivial_class_as_unit():
    settings = [a for N in (Z2, Z3) for catalog in catalog_upto(2) for H in catalog
                for a in enumerate_actions(H, N)]
    settings += list(enumerate_relaxed_actions(two(), Z2))
    for setting in settings:
        result = h2(setting)
        ds = [realize(setting, chi) for chi in result.h2_classes]
        for i, d1 in enumerate(ds):
            assert find_extension_isomorphism(baer_sum(ds[0], d1), d1) is not None
            for d2 in ds[i + 1:]:
                assert find_extension_isomorphism(baer_sum(d1, d2), baer_sum(d2, d1)) is not None


# ============================================================
# SECTIONS
# ============================================================

def test_unit_preserving_sections():
    assert list(unit_preserving_sections(w3_extension())) == [(0, 2)]
    zero = semidirect(Action(two(), Z2, [[0, 1], [0, 0]]))
    assert len(list(unit_preserving_sections(zero))) == 2


def test_every_section_of_a_schreier_extension_gives_the_action():
    action = Action(two(), Z2, [[0, 1], [0, 0]])
    d = semidirect(action)
    for section in unit_preserving_sections(d):
        assert section_action(d, section) == action


def test_section_action_on_weakly_schreier_extension():
    d = w3_extension()
    with pytest.raises(NotSchreier):
        section_action(d, (0, 2))
    assert section_action(d, (0, 2), relaxed=True) == w3_relaxed_action()
