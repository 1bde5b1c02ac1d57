"""
Tests for actions, semidirect and crossed products, extraction and
γ-equivalence of Schreier factor systems
"""

import pytest

from schreierkit.core.extension import classify, diagram_from_maps, find_extension_isomorphism
from schreierkit.core.isomorphism import is_isomorphic
from schreierkit.core.oracle import catalog_upto
from schreierkit.core.standard import (
    cyclic_group, klein_four, symmetric_group, two, w3, zero_action_product,
)
from schreierkit.core.strict import (
    Action, FactorSystem, check_action, check_factor_system, check_gamma, crossed_product,
    enumerate_actions, extract_action, extract_factor_system, factor_systems_equivalent,
    reconstruction_map, semidirect, trivial_action, trivial_factor_system,
)
from schreierkit.errors import (
    ActionInvalid, BadGeneratorChoice, FactorSystemInvalid, NotSchreier, NotSchreierSplit,
)

Z2 = cyclic_group(2)
Z3 = cyclic_group(3)


def z4_factor_system():
    return FactorSystem(trivial_action(Z2, Z2), [[0, 0], [0, 1]])


def w3_extension():
    return diagram_from_maps(Z2, w3(), two(), [0, 1], [0, 0, 1], [0, 2])


# ============================================================
# ACTIONS
# ============================================================

def test_trivial_action_is_valid():
    assert check_action(Z2, Z3, trivial_action(Z2, Z3).alpha)


def test_action_must_fix_identity():
    res = check_action(Z2, Z2, [[0, 1], [1, 1]])
    assert not res
    assert res.law == "fixes_identity"
    assert res.witness == (1,)


def test_semidirect_rejects_invalid_action():
    with pytest.raises(ActionInvalid):
        semidirect(Action(Z2, Z2, [[0, 1], [1, 0]]))


def test_inversion_action_gives_s3():
    a = Action(Z2, Z3, [[0, 1, 2], [0, 2, 1]])
    d = semidirect(a)
    assert is_isomorphic(d.G, symmetric_group(3))
    assert classify(d).is_schreier_split


def test_extract_action_inverts_semidirect():
    for a in enumerate_actions(two(), Z2):
        assert extract_action(semidirect(a)) == a
    a = Action(Z2, Z3, [[0, 1, 2], [0, 2, 1]])
    assert extract_action(semidirect(a)) == a


@pytest.mark.slow
def test_extract_action_inverts_semidirect_for_every_order_3_pair():
    monoids = [M for catalog in catalog_upto(3) for M in catalog]
    for H in monoids:
        for N in monoids:
            for a in enumerate_actions(H, N):
                d = semidirect(a)
                assert classify(d).is_schreier_split
                assert extract_action(d) == a


def test_action_counts():
    assert len(list(enumerate_actions(two(), Z2))) == 2
    assert len(list(enumerate_actions(Z2, Z3))) == 2
    assert len(list(enumerate_actions(Z2, Z2))) == 1


def test_extract_action_requires_schreier_split():
    with pytest.raises(NotSchreierSplit):
        extract_action(w3_extension())


# ============================================================
# FACTOR SYSTEMS
# ============================================================

def test_crossed_products_of_z2_by_z2():
    assert is_isomorphic(crossed_product(z4_factor_system()).G, cyclic_group(4))
    trivial = trivial_factor_system(trivial_action(Z2, Z2))
    assert is_isomorphic(crossed_product(trivial).G, klein_four())


def test_normalisation_failure_is_condition_5():
    fs = FactorSystem(trivial_action(Z2, Z2), [[0, 1], [0, 0]])
    res = check_factor_system(fs)
    assert res.law == "condition_5"
    assert res.witness == (1,)
    with pytest.raises(FactorSystemInvalid) as exc:
        crossed_product(fs)
    assert "condition_5" in str(exc.value)


def test_extract_factor_system_round_trip():
    fs = z4_factor_system()
    d = crossed_product(fs)
    assert extract_factor_system(d) == fs
    assert reconstruction_map(d, {0: 0, 1: 1}) == tuple(range(4))


def test_other_generator_choice_is_equivalent():
    d = crossed_product(z4_factor_system())
    fs1 = extract_factor_system(d)
    fs2 = extract_factor_system(d, {1: 3})
    rebuilt = crossed_product(fs2)
    assert find_extension_isomorphism(d, rebuilt) is not None
    assert factor_systems_equivalent(fs1, fs2) is not None


def test_bad_generator_choices():
    d = crossed_product(z4_factor_system())
    with pytest.raises(BadGeneratorChoice):
        extract_factor_system(d, {1: 0})
    with pytest.raises(BadGeneratorChoice):
        extract_factor_system(d, {0: 2})


def test_extract_factor_system_requires_schreier():
    with pytest.raises(NotSchreier):
        extract_factor_system(w3_extension().without_splitting())


# ============================================================
# EQUIVALENCE
# ============================================================

def test_equivalence_witness_for_identical_systems():
    fs = z4_factor_system()
    w = factor_systems_equivalent(fs, fs)
    assert w is not None
    assert w.gamma == (0, 0)
    assert w.invertible


def test_z4_and_klein_are_not_equivalent():
    trivial = trivial_factor_system(trivial_action(Z2, Z2))
    assert factor_systems_equivalent(trivial, z4_factor_system()) is None


def test_coboundary_is_equivalent_to_trivial():
    # χ = δt for t(1) = 1 in Z3 with the trivial action
    trivial = trivial_factor_system(trivial_action(Z2, Z3))
    boundary = FactorSystem(trivial_action(Z2, Z3), [[0, 0], [0, 2]])
    assert check_factor_system(boundary)
    w = factor_systems_equivalent(trivial, boundary)
    assert w is not None
    assert w.to_dict()["invertible"] is True


def test_equivalence_witness_satisfies_the_gamma_identity():
    trivial = trivial_factor_system(trivial_action(Z2, Z3))
    boundary = FactorSystem(trivial_action(Z2, Z3), [[0, 0], [0, 2]])
    w = factor_systems_equivalent(trivial, boundary)
    assert w.gamma == (0, 2)
    assert check_gamma(trivial, boundary, w.gamma)

    res = check_gamma(trivial, boundary, (0, 1))
    assert not res
    assert res.law == "gamma_cocycle"
    assert res.witness == (1, 1)
    assert check_gamma(trivial, boundary, (1, 2)).law == "gamma_normalised"


def test_zero_action_semidirect_table():
    d = semidirect(Action(two(), Z2, [[0, 1], [0, 0]]))
    assert d.G == zero_action_product()
    assert d.k.map == (0, 2)
    assert d.s.map == (0, 1)


def test_both_invertibility_readings_agree_on_groups():
    trivial = trivial_factor_system(trivial_action(Z2, Z3))
    boundary = FactorSystem(trivial_action(Z2, Z3), [[0, 0], [0, 2]])
    strict = factor_systems_equivalent(trivial, boundary)
    loose = factor_systems_equivalent(trivial, boundary, require_invertible=False)
    assert strict.gamma == loose.gamma
    klein = trivial_factor_system(trivial_action(Z2, Z2))
    assert factor_systems_equivalent(klein, z4_factor_system(), require_invertible=False) is None
