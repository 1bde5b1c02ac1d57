"""
Tests for the monoid, congruence, isomorphism and standard-monoid modules

Usage:
    pytest schreierkit/test_monoid.py
"""

import numpy as np
import pytest

from schreierkit.core.congruence import (
    Congruence, check_congruence, congruence_generated, equality_congruence, kernel_pair, quotient,
)
from schreierkit.core.isomorphism import find_isomorphism, is_isomorphic, monoid_invariants
from schreierkit.core.monoid import (
    CheckResult, MonoidHom, all_homomorphisms, check_hom, compose, direct_product,
    identity_hom, is_abelian_group, restrict_to_subset, validate_monoid,
)
from schreierkit.core.oracle import catalog_upto
from schreierkit.core.standard import (
    adjoin_zero, cyclic_group, klein_four, meet_chain, symmetric_group, trivial_monoid, two, w3,
)
from schreierkit.errors import BadIdentity, NotAssociative, OutOfRange


# ============================================================
# VALIDATION
# ============================================================

def test_two_is_a_commutative_idempotent_monoid():
    M = validate_monoid(2, 0, [[0, 1], [1, 1]])
    assert M == two()
    assert M.is_commutative()
    assert not M.is_group()
    assert M.units() == frozenset({0})
    assert M.idempotents() == frozenset({0, 1})


def test_out_of_range_entry():
    with pytest.raises(OutOfRange) as exc:
        validate_monoid(2, 0, [[0, 1], [1, 5]])
    assert exc.value.witness == (1, 1)


def test_bad_identity():
    with pytest.raises(BadIdentity) as exc:
        validate_monoid(2, 1, [[0, 1], [1, 1]])
    assert exc.value.x == 0


def test_first_non_associative_triple():
    with pytest.raises(NotAssociative) as exc:
        validate_monoid(3, 0, [[0, 1, 2], [1, 2, 2], [2, 1, 2]])
    assert (exc.value.a, exc.value.b, exc.value.c) == (1, 1, 1)


def test_group_structure():
    Z3 = cyclic_group(3)
    assert Z3.is_group()
    assert Z3.inverse(1) == 2
    assert is_abelian_group(Z3)
    S3 = symmetric_group(3)
    assert S3.size == 6 and S3.is_group() and not S3.is_commutative()
    assert not is_abelian_group(S3)


def test_w3_is_z2_with_absorbing_element():
    W = w3()
    assert W == adjoin_zero(cyclic_group(2))
    assert W.rows[2] == (2, 2, 2)
    assert W.units() == frozenset({0, 1})
    assert W.label(2) == "∞"


def test_meet_chain_is_a_semilattice():
    C = meet_chain(3)
    assert C.is_commutative()
    assert C.idempotents() == frozenset(C.elements)
    assert meet_chain(2) == two()


def test_check_result_truthiness():
    assert CheckResult.passed()
    bad = CheckResult.failed("law", (1, 2))
    assert not bad
    assert bad.to_dict() == {"ok": False, "law": "law", "witness": [1, 2]}


# ============================================================
# HOMOMORPHISMS + PRODUCTS
# ============================================================

def test_check_hom_reports_first_failure():
    f = MonoidHom(cyclic_group(2), two(), (0, 1))
    res = check_hom(f)
    assert not res
    assert res.law == "multiplicative"
    assert res.witness == (1, 1)


def test_all_homomorphisms_counts():
    Z2 = cyclic_group(2)
    assert len(list(all_homomorphisms(Z2, Z2))) == 2
    assert len(list(all_homomorphisms(two(), two()))) == 2
    assert [f.map for f in all_homomorphisms(Z2, two())] == [(0, 0)]
    for f in all_homomorphisms(w3(), two()):
        assert check_hom(f)


def test_compose_with_identity():
    Z2 = cyclic_group(2)
    f = MonoidHom(Z2, w3(), (0, 1))
    assert compose(identity_hom(w3()), f) == f


def test_direct_product_of_z2_is_klein_four():
    Z2 = cyclic_group(2)
    V = direct_product(Z2, Z2)
    assert is_isomorphic(V, klein_four())
    assert not is_isomorphic(V, cyclic_group(4))


def test_restrict_to_subset():
    sub, inc = restrict_to_subset(w3(), [0, 1])
    assert is_isomorphic(sub, cyclic_group(2))
    assert check_hom(inc)


# ============================================================
# CONGRUENCES
# ============================================================

def test_congruence_generated_and_quotient():
    W = w3()
    c = congruence_generated(W, [(0, 1)])
    assert c.classes() == [[0, 1], [2]]
    assert check_congruence(c)
    Q, proj = quotient(W, c)
    assert find_isomorphism(Q, two()) is not None
    assert check_hom(proj)


def test_kernel_pair_of_projection():
    f = MonoidHom(w3(), two(), (0, 0, 1))
    assert kernel_pair(f).class_of == (0, 0, 1)


def test_non_congruence_is_rejected():
    c = Congruence.from_labels(meet_chain(3), [0, 1, 0])
    res = check_congruence(c)
    assert not res
    assert res.law in ("left_compatible", "right_compatible")


# ============================================================
# ISOMORPHISM
# ============================================================

def test_isomorphism_respects_relabelling():
    # W3 with ∞ moved to index 0
    relabelled = validate_monoid(3, 1, [[0, 0, 0], [0, 1, 2], [0, 2, 1]])
    f = find_isomorphism(w3(), relabelled)
    assert f is not None
    assert f.map == (1, 2, 0)
    assert check_hom(f)


def test_invariants_separate_small_groups():
    assert monoid_invariants(cyclic_group(4)) != monoid_invariants(klein_four())
    assert find_isomorphism(trivial_monoid(), trivial_monoid()).map == (0,)


def test_quotient_by_equality_is_an_isomorphism():
    W = w3()
    Q, proj = quotient(W, equality_congruence(W))
    assert is_isomorphic(Q, W)
    assert proj.is_bijective()
    assert W.mul(1, 1) == W.product(1, 1, 1, 1) == 0


# ============================================================
# SWEEPS
# ============================================================

def catalog_monoids(order):
    return [M for catalog in catalog_upto(order) for M in catalog]


def relabel(M, perm):
    """Copy of M with element x renamed perm[x]"""
    table = [[0] * M.size for _ in M.elements]
    for a in M.elements:
        for b in M.elements:
            table[perm[a]][perm[b]] = perm[M.rows[a][b]]
    return validate_monoid(M.size, perm[M.identity], table)


@pytest.mark.slow
def test_random_congruences_are_smallest_and_quotient_cleanly():
    rng = np.random.default_rng(7)
    targets = catalog_monoids(3)
    for M in catalog_monoids(3):
        # every congruence is the kernel pair of a map onto a catalog monoid
        kernels = {kernel_pair(f).class_of for C in targets if C.size <= M.size
                   for f in all_homomorphisms(M, C)}
        for _ in range(6):
            pairs = [tuple(int(x) for x in rng.integers(0, M.size, 2))
                     for _ in range(int(rng.integers(0, 3)))]
            c = congruence_generated(M, pairs)
            assert check_congruence(c)
            assert all(c.same(a, b) for a, b in pairs)
            assert c.class_of in kernels
            for labels in kernels:
                if all(labels[a] == labels[b] for a, b in pairs):
                    assert all(labels[a] == labels[b] for a in M.elements for b in M.elements
                               if c.same(a, b))
            Q, proj = quotient(M, c)
            validate_monoid(Q.size, Q.identity, [list(r) for r in Q.rows])
            assert check_hom(proj)
            assert proj.is_surjective()
            assert kernel_pair(proj) == c


@pytest.mark.slow
def test_find_isomorphism_is_symmetric_over_the_catalog():
    rng = np.random.default_rng(11)
    monoids = catalog_monoids(3)
    for i, A in enumerate(monoids):
        P = relabel(A, [int(x) for x in rng.permutation(A.size)])
        there, back = find_isomorphism(A, P), find_isomorphism(P, A)
        assert there is not None and back is not None
        assert check_hom(there) and check_hom(back)
        assert compose(back, there).is_bijective()
        for B in monoids[i + 1:]:
            assert find_isomorphism(A, B) is None
            assert find_isomorphism(B, A) is None


@pytest.mark.slow
def test_direct_products_over_the_catalog():
    monoids = catalog_monoids(3)
    for A in monoids:
        for B in monoids:
            P = direct_product(A, B)
            validate_monoid(P.size, P.identity, [list(r) for r in P.rows])
            assert P.size == A.size * B.size
            assert check_hom(MonoidHom(P, A, tuple(x // B.size for x in P.elements)))
            assert check_hom(MonoidHom(P, B, tuple(x % B.size for x in P.elements)))
            assert P.is_commutative() == (A.is_commutative() and B.is_commutative())
            assert P.is_group() == (A.is_group() and B.is_group())
