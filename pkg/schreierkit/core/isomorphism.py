"""
Isomorphism Module
Backtracking isomorphism search between finite monoids.

No canonical forms: the search fixes the identity and prunes with
element profiles (idempotency, unit-ness, index and period).
"""

from collections import Counter
from typing import Optional, Sequence, Set, Tuple

from schreierkit.core.monoid import FiniteMonoid, MonoidHom


def monoid_invariants(M: FiniteMonoid) -> Tuple:
    """Cheap isomorphism invariant, also used to bucket catalog entries"""
    return (
        M.size,
        len(M.idempotents()),
        len(M.units()),
        M.is_commutative(),
        tuple(sorted(Counter(M.profiles).items())),
    )


def find_isomorphism(
    A: FiniteMonoid,
    B: FiniteMonoid,
    allowed: Optional[Sequence[Set[int]]] = None
) -> Optional[MonoidHom]:
    """
    First isomorphism A -> B in lexicographic search order, or None.

    Args:
        A, B: monoids to compare
        allowed: optional per-element sets of admissible images; used by
            the extension module to force commuting triangles

    Returns:
        bijective MonoidHom or None
    """
    if monoid_invariants(A) != monoid_invariants(B):
        return None

    n = A.size
    ra, rb = A.rows, B.rows
    assign = [-1] * n
    used = [False] * n

    def admissible(x: int, y: int) -> bool:
        if used[y] or A.profiles[x] != B.profiles[y]:
            return False
        return allowed is None or y in allowed[x]

    if not admissible(A.identity, B.identity):
        return None
    assign[A.identity] = B.identity
    used[B.identity] = True

    order = [x for x in A.elements if x != A.identity]

    def consistent(x: int) -> bool:
        for a in A.elements:
            if assign[a] < 0:
                continue
            for p, q in ((x, a), (a, x)):
                r = ra[p][q]
                if assign[r] >= 0 and assign[r] != rb[assign[p]][assign[q]]:
                    return False
            for b in A.elements:
                if assign[b] >= 0 and ra[a][b] == x and assign[x] != rb[assign[a]][assign[b]]:
                    return False
        return True

    def search(i: int) -> bool:
        if i == len(order):
            return True
        x = order[i]
        for y in B.elements:
            if not admissible(x, y):
                continue
            assign[x] = y
            used[y] = True
            if consistent(x) and search(i + 1):
                return True
            assign[x] = -1
            used[y] = False
        return False

    if not search(0):
        return None
    return MonoidHom(A, B, tuple(assign))


def is_isomorphic(A: FiniteMonoid, B: FiniteMonoid) -> bool:
    return find_isomorphism(A, B) is not None
