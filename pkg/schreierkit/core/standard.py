"""
Standard Monoids
Small named monoids: cyclic and symmetric groups, meet chains, W3.

Finite stand-ins for the infinite examples:
    Z_inf = Z ∪ {∞}  ->  W3 = Z2 ∪ {∞}  (adjoin_zero(cyclic_group(2)))
    frames           ->  finite meet chains
"""

from itertools import permutations
from typing import Sequence

from schreierkit.core.monoid import FiniteMonoid, monoid_from_function, validate_monoid


def trivial_monoid() -> FiniteMonoid:
    return validate_monoid(1, 0, [[0]], ["1"])


def cyclic_group(n: int) -> FiniteMonoid:
    """Z_n under addition, element i is the residue i"""
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return validate_monoid(n, 0, table, [str(i) for i in range(n)])


def klein_four() -> FiniteMonoid:
    """Z2 × Z2 with (a, b) encoded as 2a + b"""
    table = [[a ^ b for b in range(4)] for a in range(4)]
    return validate_monoid(4, 0, table, ["00", "01", "10", "11"])


def symmetric_group(n: int) -> FiniteMonoid:
    """S_n with permutations in lexicographic order; (p·q)(i) = p(q(i))"""
    perms = list(permutations(range(n)))
    return monoid_from_function(
        perms,
        lambda p, q: tuple(p[q[i]] for i in range(n)),
        tuple(range(n)),
        ["".join(str(i) for i in p) for p in perms],
    )


def meet_chain(n: int) -> FiniteMonoid:
    """
    Chain ⊤ = 0 > 1 > ... > n-1 under meet.

    meet_chain(2) is the monoid 2 = {⊤, ⊥}; the top is the identity.
    """
    table = [[max(a, b) for b in range(n)] for a in range(n)]
    if n == 2:
        names = ["⊤", "⊥"]
    else:
        names = ["⊤"] + [f"c{i}" for i in range(1, n - 1)] + ["⊥"] if n > 1 else ["⊤"]
    return validate_monoid(n, 0, table, names)


def two() -> FiniteMonoid:
    """The monoid 2 = {⊤, ⊥} under meet"""
    return meet_chain(2)


def adjoin_zero(M: FiniteMonoid, name: str = "∞") -> FiniteMonoid:
    """M ∪ {∞} with ∞ absorbing; ∞ gets the last index"""
    z = M.size
    table = [list(row) + [z] for row in M.rows] + [[z] * (z + 1)]
    names = [M.label(x) for x in M.elements] + [name]
    return validate_monoid(z + 1, M.identity, table, names)


def w3() -> FiniteMonoid:
    """{0, 1, ∞}: Z2 with an absorbing element"""
    return adjoin_zero(cyclic_group(2))


def from_rows(identity: int, rows: Sequence[Sequence[int]], names=None) -> FiniteMonoid:
    return validate_monoid(len(rows), identity, rows, names)


def zero_action_product() -> FiniteMonoid:
    """Z2 ⋊ 2 with ⊥ acting as the zero map, (n, h) at index 2n + h"""
    rows = [[0, 1, 2, 3], [1, 1, 1, 1], [2, 3, 0, 1], [3, 3, 3, 3]]
    return from_rows(0, rows, ["(0,⊤)", "(0,⊥)", "(1,⊤)", "(1,⊥)"])
