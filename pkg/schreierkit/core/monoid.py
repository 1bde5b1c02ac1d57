"""
Monoid Module
Finite monoids as multiplication tables, homomorphisms between them,
validation, direct products and homomorphism enumeration.

Elements are dense integer indices. The identity is stored explicitly,
so imported tables may order their elements any way they like.
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from schreierkit.errors import BadIdentity, NotAssociative, OutOfRange, SchreierKitError


# ============================================================
# Check results
# ============================================================

@dataclass(frozen=True)
class CheckResult:
    """
    Outcome of an exhaustive law check.

    Truthy iff every law held. On failure `law` names the first failing
    law and `witness` holds the element tuple that breaks it.
    """
    ok: bool
    law: Optional[str] = None
    witness: Optional[Tuple[int, ...]] = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok

    @classmethod
    def passed(cls) -> "CheckResult":
        return cls(True)

    @classmethod
    def failed(cls, law: str, witness: Tuple[int, ...] = (), detail: str = "") -> "CheckResult":
        return cls(False, law, tuple(int(w) for w in witness), detail)

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"ok": self.ok}
        if not self.ok:
            out["law"] = self.law
            out["witness"] = list(self.witness or ())
            if self.detail:
                out["detail"] = self.detail
        return out


# ============================================================
# FiniteMonoid
# ============================================================

def _frozen_table(table: Any) -> np.ndarray:
    arr = np.array(table, dtype=np.int64)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class FiniteMonoid:
    """
    A finite monoid given by its multiplication table.

    table[a, b] is the product a·b. Construct through validate_monoid()
    unless the table is already known to be a monoid.
    """
    size: int
    identity: int
    table: np.ndarray
    names: Optional[Tuple[str, ...]] = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "table", _frozen_table(self.table))
        if self.names is not None:
            object.__setattr__(self, "names", tuple(str(n) for n in self.names))

    # values are compared by table, names are display only
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteMonoid):
            return NotImplemented
        return (self.size == other.size and self.identity == other.identity
                and np.array_equal(self.table, other.table))

    def __hash__(self) -> int:
        return hash((self.size, self.identity, self.table.tobytes()))

    def __repr__(self) -> str:
        return f"FiniteMonoid(size={self.size}, identity={self.identity}, table={self.rows})"

    @cached_property
    def rows(self) -> Tuple[Tuple[int, ...], ...]:
        """Table as nested tuples (fast scalar lookups in search loops)"""
        return tuple(tuple(int(v) for v in row) for row in self.table)

    @property
    def elements(self) -> range:
        return range(self.size)

    def mul(self, a: int, b: int) -> int:
        return self.rows[a][b]

    def product(self, *xs: int) -> int:
        acc = self.identity
        for x in xs:
            acc = self.rows[acc][x]
        return acc

    def label(self, x: int) -> str:
        return self.names[x] if self.names else str(x)

    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    @cached_property
    def inverses(self) -> Tuple[Optional[int], ...]:
        """Two-sided inverse of each element, None where there is none"""
        out: List[Optional[int]] = []
        for a in self.elements:
            inv = None
            for b in self.elements:
                if self.rows[a][b] == self.identity and self.rows[b][a] == self.identity:
                    inv = b
                    break
            out.append(inv)
        return tuple(out)

    def units(self) -> frozenset:
        return frozenset(a for a in self.elements if self.inverses[a] is not None)

    def is_group(self) -> bool:
        return all(inv is not None for inv in self.inverses)

    def inverse(self, a: int) -> int:
        inv = self.inverses[a]
        if inv is None:
            raise SchreierKitError(f"element {a} has no inverse")
        return inv

    def idempotents(self) -> frozenset:
        return frozenset(a for a in self.elements if self.rows[a][a] == a)

    @cached_property
    def profiles(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(element_profile(self, x) for x in self.elements)


def element_profile(M: FiniteMonoid, x: int) -> Tuple[int, ...]:
    """
    Isomorphism invariant of an element: (idempotent, unit, index, period)
    where index/period describe the monogenic submonoid x, x², x³, ...
    """
    seen: Dict[int, int] = {}
    power, exponent = x, 1
    while power not in seen:
        seen[power] = exponent
        power = M.rows[power][x]
        exponent += 1
    index = seen[power]
    period = exponent - index
    return (int(M.rows[x][x] == x), int(M.inverses[x] is not None), index, period)


def validate_monoid(
    size: int,
    identity: int,
    table: Sequence[Sequence[int]],
    names: Optional[Sequence[str]] = None
) -> FiniteMonoid:
    """
    Validate a multiplication table and build the monoid.

    Raises:
        OutOfRange: entry outside [0, size) or wrong table shape
        BadIdentity: claimed identity is not two-sided
        NotAssociative: first failing triple in lexicographic order
    """
    if size < 1:
        raise SchreierKitError("monoid size must be positive")
    if len(table) != size:
        raise OutOfRange(len(table), 0)
    for a, row in enumerate(table):
        if len(row) != size:
            raise OutOfRange(a, len(row))
        for b, v in enumerate(row):
            if not (0 <= int(v) < size):
                raise OutOfRange(a, b)
    if names is not None and len(names) != size:
        raise SchreierKitError("names must have one label per element")
    if not (0 <= identity < size):
        raise BadIdentity(identity)

    T = np.array(table, dtype=np.int64)
    for x in range(size):
        if T[identity, x] != x or T[x, identity] != x:
            raise BadIdentity(x)

    # lhs[a,b,c] = (ab)c, rhs[a,b,c] = a(bc)
    lhs = T[T]
    rhs = T[np.arange(size)[:, None, None], T[None, :, :]]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        a, b, c = (int(v) for v in bad[0])
        raise NotAssociative(a, b, c)

    return FiniteMonoid(size, int(identity), T, tuple(names) if names is not None else None)


def is_commutative(M: FiniteMonoid) -> bool:
    return M.is_commutative()


def units(M: FiniteMonoid) -> frozenset:
    return M.units()


def is_group(M: FiniteMonoid) -> bool:
    return M.is_group()


def is_abelian_group(M: FiniteMonoid) -> bool:
    return M.is_group() and M.is_commutative()


# ============================================================
# Homomorphisms
# ============================================================

@dataclass(frozen=True)
class MonoidHom:
    """A map between finite monoids, stored as the image of each domain element"""
    domain: FiniteMonoid
    codomain: FiniteMonoid
    map: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(int(v) for v in self.map))

    def __call__(self, x: int) -> int:
        return self.map[x]

    def image(self) -> frozenset:
        return frozenset(self.map)

    def is_injective(self) -> bool:
        return len(set(self.map)) == len(self.map)

    def is_surjective(self) -> bool:
        return len(set(self.map)) == self.codomain.size

    def is_bijective(self) -> bool:
        return self.is_injective() and self.is_surjective()


def check_hom(f: MonoidHom) -> CheckResult:
    """
    Verify both homomorphism laws.

    Returns:
        CheckResult with law 'shape', 'identity' or 'multiplicative'
    """
    dom, cod = f.domain, f.codomain
    if len(f.map) != dom.size:
        return CheckResult.failed("shape", (len(f.map),), "map length differs from domain size")
    for x, y in enumerate(f.map):
        if not (0 <= y < cod.size):
            return CheckResult.failed("shape", (x,), "image outside codomain")
    if f.map[dom.identity] != cod.identity:
        return CheckResult.failed("identity", (dom.identity,), "identity not preserved")
    m = np.array(f.map, dtype=np.int64)
    lhs = m[dom.table]
    rhs = cod.table[m[:, None], m[None, :]]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        return CheckResult.failed("multiplicative", tuple(bad[0]), "f(ab) != f(a)f(b)")
    return CheckResult.passed()


def identity_hom(M: FiniteMonoid) -> MonoidHom:
    return MonoidHom(M, M, tuple(M.elements))


def compose(g: MonoidHom, f: MonoidHom) -> MonoidHom:
    """g ∘ f"""
    if f.codomain != g.domain:
        raise SchreierKitError("cannot compose: codomain and domain differ")
    return MonoidHom(f.domain, g.codomain, tuple(g.map[y] for y in f.map))


def all_homomorphisms(A: FiniteMonoid, B: FiniteMonoid) -> Iterator[MonoidHom]:
    """
    Yield every homomorphism A -> B in lexicographic order of the map.

    Backtracking over A's elements in index order with the identity fixed;
    a partial map is rejected as soon as an assigned product disagrees.
    """
    assign = [-1] * A.size
    assign[A.identity] = B.identity
    order = [x for x in A.elements if x != A.identity]
    ra, rb = A.rows, B.rows

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

    def search(i: int) -> Iterator[MonoidHom]:
        if i == len(order):
            yield MonoidHom(A, B, tuple(assign))
            return
        x = order[i]
        for y in B.elements:
            assign[x] = y
            if consistent(x):
                yield from search(i + 1)
            assign[x] = -1

    yield from search(0)


# ============================================================
# Constructions
# ============================================================

def direct_product(A: FiniteMonoid, B: FiniteMonoid) -> FiniteMonoid:
    """
    Componentwise product; (a, b) is encoded as a·|B| + b.
    """
    na, nb = A.size, B.size
    ai = np.repeat(np.arange(na), nb)
    bi = np.tile(np.arange(nb), na)
    T = A.table[ai[:, None], ai[None, :]] * nb + B.table[bi[:, None], bi[None, :]]
    names = tuple(f"({A.label(int(a))},{B.label(int(b))})" for a, b in zip(ai, bi))
    return FiniteMonoid(na * nb, A.identity * nb + B.identity, T, names)


def restrict_to_subset(M: FiniteMonoid, subset: Sequence[int]) -> Tuple[FiniteMonoid, MonoidHom]:
    """
    Submonoid on `subset` (kept in the given order) with its inclusion.

    Raises:
        SchreierKitError: subset misses the identity or is not closed
    """
    new_to_old = list(subset)
    old_to_new = {x: i for i, x in enumerate(new_to_old)}
    if M.identity not in old_to_new:
        raise SchreierKitError("subset does not contain the identity")
    table = []
    for a in new_to_old:
        row = []
        for b in new_to_old:
            p = M.rows[a][b]
            if p not in old_to_new:
                raise SchreierKitError(f"subset not closed: {a}·{b} = {p}")
            row.append(old_to_new[p])
        table.append(row)
    names = tuple(M.label(x) for x in new_to_old) if M.names else None
    sub = FiniteMonoid(len(new_to_old), old_to_new[M.identity], table, names)
    return sub, MonoidHom(sub, M, tuple(new_to_old))


def monoid_from_function(elements: Sequence[Any], op, unit: Any, names: Optional[Sequence[str]] = None) -> FiniteMonoid:
    """
    Tabulate an operation on an explicit element list (validated).
    """
    index = {x: i for i, x in enumerate(elements)}
    table = [[index[op(x, y)] for y in elements] for x in elements]
    return validate_monoid(len(elements), index[unit], table, names)
