"""
Congruence Module
Congruences on finite monoids: generation by fixpoint closure,
kernel pairs of homomorphisms and quotient monoids.
"""

from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Tuple

from schreierkit.core.monoid import CheckResult, FiniteMonoid, MonoidHom


@dataclass(frozen=True)
class Congruence:
    """
    Partition of a monoid's elements compatible with multiplication.

    class_of is canonical: classes are numbered in order of their
    smallest element, so equal partitions compare equal.
    """
    monoid: FiniteMonoid
    class_of: Tuple[int, ...]
    class_count: int

    @classmethod
    def from_labels(cls, monoid: FiniteMonoid, labels: Sequence[int]) -> "Congruence":
        canon: Dict[int, int] = {}
        class_of = []
        for lab in labels:
            if lab not in canon:
                canon[lab] = len(canon)
            class_of.append(canon[lab])
        return cls(monoid, tuple(class_of), len(canon))

    def classes(self) -> List[List[int]]:
        out: List[List[int]] = [[] for _ in range(self.class_count)]
        for x, c in enumerate(self.class_of):
            out[c].append(x)
        return out

    def same(self, a: int, b: int) -> bool:
        return self.class_of[a] == self.class_of[b]


def check_congruence(c: Congruence) -> CheckResult:
    """Surjectivity onto [0, class_count) and two-sided compatibility"""
    M = c.monoid
    if len(c.class_of) != M.size:
        return CheckResult.failed("shape", (len(c.class_of),))
    if set(c.class_of) != set(range(c.class_count)):
        return CheckResult.failed("surjective", (c.class_count,))
    # compatibility reduces to one-sided translations
    for a in M.elements:
        for b in M.elements:
            if a >= b or c.class_of[a] != c.class_of[b]:
                continue
            for x in M.elements:
                if c.class_of[M.rows[x][a]] != c.class_of[M.rows[x][b]]:
                    return CheckResult.failed("left_compatible", (x, a, b))
                if c.class_of[M.rows[a][x]] != c.class_of[M.rows[b][x]]:
                    return CheckResult.failed("right_compatible", (a, b, x))
    return CheckResult.passed()


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def congruence_generated(M: FiniteMonoid, pairs: Iterable[Tuple[int, int]]) -> Congruence:
    """
    Smallest congruence containing `pairs`.

    Worklist fixpoint over a union-find: every merge re-queues the
    left and right translates of the merged pair.
    """
    uf = _UnionFind(M.size)
    work = [(int(a), int(b)) for a, b in pairs]
    rows = M.rows
    while work:
        a, b = work.pop()
        if not uf.union(a, b):
            continue
        for x in M.elements:
            work.append((rows[x][a], rows[x][b]))
            work.append((rows[a][x], rows[b][x]))
    return Congruence.from_labels(M, [uf.find(x) for x in M.elements])


def kernel_pair(f: MonoidHom) -> Congruence:
    """Congruence a ~ b iff f(a) = f(b)"""
    return Congruence.from_labels(f.domain, f.map)


def equality_congruence(M: FiniteMonoid) -> Congruence:
    return Congruence.from_labels(M, list(M.elements))


def quotient(M: FiniteMonoid, c: Congruence) -> Tuple[FiniteMonoid, MonoidHom]:
    """
    Quotient monoid on class indices with the (surjective) projection.
    """
    reps = [cls[0] for cls in c.classes()]
    table = [[c.class_of[M.rows[a][b]] for b in reps] for a in reps]
    names = None
    if M.names:
        names = tuple("{" + ",".join(M.label(x) for x in cls) + "}" for cls in c.classes())
    Q = FiniteMonoid(c.class_count, c.class_of[M.identity], table, names)
    return Q, MonoidHom(M, Q, c.class_of)
