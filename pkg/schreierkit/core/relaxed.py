"""
Relaxed Module
H-relaxations, compatible (relaxed) actions, relaxed semidirect and
crossed products, weakly Schreier factor systems and their equivalence.

Carrier of a relaxed product: pairs ([n], h) with [n] a class of ∼ʰ,
stored as (canonical representative, h) and sorted by that pair. The
canonical representative of a class is the identity of N when the class
contains it, otherwise its smallest element. Under the equality
relaxation this reproduces the strict encoding n·|H| + h.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Any, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from schreierkit.core.extension import (
    ExtensionDiagram, classify, is_extension_isomorphism,
)
from schreierkit.core.monoid import CheckResult, FiniteMonoid, MonoidHom, validate_monoid
from schreierkit.core.strict import FactorSystem, GammaWitness, resolve_generators
from schreierkit.errors import (
    InvalidRelaxedAction, InvalidWSFactorSystem, InvariantViolation,
    NotWeaklySchreier, NotWeaklySchreierSplit, SchreierKitError,
)

logger = logging.getLogger(__name__)


# ============================================================
# 1) RELAXATIONS
# ============================================================

def _canonical_labels(labels: Sequence[int]) -> Tuple[int, ...]:
    seen: Dict[int, int] = {}
    out = []
    for lab in labels:
        if lab not in seen:
            seen[lab] = len(seen)
        out.append(seen[lab])
    return tuple(out)


@dataclass(frozen=True)
class Relaxation:
    """
    H-indexed family of equivalence relations on N.

    labels[h][n] is the class of n under ∼ʰ, numbered by first occurrence.
    """
    H: FiniteMonoid
    N: FiniteMonoid
    labels: Tuple[Tuple[int, ...], ...]

    @classmethod
    def from_labels(cls, H: FiniteMonoid, N: FiniteMonoid,
                    labels: Sequence[Sequence[int]]) -> "Relaxation":
        if len(labels) != H.size or any(len(row) != N.size for row in labels):
            raise SchreierKitError("relaxation needs one label per (h, n)")
        return cls(H, N, tuple(_canonical_labels([int(v) for v in row]) for row in labels))

    @classmethod
    def equality(cls, H: FiniteMonoid, N: FiniteMonoid) -> "Relaxation":
        return cls(H, N, tuple(tuple(N.elements) for _ in H.elements))

    def same(self, h: int, a: int, b: int) -> bool:
        return self.labels[h][a] == self.labels[h][b]

    def class_count(self, h: int) -> int:
        return max(self.labels[h]) + 1

    def counts(self) -> Tuple[int, ...]:
        return tuple(self.class_count(h) for h in self.H.elements)

    @cached_property
    def _classes(self) -> Tuple[Tuple[Tuple[int, ...], ...], ...]:
        out = []
        for row in self.labels:
            buckets: List[List[int]] = [[] for _ in range(max(row) + 1)]
            for n, c in enumerate(row):
                buckets[c].append(n)
            out.append(tuple(tuple(b) for b in buckets))
        return tuple(out)

    def classes(self, h: int) -> Tuple[Tuple[int, ...], ...]:
        return self._classes[h]

    def class_of(self, h: int, n: int) -> Tuple[int, ...]:
        return self._classes[h][self.labels[h][n]]

    def representative(self, h: int, n: int) -> int:
        cls = self.class_of(h, n)
        return self.N.identity if self.N.identity in cls else cls[0]

    def representatives(self, h: int) -> List[int]:
        return sorted(self.representative(h, c[0]) for c in self._classes[h])

    def is_equality(self) -> bool:
        return all(self.class_count(h) == self.N.size for h in self.H.elements)

    def to_list(self) -> List[List[int]]:
        return [list(row) for row in self.labels]


def check_relaxation(E: Relaxation, monotone: bool = True) -> CheckResult:
    """
    1: ∼¹ is equality
    2: each ∼ʰ is a left congruence
    3: n1 ∼^h1 n2 implies n1 ∼^(h1h2) n2 (skipped when not `monotone`)
    """
    H, N = E.H, E.N
    if E.class_count(H.identity) != N.size:
        a, b = _first_merged_pair(E.labels[H.identity])
        return CheckResult.failed("condition_1", (a, b), "∼¹ is not equality")
    for h in H.elements:
        for a in N.elements:
            for b in N.elements:
                if a < b and E.same(h, a, b):
                    for x in N.elements:
                        if not E.same(h, N.rows[x][a], N.rows[x][b]):
                            return CheckResult.failed("condition_2", (h, a, b, x),
                                                      "∼ʰ is not a left congruence")
    if monotone:
        for h1 in H.elements:
            for h2 in H.elements:
                h12 = H.rows[h1][h2]
                for a in N.elements:
                    for b in N.elements:
                        if a < b and E.same(h1, a, b) and not E.same(h12, a, b):
                            return CheckResult.failed("condition_3", (h1, h2, a, b),
                                                      "∼ is not monotone in h")
    return CheckResult.passed()


def _first_merged_pair(row: Sequence[int]) -> Tuple[int, int]:
    seen: Dict[int, int] = {}
    for n, c in enumerate(row):
        if c in seen:
            return seen[c], n
        seen[c] = n
    return (-1, -1)


def carrier_size(E: Relaxation) -> int:
    """|⊔ₕ N/∼ʰ|"""
    return sum(E.counts())


# ============================================================
# 2) RELAXED ACTIONS
# ============================================================

def _frozen(values: Any) -> np.ndarray:
    arr = np.array(values, dtype=np.int64)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class RelaxedAction:
    """(E, α) where α is one representative of the class [α]"""
    relaxation: Relaxation
    alpha: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "alpha", _frozen(self.alpha))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RelaxedAction):
            return NotImplemented
        return self.relaxation == other.relaxation and np.array_equal(self.alpha, other.alpha)

    def __hash__(self) -> int:
        return hash((self.relaxation, self.alpha.tobytes()))

    @property
    def H(self) -> FiniteMonoid:
        return self.relaxation.H

    @property
    def N(self) -> FiniteMonoid:
        return self.relaxation.N

    @cached_property
    def rows(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(tuple(int(v) for v in row) for row in self.alpha)

    def canonical(self) -> "RelaxedAction":
        """Same class with every α(h, n) replaced by its canonical representative"""
        E = self.relaxation
        return RelaxedAction(E, [[E.representative(h, v) for v in row]
                                 for h, row in enumerate(self.rows)])


def relaxed_actions_equal(a1: RelaxedAction, a2: RelaxedAction) -> bool:
    """α ∼ α′ iff α(h,n) ∼ʰ α′(h,n) for all h, n (same relaxation required)"""
    if a1.relaxation != a2.relaxation:
        return False
    E = a1.relaxation
    return all(E.same(h, a1.rows[h][n], a2.rows[h][n])
               for h in a1.H.elements for n in a1.N.elements)


def _table_ok(table: Any, rows: int, cols: int, bound: int) -> bool:
    arr = np.asarray(table)
    return arr.shape == (rows, cols) and bool(np.all((arr >= 0) & (arr < bound)))


def check_compatible_action(E: Relaxation, alpha: Any) -> CheckResult:
    """
    The six compatible-action conditions, after the relaxation itself.

    1: n1 ∼ʰ n2 ⇒ n1α(h,n) ∼ʰ n2α(h,n)
    2: n1 ∼^h2 n2 ⇒ α(h1,n1) ∼^(h1h2) α(h1,n2)
    3: α(h,n1n2) ∼ʰ α(h,n1)α(h,n2)
    4: α(h1h2,n) ∼^(h1h2) α(h1,α(h2,n))
    5: α(h,1) ∼ʰ 1
    6: α(1,n) ∼¹ n
    """
    H, N = E.H, E.N
    res = check_relaxation(E)
    if not res:
        return CheckResult.failed("relaxation_" + (res.law or ""), res.witness or (), res.detail)
    if not _table_ok(alpha, H.size, N.size, N.size):
        return CheckResult.failed("shape", (), "alpha must be |H|×|N| with entries in N")
    a = [[int(v) for v in row] for row in alpha]
    mN, mH, same = N.rows, H.rows, E.same

    for h in H.elements:
        for n1 in N.elements:
            for n2 in N.elements:
                if n1 < n2 and same(h, n1, n2):
                    for n in N.elements:
                        if not same(h, mN[n1][a[h][n]], mN[n2][a[h][n]]):
                            return CheckResult.failed("condition_1", (h, n1, n2, n))
    for h2 in H.elements:
        for n1 in N.elements:
            for n2 in N.elements:
                if n1 < n2 and same(h2, n1, n2):
                    for h1 in H.elements:
                        if not same(mH[h1][h2], a[h1][n1], a[h1][n2]):
                            return CheckResult.failed("condition_2", (h1, h2, n1, n2))
    for h in H.elements:
        for n1 in N.elements:
            for n2 in N.elements:
                if not same(h, a[h][mN[n1][n2]], mN[a[h][n1]][a[h][n2]]):
                    return CheckResult.failed("condition_3", (h, n1, n2))
    for h1 in H.elements:
        for h2 in H.elements:
            h12 = mH[h1][h2]
            for n in N.elements:
                if not same(h12, a[h12][n], a[h1][a[h2][n]]):
                    return CheckResult.failed("condition_4", (h1, h2, n))
    for h in H.elements:
        if not same(h, a[h][N.identity], N.identity):
            return CheckResult.failed("condition_5", (h,))
    for n in N.elements:
        if a[H.identity][n] != n:
            return CheckResult.failed("condition_6", (n,))
    return CheckResult.passed()


# ============================================================
# 3) RELAXED PRODUCTS
# ============================================================

def relaxed_carrier(E: Relaxation) -> List[Tuple[int, int]]:
    """Elements ([n], h) as (canonical representative, h), sorted"""
    return sorted((rep, h) for h in E.H.elements for rep in E.representatives(h))


def _relaxed_product(E: Relaxation, alpha: Sequence[Sequence[int]],
                     chi: Optional[Sequence[Sequence[int]]], split: bool) -> ExtensionDiagram:
    """
    ([n1],h1)([n2],h2) = ([n1·α(h1,n2)·χ(h1,h2)], h1h2), evaluated on
    every pair of class members.

    Raises:
        InvariantViolation: two members of the same classes disagree
    """
    H, N = E.H, E.N
    carrier = relaxed_carrier(E)
    index = {x: i for i, x in enumerate(carrier)}
    mN, mH = N.rows, H.rows
    table: List[List[int]] = []
    for (r1, h1) in carrier:
        row = []
        for (r2, h2) in carrier:
            h12 = mH[h1][h2]
            results = set()
            for n1 in E.class_of(h1, r1):
                for n2 in E.class_of(h2, r2):
                    v = mN[n1][alpha[h1][n2]]
                    if chi is not None:
                        v = mN[v][chi[h1][h2]]
                    results.add(E.labels[h12][v])
            if len(results) != 1:
                raise InvariantViolation(
                    f"product of ([{r1}],{h1}) and ([{r2}],{h2}) depends on representatives",
                    (r1, h1, r2, h2),
                )
            label = results.pop()
            rep = E.representative(h12, E.classes(h12)[label][0])
            row.append(index[(rep, h12)])
        table.append(row)
    names = [f"([{N.label(r)}],{H.label(h)})" for r, h in carrier]
    G = validate_monoid(len(carrier), index[(N.identity, H.identity)], table, names)

    k = MonoidHom(N, G, tuple(index[(n, H.identity)] for n in N.elements))
    e = MonoidHom(G, H, tuple(h for _, h in carrier))
    s = MonoidHom(H, G, tuple(index[(N.identity, h)] for h in H.elements)) if split else None
    return ExtensionDiagram(N, G, H, k, e, s)


def relaxed_semidirect(action: RelaxedAction) -> ExtensionDiagram:
    """
    Weakly Schreier split extension N -> N ⋊_{E,α} H -> H
    with k(n) = ([n],1), e([n],h) = h, s(h) = ([1],h).

    Raises:
        InvalidRelaxedAction: relaxation or compatible-action check fails
    """
    res = check_compatible_action(action.relaxation, action.alpha)
    if not res:
        raise InvalidRelaxedAction(f"invalid relaxed action: {res.law} at {res.witness}", res.witness)
    d = _relaxed_product(action.relaxation, action.rows, None, split=True)
    logger.debug("✓ relaxed semidirect product of order %d", d.G.size)
    return d


def extract_relaxed_action(d: ExtensionDiagram) -> RelaxedAction:
    """
    E from n1 ∼ʰ n2 ⟺ k(n1)s(h) = k(n2)s(h); α(h,n) is the smallest m
    with k(m)s(h) = s(h)k(n).

    Raises:
        NotWeaklySchreierSplit
    """
    cls = classify(d)
    if not cls.is_weakly_schreier_split:
        raise NotWeaklySchreierSplit("extension is not weakly Schreier split")
    G, k, s = d.G, d.k.map, d.s.map
    E = Relaxation.from_labels(
        d.H, d.N, [[G.rows[k[n]][s[h]] for n in d.N.elements] for h in d.H.elements]
    )
    alpha = [[d.factorizations(G.rows[s[h]][k[n]], s[h])[0] for n in d.N.elements]
             for h in d.H.elements]
    return RelaxedAction(E, alpha)


# ============================================================
# 4) WEAKLY SCHREIER FACTOR SYSTEMS
# ============================================================

@dataclass(frozen=True, eq=False)
class WSFactorSystem:
    """(E, α, χ) for a weakly Schreier extension"""
    relaxation: Relaxation
    alpha: np.ndarray
    chi: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "alpha", _frozen(self.alpha))
        object.__setattr__(self, "chi", _frozen(self.chi))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WSFactorSystem):
            return NotImplemented
        return (self.relaxation == other.relaxation and np.array_equal(self.alpha, other.alpha)
                and np.array_equal(self.chi, other.chi))

    def __hash__(self) -> int:
        return hash((self.relaxation, self.alpha.tobytes(), self.chi.tobytes()))

    @property
    def H(self) -> FiniteMonoid:
        return self.relaxation.H

    @property
    def N(self) -> FiniteMonoid:
        return self.relaxation.N

    @cached_property
    def alpha_rows(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(tuple(int(v) for v in row) for row in self.alpha)

    @cached_property
    def chi_rows(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(tuple(int(v) for v in row) for row in self.chi)


def embed_strict(fs: FactorSystem) -> WSFactorSystem:
    """A strict factor system seen over the equality relaxation"""
    return WSFactorSystem(Relaxation.equality(fs.H, fs.N), fs.action.alpha, fs.chi)


def check_ws_factor_system(fs: WSFactorSystem) -> CheckResult:
    """
    All eleven factor-system conditions, first failure witnessed.

    Monotonicity of E is not among them: condition 3 replaces it.
    """
    E, H, N = fs.relaxation, fs.H, fs.N
    if not _table_ok(fs.alpha, H.size, N.size, N.size):
        return CheckResult.failed("shape", (), "alpha must be |H|×|N| with entries in N")
    if not _table_ok(fs.chi, H.size, H.size, N.size):
        return CheckResult.failed("shape", (), "chi must be |H|×|H| with entries in N")
    res = check_relaxation(E, monotone=False)
    if not res:
        return res
    a, c = fs.alpha_rows, fs.chi_rows
    mN, mH, same = N.rows, H.rows, E.same
    one = N.identity

    def related_pairs(h: int) -> Iterator[Tuple[int, int]]:
        for n1 in N.elements:
            for n2 in N.elements:
                if n1 < n2 and same(h, n1, n2):
                    yield n1, n2

    for h1 in H.elements:
        for n1, n2 in related_pairs(h1):
            for h2 in H.elements:
                x = c[h1][h2]
                if not same(mH[h1][h2], mN[n1][x], mN[n2][x]):
                    return CheckResult.failed("condition_3", (h1, h2, n1, n2))
    for h in H.elements:
        for n1, n2 in related_pairs(h):
            for n in N.elements:
                if not same(h, mN[n1][a[h][n]], mN[n2][a[h][n]]):
                    return CheckResult.failed("condition_4", (h, n1, n2, n))
    for h2 in H.elements:
        for n1, n2 in related_pairs(h2):
            for h1 in H.elements:
                x = c[h1][h2]
                if not same(mH[h1][h2], mN[a[h1][n1]][x], mN[a[h1][n2]][x]):
                    return CheckResult.failed("condition_5", (h1, h2, n1, n2))
    for h in H.elements:
        for n1 in N.elements:
            for n2 in N.elements:
                if not same(h, a[h][mN[n1][n2]], mN[a[h][n1]][a[h][n2]]):
                    return CheckResult.failed("condition_6", (h, n1, n2))
    for h1 in H.elements:
        for h2 in H.elements:
            h12 = mH[h1][h2]
            x = c[h1][h2]
            for n in N.elements:
                if not same(h12, mN[x][a[h12][n]], mN[a[h1][a[h2][n]]][x]):
                    return CheckResult.failed("condition_7", (h1, h2, n))
    for h in H.elements:
        if not same(h, a[h][one], one):
            return CheckResult.failed("condition_8", (h,))
    for n in N.elements:
        if a[H.identity][n] != n:
            return CheckResult.failed("condition_9", (n,))
    for h in H.elements:
        if not same(h, c[H.identity][h], one) or not same(h, c[h][H.identity], one):
            return CheckResult.failed("condition_10", (h,))
    for x in H.elements:
        for y in H.elements:
            for z in H.elements:
                xyz = mH[mH[x][y]][z]
                lhs = mN[c[x][y]][c[mH[x][y]][z]]
                rhs = mN[a[x][c[y][z]]][c[x][mH[y][z]]]
                if not same(xyz, lhs, rhs):
                    return CheckResult.failed("condition_11", (x, y, z))
    return CheckResult.passed()


def relaxed_crossed_product(fs: WSFactorSystem) -> ExtensionDiagram:
    """
    Weakly Schreier extension N -> N ⋊^χ_{E,α} H -> H with unit ([1],1).

    Raises:
        InvalidWSFactorSystem: condition number and witness attached
    """
    res = check_ws_factor_system(fs)
    if not res:
        raise InvalidWSFactorSystem(f"invalid factor system: {res.law} at {res.witness}", res.witness)
    return _relaxed_product(fs.relaxation, fs.alpha_rows, fs.chi_rows, split=False)


def extract_ws_factor_system(d: ExtensionDiagram,
                             generator_choice: Optional[Mapping[int, int]] = None) -> WSFactorSystem:
    """
    (E, α, χ) from a weakly Schreier extension and weak generators u_h:
        n1 ∼ʰ n2 ⟺ k(n1)u_h = k(n2)u_h
        k(α(h,n))·u_h = u_h·k(n)
        k(χ(h1,h2))·u_{h1h2} = u_{h1}·u_{h2},  χ(1,h) = 1 = χ(h,1)
    Smallest solutions are taken.

    Raises:
        NotWeaklySchreier, BadGeneratorChoice
    """
    cls = classify(d)
    if not cls.is_weakly_schreier:
        raise NotWeaklySchreier("extension is not weakly Schreier")
    u = resolve_generators(d, cls.generators, generator_choice, strict=False)
    G, H, N, k = d.G, d.H, d.N, d.k.map
    E = Relaxation.from_labels(H, N, [[G.rows[k[n]][u[h]] for n in N.elements] for h in H.elements])
    alpha = [[d.factorizations(G.rows[u[h]][k[n]], u[h])[0] for n in N.elements]
             for h in H.elements]
    chi = []
    for h1 in H.elements:
        row = []
        for h2 in H.elements:
            if h1 == H.identity or h2 == H.identity:
                row.append(N.identity)
            else:
                row.append(d.factorizations(G.rows[u[h1]][u[h2]], u[H.rows[h1][h2]])[0])
        chi.append(row)
    return WSFactorSystem(E, alpha, chi)


def relaxed_reconstruction_map(d: ExtensionDiagram, E: Relaxation,
                               generators: Mapping[int, int]) -> Tuple[int, ...]:
    """([n], h) ↦ k(n)·u_h from the relaxed carrier into G"""
    return tuple(d.G.rows[d.k.map[r]][generators[h]] for r, h in relaxed_carrier(E))


# ============================================================
# 5) EQUIVALENCE
# ============================================================

def _one_sided_inverses(N: FiniteMonoid, E: Relaxation, h: int, g: int, right: bool) -> List[int]:
    """λ with gλ ∼ʰ 1 (right) or λg ∼ʰ 1 (left)"""
    one = N.identity
    if right:
        return [l for l in N.elements if E.same(h, N.rows[g][l], one)]
    return [l for l in N.elements if E.same(h, N.rows[l][g], one)]


def ws_factor_systems_equivalent(fs1: WSFactorSystem,
                                 fs2: WSFactorSystem) -> Optional[GammaWitness]:
    """
    First γ: H -> N (γ(1) = 1) with f([n],h) = ([n·γ(h)],h) an isomorphism
    of relaxed crossed products fs1 -> fs2.

    A candidate must have, for each h, a right inverse of γ(h) up to ∼ʰ in
    fs1 and a left inverse up to ∼ʰ in fs2; f must be well defined and
    satisfy, up to ∼′^(h1h2),
        n1·α(h1,n2)·χ(h1,h2)·γ(h1h2) = n1·γ(h1)·α′(h1, n2·γ(h2))·χ′(h1,h2).
    Survivors are re-verified as extension isomorphisms.
    """
    if fs1.H != fs2.H or fs1.N != fs2.N:
        raise SchreierKitError("factor systems live over different H, N")
    E1, E2 = fs1.relaxation, fs2.relaxation
    if E1.counts() != E2.counts():
        return None
    H, N = fs1.H, fs1.N
    d1, d2 = relaxed_crossed_product(fs1), relaxed_crossed_product(fs2)
    c1 = relaxed_carrier(E1)
    index2 = {x: i for i, x in enumerate(relaxed_carrier(E2))}
    a1, x1 = fs1.alpha_rows, fs1.chi_rows
    a2, x2 = fs2.alpha_rows, fs2.chi_rows
    mN, mH = N.rows, H.rows
    free = [h for h in H.elements if h != H.identity]

    for combo in product(N.elements, repeat=len(free)):
        gamma = [N.identity] * H.size
        for h, v in zip(free, combo):
            gamma[h] = v

        rights = [_one_sided_inverses(N, E1, h, gamma[h], right=True) for h in H.elements]
        lefts = [_one_sided_inverses(N, E2, h, gamma[h], right=False) for h in H.elements]
        if not all(rights) or not all(lefts):
            continue

        well_defined = all(
            E2.same(h, mN[n1][gamma[h]], mN[n2][gamma[h]])
            for h in H.elements for n1 in N.elements for n2 in N.elements
            if E1.same(h, n1, n2)
        )
        if not well_defined:
            continue

        homomorphic = all(
            E2.same(
                mH[h1][h2],
                mN[mN[mN[n1][a1[h1][n2]]][x1[h1][h2]]][gamma[mH[h1][h2]]],
                mN[mN[mN[n1][gamma[h1]]][a2[h1][mN[n2][gamma[h2]]]]][x2[h1][h2]],
            )
            for h1 in H.elements for h2 in H.elements
            for n1 in N.elements for n2 in N.elements
        )
        if not homomorphic:
            continue

        fmap = [index2[(E2.representative(h, mN[r][gamma[h]]), h)] for r, h in c1]
        if not is_extension_isomorphism(d1, d2, fmap):
            logger.warning("γ=%s passes the relative conditions but f is not an isomorphism", gamma)
            continue

        common = all(set(rights[h]) & set(lefts[h]) for h in H.elements)
        at_identity = all(
            any(mN[l][gamma[h]] == N.identity for l in N.elements) for h in H.elements
        )
        return GammaWitness(tuple(gamma), True, common, at_identity)
    return None


# ============================================================
# 6) ENUMERATION
# ============================================================

def _set_partitions(n: int) -> Iterator[Tuple[int, ...]]:
    """Restricted growth strings of length n, lexicographic"""
    if n == 0:
        yield ()
        return

    def grow(prefix: List[int], top: int) -> Iterator[Tuple[int, ...]]:
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for c in range(top + 2):
            prefix.append(c)
            yield from grow(prefix, max(top, c))
            prefix.pop()

    yield from grow([0], 0)


def left_congruences(N: FiniteMonoid) -> List[Tuple[int, ...]]:
    """Every left congruence on N as a canonical label tuple"""
    out = []
    for labels in _set_partitions(N.size):
        if all(labels[N.rows[x][a]] == labels[N.rows[x][b]]
               for a in N.elements for b in N.elements if a < b and labels[a] == labels[b]
               for x in N.elements):
            out.append(labels)
    return out


def enumerate_relaxations(H: FiniteMonoid, N: FiniteMonoid,
                          monotone: bool = True) -> Iterator[Relaxation]:
    """
    Every H-relaxation of N (conditions 1-2, and 3 when `monotone`).
    """
    lcs = left_congruences(N)
    free = [h for h in H.elements if h != H.identity]
    eq = tuple(N.elements)
    for combo in product(lcs, repeat=len(free)):
        rows: List[Tuple[int, ...]] = [eq] * H.size
        for h, row in zip(free, combo):
            rows[h] = row
        E = Relaxation(H, N, tuple(rows))
        if not monotone or check_relaxation(E):
            yield E


def _alpha_candidates(E: Relaxation) -> Iterator[List[List[int]]]:
    """Every α with α(1,·) = id, other entries unrestricted"""
    H, N = E.H, E.N
    slots = [(h, n) for h in H.elements if h != H.identity for n in N.elements]
    for combo in product(N.elements, repeat=len(slots)):
        alpha = [list(N.elements) for _ in H.elements]
        for (h, n), v in zip(slots, combo):
            alpha[h][n] = v
        yield alpha


def enumerate_relaxed_actions(H: FiniteMonoid, N: FiniteMonoid) -> Iterator[RelaxedAction]:
    """
    One member per relaxed action (E, [α]): the first compatible α of
    each class in lexicographic order.
    """
    for E in enumerate_relaxations(H, N):
        seen = set()
        for alpha in _alpha_candidates(E):
            key = tuple(E.representative(h, v) for h, row in enumerate(alpha) for v in row)
            if key in seen:
                continue
            if check_compatible_action(E, alpha):
                seen.add(key)
                yield RelaxedAction(E, alpha)


def enumerate_ws_factor_systems(H: FiniteMonoid, N: FiniteMonoid) -> Iterator[WSFactorSystem]:
    """
    Every normalised factor system (χ(1,h) = 1 = χ(h,1)) over every
    relaxation satisfying conditions 1-2. Exhaustive over all α and χ
    values, so only practical for the smallest H and N.
    """
    free = [h for h in H.elements if h != H.identity]
    pairs = [(h1, h2) for h1 in free for h2 in free]
    for E in enumerate_relaxations(H, N, monotone=False):
        for alpha in _alpha_candidates(E):
            for combo in product(N.elements, repeat=len(pairs)):
                chi = [[N.identity] * H.size for _ in H.elements]
                for (h1, h2), v in zip(pairs, combo):
                    chi[h1][h2] = v
                fs = WSFactorSystem(E, alpha, chi)
                if check_ws_factor_system(fs):
                    yield fs
