"""
Cohomology Module
Second cohomology of special (weakly) Schreier extensions with an
abelian group kernel.

A setting is either a strict Action or a RelaxedAction. The strict case
runs through the same code as the relaxed one with the equality
relaxation, so every χ value is stored as a canonical class
representative of ∼^(h1h2).
"""

import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple, Union

from schreierkit.core.extension import (
    ExtensionDiagram, classify, find_extension_isomorphism, schreier_generators,
    weak_generators,
)
from schreierkit.core.monoid import FiniteMonoid, is_abelian_group, validate_monoid
from schreierkit.core.relaxed import (
    Relaxation, RelaxedAction, WSFactorSystem, check_compatible_action,
    extract_ws_factor_system, relaxed_actions_equal, relaxed_crossed_product,
)
from schreierkit.core.strict import (
    Action, FactorSystem, check_action, crossed_product, extract_factor_system,
)
from schreierkit.errors import (
    ActionInvalid, ActionsDiffer, InvalidRelaxedAction, InvariantViolation,
    KernelNotAbelianGroup, NotSchreier, NotWeaklySchreier, SchreierKitError,
)

logger = logging.getLogger(__name__)

Setting = Union[Action, RelaxedAction]
Cocycle = Tuple[Tuple[int, ...], ...]


# ============================================================
# 1) SETTINGS + COCYCLE SETS
# ============================================================

def _unpack(setting: Setting) -> Tuple[FiniteMonoid, FiniteMonoid, Relaxation, Cocycle, bool]:
    """(H, N, E, α rows, relaxed) after validating the setting"""
    N = setting.N
    if not is_abelian_group(N):
        raise KernelNotAbelianGroup("kernel must be an abelian group")
    if isinstance(setting, RelaxedAction):
        res = check_compatible_action(setting.relaxation, setting.alpha)
        if not res:
            raise InvalidRelaxedAction(f"invalid relaxed action: {res.law} at {res.witness}", res.witness)
        return setting.H, N, setting.relaxation, setting.rows, True
    res = check_action(setting.H, N, setting.alpha)
    if not res:
        raise ActionInvalid(f"invalid action: {res.law} at {res.witness}", res.witness)
    return setting.H, N, Relaxation.equality(setting.H, N), setting.rows, False


@dataclass(frozen=True)
class CocycleSet:
    """
    Normalised factor sets of one setting, one per ∼-class, each entry a
    canonical representative.
    """
    H: FiniteMonoid
    N: FiniteMonoid
    relaxation: Relaxation
    alpha: Cocycle
    relaxed: bool
    cocycles: Tuple[Cocycle, ...]
    _index: Dict[Cocycle, int] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {c: i for i, c in enumerate(self.cocycles)})

    def __len__(self) -> int:
        return len(self.cocycles)

    def __iter__(self) -> Iterator[Cocycle]:
        return iter(self.cocycles)

    def __contains__(self, chi: Any) -> bool:
        return self.canonical(chi) in self._index

    def index_of(self, chi: Sequence[Sequence[int]]) -> int:
        return self._index[self.canonical(chi)]

    def canonical(self, chi: Sequence[Sequence[int]]) -> Cocycle:
        return canonical_cocycle(self.relaxation, chi)

    def multiply(self, c1: Sequence[Sequence[int]], c2: Sequence[Sequence[int]]) -> Cocycle:
        """Pointwise product in N"""
        return pointwise(self.relaxation, c1, c2)


def canonical_cocycle(E: Relaxation, chi: Sequence[Sequence[int]]) -> Cocycle:
    H = E.H
    return tuple(
        tuple(E.representative(H.rows[h1][h2], int(chi[h1][h2])) for h2 in H.elements)
        for h1 in H.elements
    )


def pointwise(E: Relaxation, c1: Sequence[Sequence[int]], c2: Sequence[Sequence[int]]) -> Cocycle:
    N = E.N
    return canonical_cocycle(E, [[N.rows[a][b] for a, b in zip(r1, r2)] for r1, r2 in zip(c1, c2)])


def _identity_cocycle(H: FiniteMonoid, N: FiniteMonoid) -> Cocycle:
    return tuple(tuple(N.identity for _ in H.elements) for _ in H.elements)


def cocycles(setting: Setting) -> CocycleSet:
    """
    Every normalised factor set of the setting:
        χ(1,h) = 1 = χ(h,1)
        χ(x,y)χ(xy,z) ∼^(xyz) α(x,χ(y,z))χ(x,yz)

    Free entries are filled row-major; a triple is checked as soon as
    the entries it reads are all assigned.

    Raises:
        KernelNotAbelianGroup, ActionInvalid, InvalidRelaxedAction
    """
    H, N, E, a, relaxed = _unpack(setting)
    mN, mH = N.rows, H.rows
    free = [h for h in H.elements if h != H.identity]
    slots = [(h1, h2) for h1 in free for h2 in free]
    slot_of = {s: i for i, s in enumerate(slots)}
    choices = [E.representatives(mH[h1][h2]) for h1, h2 in slots]

    # triple (x, y, z) becomes checkable after the last slot it reads
    ready: List[List[Tuple[int, int, int]]] = [[] for _ in slots]
    trivial_triples: List[Tuple[int, int, int]] = []
    for x in H.elements:
        for y in H.elements:
            for z in H.elements:
                reads = [(x, y), (mH[x][y], z), (y, z), (x, mH[y][z])]
                idx = [slot_of[r] for r in reads if r in slot_of]
                if idx:
                    ready[max(idx)].append((x, y, z))
                else:
                    trivial_triples.append((x, y, z))

    chi = [[N.identity] * H.size for _ in H.elements]

    def holds(x: int, y: int, z: int) -> bool:
        xyz = mH[mH[x][y]][z]
        lhs = mN[chi[x][y]][chi[mH[x][y]][z]]
        rhs = mN[a[x][chi[y][z]]][chi[x][mH[y][z]]]
        return E.same(xyz, lhs, rhs)

    found: List[Cocycle] = []
    if not all(holds(*t) for t in trivial_triples):
        return CocycleSet(H, N, E, a, relaxed, ())

    def search(i: int):
        if i == len(slots):
            found.append(tuple(tuple(row) for row in chi))
            return
        h1, h2 = slots[i]
        for v in choices[i]:
            chi[h1][h2] = v
            if all(holds(*t) for t in ready[i]):
                search(i + 1)
        chi[h1][h2] = N.identity

    search(0)
    logger.debug("✓ %d cocycles", len(found))
    return CocycleSet(H, N, E, a, relaxed, tuple(found))


def inner_factor_sets(setting: Setting) -> CocycleSet:
    """
    {δt : t: H -> N, t(1) = 1} with δt(h1,h2) = t(h1)·α(h1,t(h2))·t(h1h2)⁻¹,
    in order of first appearance over t.
    """
    H, N, E, a, relaxed = _unpack(setting)
    mN, mH = N.rows, H.rows
    free = [h for h in H.elements if h != H.identity]
    seen: Dict[Cocycle, None] = {}
    for combo in product(N.elements, repeat=len(free)):
        t = [N.identity] * H.size
        for h, v in zip(free, combo):
            t[h] = v
        delta = [[mN[mN[t[h1]][a[h1][t[h2]]]][N.inverse(t[mH[h1][h2]])] for h2 in H.elements]
                 for h1 in H.elements]
        seen.setdefault(canonical_cocycle(E, delta), None)
    return CocycleSet(H, N, E, a, relaxed, tuple(seen))


# ============================================================
# 2) H²
# ============================================================

@dataclass(frozen=True)
class CohomologyResult:
    """
    Z² modulo inner factor sets.

    h2_classes[i] is the first cocycle (in enumeration order) of class i;
    class 0 is the class of the trivial factor set.
    """
    cocycle_count: int
    coboundary_count: int
    h2_order: int
    h2_classes: Tuple[Cocycle, ...]
    group_table: Tuple[Tuple[int, ...], ...]
    class_of: Tuple[int, ...]
    cocycle_set: CocycleSet = field(repr=False, compare=False)

    def group(self) -> FiniteMonoid:
        names = [f"[{i}]" for i in range(self.h2_order)]
        return validate_monoid(self.h2_order, 0, [list(r) for r in self.group_table], names)

    def classify_cocycle(self, chi: Sequence[Sequence[int]]) -> int:
        return self.class_of[self.cocycle_set.index_of(chi)]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "cocycle_count": self.cocycle_count,
            "coboundary_count": self.coboundary_count,
            "h2_order": self.h2_order,
            "h2_classes": [[list(r) for r in c] for c in self.h2_classes],
            "group_table": [list(r) for r in self.group_table],
        }


def h2(setting: Setting) -> CohomologyResult:
    """
    Quotient group of cocycles by inner factor sets.

    The product is taken on representatives and checked to descend to
    classes.

    Raises:
        KernelNotAbelianGroup, ActionInvalid, InvalidRelaxedAction,
        InvariantViolation: descent, group axioms or counting fail
    """
    Z = cocycles(setting)
    B = inner_factor_sets(setting)
    missing = [b for b in B if b not in Z]
    if missing:
        raise InvariantViolation("inner factor set outside the cocycle group", (len(missing),))

    # trivial class first
    ident = _identity_cocycle(Z.H, Z.N)
    order = [ident] + [z for z in Z if z != ident]
    class_of: Dict[Cocycle, int] = {}
    reps: List[Cocycle] = []
    for z in order:
        if z in class_of:
            continue
        c = len(reps)
        reps.append(z)
        for b in B:
            class_of[Z.multiply(z, b)] = c

    n = len(reps)
    table = [[class_of[Z.multiply(r1, r2)] for r2 in reps] for r1 in reps]
    for z1 in Z:
        for z2 in Z:
            prod = Z.multiply(z1, z2)
            if prod not in class_of:
                raise InvariantViolation("cocycles are not closed under multiplication")
            if class_of[prod] != table[class_of[z1]][class_of[z2]]:
                raise InvariantViolation("product does not descend to classes")
    if n * len(B) != len(Z):
        raise InvariantViolation("class sizes differ from the coboundary count", (n, len(B), len(Z)))

    result = CohomologyResult(
        cocycle_count=len(Z),
        coboundary_count=len(B),
        h2_order=n,
        h2_classes=tuple(reps),
        group_table=tuple(tuple(r) for r in table),
        class_of=tuple(class_of[z] for z in Z),
        cocycle_set=Z,
    )
    if not result.group().is_group():
        raise InvariantViolation("class table is not a group")
    logger.info("✓ H² of order %d (%d cocycles, %d coboundaries)", n, len(Z), len(B))
    return result


def realize(setting: Setting, chi: Sequence[Sequence[int]]) -> ExtensionDiagram:
    """(Relaxed) crossed product of a setting with one of its factor sets"""
    if isinstance(setting, RelaxedAction):
        return relaxed_crossed_product(WSFactorSystem(setting.relaxation, setting.alpha, chi))
    return crossed_product(FactorSystem(setting, chi))


# ============================================================
# 3) BAER SUM
# ============================================================

def _alternate_generators(d: ExtensionDiagram, strict: bool) -> Dict[int, int]:
    """Largest valid generator per fibre"""
    out = {}
    for h in d.H.elements:
        if h == d.H.identity:
            out[h] = d.G.identity
        else:
            gens = schreier_generators(d, h) if strict else weak_generators(d, h)
            out[h] = gens[-1]
    return out


def _is_strict(d: ExtensionDiagram) -> bool:
    cls = classify(d)
    if cls.is_special_schreier:
        return True
    if cls.is_special_weakly_schreier:
        return False
    raise NotWeaklySchreier("extension is not special weakly Schreier")


def _combine(d1: ExtensionDiagram, d2: ExtensionDiagram, strict: bool,
             gens1: Optional[Dict[int, int]] = None,
             gens2: Optional[Dict[int, int]] = None) -> ExtensionDiagram:
    if strict:
        fs1 = extract_factor_system(d1, gens1)
        fs2 = extract_factor_system(d2, gens2)
        if fs1.action != fs2.action:
            raise ActionsDiffer("extensions induce different actions")
        E = Relaxation.equality(fs1.H, fs1.N)
        return crossed_product(FactorSystem(fs1.action, pointwise(E, fs1.chi_rows, fs2.chi_rows)))
    w1 = extract_ws_factor_system(d1, gens1)
    w2 = extract_ws_factor_system(d2, gens2)
    a1, a2 = RelaxedAction(w1.relaxation, w1.alpha), RelaxedAction(w2.relaxation, w2.alpha)
    if not relaxed_actions_equal(a1, a2):
        raise ActionsDiffer("extensions induce different relaxed actions")
    chi = pointwise(w1.relaxation, w1.chi_rows, w2.chi_rows)
    return relaxed_crossed_product(WSFactorSystem(w1.relaxation, w1.alpha, chi))


def baer_sum(d1: ExtensionDiagram, d2: ExtensionDiagram) -> ExtensionDiagram:
    """
    Extension whose factor set is the pointwise product of the factor sets
    of d1 and d2. Both must be special Schreier, or both special weakly
    Schreier, over the same abelian group kernel and (relaxed) action.

    Raises:
        KernelNotAbelianGroup, ActionsDiffer, NotWeaklySchreier,
        InvariantViolation: an alternate generator choice gives another class
    """
    if d1.N != d2.N or d1.H != d2.H:
        raise SchreierKitError("extensions have different kernels or quotients")
    if not is_abelian_group(d1.N):
        raise KernelNotAbelianGroup("kernel must be an abelian group")
    strict = _is_strict(d1) and _is_strict(d2)
    result = _combine(d1, d2, strict)
    alt = _combine(d1, d2, strict, _alternate_generators(d1, strict), _alternate_generators(d2, strict))
    if find_extension_isomorphism(result, alt) is None:
        raise InvariantViolation("Baer sum depends on the generator choice")
    return result


def baer_inverse(d: ExtensionDiagram) -> ExtensionDiagram:
    """Extension with the pointwise inverse factor set"""
    if not is_abelian_group(d.N):
        raise KernelNotAbelianGroup("kernel must be an abelian group")
    N = d.N
    if _is_strict(d):
        fs = extract_factor_system(d)
        E = Relaxation.equality(fs.H, N)
        chi = canonical_cocycle(E, [[N.inverse(v) for v in row] for row in fs.chi_rows])
        return crossed_product(FactorSystem(fs.action, chi))
    w = extract_ws_factor_system(d)
    chi = canonical_cocycle(w.relaxation, [[N.inverse(v) for v in row] for row in w.chi_rows])
    return relaxed_crossed_product(WSFactorSystem(w.relaxation, w.alpha, chi))


# ============================================================
# 4) SECTIONS
# ============================================================

def unit_preserving_sections(d: ExtensionDiagram) -> Iterator[Tuple[int, ...]]:
    """Every set map s: H -> G with e∘s = id and s(1) = 1"""
    fibers = d.fibers()
    options = [[d.G.identity] if h == d.H.identity else fibers[h] for h in d.H.elements]
    for combo in product(*options):
        yield tuple(combo)


def section_action(d: ExtensionDiagram, section: Sequence[int],
                   relaxed: bool = False) -> Union[Action, RelaxedAction]:
    """
    Action induced through an arbitrary unit-preserving section s:
        k(α(h,n))·s(h) = s(h)·k(n)
    The strict form needs a unique solution; the relaxed form also
    returns E with n1 ∼ʰ n2 ⟺ k(n1)s(h) = k(n2)s(h).

    Raises:
        NotSchreier: strict solution missing or not unique
        NotWeaklySchreier: relaxed solution missing
    """
    G, k = d.G, d.k.map
    if not relaxed:
        alpha = []
        for h in d.H.elements:
            row = []
            for n in d.N.elements:
                sols = d.factorizations(G.rows[section[h]][k[n]], section[h])
                if len(sols) != 1:
                    raise NotSchreier(f"no unique α({h},{n}) for this section", (h, n))
                row.append(sols[0])
            alpha.append(row)
        return Action(d.H, d.N, alpha)
    E = Relaxation.from_labels(
        d.H, d.N, [[G.rows[k[n]][section[h]] for n in d.N.elements] for h in d.H.elements]
    )
    alpha = []
    for h in d.H.elements:
        row = []
        for n in d.N.elements:
            sols = d.factorizations(G.rows[section[h]][k[n]], section[h])
            if not sols:
                raise NotWeaklySchreier(f"no α({h},{n}) for this section", (h, n))
            row.append(sols[0])
        alpha.append(row)
    return RelaxedAction(E, alpha)
