"""
Extension Module
Extension diagrams N --k--> G --e--> H (optionally split by s),
kernel/cokernel verification and the Schreier classification lattice.

Conventions:
- kernel(e) is the preimage of the identity with its inclusion
- e is the cokernel of k when the kernel pair of e equals the
  congruence generated by {(k(n), 1) : n in N}
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Iterator, List, Optional, Sequence, Set, Tuple, Union

from schreierkit.core.congruence import congruence_generated, kernel_pair
from schreierkit.core.isomorphism import find_isomorphism
from schreierkit.core.monoid import (
    CheckResult, FiniteMonoid, MonoidHom, all_homomorphisms, check_hom,
    direct_product, monoid_from_function, restrict_to_subset,
)
from schreierkit.errors import (
    InvariantViolation, NotAnExtension, NotASemilattice, NotMeetPreserving, SchreierKitError,
)

logger = logging.getLogger(__name__)


# ============================================================
# 1) DIAGRAMS
# ============================================================

@dataclass(frozen=True)
class ExtensionDiagram:
    """N --k--> G --e--> H, with an optional splitting s: H -> G"""
    N: FiniteMonoid
    G: FiniteMonoid
    H: FiniteMonoid
    k: MonoidHom
    e: MonoidHom
    s: Optional[MonoidHom] = None

    @property
    def is_split(self) -> bool:
        return self.s is not None

    def without_splitting(self) -> "ExtensionDiagram":
        return ExtensionDiagram(self.N, self.G, self.H, self.k, self.e)

    def with_splitting(self, s: MonoidHom) -> "ExtensionDiagram":
        return ExtensionDiagram(self.N, self.G, self.H, self.k, self.e, s)

    def fiber(self, h: int) -> List[int]:
        return [g for g in self.G.elements if self.e.map[g] == h]

    def fibers(self) -> List[List[int]]:
        out: List[List[int]] = [[] for _ in self.H.elements]
        for g in self.G.elements:
            out[self.e.map[g]].append(g)
        return out

    def factorizations(self, g: int, u: int) -> List[int]:
        """All n with g = k(n)·u"""
        G, k = self.G, self.k.map
        return [n for n in self.N.elements if G.rows[k[n]][u] == g]


def kernel(e: MonoidHom) -> tuple:
    """
    Submonoid e⁻¹(1_H) with its inclusion into G.

    Returns:
        (FiniteMonoid, MonoidHom)
    """
    pre = [g for g in e.domain.elements if e.map[g] == e.codomain.identity]
    return restrict_to_subset(e.domain, pre)


def check_extension(d: ExtensionDiagram) -> CheckResult:
    """
    Verify every ExtensionDiagram invariant.

    Laws reported: k_hom, e_hom, s_hom, k_injective, e_surjective,
    image_is_kernel, cokernel, splitting.
    """
    for name, f, dom, cod in (("k_hom", d.k, d.N, d.G), ("e_hom", d.e, d.G, d.H)):
        if f.domain != dom or f.codomain != cod:
            return CheckResult.failed(name, (), "hom does not match the diagram's monoids")
        res = check_hom(f)
        if not res:
            return CheckResult.failed(name, res.witness or (), res.law or "")
    if not d.k.is_injective():
        n1, n2 = _first_collision(d.k.map)
        return CheckResult.failed("k_injective", (n1, n2))
    if not d.e.is_surjective():
        missing = min(set(d.H.elements) - set(d.e.map))
        return CheckResult.failed("e_surjective", (missing,))

    image = set(d.k.map)
    ker = {g for g in d.G.elements if d.e.map[g] == d.H.identity}
    if image != ker:
        g = min(image ^ ker)
        return CheckResult.failed("image_is_kernel", (g,))

    generated = congruence_generated(d.G, [(d.k.map[n], d.G.identity) for n in d.N.elements])
    pair = kernel_pair(d.e)
    if generated.class_of != pair.class_of:
        g = next(x for x in d.G.elements if generated.class_of[x] != pair.class_of[x])
        return CheckResult.failed("cokernel", (g,), "kernel pair of e differs from the congruence generated by k")

    if d.s is not None:
        if d.s.domain != d.H or d.s.codomain != d.G:
            return CheckResult.failed("s_hom", (), "splitting does not match the diagram's monoids")
        res = check_hom(d.s)
        if not res:
            return CheckResult.failed("s_hom", res.witness or (), res.law or "")
        for h in d.H.elements:
            if d.e.map[d.s.map[h]] != h:
                return CheckResult.failed("splitting", (h,))
    return CheckResult.passed()


def _first_collision(values: Sequence[int]) -> tuple:
    seen: Dict[int, int] = {}
    for i, v in enumerate(values):
        if v in seen:
            return seen[v], i
        seen[v] = i
    return (-1, -1)


# ============================================================
# 2) CLASSIFICATION
# ============================================================

@dataclass(frozen=True)
class ExtensionClass:
    """
    Flags of the classification lattice.

    is_leech_normal is None when the kernel is not a group (not applicable).
    Split flags are None when the diagram carries no splitting.
    """
    is_extension: bool
    is_schreier: bool
    is_weakly_schreier: bool
    is_special_schreier: bool
    is_special_weakly_schreier: bool
    is_leech_normal: Optional[bool]
    generators: Optional[Dict[int, int]]
    is_schreier_split: Optional[bool] = None
    is_weakly_schreier_split: Optional[bool] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "extension": self.is_extension,
            "schreier": self.is_schreier,
            "weakly_schreier": self.is_weakly_schreier,
            "special_schreier": self.is_special_schreier,
            "special_weakly_schreier": self.is_special_weakly_schreier,
            "leech_normal": self.is_leech_normal,
            "schreier_split": self.is_schreier_split,
            "weakly_schreier_split": self.is_weakly_schreier_split,
            "generators": None if self.generators is None
            else {str(h): u for h, u in sorted(self.generators.items())},
        }


def weak_generators(d: ExtensionDiagram, h: int) -> List[int]:
    """Elements u of e⁻¹(h) with k(N)·u = e⁻¹(h)"""
    fib = set(d.fiber(h))
    G, k = d.G, d.k.map
    return [u for u in sorted(fib) if {G.rows[k[n]][u] for n in d.N.elements} == fib]


def schreier_generators(d: ExtensionDiagram, h: int) -> List[int]:
    """Weak generators whose factorizations g = k(n)·u are unique"""
    G, k = d.G, d.k.map
    return [
        u for u in weak_generators(d, h)
        if len({G.rows[k[n]][u] for n in d.N.elements}) == d.N.size
    ]


def default_generators(d: ExtensionDiagram, strict: bool) -> Optional[Dict[int, int]]:
    """
    Smallest valid generator per fibre, the identity over 1_H.

    Returns None when some fibre has no (strict or weak) generator.
    """
    out: Dict[int, int] = {}
    for h in d.H.elements:
        if h == d.H.identity:
            out[h] = d.G.identity
            continue
        cands = schreier_generators(d, h) if strict else weak_generators(d, h)
        if not cands:
            return None
        out[h] = cands[0]
    return out


def classify(d: ExtensionDiagram) -> ExtensionClass:
    """
    Compute every classification flag by direct search.

    Raises:
        NotAnExtension: check_extension fails
    """
    res = check_extension(d)
    if not res:
        raise NotAnExtension(f"not an extension: {res.law} at {res.witness}", res.witness)

    G, N = d.G, d.N
    k = d.k.map
    fibers = d.fibers()

    strict_gens = default_generators(d, strict=True)
    weak_gens = strict_gens if strict_gens is not None else default_generators(d, strict=False)
    is_schreier = strict_gens is not None
    is_weakly = weak_gens is not None

    special = True
    special_weak = True
    for fib in fibers:
        for g1 in fib:
            for g2 in fib:
                count = sum(1 for n in N.elements if G.rows[k[n]][g2] == g1)
                if count == 0:
                    special = special_weak = False
                elif count > 1:
                    special = False
            if not special_weak:
                break
        if not special_weak:
            break

    leech: Optional[bool] = None
    if N.is_group():
        leech = all(
            {G.rows[g][k[n]] for n in N.elements} == {G.rows[k[n]][g] for n in N.elements}
            for g in G.elements
        )

    split = weak_split = None
    if d.s is not None:
        split = weak_split = True
        for g in G.elements:
            count = len(d.factorizations(g, d.s.map[d.e.map[g]]))
            if count == 0:
                split = weak_split = False
                break
            if count > 1:
                split = False

    cls = ExtensionClass(
        is_extension=True,
        is_schreier=is_schreier,
        is_weakly_schreier=is_weakly,
        is_special_schreier=special,
        is_special_weakly_schreier=special_weak,
        is_leech_normal=leech,
        generators=weak_gens,
        is_schreier_split=split,
        is_weakly_schreier_split=weak_split,
    )
    logger.debug("classified |G|=%d: %s", G.size, cls.to_dict())
    return cls


# ============================================================
# 3) NORMALISER + ARTIN GLUEING
# ============================================================

def _closure_failure(G: FiniteMonoid, S: frozenset) -> Optional[Tuple[int, ...]]:
    """First witness that S is not a submonoid: (identity,) or a pair (a, b)"""
    if G.identity not in S:
        return (G.identity,)
    for a in sorted(S):
        for b in sorted(S):
            if G.rows[a][b] not in S:
                return (a, b)
    return None


def right_normaliser(G: FiniteMonoid, S: Union[Set[int], Sequence[int]]) -> frozenset:
    """
    {g in G : g·S ⊆ S·g}

    Raises:
        SchreierKitError: S is not a submonoid of G
        InvariantViolation: the result is not a submonoid
    """
    S = frozenset(S)
    bad = _closure_failure(G, S)
    if bad is not None:
        raise SchreierKitError("S must be a submonoid of G", bad)
    out = frozenset(
        g for g in G.elements
        if {G.rows[g][x] for x in S} <= {G.rows[x][g] for x in S}
    )
    bad = _closure_failure(G, out)
    if bad is not None:
        raise InvariantViolation("right normaliser is not a submonoid", bad)
    return out


def _require_semilattice(M: FiniteMonoid, name: str):
    if not M.is_commutative() or len(M.idempotents()) != M.size:
        raise NotASemilattice(f"{name} is not an idempotent commutative monoid")


def artin_glueing(H: FiniteMonoid, N: FiniteMonoid, f: Union[MonoidHom, Sequence[int]]) -> ExtensionDiagram:
    """
    Split extension N -> Gl(f) -> H for a finite-meet-preserving f: H -> N.

    Gl(f) = {(n, h) : n ≤ f(h)} with pointwise meets, where x ≤ y iff x·y = x.
    Elements are ordered by (n, h).
    k(n) = (n, 1), e(n, h) = h, s(h) = (f(h), h).
    """
    _require_semilattice(H, "H")
    _require_semilattice(N, "N")
    fmap = tuple(f.map) if isinstance(f, MonoidHom) else tuple(int(v) for v in f)
    if len(fmap) != H.size or any(not (0 <= v < N.size) for v in fmap):
        raise SchreierKitError("f must assign an element of N to each element of H")
    if fmap[H.identity] != N.identity:
        raise NotMeetPreserving(H.identity, H.identity)
    for h1 in H.elements:
        for h2 in H.elements:
            if fmap[H.rows[h1][h2]] != N.rows[fmap[h1]][fmap[h2]]:
                raise NotMeetPreserving(h1, h2)

    elements = [(n, h) for n in N.elements for h in H.elements if N.rows[n][fmap[h]] == n]
    index = {x: i for i, x in enumerate(elements)}
    Gl = monoid_from_function(
        elements,
        lambda x, y: (N.rows[x[0]][y[0]], H.rows[x[1]][y[1]]),
        (N.identity, H.identity),
        [f"({N.label(n)},{H.label(h)})" for n, h in elements],
    )
    k = MonoidHom(N, Gl, tuple(index[(n, H.identity)] for n in N.elements))
    e = MonoidHom(Gl, H, tuple(h for _, h in elements))
    s = MonoidHom(H, Gl, tuple(index[(fmap[h], h)] for h in H.elements))
    logger.info("✓ Artin glueing: |Gl(f)| = %d", Gl.size)
    return ExtensionDiagram(N, Gl, H, k, e, s)


def direct_product_extension(N: FiniteMonoid, H: FiniteMonoid) -> ExtensionDiagram:
    """N -> N×H -> H with inclusion, projection and the canonical splitting"""
    G = direct_product(N, H)
    nh = H.size
    k = MonoidHom(N, G, tuple(n * nh + H.identity for n in N.elements))
    e = MonoidHom(G, H, tuple(g % nh for g in G.elements))
    s = MonoidHom(H, G, tuple(N.identity * nh + h for h in H.elements))
    return ExtensionDiagram(N, G, H, k, e, s)


# ============================================================
# 4) MORPHISMS OF EXTENSIONS
# ============================================================

def is_extension_morphism(d1: ExtensionDiagram, d2: ExtensionDiagram,
                          fmap: Sequence[int], split: bool = False) -> CheckResult:
    """
    f: G1 -> G2 is a homomorphism with f∘k1 = k2, e2∘f = e1
    (and f∘s1 = s2 when `split`).
    """
    if d1.N != d2.N or d1.H != d2.H:
        return CheckResult.failed("shape", (), "diagrams have different kernels or quotients")
    res = check_hom(MonoidHom(d1.G, d2.G, tuple(fmap)))
    if not res:
        return CheckResult.failed("hom_" + (res.law or ""), res.witness or ())
    for n in d1.N.elements:
        if fmap[d1.k.map[n]] != d2.k.map[n]:
            return CheckResult.failed("commutes_k", (n,))
    for g in d1.G.elements:
        if d2.e.map[fmap[g]] != d1.e.map[g]:
            return CheckResult.failed("commutes_e", (g,))
    if split:
        if d1.s is None or d2.s is None:
            return CheckResult.failed("commutes_s", (), "splitting missing")
        for h in d1.H.elements:
            if fmap[d1.s.map[h]] != d2.s.map[h]:
                return CheckResult.failed("commutes_s", (h,))
    return CheckResult.passed()


def is_extension_isomorphism(d1: ExtensionDiagram, d2: ExtensionDiagram,
                             fmap: Sequence[int], split: bool = False) -> CheckResult:
    res = is_extension_morphism(d1, d2, fmap, split)
    if not res:
        return res
    if len(set(fmap)) != d2.G.size or d1.G.size != d2.G.size:
        return CheckResult.failed("bijective", (), "morphism is not a bijection")
    return CheckResult.passed()


def find_extension_isomorphism(d1: ExtensionDiagram, d2: ExtensionDiagram,
                               split: bool = False) -> Optional[MonoidHom]:
    """
    First isomorphism G1 -> G2 commuting with k, e (and s when `split`).
    """
    if d1.N != d2.N or d1.H != d2.H or d1.G.size != d2.G.size:
        return None
    if split and (d1.s is None or d2.s is None):
        return None
    fib2 = d2.fibers()
    allowed: List[Set[int]] = [set(fib2[d1.e.map[g]]) for g in d1.G.elements]
    for n in d1.N.elements:
        allowed[d1.k.map[n]] &= {d2.k.map[n]}
    if split:
        for h in d1.H.elements:
            allowed[d1.s.map[h]] &= {d2.s.map[h]}
    if any(not a for a in allowed):
        return None
    return find_isomorphism(d1.G, d2.G, allowed)


def extension_morphisms(d1: ExtensionDiagram, d2: ExtensionDiagram,
                        split: bool = False) -> Iterator[MonoidHom]:
    """Every morphism of extensions d1 -> d2 (identity on N and H)"""
    if d1.N != d2.N or d1.H != d2.H:
        return
    for f in all_homomorphisms(d1.G, d2.G):
        if is_extension_morphism(d1, d2, f.map, split):
            yield f


def describe(d: ExtensionDiagram) -> Dict[str, Any]:
    """Small summary used in reports"""
    return {
        "sizes": {"N": d.N.size, "G": d.G.size, "H": d.H.size},
        "k": list(d.k.map),
        "e": list(d.e.map),
        "s": None if d.s is None else list(d.s.map),
    }


def diagram_from_maps(N: FiniteMonoid, G: FiniteMonoid, H: FiniteMonoid,
                      k: Sequence[int], e: Sequence[int],
                      s: Optional[Sequence[int]] = None) -> ExtensionDiagram:
    return ExtensionDiagram(
        N, G, H, MonoidHom(N, G, tuple(k)), MonoidHom(G, H, tuple(e)),
        None if s is None else MonoidHom(H, G, tuple(s)),
    )


