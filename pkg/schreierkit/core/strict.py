"""
Strict Module
Actions, semidirect products, Schreier factor systems and crossed products,
extraction from Schreier (split) extensions and γ-equivalence.

Carrier convention for N ⋊ H and crossed products: (n, h) is encoded
as n·|H| + h, so k(n) = (n, 1), e(n, h) = h and s(h) = (1, h).
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Any, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from schreierkit.core.extension import (
    ExtensionDiagram, classify, is_extension_isomorphism, schreier_generators,
    weak_generators,
)
from schreierkit.core.monoid import (
    CheckResult, FiniteMonoid, MonoidHom, all_homomorphisms, validate_monoid,
)
from schreierkit.errors import (
    ActionInvalid, BadGeneratorChoice, FactorSystemInvalid, NotSchreier,
    InvariantViolation, NotSchreierSplit, SchreierKitError,
)

logger = logging.getLogger(__name__)


def _frozen(values: Any) -> np.ndarray:
    arr = np.array(values, dtype=np.int64)
    arr.setflags(write=False)
    return arr


# ============================================================
# 1) DATA
# ============================================================

@dataclass(frozen=True, eq=False)
class Action:
    """α: H × N -> N stored as an |H|×|N| table"""
    H: FiniteMonoid
    N: FiniteMonoid
    alpha: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "alpha", _frozen(self.alpha))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Action):
            return NotImplemented
        return self.H == other.H and self.N == other.N and np.array_equal(self.alpha, other.alpha)

    def __hash__(self) -> int:
        return hash((self.H, self.N, self.alpha.tobytes()))

    @cached_property
    def rows(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(tuple(int(v) for v in row) for row in self.alpha)

    def __call__(self, h: int, n: int) -> int:
        return self.rows[h][n]


@dataclass(frozen=True, eq=False)
class FactorSystem:
    """(α, χ) with χ: H × H -> N stored as an |H|×|H| table"""
    action: Action
    chi: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "chi", _frozen(self.chi))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FactorSystem):
            return NotImplemented
        return self.action == other.action and np.array_equal(self.chi, other.chi)

    def __hash__(self) -> int:
        return hash((self.action, self.chi.tobytes()))

    @property
    def H(self) -> FiniteMonoid:
        return self.action.H

    @property
    def N(self) -> FiniteMonoid:
        return self.action.N

    @cached_property
    def chi_rows(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(tuple(int(v) for v in row) for row in self.chi)


@dataclass(frozen=True)
class GammaWitness:
    """
    γ: H -> N inducing an isomorphism f([n], h) = ([n·γ(h)], h).

    invertible: every γ(h) is a unit of N (strict), or the one-sided
    relative inverses exist (relaxed).
    common_inverse / left_inverse_at_identity are filled by the relaxed
    search only (see relaxed.ws_factor_systems_equivalent).
    """
    gamma: Tuple[int, ...]
    invertible: bool
    common_inverse: Optional[bool] = None
    left_inverse_at_identity: Optional[bool] = None

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"gamma": list(self.gamma), "invertible": self.invertible}
        if self.common_inverse is not None:
            out["common_inverse"] = self.common_inverse
        if self.left_inverse_at_identity is not None:
            out["left_inverse_at_identity"] = self.left_inverse_at_identity
        return out


# ============================================================
# 2) CHECKS
# ============================================================

def _shape_ok(H: FiniteMonoid, N: FiniteMonoid, table: Any, rows: int, cols: int, cols_range: int) -> bool:
    arr = np.asarray(table)
    if arr.shape != (rows, cols):
        return False
    return bool(np.all((arr >= 0) & (arr < cols_range)))


def _action_laws(H: FiniteMonoid, N: FiniteMonoid, a: Sequence[Sequence[int]],
                 numbered: bool, composition: bool) -> CheckResult:
    """Conditions 1-3 (and the composition law when `composition`)"""
    name = (lambda i, text: f"condition_{i}") if numbered else (lambda i, text: text)
    one = N.identity
    for n in N.elements:
        if a[H.identity][n] != n:
            return CheckResult.failed(name(1, "unit"), (n,), "α(1,n) != n")
    for h in H.elements:
        if a[h][one] != one:
            return CheckResult.failed(name(2, "fixes_identity"), (h,), "α(h,1) != 1")
    for h in H.elements:
        for n1 in N.elements:
            for n2 in N.elements:
                if a[h][N.rows[n1][n2]] != N.rows[a[h][n1]][a[h][n2]]:
                    return CheckResult.failed(name(3, "endomorphism"), (h, n1, n2),
                                              "α(h,n1n2) != α(h,n1)α(h,n2)")
    if composition:
        for h1 in H.elements:
            for h2 in H.elements:
                for n in N.elements:
                    if a[H.rows[h1][h2]][n] != a[h1][a[h2][n]]:
                        return CheckResult.failed("composition", (h1, h2, n),
                                                  "α(h1h2,n) != α(h1,α(h2,n))")
    return CheckResult.passed()


def check_action(H: FiniteMonoid, N: FiniteMonoid, alpha: Any) -> CheckResult:
    """
    The four action laws: α(1,n) = n, α(h,1) = 1, α(h,·) endomorphism,
    α(h1h2,n) = α(h1,α(h2,n)).
    """
    if not _shape_ok(H, N, alpha, H.size, N.size, N.size):
        return CheckResult.failed("shape", (), "alpha must be |H|×|N| with entries in N")
    a = [[int(v) for v in row] for row in alpha]
    return _action_laws(H, N, a, numbered=False, composition=True)


def check_factor_system(fs: FactorSystem) -> CheckResult:
    """
    Conditions 1-6 of a Schreier factor system, exhaustively.

    4: χ(h1,h2)α(h1h2,n) = α(h1,α(h2,n))χ(h1,h2)
    5: χ(1,h) = 1 = χ(h,1)
    6: χ(x,y)χ(xy,z) = α(x,χ(y,z))χ(x,yz)
    """
    H, N = fs.H, fs.N
    if not _shape_ok(H, N, fs.action.alpha, H.size, N.size, N.size):
        return CheckResult.failed("shape", (), "alpha must be |H|×|N| with entries in N")
    if not _shape_ok(H, N, fs.chi, H.size, H.size, N.size):
        return CheckResult.failed("shape", (), "chi must be |H|×|H| with entries in N")
    a, c = fs.action.rows, fs.chi_rows
    res = _action_laws(H, N, a, numbered=True, composition=False)
    if not res:
        return res
    mN, mH = N.rows, H.rows
    for h1 in H.elements:
        for h2 in H.elements:
            x = c[h1][h2]
            for n in N.elements:
                if mN[x][a[mH[h1][h2]][n]] != mN[a[h1][a[h2][n]]][x]:
                    return CheckResult.failed("condition_4", (h1, h2, n),
                                              "χ(h1,h2)α(h1h2,n) != α(h1,α(h2,n))χ(h1,h2)")
    for h in H.elements:
        if c[H.identity][h] != N.identity or c[h][H.identity] != N.identity:
            return CheckResult.failed("condition_5", (h,), "χ(1,h) = 1 = χ(h,1) fails")
    for x in H.elements:
        for y in H.elements:
            for z in H.elements:
                lhs = mN[c[x][y]][c[mH[x][y]][z]]
                rhs = mN[a[x][c[y][z]]][c[x][mH[y][z]]]
                if lhs != rhs:
                    return CheckResult.failed("condition_6", (x, y, z),
                                              "χ(x,y)χ(xy,z) != α(x,χ(y,z))χ(x,yz)")
    return CheckResult.passed()


# ============================================================
# 3) CONSTRUCTIONS
# ============================================================

def _twisted_product(N: FiniteMonoid, H: FiniteMonoid, alpha: np.ndarray,
                     chi: Optional[np.ndarray]) -> FiniteMonoid:
    """(n1,h1)(n2,h2) = (n1·α(h1,n2)·χ(h1,h2), h1h2) on N × H"""
    nN, nH = N.size, H.size
    ni = np.repeat(np.arange(nN), nH)
    hi = np.tile(np.arange(nH), nN)
    n1, h1 = ni[:, None], hi[:, None]
    n2, h2 = ni[None, :], hi[None, :]
    new_n = N.table[n1, alpha[h1, n2]]
    if chi is not None:
        new_n = N.table[new_n, chi[h1, h2]]
    table = new_n * nH + H.table[h1, h2]
    names = [f"({N.label(int(n))},{H.label(int(h))})" for n, h in zip(ni, hi)]
    return validate_monoid(nN * nH, N.identity * nH + H.identity, table.tolist(), names)


def _product_diagram(N: FiniteMonoid, H: FiniteMonoid, G: FiniteMonoid, split: bool) -> ExtensionDiagram:
    nH = H.size
    k = MonoidHom(N, G, tuple(n * nH + H.identity for n in N.elements))
    e = MonoidHom(G, H, tuple(g % nH for g in G.elements))
    s = MonoidHom(H, G, tuple(N.identity * nH + h for h in H.elements)) if split else None
    return ExtensionDiagram(N, G, H, k, e, s)


def semidirect(action: Action) -> ExtensionDiagram:
    """
    Split extension N -> N ⋊_α H -> H.

    Raises:
        ActionInvalid: action laws fail
    """
    res = check_action(action.H, action.N, action.alpha)
    if not res:
        raise ActionInvalid(f"invalid action: {res.law} at {res.witness}", res.witness)
    G = _twisted_product(action.N, action.H, action.alpha, None)
    logger.debug("✓ semidirect product of order %d", G.size)
    return _product_diagram(action.N, action.H, G, split=True)


def crossed_product(fs: FactorSystem) -> ExtensionDiagram:
    """
    Schreier extension N -> N ⋊_α^χ H -> H; generators are (1, h).

    Raises:
        FactorSystemInvalid: one of conditions 1-6 fails (number and witness attached)
    """
    res = check_factor_system(fs)
    if not res:
        raise FactorSystemInvalid(f"invalid factor system: {res.law} at {res.witness}", res.witness)
    G = _twisted_product(fs.N, fs.H, fs.action.alpha, fs.chi)
    return _product_diagram(fs.N, fs.H, G, split=False)


def trivial_action(H: FiniteMonoid, N: FiniteMonoid) -> Action:
    return Action(H, N, [[n for n in N.elements] for _ in H.elements])


def trivial_factor_system(action: Action) -> FactorSystem:
    return FactorSystem(action, [[action.N.identity] * action.H.size for _ in action.H.elements])


# ============================================================
# 4) EXTRACTION
# ============================================================

def _unique_solution(d: ExtensionDiagram, target: int, u: int) -> int:
    sols = d.factorizations(target, u)
    if len(sols) != 1:
        raise SchreierKitError(f"expected a unique n with k(n)·{u} = {target}, found {len(sols)}")
    return sols[0]


def extract_action(d: ExtensionDiagram) -> Action:
    """
    Unique α with k(α(h,n))·s(h) = s(h)·k(n).

    Raises:
        NotSchreierSplit: the diagram is not a Schreier split extension
    """
    cls = classify(d)
    if not cls.is_schreier_split:
        raise NotSchreierSplit("extension is not Schreier split")
    G, k, s = d.G, d.k.map, d.s.map
    alpha = [[_unique_solution(d, G.rows[s[h]][k[n]], s[h]) for n in d.N.elements]
             for h in d.H.elements]
    return Action(d.H, d.N, alpha)


def resolve_generators(d: ExtensionDiagram, defaults: Optional[Dict[int, int]],
                       choice: Optional[Mapping[int, int]], strict: bool) -> Dict[int, int]:
    """
    Merge explicit generator overrides onto the defaults and validate them.

    Raises:
        BadGeneratorChoice: wrong fibre, u_1 != 1, or not a generator
    """
    gens = dict(defaults or {})
    for h, u in (choice or {}).items():
        gens[int(h)] = int(u)
    for h in d.H.elements:
        if h not in gens:
            raise BadGeneratorChoice(h, "no generator given")
        u = gens[h]
        if not (0 <= u < d.G.size) or d.e.map[u] != h:
            raise BadGeneratorChoice(h, "element lies in another fibre")
        if h == d.H.identity and u != d.G.identity:
            raise BadGeneratorChoice(h, "u_1 must be the identity")
        valid = schreier_generators(d, h) if strict else weak_generators(d, h)
        if u not in valid:
            raise BadGeneratorChoice(h)
    return gens


def extract_factor_system(d: ExtensionDiagram,
                          generator_choice: Optional[Mapping[int, int]] = None) -> FactorSystem:
    """
    (α, χ) from a Schreier extension and a choice of generators u_h:
        k(α(h,n))·u_h = u_h·k(n)
        k(χ(h1,h2))·u_{h1h2} = u_{h1}·u_{h2}

    Args:
        d: Schreier extension
        generator_choice: optional overrides {h: u_h}; defaults to the
            smallest generator of each fibre

    Raises:
        NotSchreier, BadGeneratorChoice
    """
    cls = classify(d)
    if not cls.is_schreier:
        raise NotSchreier("extension is not Schreier")
    u = resolve_generators(d, cls.generators, generator_choice, strict=True)
    G, H, k = d.G, d.H, d.k.map
    alpha = [[_unique_solution(d, G.rows[u[h]][k[n]], u[h]) for n in d.N.elements]
             for h in H.elements]
    chi = [[_unique_solution(d, G.rows[u[h1]][u[h2]], u[H.rows[h1][h2]]) for h2 in H.elements]
           for h1 in H.elements]
    return FactorSystem(Action(d.H, d.N, alpha), chi)


def reconstruction_map(d: ExtensionDiagram, generators: Mapping[int, int]) -> Tuple[int, ...]:
    """(n, h) ↦ k(n)·u_h from the crossed-product carrier into G"""
    nH = d.H.size
    return tuple(d.G.rows[d.k.map[x // nH]][generators[x % nH]] for x in range(d.N.size * nH))


# ============================================================
# 5) EQUIVALENCE + ENUMERATION
# ============================================================

def _gamma_candidates(H: FiniteMonoid, values: Sequence[int], one: int) -> Iterator[Tuple[int, ...]]:
    free = [h for h in H.elements if h != H.identity]
    for combo in product(values, repeat=len(free)):
        gamma = [one] * H.size
        for h, v in zip(free, combo):
            gamma[h] = v
        yield tuple(gamma)


def check_gamma(fs1: FactorSystem, fs2: FactorSystem, gamma: Sequence[int]) -> CheckResult:
    """
    γ carries (α1, χ1) to (α2, χ2), i.e. f(n,h) = (n·γ(h), h) is a morphism:
        γ(1) = 1
        α1(h,n)·γ(h) = γ(h)·α2(h,n)
        χ1(h1,h2)·γ(h1h2) = γ(h1)·α2(h1,γ(h2))·χ2(h1,h2)

    With γ(h1h2) a unit the last line reads
    χ1(h1,h2) = γ(h1)·α2(h1,γ(h2))·χ2(h1,h2)·γ(h1h2)⁻¹.
    """
    H, N = fs1.H, fs1.N
    mN, mH = N.rows, H.rows
    a1, a2 = fs1.action.rows, fs2.action.rows
    c1, c2 = fs1.chi_rows, fs2.chi_rows
    if len(gamma) != H.size or any(not 0 <= g < N.size for g in gamma):
        return CheckResult.failed("shape", (), "gamma must be |H| entries in N")
    if gamma[H.identity] != N.identity:
        return CheckResult.failed("gamma_normalised", (H.identity,))
    for h in H.elements:
        for n in N.elements:
            if mN[a1[h][n]][gamma[h]] != mN[gamma[h]][a2[h][n]]:
                return CheckResult.failed("gamma_action", (h, n), "α1(h,n)γ(h) != γ(h)α2(h,n)")
    for h1 in H.elements:
        for h2 in H.elements:
            lhs = mN[c1[h1][h2]][gamma[mH[h1][h2]]]
            rhs = mN[mN[gamma[h1]][a2[h1][gamma[h2]]]][c2[h1][h2]]
            if lhs != rhs:
                return CheckResult.failed("gamma_cocycle", (h1, h2),
                                          "χ1(h1,h2)γ(h1h2) != γ(h1)α2(h1,γ(h2))χ2(h1,h2)")
    return CheckResult.passed()


def factor_systems_equivalent(fs1: FactorSystem, fs2: FactorSystem,
                              require_invertible: bool = True) -> Optional[GammaWitness]:
    """
    First γ: H -> N (γ(1) = 1) whose f(n,h) = (n·γ(h), h) is an
    isomorphism of extensions N ⋊^χ1 H -> N ⋊^χ2 H.

    Args:
        require_invertible: restrict γ to units of N; with False every γ
            is tried and f must itself be bijective

    Returns:
        GammaWitness or None

    Raises:
        InvariantViolation: the isomorphism found does not satisfy check_gamma
    """
    if fs1.H != fs2.H or fs1.N != fs2.N:
        raise SchreierKitError("factor systems live over different H, N")
    H, N = fs1.H, fs1.N
    d1, d2 = crossed_product(fs1), crossed_product(fs2)
    T1, T2 = d1.G.table, d2.G.table
    nH = H.size
    values = sorted(N.units()) if require_invertible else list(N.elements)
    unit_set = N.units()
    for gamma in _gamma_candidates(H, values, N.identity):
        fmap = np.array([N.rows[x // nH][gamma[x % nH]] * nH + x % nH for x in range(N.size * nH)])
        if len(set(fmap.tolist())) != len(fmap):
            continue
        if not np.array_equal(fmap[T1], T2[fmap[:, None], fmap[None, :]]):
            continue
        if is_extension_isomorphism(d1, d2, fmap.tolist()):
            res = check_gamma(fs1, fs2, gamma)
            if not res:
                raise InvariantViolation(f"isomorphism found for γ={gamma} but {res.law} fails",
                                         res.witness)
            return GammaWitness(gamma, all(g in unit_set for g in gamma))
    return None


def enumerate_actions(H: FiniteMonoid, N: FiniteMonoid) -> Iterator[Action]:
    """Every action of H on N, rows drawn from End(N) in lexicographic order"""
    endos = [f.map for f in all_homomorphisms(N, N)]
    free = [h for h in H.elements if h != H.identity]
    ident = tuple(N.elements)
    for combo in product(endos, repeat=len(free)):
        rows: List[Tuple[int, ...]] = [ident] * H.size
        for h, row in zip(free, combo):
            rows[h] = row
        if all(rows[H.rows[h1][h2]][n] == rows[h1][rows[h2][n]]
               for h1 in free for h2 in free for n in N.elements):
            yield Action(H, N, rows)
