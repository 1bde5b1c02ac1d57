"""
Oracle Module
Brute-force ground truth: catalogs of small monoids, censuses of
extensions between them and the census comparisons that check every
characterization (actions, relaxed actions, factor systems, H²).
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Dict, Iterable, Iterator, List, Optional, Tuple

import pandas as pd

from schreierkit.core.cohomology import h2, realize
from schreierkit.core.extension import (
    ExtensionClass, ExtensionDiagram, check_extension, classify,
    find_extension_isomorphism,
)
from schreierkit.core.isomorphism import find_isomorphism, monoid_invariants
from schreierkit.core.monoid import FiniteMonoid, MonoidHom, all_homomorphisms, is_abelian_group
from schreierkit.core.relaxed import (
    RelaxedAction, WSFactorSystem, carrier_size, enumerate_relaxed_actions,
    enumerate_ws_factor_systems, relaxed_crossed_product,
    extract_relaxed_action, extract_ws_factor_system, relaxed_actions_equal, relaxed_semidirect,
    ws_factor_systems_equivalent,
)
from schreierkit.core.strict import enumerate_actions, extract_action, extract_factor_system, semidirect
from schreierkit.errors import OrderTooLarge, SchreierKitError

logger = logging.getLogger(__name__)

MAX_CATALOG_ORDER = 5
MAX_TOTAL_SIZE = 16
KNOWN_CATALOG_COUNTS = {1: 1, 2: 2, 3: 7, 4: 35, 5: 228}


# ============================================================
# 1) MONOID CATALOGS
# ============================================================

@dataclass(frozen=True)
class MonoidCatalog:
    """Pairwise non-isomorphic monoids of one order, in discovery order"""
    order: int
    monoids: Tuple[FiniteMonoid, ...]

    def __len__(self) -> int:
        return len(self.monoids)

    def __iter__(self) -> Iterator[FiniteMonoid]:
        return iter(self.monoids)

    def __getitem__(self, i: int) -> FiniteMonoid:
        return self.monoids[i]

    def index_of(self, M: FiniteMonoid) -> Optional[int]:
        """Catalog position of the entry isomorphic to M"""
        key = monoid_invariants(M)
        for i, C in enumerate(self.monoids):
            if monoid_invariants(C) == key and find_isomorphism(M, C) is not None:
                return i
        return None


@lru_cache(maxsize=None)
def enumerate_monoids(n: int) -> MonoidCatalog:
    """
    Every monoid of order n up to isomorphism.

    The identity is element 0; the remaining cells are filled row-major
    and each assignment checks only the associativity triples that read
    the new cell and are otherwise complete.

    Raises:
        OrderTooLarge: n > MAX_CATALOG_ORDER
    """
    if n < 1:
        raise SchreierKitError("catalog order must be positive")
    if n > MAX_CATALOG_ORDER:
        raise OrderTooLarge(f"order {n} exceeds the catalog cap {MAX_CATALOG_ORDER}", (n,))

    T = [[-1] * n for _ in range(n)]
    for x in range(n):
        T[0][x] = x
        T[x][0] = x
    cells = [(a, b) for a in range(1, n) for b in range(1, n)]
    buckets: Dict[Tuple, List[FiniteMonoid]] = {}
    found: List[FiniteMonoid] = []

    def consistent(a: int, b: int, v: int) -> bool:
        for z in range(n):
            bz, vz = T[b][z], T[v][z]
            if bz >= 0 and vz >= 0:
                r = T[a][bz]
                if r >= 0 and r != vz:
                    return False
        for x in range(n):
            xa, xv = T[x][a], T[x][v]
            if xa >= 0 and xv >= 0:
                left = T[xa][b]
                if left >= 0 and left != xv:
                    return False
        for x in range(n):
            for y in range(n):
                xy = T[x][y]
                if xy == a:
                    yb = T[y][b]
                    if yb >= 0:
                        r = T[x][yb]
                        if r >= 0 and r != v:
                            return False
                if xy == b:
                    ax = T[a][x]
                    if ax >= 0:
                        left = T[ax][y]
                        if left >= 0 and left != v:
                            return False
        return True

    def record():
        M = FiniteMonoid(n, 0, [row[:] for row in T])
        key = monoid_invariants(M)
        bucket = buckets.setdefault(key, [])
        if any(find_isomorphism(M, other) is not None for other in bucket):
            return
        bucket.append(M)
        found.append(M)

    def search(i: int):
        if i == len(cells):
            record()
            return
        a, b = cells[i]
        for v in range(n):
            T[a][b] = v
            if consistent(a, b, v):
                search(i + 1)
        T[a][b] = -1

    search(0)
    expected = KNOWN_CATALOG_COUNTS.get(n)
    if expected is not None and len(found) != expected:
        logger.warning("catalog of order %d has %d entries, expected %d", n, len(found), expected)
    logger.info("✓ catalog of order %d: %d monoids", n, len(found))
    return MonoidCatalog(n, tuple(found))


def catalog_upto(n: int) -> List[MonoidCatalog]:
    return [enumerate_monoids(i) for i in range(1, n + 1)]


# ============================================================
# 2) EXTENSION CENSUS
# ============================================================

@dataclass(frozen=True)
class CensusEntry:
    diagram: ExtensionDiagram
    classification: ExtensionClass
    iso_class_id: int
    catalog_index: int


@dataclass(frozen=True)
class ExtensionCensus:
    """
    Every extension of H by N whose total monoid comes from a catalog.

    Two entries share iso_class_id iff an extension isomorphism exists
    (commuting with s as well when mode == "split"). `truncated` is set
    when |N|·|H| exceeds the largest total size searched.
    """
    N: FiniteMonoid
    H: FiniteMonoid
    mode: str
    entries: Tuple[CensusEntry, ...]
    max_total_size: int
    truncated: bool

    @property
    def class_count(self) -> int:
        return len({e.iso_class_id for e in self.entries})

    def representatives(self, predicate: Optional[Callable[[ExtensionClass], Any]] = None) -> List[CensusEntry]:
        """First entry of each iso class, optionally filtered by its flags"""
        seen = set()
        out = []
        for entry in self.entries:
            if entry.iso_class_id in seen:
                continue
            seen.add(entry.iso_class_id)
            if predicate is None or predicate(entry.classification):
                out.append(entry)
        return out

    def count(self, predicate: Callable[[ExtensionClass], Any]) -> int:
        return len(self.representatives(predicate))

    def find_class(self, d: ExtensionDiagram) -> Optional[int]:
        """iso_class_id of the class containing d, if any"""
        split = self.mode == "split"
        for entry in self.representatives():
            if entry.diagram.G.size == d.G.size and \
                    find_extension_isomorphism(d, entry.diagram, split) is not None:
                return entry.iso_class_id
        return None

    def to_frame(self) -> pd.DataFrame:
        rows = []
        for entry in self.representatives():
            flags = entry.classification.to_dict()
            flags.pop("generators")
            rows.append({
                "iso_class": entry.iso_class_id,
                "order": entry.diagram.G.size,
                "catalog_index": entry.catalog_index,
                **flags,
            })
        return pd.DataFrame(rows)


def _extension_maps(N: FiniteMonoid, G: FiniteMonoid, H: FiniteMonoid) -> Iterator[Tuple[MonoidHom, MonoidHom]]:
    ks = [k for k in all_homomorphisms(N, G) if k.is_injective()]
    if not ks:
        return
    for e in all_homomorphisms(G, H):
        if not e.is_surjective():
            continue
        ker = {g for g in G.elements if e.map[g] == H.identity}
        if len(ker) != N.size:
            continue
        for k in ks:
            if set(k.map) == ker:
                yield k, e


def enumerate_extensions(N: FiniteMonoid, H: FiniteMonoid, mode: str = "all",
                         max_total_size: Optional[int] = None) -> ExtensionCensus:
    """
    Census of extensions N -> G -> H over catalog monoids G.

    Args:
        mode: "all" (diagrams without splitting) or "split" (every
            homomorphic splitting of every extension)
        max_total_size: largest |G| searched, capped by MAX_CATALOG_ORDER
    """
    if mode not in ("all", "split"):
        raise SchreierKitError(f"unknown census mode {mode!r}")
    limit = MAX_TOTAL_SIZE if max_total_size is None else max_total_size
    if N.size * H.size > MAX_TOTAL_SIZE or limit > MAX_TOTAL_SIZE:
        raise OrderTooLarge(f"|N|·|H| and max_total_size must not exceed {MAX_TOTAL_SIZE}")
    top = min(limit, MAX_CATALOG_ORDER)
    truncated = N.size * H.size > top
    split = mode == "split"

    entries: List[CensusEntry] = []
    next_id = 0
    for order in range(max(1, N.size + H.size - 1), top + 1):
        for ci, G in enumerate(enumerate_monoids(order)):
            reps: List[CensusEntry] = []
            for k, e in _extension_maps(N, G, H):
                base = ExtensionDiagram(N, G, H, k, e)
                if not check_extension(base):
                    continue
                if split:
                    diagrams = [
                        base.with_splitting(s) for s in all_homomorphisms(H, G)
                        if all(e.map[s.map[h]] == h for h in H.elements)
                    ]
                else:
                    diagrams = [base]
                for d in diagrams:
                    cls = classify(d)
                    iso = next(
                        (r.iso_class_id for r in reps
                         if find_extension_isomorphism(d, r.diagram, split) is not None),
                        None,
                    )
                    if iso is None:
                        iso = next_id
                        next_id += 1
                        entry = CensusEntry(d, cls, iso, ci)
                        reps.append(entry)
                    else:
                        entry = CensusEntry(d, cls, iso, ci)
                    entries.append(entry)
    logger.info("✓ census |N|=%d |H|=%d mode=%s: %d entries, %d classes",
                N.size, H.size, mode, len(entries), next_id)
    return ExtensionCensus(N, H, mode, tuple(entries), top, truncated)


# ============================================================
# 3) CENSUS CHECK
# ============================================================

@dataclass(frozen=True)
class CensusRow:
    """
    One comparison. A truncated row compared counts over a census that
    stopped short of |N|·|H|; it is unverified, never a pass.
    """
    check: str
    label: str
    expected: int
    observed: int
    truncated: bool = False
    witnesses: Tuple[Any, ...] = ()

    @property
    def status(self) -> str:
        if self.expected != self.observed or self.witnesses:
            return "failed"
        return "unverified" if self.truncated else "ok"

    @property
    def ok(self) -> bool:
        return self.status == "ok"

    def to_dict(self) -> Dict[str, Any]:
        out = {
            "check": self.check,
            "label": self.label,
            "expected": self.expected,
            "observed": self.observed,
            "ok": self.ok,
            "status": self.status,
            "truncated": self.truncated,
        }
        if self.witnesses:
            out["witnesses"] = [str(w) for w in self.witnesses]
        return out


@dataclass(frozen=True)
class CensusReport:
    """Characterization counts (expected) against census class counts (observed)"""
    N: FiniteMonoid
    H: FiniteMonoid
    rows: Tuple[CensusRow, ...] = field(default=())

    @property
    def passed(self) -> bool:
        return all(r.ok for r in self.rows)

    @property
    def failures(self) -> List[CensusRow]:
        return [r for r in self.rows if r.status == "failed"]

    @property
    def unverified(self) -> List[CensusRow]:
        return [r for r in self.rows if r.status == "unverified"]

    def row(self, check: str, label: str = "") -> CensusRow:
        for r in self.rows:
            if r.check == check and (not label or r.label == label):
                return r
        raise KeyError(check)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "N": _monoid_label(self.N),
            "H": _monoid_label(self.H),
            "passed": self.passed,
            "unverified": [r.check for r in self.unverified],
            "rows": [r.to_dict() for r in self.rows],
        }

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([r.to_dict() for r in self.rows])


def _monoid_label(M: FiniteMonoid) -> str:
    return f"order {M.size}: " + ",".join(M.label(x) for x in M.elements)


def _bijection_row(check: str, census: ExtensionCensus, predicate: Callable[[ExtensionClass], Any],
                   built: Iterable[Tuple[str, ExtensionDiagram]], cap: int) -> CensusRow:
    """Match every constructed diagram to a census class, one-to-one"""
    targets = {e.iso_class_id for e in census.representatives(predicate)}
    hit: Dict[int, str] = {}
    witnesses: List[str] = []
    expected = 0
    for name, d in built:
        if d.G.size > cap:
            continue
        expected += 1
        cid = census.find_class(d)
        if cid is None or cid not in targets:
            witnesses.append(f"{name}: no matching census class")
        elif cid in hit:
            witnesses.append(f"{name}: same class as {hit[cid]}")
        else:
            hit[cid] = name
    for cid in sorted(targets - set(hit)):
        witnesses.append(f"census class {cid}: not constructed")
    return CensusRow(check, "", expected, len(targets), False, tuple(witnesses))


def _construction_row(check: str, built: Iterable[Tuple[str, Any, ExtensionDiagram]],
                      recovers: Callable[[Any, ExtensionDiagram], bool]) -> CensusRow:
    """
    Census-free comparison for pairs past the catalog: the split
    extensions built from distinct inputs must be pairwise
    non-isomorphic, and extraction must give each input back.
    """
    classes: List[Tuple[str, ExtensionDiagram]] = []
    witnesses: List[str] = []
    expected = 0
    for name, source, d in built:
        expected += 1
        try:
            if not recovers(source, d):
                witnesses.append(f"{name}: extraction does not recover it")
        except SchreierKitError as exc:
            witnesses.append(f"{name}: {exc}")
        clash = next((other for other, od in classes
                      if find_extension_isomorphism(d, od, split=True) is not None), None)
        if clash is None:
            classes.append((name, d))
        else:
            witnesses.append(f"{name}: same class as {clash}")
    return CensusRow(check, "constructed", expected, len(classes), False, tuple(witnesses))


def census_check(N: FiniteMonoid, H: FiniteMonoid,
                 cap: int = MAX_CATALOG_ORDER,
                 factor_system_max_order: int = 2,
                 include_relaxed_cohomology: bool = True) -> CensusReport:
    """
    Compare each characterization with the census:
        actions                      vs Schreier split classes
        relaxed actions              vs weakly Schreier split classes
        factor systems / equivalence vs weakly Schreier classes
        H² order per action          vs special (weakly) Schreier classes with that action

    Catalogs stop at order cap. When |N|·|H| exceeds it the split rows
    fall back to counting isomorphism classes among the constructed
    extensions, relaxed rows cover the relaxations whose carrier fits
    and rows that still depend on the short census are unverified.
    """
    top = min(cap, MAX_CATALOG_ORDER)
    complete = N.size * H.size <= top
    split_census = enumerate_extensions(N, H, "split", top)
    all_census = enumerate_extensions(N, H, "all", top)
    rows: List[CensusRow] = []

    actions = list(enumerate_actions(H, N))
    if complete:
        rows.append(_bijection_row(
            "actions_vs_schreier_split", split_census, lambda c: c.is_schreier_split,
            ((f"action {i}", semidirect(a)) for i, a in enumerate(actions)), top,
        ))
    else:
        rows.append(_construction_row(
            "actions_vs_schreier_split",
            ((f"action {i}", a, semidirect(a)) for i, a in enumerate(actions)),
            lambda a, d: extract_action(d) == a,
        ))

    all_relaxed = list(enumerate_relaxed_actions(H, N))
    relaxed = [a for a in all_relaxed if carrier_size(a.relaxation) <= top]
    # a weakly Schreier split G has |G| equal to its carrier, so this row is complete
    rows.append(_bijection_row(
        "relaxed_actions_vs_weakly_schreier_split", split_census,
        lambda c: c.is_weakly_schreier_split,
        ((f"relaxed action {i}", relaxed_semidirect(a)) for i, a in enumerate(relaxed)), top,
    ))
    if len(relaxed) < len(all_relaxed):
        rows.append(_construction_row(
            "relaxed_actions_vs_weakly_schreier_split",
            ((f"relaxed action {i}", a, relaxed_semidirect(a)) for i, a in enumerate(all_relaxed)),
            lambda a, d: relaxed_actions_equal(extract_relaxed_action(d), a),
        ))

    if N.size <= factor_system_max_order and H.size <= factor_system_max_order:
        # systems with identical crossed-product tables are trivially equivalent
        distinct: Dict[Tuple, WSFactorSystem] = {}
        for fs in enumerate_ws_factor_systems(H, N):
            if carrier_size(fs.relaxation) <= top:
                distinct.setdefault((fs.relaxation, relaxed_crossed_product(fs).G), fs)
        groups: List[WSFactorSystem] = []
        for fs in distinct.values():
            if not any(ws_factor_systems_equivalent(g, fs) is not None for g in groups):
                groups.append(fs)
        rows.append(CensusRow(
            "ws_factor_systems_vs_weakly_schreier", "", len(groups),
            all_census.count(lambda c: c.is_weakly_schreier), all_census.truncated,
        ))

    if is_abelian_group(N):
        if complete:
            strict_classes = all_census.representatives(lambda c: c.is_special_schreier)
            for i, a in enumerate(actions):
                observed = sum(1 for e in strict_classes if extract_factor_system(e.diagram).action == a)
                rows.append(CensusRow("h2_vs_special_schreier", f"action {i}",
                                      h2(a).h2_order, observed))
        if include_relaxed_cohomology:
            weak_classes = all_census.representatives(lambda c: c.is_special_weakly_schreier)
            extracted = []
            for e in weak_classes:
                w = extract_ws_factor_system(e.diagram)
                extracted.append(RelaxedAction(w.relaxation, w.alpha))
            for i, a in enumerate(relaxed):
                observed = sum(1 for x in extracted if relaxed_actions_equal(x, a))
                rows.append(CensusRow("relaxed_h2_vs_special_weakly_schreier", f"relaxed action {i}",
                                      h2(a).h2_order, observed))

    report = CensusReport(N, H, tuple(rows))
    if report.passed:
        logger.info("✓ census check passed for |N|=%d |H|=%d", N.size, H.size)
    elif report.failures:
        logger.warning("census check failed: %s", [r.check for r in report.failures])
    else:
        logger.warning("census check unverified: %s", [r.check for r in report.unverified])
    return report


def h2_bijection_witnesses(setting, census: ExtensionCensus) -> List[int]:
    """Census class id of the realization of each H² class, in class order"""
    result = h2(setting)
    return [census.find_class(realize(setting, chi)) for chi in result.h2_classes]
