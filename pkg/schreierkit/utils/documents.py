"""
Document Loader
JSON documents for every domain object: parse, validate, serialize.

Nested monoids are given inline or as a path resolved relative to the
document that references them. Serializing always inlines them, so
serialize(parse(x)) is the normalized form of x.
"""

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from schreierkit.core.extension import ExtensionDiagram, check_extension
from schreierkit.core.monoid import FiniteMonoid, MonoidHom, check_hom, validate_monoid
from schreierkit.core.relaxed import (
    Relaxation, RelaxedAction, WSFactorSystem, check_compatible_action,
    check_ws_factor_system,
)
from schreierkit.core.strict import Action, FactorSystem, check_action, check_factor_system
from schreierkit.errors import (
    ActionInvalid, FactorSystemInvalid, InvalidRelaxedAction, InvalidWSFactorSystem,
    InvariantViolation, NotAnExtension, OutOfRange, ParseError,
)

KINDS = (
    "monoid", "hom", "extension", "action", "relaxed_action",
    "factor_system", "ws_factor_system",
)

Value = Union[FiniteMonoid, MonoidHom, ExtensionDiagram, Action, RelaxedAction,
              FactorSystem, WSFactorSystem]


@dataclass(frozen=True)
class Document:
    """A parsed document: its kind and the validated domain object"""
    kind: str
    value: Value
    source: Optional[str] = None


# ============================================================
# 1) PARSING
# ============================================================

class DocumentLoader:
    """
    Parses documents, resolving monoid references against `base_dir`.
    """

    def __init__(self, base_dir: Optional[Path] = None):
        self.base_dir = Path(base_dir) if base_dir is not None else Path(".")
        self._monoids: Dict[Path, FiniteMonoid] = {}

    def load(self, path: Union[str, Path]) -> Document:
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ParseError(str(path), f"cannot read document: {exc}")
        except UnicodeDecodeError as exc:
            raise ParseError(str(path), f"document is not valid UTF-8: {exc.reason} at byte {exc.start}")
        loader = DocumentLoader(path.parent)
        loader._monoids = self._monoids
        doc = loader.parse(text, str(path))
        return Document(doc.kind, doc.value, str(path))

    def parse(self, text: str, location: str = "<document>") -> Document:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{location}:{exc.lineno}:{exc.colno}", exc.msg)
        return self.parse_data(data, location)

    def parse_data(self, data: Any, location: str = "<document>") -> Document:
        _require(isinstance(data, dict), location, "document must be a JSON object")
        kind = data.get("kind")
        _require(kind in KINDS, f"{location}.kind", f"unknown kind {kind!r}")
        handler = getattr(self, f"_parse_{kind}")
        return Document(kind, handler(data, location), location)

    # --------------------------------------------------------
    # kinds
    # --------------------------------------------------------

    def _parse_monoid(self, data: Dict[str, Any], loc: str) -> FiniteMonoid:
        size = _int(data, "size", loc)
        identity = _int(data, "identity", loc)
        table = _matrix(data, "table", loc, size, size, size)
        names = data.get("names")
        if names is not None:
            _require(isinstance(names, list) and len(names) == size
                     and all(isinstance(n, str) for n in names),
                     f"{loc}.names", "names must be one string per element")
        _require(size >= 1, f"{loc}.size", "size must be positive")
        _require(0 <= identity < size, f"{loc}.identity", "identity out of range")
        try:
            return validate_monoid(size, identity, table, names)
        except OutOfRange as exc:
            raise ParseError(f"{loc}.table", str(exc))

    def _monoid_ref(self, data: Dict[str, Any], key: str, loc: str) -> FiniteMonoid:
        _require(key in data, f"{loc}.{key}", "missing monoid")
        ref = data[key]
        if isinstance(ref, str):
            path = (self.base_dir / ref).resolve()
            if path not in self._monoids:
                doc = self.load(path)
                _require(doc.kind == "monoid", f"{loc}.{key}", f"{ref} is not a monoid document")
                self._monoids[path] = doc.value
            return self._monoids[path]
        _require(isinstance(ref, dict), f"{loc}.{key}", "monoid must be inline or a path")
        return self._parse_monoid(ref, f"{loc}.{key}")

    def _hom(self, dom: FiniteMonoid, cod: FiniteMonoid, data: Dict[str, Any],
             key: str, loc: str) -> MonoidHom:
        values = _vector(data, key, loc, dom.size, cod.size)
        return MonoidHom(dom, cod, tuple(values))

    def _parse_hom(self, data: Dict[str, Any], loc: str) -> MonoidHom:
        dom = self._monoid_ref(data, "domain", loc)
        cod = self._monoid_ref(data, "codomain", loc)
        f = self._hom(dom, cod, data, "map", loc)
        res = check_hom(f)
        if not res:
            raise InvariantViolation(f"{loc}: not a homomorphism ({res.law} at {res.witness})", res.witness)
        return f

    def _parse_extension(self, data: Dict[str, Any], loc: str) -> ExtensionDiagram:
        N = self._monoid_ref(data, "N", loc)
        G = self._monoid_ref(data, "G", loc)
        H = self._monoid_ref(data, "H", loc)
        k = self._hom(N, G, data, "k", loc)
        e = self._hom(G, H, data, "e", loc)
        s = self._hom(H, G, data, "s", loc) if data.get("s") is not None else None
        d = ExtensionDiagram(N, G, H, k, e, s)
        res = check_extension(d)
        if not res:
            raise NotAnExtension(f"{loc}: not an extension ({res.law} at {res.witness})", res.witness)
        return d

    def _relaxation(self, H: FiniteMonoid, N: FiniteMonoid, data: Dict[str, Any], loc: str) -> Relaxation:
        labels = _matrix(data, "relation", loc, H.size, N.size, N.size)
        return Relaxation.from_labels(H, N, labels)

    def _parse_action(self, data: Dict[str, Any], loc: str) -> Action:
        H = self._monoid_ref(data, "H", loc)
        N = self._monoid_ref(data, "N", loc)
        alpha = _matrix(data, "alpha", loc, H.size, N.size, N.size)
        res = check_action(H, N, alpha)
        if not res:
            raise ActionInvalid(f"{loc}: invalid action ({res.law} at {res.witness})", res.witness)
        return Action(H, N, alpha)

    def _parse_relaxed_action(self, data: Dict[str, Any], loc: str) -> RelaxedAction:
        H = self._monoid_ref(data, "H", loc)
        N = self._monoid_ref(data, "N", loc)
        E = self._relaxation(H, N, data, loc)
        alpha = _matrix(data, "alpha", loc, H.size, N.size, N.size)
        res = check_compatible_action(E, alpha)
        if not res:
            raise InvalidRelaxedAction(f"{loc}: invalid relaxed action ({res.law} at {res.witness})", res.witness)
        return RelaxedAction(E, alpha)

    def _parse_factor_system(self, data: Dict[str, Any], loc: str) -> FactorSystem:
        H = self._monoid_ref(data, "H", loc)
        N = self._monoid_ref(data, "N", loc)
        alpha = _matrix(data, "alpha", loc, H.size, N.size, N.size)
        chi = _matrix(data, "chi", loc, H.size, H.size, N.size)
        fs = FactorSystem(Action(H, N, alpha), chi)
        res = check_factor_system(fs)
        if not res:
            raise FactorSystemInvalid(f"{loc}: invalid factor system ({res.law} at {res.witness})", res.witness)
        return fs

    def _parse_ws_factor_system(self, data: Dict[str, Any], loc: str) -> WSFactorSystem:
        H = self._monoid_ref(data, "H", loc)
        N = self._monoid_ref(data, "N", loc)
        E = self._relaxation(H, N, data, loc)
        alpha = _matrix(data, "alpha", loc, H.size, N.size, N.size)
        chi = _matrix(data, "chi", loc, H.size, H.size, N.size)
        fs = WSFactorSystem(E, alpha, chi)
        res = check_ws_factor_system(fs)
        if not res:
            raise InvalidWSFactorSystem(f"{loc}: invalid factor system ({res.law} at {res.witness})", res.witness)
        return fs


def _require(cond: bool, location: str, message: str):
    if not cond:
        raise ParseError(location, message)


def _int(data: Dict[str, Any], key: str, loc: str) -> int:
    v = data.get(key)
    _require(isinstance(v, int) and not isinstance(v, bool), f"{loc}.{key}", "expected an integer")
    return v


def _indices(v: Any, where: str, length: int, bound: int) -> List[int]:
    _require(isinstance(v, list) and len(v) == length, where,
             f"expected a list of {length} element indices")
    for i, x in enumerate(v):
        _require(isinstance(x, int) and not isinstance(x, bool) and 0 <= x < bound,
                 f"{where}[{i}]", f"entry must be an index in [0, {bound})")
    return list(v)


def _vector(data: Dict[str, Any], key: str, loc: str, length: int, bound: int) -> List[int]:
    return _indices(data.get(key), f"{loc}.{key}", length, bound)


def _matrix(data: Dict[str, Any], key: str, loc: str, rows: int, cols: int, bound: int) -> List[List[int]]:
    m = data.get(key)
    _require(isinstance(m, list) and len(m) == rows, f"{loc}.{key}", f"expected {rows} rows")
    return [_indices(row, f"{loc}.{key}[{i}]", cols, bound) for i, row in enumerate(m)]


def parse(text: str, base_dir: Optional[Path] = None, location: str = "<document>") -> Document:
    return DocumentLoader(base_dir).parse(text, location)


def load(path: Union[str, Path]) -> Document:
    return DocumentLoader().load(path)


# ============================================================
# 2) SERIALIZATION
# ============================================================

def _table(rows: Any) -> List[List[int]]:
    return [[int(v) for v in row] for row in rows]


def monoid_payload(M: FiniteMonoid) -> Dict[str, Any]:
    out: Dict[str, Any] = {"kind": "monoid", "size": M.size, "identity": M.identity,
                           "table": _table(M.rows)}
    if M.names is not None:
        out["names"] = list(M.names)
    return out


def _inline(M: FiniteMonoid) -> Dict[str, Any]:
    return monoid_payload(M)


def to_payload(value: Value) -> Dict[str, Any]:
    """Domain object -> JSON-ready dict (kind first, monoids inline)"""
    if isinstance(value, FiniteMonoid):
        return monoid_payload(value)
    if isinstance(value, MonoidHom):
        return {"kind": "hom", "domain": _inline(value.domain),
                "codomain": _inline(value.codomain), "map": list(value.map)}
    if isinstance(value, ExtensionDiagram):
        return {"kind": "extension", "N": _inline(value.N), "G": _inline(value.G),
                "H": _inline(value.H), "k": list(value.k.map), "e": list(value.e.map),
                "s": None if value.s is None else list(value.s.map)}
    if isinstance(value, Action):
        return {"kind": "action", "H": _inline(value.H), "N": _inline(value.N),
                "alpha": _table(value.rows)}
    if isinstance(value, RelaxedAction):
        return {"kind": "relaxed_action", "H": _inline(value.H), "N": _inline(value.N),
                "relation": value.relaxation.to_list(), "alpha": _table(value.rows)}
    if isinstance(value, FactorSystem):
        return {"kind": "factor_system", "H": _inline(value.H), "N": _inline(value.N),
                "alpha": _table(value.action.rows), "chi": _table(value.chi_rows)}
    if isinstance(value, WSFactorSystem):
        return {"kind": "ws_factor_system", "H": _inline(value.H), "N": _inline(value.N),
                "relation": value.relaxation.to_list(), "alpha": _table(value.alpha_rows),
                "chi": _table(value.chi_rows)}
    raise TypeError(f"cannot serialize {type(value).__name__}")


def dumps(obj: Any) -> str:
    return json.dumps(obj, ensure_ascii=False, indent=2) + "\n"


def serialize(doc: Union[Document, Value]) -> str:
    value = doc.value if isinstance(doc, Document) else doc
    return dumps(to_payload(value))


def to_json(obj: Dict[str, Any], path: Path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(dumps(obj))

