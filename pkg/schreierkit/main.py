#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
schreierkit Main Entrypoint
===========================

Every operation of the toolkit on JSON documents, one subcommand each.
Reports go to stdout (JSON, or text with --pretty); logs go to stderr.

Exit codes: 0 success, 1 domain error or failed census, 2 parse error.

Usage:
    python -m schreierkit.main classify --input schreierkit/fixtures/w3_extension.json
    python -m schreierkit.main h2 --input schreierkit/fixtures/z2_trivial_action.json --pretty
    python -m schreierkit.main census-check --input schreierkit/fixtures/z2.json --input schreierkit/fixtures/two.json
"""

import argparse
import logging
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence

from schreierkit.census_pipeline import CensusConfig, CensusPipeline
from schreierkit.core.cohomology import baer_sum, h2, realize
from schreierkit.core.extension import (
    ExtensionDiagram, artin_glueing, classify, describe, find_extension_isomorphism,
    right_normaliser,
)
from schreierkit.core.isomorphism import find_isomorphism
from schreierkit.core.monoid import FiniteMonoid
from schreierkit.core.oracle import MAX_CATALOG_ORDER, catalog_upto
from schreierkit.core.relaxed import (
    Relaxation, RelaxedAction, embed_strict, enumerate_relaxed_actions,
    extract_relaxed_action, extract_ws_factor_system, relaxed_actions_equal,
    relaxed_crossed_product, relaxed_semidirect, ws_factor_systems_equivalent,
)
from schreierkit.core.strict import (
    Action, FactorSystem, crossed_product, enumerate_actions, extract_action,
    extract_factor_system, factor_systems_equivalent, semidirect,
)
from schreierkit.errors import OrderTooLarge, ParseError, SchreierKitError
from schreierkit.utils.documents import Document, DocumentLoader, monoid_payload, to_payload
from schreierkit.utils.reports import error_report, render

logger = logging.getLogger("schreierkit")

COMMANDS = (
    "validate", "classify", "semidirect", "crossed", "relaxed-semidirect",
    "relaxed-crossed", "extract", "h2", "baer-sum", "iso", "enumerate",
    "census-check", "glue",
)


# ============================================================
# 1) INPUT HELPERS
# ============================================================

def _expect(docs: List[Document], kinds: Sequence[Sequence[str]]) -> List[Document]:
    """Inputs in order, each of one of the allowed kinds"""
    if len(docs) != len(kinds):
        raise ParseError("--input", f"expected {len(kinds)} document(s), got {len(docs)}")
    for i, (doc, allowed) in enumerate(zip(docs, kinds)):
        if doc.kind not in allowed:
            raise ParseError(doc.source or f"--input[{i}]",
                             f"expected kind {' or '.join(allowed)}, got {doc.kind}")
    return docs


def parse_generators(values: Optional[Sequence[str]]) -> Optional[Dict[int, int]]:
    """['1:3', ...] -> {1: 3, ...}"""
    if not values:
        return None
    out: Dict[int, int] = {}
    for v in values:
        h, sep, u = v.partition(":")
        if not sep or not h.strip().isdigit() or not u.strip().isdigit():
            raise ParseError("--generator", f"expected h:index, got {v!r}")
        out[int(h)] = int(u)
    return out


def _extension_report(d: ExtensionDiagram) -> Dict[str, Any]:
    return {"classification": classify(d).to_dict(), "document": to_payload(d)}


def _monoid_summary(M: FiniteMonoid) -> Dict[str, Any]:
    return {
        "size": M.size,
        "commutative": M.is_commutative(),
        "group": M.is_group(),
        "units": len(M.units()),
        "idempotents": len(M.idempotents()),
    }


# ============================================================
# 2) COMMANDS
# ============================================================

def cmd_validate(args, docs: List[Document]) -> Dict[str, Any]:
    if not docs:
        raise ParseError("--input", "expected at least one document")
    out = []
    for doc in docs:
        entry: Dict[str, Any] = {"source": doc.source, "kind": doc.kind, "valid": True}
        if doc.kind == "monoid":
            entry.update(_monoid_summary(doc.value))
        elif doc.kind == "extension":
            entry["sizes"] = describe(doc.value)["sizes"]
        out.append(entry)
    return {"documents": out}


def cmd_classify(args, docs: List[Document]) -> Dict[str, Any]:
    (doc,) = _expect(docs, [("extension",)])
    d = doc.value
    image = set(d.k.map)
    return {
        "diagram": describe(d),
        "classification": classify(d).to_dict(),
        "right_normaliser": sorted(right_normaliser(d.G, image)),
    }


def cmd_semidirect(args, docs: List[Document]) -> Dict[str, Any]:
    (doc,) = _expect(docs, [("action",)])
    return _extension_report(semidirect(doc.value))


def cmd_crossed(args, docs: List[Document]) -> Dict[str, Any]:
    (doc,) = _expect(docs, [("factor_system",)])
    return _extension_report(crossed_product(doc.value))


def cmd_relaxed_semidirect(args, docs: List[Document]) -> Dict[str, Any]:
    (doc,) = _expect(docs, [("relaxed_action", "action")])
    action = doc.value
    if isinstance(action, Action):
        action = RelaxedAction(Relaxation.equality(action.H, action.N), action.alpha)
    return _extension_report(relaxed_semidirect(action))


def cmd_relaxed_crossed(args, docs: List[Document]) -> Dict[str, Any]:
    (doc,) = _expect(docs, [("ws_factor_system", "factor_system")])
    fs = doc.value
    if isinstance(fs, FactorSystem):
        fs = embed_strict(fs)
    return _extension_report(relaxed_crossed_product(fs))


def cmd_extract(args, docs: List[Document]) -> Dict[str, Any]:
    (doc,) = _expect(docs, [("extension",)])
    d: ExtensionDiagram = doc.value
    gens = parse_generators(args.generator)
    relaxed = args.mode == "relaxed"
    if d.is_split and gens is None:
        if relaxed:
            value = extract_relaxed_action(d)
            rebuilt = relaxed_semidirect(value)
        else:
            value = extract_action(d)
            rebuilt = semidirect(value)
        split = True
    else:
        if relaxed:
            value = extract_ws_factor_system(d, gens)
            rebuilt = relaxed_crossed_product(value)
        else:
            value = extract_factor_system(d, gens)
            rebuilt = crossed_product(value)
        split = False
    return {
        "mode": args.mode,
        "document": to_payload(value),
        "reconstructs": find_extension_isomorphism(d, rebuilt, split) is not None,
    }


def _setting_of(doc: Document, mode: str):
    if doc.kind in ("action", "relaxed_action"):
        return doc.value, None
    d: ExtensionDiagram = doc.value
    if mode == "relaxed":
        w = extract_ws_factor_system(d)
        return RelaxedAction(w.relaxation, w.alpha), w.chi_rows
    fs = extract_factor_system(d)
    return fs.action, fs.chi_rows


def cmd_h2(args, docs: List[Document]) -> Dict[str, Any]:
    (doc,) = _expect(docs, [("action", "relaxed_action", "extension")])
    setting, chi = _setting_of(doc, args.mode)
    result = h2(setting)
    out = result.to_dict()
    out["realizations"] = [
        {"class": i, "G": monoid_payload(realize(setting, c).G)}
        for i, c in enumerate(result.h2_classes)
    ]
    if chi is not None:
        out["input_class"] = result.classify_cocycle(chi)
    return out


def cmd_baer_sum(args, docs: List[Document]) -> Dict[str, Any]:
    d1, d2 = _expect(docs, [("extension",), ("extension",)])
    return _extension_report(baer_sum(d1.value, d2.value))


def cmd_iso(args, docs: List[Document]) -> Dict[str, Any]:
    a, b = _expect(docs, [
        ("monoid", "extension", "action", "relaxed_action", "factor_system", "ws_factor_system"),
    ] * 2)
    if a.kind != b.kind:
        raise ParseError(b.source or "--input[1]", f"cannot compare {a.kind} with {b.kind}")
    witness: Any = None
    if a.kind == "monoid":
        f = find_isomorphism(a.value, b.value)
        witness = None if f is None else list(f.map)
    elif a.kind == "extension":
        split = a.value.is_split and b.value.is_split
        f = find_extension_isomorphism(a.value, b.value, split)
        witness = None if f is None else list(f.map)
    elif a.kind == "action":
        witness = [] if a.value == b.value else None
    elif a.kind == "relaxed_action":
        witness = [] if relaxed_actions_equal(a.value, b.value) else None
    elif a.kind == "factor_system":
        g = factor_systems_equivalent(a.value, b.value)
        witness = None if g is None else g.to_dict()
    else:
        g = ws_factor_systems_equivalent(a.value, b.value)
        witness = None if g is None else g.to_dict()
    return {"kind": a.kind, "isomorphic": witness is not None, "witness": witness}


def cmd_enumerate(args, docs: List[Document]) -> Dict[str, Any]:
    if not docs:
        top = args.max_size or 4
        if top > MAX_CATALOG_ORDER:
            raise OrderTooLarge(f"monoid catalogs stop at order {MAX_CATALOG_ORDER}")
        return {"catalog_counts": {str(c.order): len(c.monoids) for c in catalog_upto(top)}}
    n_doc, h_doc = _expect(docs, [("monoid",), ("monoid",)])
    N, H = n_doc.value, h_doc.value
    if args.mode == "relaxed":
        items = [to_payload(a) for a in enumerate_relaxed_actions(H, N)]
    else:
        items = [to_payload(a) for a in enumerate_actions(H, N)]
    return {"mode": args.mode, "count": len(items), "items": items}


def cmd_census_check(args, docs: List[Document]) -> Dict[str, Any]:
    n_doc, h_doc = _expect(docs, [("monoid",), ("monoid",)])
    cfg = CensusConfig(catalog_cap=args.max_size or MAX_CATALOG_ORDER, verbose=args.verbose)
    report = CensusPipeline(cfg).check_pair(n_doc.value, h_doc.value)
    out = report.to_dict()
    out["ok"] = report.passed
    return out


def cmd_glue(args, docs: List[Document]) -> Dict[str, Any]:
    (doc,) = _expect(docs, [("hom",)])
    f = doc.value
    return _extension_report(artin_glueing(f.domain, f.codomain, f))


HANDLERS: Dict[str, Callable[[argparse.Namespace, List[Document]], Dict[str, Any]]] = {
    "validate": cmd_validate,
    "classify": cmd_classify,
    "semidirect": cmd_semidirect,
    "crossed": cmd_crossed,
    "relaxed-semidirect": cmd_relaxed_semidirect,
    "relaxed-crossed": cmd_relaxed_crossed,
    "extract": cmd_extract,
    "h2": cmd_h2,
    "baer-sum": cmd_baer_sum,
    "iso": cmd_iso,
    "enumerate": cmd_enumerate,
    "census-check": cmd_census_check,
    "glue": cmd_glue,
}


# ============================================================
# 3) ENTRYPOINT
# ============================================================

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--input', action='append', default=[],
                        help='Input document (repeatable; order: kernel, total, quotient)')
    common.add_argument('--mode', choices=('strict', 'relaxed'), default='strict',
                        help='Strict (Schreier) or relaxed (weakly Schreier) (default: strict)')
    common.add_argument('--generator', action='append', default=None, metavar='H:INDEX',
                        help='Override the generator of the fibre over h (repeatable)')
    common.add_argument('--max-size', type=int, default=None,
                        help='Largest total monoid searched by enumerate / census-check')
    common.add_argument('--pretty', action='store_true',
                        help='Human-readable report instead of JSON')
    common.add_argument('--verbose', action='store_true',
                        help='Log progress to stderr')

    parser = argparse.ArgumentParser(
        prog="schreierkit",
        description="Schreier-type monoid extensions at finite scale",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Classify an extension
  python -m schreierkit.main classify --input schreierkit/fixtures/w3_extension.json --pretty

  # Second cohomology of a trivial action
  python -m schreierkit.main h2 --input schreierkit/fixtures/z2_trivial_action.json

  # Weakly Schreier factor system with a chosen generator over h=1
  python -m schreierkit.main extract --mode relaxed --generator 1:2 --input ext.json

  # Compare characterizations against the brute-force census
  python -m schreierkit.main census-check --input schreierkit/fixtures/z2.json --input schreierkit/fixtures/two.json
        """
    )
    subparsers = parser.add_subparsers(dest='command', help='Command to run')
    helps = {
        "validate": "Parse and validate documents",
        "classify": "Classification flags of an extension",
        "semidirect": "Semidirect product of an action",
        "crossed": "Crossed product of a factor system",
        "relaxed-semidirect": "Relaxed semidirect product of a relaxed action",
        "relaxed-crossed": "Relaxed crossed product of a weakly Schreier factor system",
        "extract": "Action / factor system of an extension",
        "h2": "Second cohomology group of an (relaxed) action",
        "baer-sum": "Baer sum of two extensions",
        "iso": "Isomorphism / equivalence of two documents of one kind",
        "enumerate": "Monoid catalog counts, or all (relaxed) actions of H on N",
        "census-check": "Check every characterization against the census",
        "glue": "Artin glueing of a meet-preserving map",
    }
    for name in COMMANDS:
        subparsers.add_parser(name, parents=[common], help=helps[name])
    return parser


def run(args: argparse.Namespace) -> int:
    """Dispatch one parsed command; prints its report and returns the exit code"""
    try:
        loader = DocumentLoader()
        docs = [loader.load(p) for p in args.input]
        report: Dict[str, Any] = {"command": args.command, "ok": True}
        report.update(HANDLERS[args.command](args, docs))
        code = 0 if report["ok"] else 1
    except ParseError as e:
        logger.error("❌ Parse error: %s", e)
        report, code = error_report(args.command, e, 2), 2
    except SchreierKitError as e:
        logger.error("❌ Error: %s", e)
        report, code = error_report(args.command, e, 1), 1
    sys.stdout.write(render(report, args.pretty))
    return code


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entrypoint"""
    parser = build_parser()
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help()
        return 2

    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return run(args)
    except KeyboardInterrupt:
        logger.warning("⚠ Interrupted by user")
        return 130


if __name__ == '__main__':
    sys.exit(main())
