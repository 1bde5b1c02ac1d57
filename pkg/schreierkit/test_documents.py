"""
Tests for document parsing, validation and serialization
"""

from pathlib import Path

import pytest

from schreierkit.core.standard import cyclic_group, two, w3
from schreierkit.core.strict import FactorSystem, trivial_action
from schreierkit.errors import FactorSystemInvalid, NotAssociative, NotAnExtension, ParseError
from schreierkit.utils.documents import (
    DocumentLoader, dumps, load, monoid_payload, parse, serialize, to_json, to_payload,
)

FIXTURES = Path(__file__).resolve().parent / "fixtures"
VALID = sorted(FIXTURES.glob("*.json"))


# ============================================================
# PARSING
# ============================================================

def test_monoid_fixture_is_already_normalized():
    path = FIXTURES / "z2.json"
    doc = load(path)
    assert doc.kind == "monoid"
    assert doc.value == cyclic_group(2)
    assert serialize(doc) == path.read_text(encoding="utf-8")


@pytest.mark.parametrize("path", VALID, ids=lambda p: p.name)
def test_serialize_parse_is_stable(path):
    doc = load(path)
    text = serialize(doc)
    again = parse(text)
    assert again.kind == doc.kind
    assert again.value == doc.value
    assert serialize(again) == text


def test_relative_monoid_paths():
    doc = load(FIXTURES / "w3_extension.json")
    d = doc.value
    assert d.G == w3()
    assert d.H == two()
    assert d.s.map == (0, 2)


def test_monoids_shared_between_references():
    loader = DocumentLoader()
    doc = loader.load(FIXTURES / "z2_trivial_action.json")
    assert doc.value.H is doc.value.N


def test_invalid_fixtures():
    with pytest.raises(ParseError):
        load(FIXTURES / "invalid" / "out_of_range.json")
    with pytest.raises(NotAssociative) as exc:
        load(FIXTURES / "invalid" / "not_associative.json")
    assert exc.value.witness == (1, 1, 1)
    with pytest.raises(FactorSystemInvalid) as exc:
        load(FIXTURES / "invalid" / "bad_normalisation.json")
    assert exc.value.witness == (1,)
    assert "condition_5" in str(exc.value)


def test_bad_json_reports_line_and_column():
    with pytest.raises(ParseError) as exc:
        parse('{"kind": "monoid",\n  "size": }', location="doc.json")
    assert exc.value.location.startswith("doc.json:2:")


def test_unknown_kind():
    with pytest.raises(ParseError) as exc:
        parse('{"kind": "group"}')
    assert "unknown kind" in str(exc.value)


def test_entry_errors_are_located():
    text = '{"kind": "monoid", "size": 2, "identity": 0, "table": [[0, 1], [1, "x"]]}'
    with pytest.raises(ParseError) as exc:
        parse(text, location="m")
    assert exc.value.location == "m.table[1][1]"


def test_missing_file():
    with pytest.raises(ParseError):
        load(FIXTURES / "does_not_exist.json")


def test_invalid_utf8_is_a_parse_error(tmp_path):
    bad = tmp_path / "latin1.json"
    bad.write_bytes(b'{"kind": "monoid", "size": 1, "identity": 0, "table": [[0]], "names": ["\xff"]}')
    with pytest.raises(ParseError) as exc:
        load(bad)
    assert exc.value.location == str(bad)
    assert "UTF-8" in str(exc.value)


def test_invalid_utf8_in_a_referenced_monoid(tmp_path):
    (tmp_path / "n.json").write_bytes(b'{"kind": "monoid", "size": 1, "identity": 0, "table": [[0]], "names": ["\xff"]}')
    action = tmp_path / "action.json"
    action.write_text('{"kind": "action", "H": "n.json", "N": "n.json", "alpha": [[0]]}', encoding="utf-8")
    with pytest.raises(ParseError) as exc:
        load(action)
    assert "UTF-8" in str(exc.value)


def test_extension_checks_run_on_load():
    w3_payload = monoid_payload(w3())
    two_payload = monoid_payload(two())
    z2_payload = monoid_payload(cyclic_group(2))
    bad = {"kind": "extension", "N": z2_payload, "G": w3_payload, "H": two_payload,
           "k": [0, 0], "e": [0, 0, 1]}
    with pytest.raises(NotAnExtension):
        parse(dumps(bad))


# ============================================================
# SERIALIZATION
# ============================================================

def test_payload_inlines_monoids():
    fs = FactorSystem(trivial_action(cyclic_group(2), cyclic_group(2)), [[0, 0], [0, 1]])
    payload = to_payload(fs)
    assert list(payload)[0] == "kind"
    assert payload["H"]["kind"] == "monoid"
    assert payload["chi"] == [[0, 0], [0, 1]]


def test_to_json_creates_parent_dirs(tmp_path):
    out = tmp_path / "nested" / "w3.json"
    to_json(monoid_payload(w3()), out)
    assert load(out).value == w3()
