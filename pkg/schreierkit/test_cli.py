"""
End-to-end tests for the command line

Usage:
    pytest schreierkit/test_cli.py
"""

import json
import subprocess
import sys
from pathlib import Path

import pytest

from schreierkit.core.isomorphism import is_isomorphic
from schreierkit.core.standard import cyclic_group, klein_four, w3
from schreierkit.main import main
from schreierkit.utils.documents import parse

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = Path(__file__).resolve().parent / "fixtures"


def fixture(name: str) -> str:
    return str(FIXTURES / name)


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


def total_monoid(report):
    return parse(json.dumps(report["document"])).value.G


# ============================================================
# CLASSIFY / VALIDATE
# ============================================================

def test_classify_w3(capsys):
    code, out = run_cli(capsys, "classify", "--input", fixture("w3_extension.json"))
    assert code == 0
    assert out["ok"] is True
    flags = out["classification"]
    assert flags["weakly_schreier"] is True
    assert flags["schreier"] is False
    assert flags["weakly_schreier_split"] is True
    assert out["right_normaliser"] == [0, 1, 2]


def test_validate_reports_parse_errors(capsys):
    code, out = run_cli(capsys, "validate", "--input", fixture("invalid/out_of_range.json"))
    assert code == 2
    assert out["ok"] is False
    assert out["error"] == "ParseError"


def test_invalid_utf8_exits_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_bytes(b'{"kind": "monoid", "size": 1, "identity": 0, "table": [[0]], "names": ["\xff"]}')
    code, out = run_cli(capsys, "validate", "--input", str(bad))
    assert code == 2
    assert out["error"] == "ParseError"
    assert "UTF-8" in out["message"]


def test_validate_monoids(capsys):
    code, out = run_cli(capsys, "validate", "--input", fixture("w3.json"), "--input", fixture("two.json"))
    assert code == 0
    assert [d["size"] for d in out["documents"]] == [3, 2]
    assert out["documents"][0]["units"] == 2


def test_domain_errors_exit_1(capsys):
    code, out = run_cli(capsys, "crossed", "--input", fixture("invalid/bad_normalisation.json"))
    assert code == 1
    assert out["error"] == "FactorSystemInvalid"
    assert "condition_5" in out["message"]
    assert out["witness"] == [1]


def test_wrong_document_kind(capsys):
    code, out = run_cli(capsys, "classify", "--input", fixture("z2.json"))
    assert code == 2
    assert "expected kind extension" in out["message"]


# ============================================================
# PRODUCTS
# ============================================================

def test_semidirect(capsys):
    code, out = run_cli(capsys, "semidirect", "--input", fixture("zero_action.json"))
    assert code == 0
    assert out["classification"]["schreier_split"] is True
    assert total_monoid(out).size == 4


def test_crossed_z4(capsys):
    code, out = run_cli(capsys, "crossed", "--input", fixture("z4_factor_system.json"))
    assert code == 0
    assert is_isomorphic(total_monoid(out), cyclic_group(4))


def test_relaxed_products(capsys):
    code, out = run_cli(capsys, "relaxed-semidirect", "--input", fixture("w3_relaxed_action.json"))
    assert code == 0
    assert is_isomorphic(total_monoid(out), w3())
    code, out = run_cli(capsys, "relaxed-crossed", "--input", fixture("w3_ws_factor_system.json"))
    assert code == 0
    assert is_isomorphic(total_monoid(out), w3())
    code, out = run_cli(capsys, "relaxed-crossed", "--input", fixture("z4_factor_system.json"))
    assert code == 0
    assert is_isomorphic(total_monoid(out), cyclic_group(4))


def test_glue(capsys):
    code, out = run_cli(capsys, "glue", "--input", fixture("glue_identity.json"))
    assert code == 0
    assert total_monoid(out).size == 3
    assert out["classification"]["weakly_schreier_split"] is True


# ============================================================
# EXTRACT
# ============================================================

def test_extract_relaxed_action(capsys):
    code, out = run_cli(capsys, "extract", "--mode", "relaxed", "--input", fixture("w3_extension.json"))
    assert code == 0
    assert out["document"]["kind"] == "relaxed_action"
    assert out["document"]["relation"] == [[0, 1], [0, 0]]
    assert out["document"]["alpha"] == [[0, 1], [0, 0]]
    assert out["reconstructs"] is True


def test_extract_strict_action(capsys):
    code, out = run_cli(capsys, "extract", "--input", fixture("zero_action_semidirect.json"))
    assert code == 0
    assert out["document"]["kind"] == "action"
    assert out["document"]["alpha"] == [[0, 1], [0, 0]]
    assert out["reconstructs"] is True


def test_extract_strict_from_weakly_schreier_fails(capsys):
    code, out = run_cli(capsys, "extract", "--input", fixture("w3_extension.json"))
    assert code == 1
    assert out["error"] == "NotSchreierSplit"


def test_extract_with_generator(capsys):
    code, out = run_cli(capsys, "extract", "--mode", "relaxed", "--generator", "1:2",
                        "--input", fixture("w3_extension.json"))
    assert code == 0
    assert out["document"]["kind"] == "ws_factor_system"
    assert out["document"]["chi"] == [[0, 0], [0, 0]]
    assert out["reconstructs"] is True


def test_bad_generator_syntax(capsys):
    code, out = run_cli(capsys, "extract", "--generator", "1=2", "--input", fixture("w3_extension.json"))
    assert code == 2


# ============================================================
# COHOMOLOGY
# ============================================================

def test_h2_of_trivial_action(capsys):
    code, out = run_cli(capsys, "h2", "--input", fixture("z2_trivial_action.json"))
    assert code == 0
    assert out["h2_order"] == 2
    assert out["cocycle_count"] == 2
    assert len(out["realizations"]) == 2
    assert "input_class" not in out


def test_h2_of_an_extension(capsys):
    code, out = run_cli(capsys, "h2", "--mode", "relaxed", "--input", fixture("w3_extension.json"))
    assert code == 0
    assert out["h2_order"] == 1
    assert out["input_class"] == 0


def test_baer_sum_of_crossed_outputs(capsys, tmp_path):
    code, out = run_cli(capsys, "crossed", "--input", fixture("z4_factor_system.json"))
    assert code == 0
    z4 = tmp_path / "z4.json"
    z4.write_text(json.dumps(out["document"]), encoding="utf-8")
    code, out = run_cli(capsys, "baer-sum", "--input", str(z4), "--input", str(z4))
    assert code == 0
    assert is_isomorphic(total_monoid(out), klein_four())


# ============================================================
# ISO / ENUMERATE / CENSUS
# ============================================================

def test_iso_monoids(capsys):
    code, out = run_cli(capsys, "iso", "--input", fixture("z2.json"), "--input", fixture("z2.json"))
    assert code == 0
    assert out["isomorphic"] is True
    assert out["witness"] == [0, 1]


def test_iso_factor_systems(capsys):
    path = fixture("z4_factor_system.json")
    code, out = run_cli(capsys, "iso", "--input", path, "--input", path)
    assert code == 0
    assert out["witness"]["gamma"] == [0, 0]


def test_iso_needs_matching_kinds(capsys):
    code, out = run_cli(capsys, "iso", "--input", fixture("z2.json"), "--input", fixture("zero_action.json"))
    assert code == 2


def test_enumerate_relaxed_actions(capsys):
    code, out = run_cli(capsys, "enumerate", "--mode", "relaxed",
                        "--input", fixture("z2.json"), "--input", fixture("two.json"))
    assert code == 0
    assert out["count"] == 3
    assert all(item["kind"] == "relaxed_action" for item in out["items"])


def test_enumerate_catalog_counts(capsys):
    code, out = run_cli(capsys, "enumerate", "--max-size", "3")
    assert code == 0
    assert out["catalog_counts"] == {"1": 1, "2": 2, "3": 7}
    code, out = run_cli(capsys, "enumerate", "--max-size", "6")
    assert code == 1
    assert out["error"] == "OrderTooLarge"


@pytest.mark.slow
def test_census_check(capsys):
    code, out = run_cli(capsys, "census-check", "--max-size", "4",
                        "--input", fixture("z2.json"), "--input", fixture("two.json"))
    assert code == 0
    assert out["passed"] is True


# ============================================================
# OUTPUT
# ============================================================

def test_output_is_deterministic(capsys):
    argv = ["h2", "--input", fixture("z2_trivial_action.json")]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == first


def test_pretty_output(capsys):
    code = main(["classify", "--pretty", "--input", fixture("w3_extension.json")])
    out = capsys.readouterr().out
    assert code == 0
    assert out.startswith("=" * 60)
    assert " classify" in out
    assert "weakly_schreier: ✓" in out


def test_no_command_prints_help(capsys):
    assert main([]) == 2
    assert "census-check" in capsys.readouterr().out


def test_module_entrypoint():
    result = subprocess.run(
        [sys.executable, "-m", "schreierkit.main", "--help"],
        cwd=ROOT, capture_output=True, text=True,
    )
    assert result.returncode == 0
    assert "Examples:" in result.stdout
