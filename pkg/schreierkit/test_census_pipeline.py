"""
Tests for the census pipeline config, run and artifact export
"""

import json

import pandas as pd
import pytest

from schreierkit.census_pipeline import CensusConfig, CensusPipeline


def test_config_rejects_bad_orders():
    with pytest.raises(ValueError):
        CensusConfig(max_order=0)
    with pytest.raises(ValueError):
        CensusConfig(max_order=6)
    with pytest.raises(ValueError):
        CensusConfig(catalog_cap=17)


def test_trivial_census_run_and_export(tmp_path):
    cfg = CensusConfig(output_dir=str(tmp_path / "census"), max_order=1, catalog_cap=1)
    pipe = CensusPipeline(cfg)
    assert len(pipe.pairs()) == 1

    df = pipe.run()
    assert isinstance(df, pd.DataFrame)
    assert list(df.columns[:3]) == ["pair", "N_order", "H_order"]
    assert df["ok"].all()
    assert set(df["status"]) == {"ok"}
    assert pipe.passed

    paths = pipe.export_artifacts()
    summary = pd.read_csv(paths["census_summary"])
    assert len(summary) == len(df)
    reports = json.loads(open(paths["census_reports"], encoding="utf-8").read())
    assert reports["passed"] is True
    assert reports["config"]["max_order"] == 1
    counts = json.loads(open(paths["catalog_counts"], encoding="utf-8").read())
    assert counts == {"1": 1}
