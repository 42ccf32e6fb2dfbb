import csv

import numpy as np
import pytest
from hypothesis import given, strategies as st

from fluent_season.objectives import (
    EPL_BANDS, TraceRow, band_by_id, band_probabilities, default_bands, map_objective,
    max_accuracy, objective_accuracy_curve, objective_met, realized_band, scaled_bands,
    set_objective, validate_bands, write_trace_csv,
)

# bar heights of an example finishing-position histogram (ranks 1..20)
EXAMPLE_BARS = [0, 0, 0, 0, 1, 1, 2, 3, 6, 8, 11, 14, 17, 21, 20, 13, 7, 5, 3, 2]


def test_default_bands():
    assert [(b.id, b.lo, b.hi) for b in default_bands(20)] == [
        ("o1", 1, 1), ("o2", 2, 4), ("o3", 5, 7), ("o4", 8, 10), ("o5", 11, 17)]
    with pytest.raises(ValueError):
        default_bands(18)


def test_example_histogram_map_is_avoid_relegation():
    row = np.array(EXAMPLE_BARS) / sum(EXAMPLE_BARS)
    p = band_probabilities(row, EPL_BANDS)
    assert p["o5"] == pytest.approx(103 / 134)
    assert p.residual == pytest.approx(10 / 134)
    assert map_objective(p) == "o5"


def test_map_tie_prefers_ambitious_band():
    row = np.zeros(20)
    row[0] = 0.5      # o1
    row[1] = 0.5      # o2
    assert map_objective(band_probabilities(row, EPL_BANDS)) == "o1"


def test_at_risk_when_all_mass_is_in_relegation_zone():
    row = np.zeros(20)
    row[17:] = 1 / 3
    p = band_probabilities(row, EPL_BANDS)
    assert p.at_risk
    fo = set_objective(12, p)
    assert fo.objective == "o5" and fo.at_risk and fo.week == 12


@given(st.lists(st.floats(0, 1), min_size=20, max_size=20).filter(lambda v: sum(v) > 0))
def test_band_probabilities_partition_mass(v):
    row = np.array(v) / sum(v)
    p = band_probabilities(row, EPL_BANDS)
    assert sum(p.probs) + p.residual == pytest.approx(1.0)
    assert map_objective(p) in p.band_ids


def test_objective_met_is_at_or_above():
    assert objective_met("o3", 2)
    assert objective_met("o3", 7)
    assert not objective_met("o3", 8)
    assert realized_band(15) == "o5"
    assert realized_band(19) is None
    with pytest.raises(LookupError):
        band_by_id("o9")


def test_accuracy_cap_and_oracle():
    assert max_accuracy(20) == 85.0
    final = {f"T{i}": i + 1 for i in range(20)}
    oracle = {t: realized_band(r) or "o5" for t, r in final.items()}
    assert objective_accuracy_curve([oracle], final) == [85.0]
    easiest = {t: "o5" for t in final}
    assert objective_accuracy_curve([easiest], final) == [85.0]


@pytest.mark.parametrize("n", [10, 12, 20, 24, 40])
def test_scaled_bands_valid(n):
    bands = scaled_bands(n)
    validate_bands(bands, n)
    assert bands[0].lo == 1


def test_scaled_bands_need_ten_teams():
    with pytest.raises(ValueError):
        scaled_bands(6)


def test_validate_bands_rejects_overlap():
    bad = (EPL_BANDS[0], EPL_BANDS[1]._replace(lo=1))
    with pytest.raises(ValueError):
        validate_bands(bad, 20)


def test_trace_csv(tmp_path):
    p = band_probabilities(np.eye(20)[4], EPL_BANDS)
    write_trace_csv(tmp_path / "t.csv", [TraceRow(3, "T01", map_objective(p), p)])
    rows = list(csv.reader(open(tmp_path / "t.csv")))
    assert rows[1][:3] == ["3", "T01", "o3"]
