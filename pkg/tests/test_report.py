import json
from pathlib import Path

import jsonschema
import pytest

from circlemethod.errors import ValidationError
from circlemethod.report import (
    CSV_COLUMNS,
    VerifyReport,
    format_rows,
    load_schema,
    plot_series,
    reports_to_json,
    run_verify,
    schedule,
)

ROOT = Path(__file__).resolve().parents[1]


@pytest.fixture(scope="module")
def report():
    return run_verify(10**4)


def test_report_contents(report):
    assert report.params["A"] == 2500 and report.params["Q"] == 6
    assert report.R_direct == pytest.approx(report.R_conv, rel=1e-12)
    assert report.R_dft == pytest.approx(report.R_direct, rel=1e-9)
    assert report.major_part + report.minor_part == pytest.approx(report.R_dft, rel=1e-9)
    assert report.J_over_A2 == pytest.approx(2 * report.J_over_2A2)
    assert abs(report.D - report.D_series) <= report.D_tail + report.D_series_tail
    assert set(report.timings.values()) == {0.0}


def test_json_roundtrip_and_schema(report):
    assert VerifyReport.from_json(report.to_json()) == report
    payload = json.loads(reports_to_json([report]))
    jsonschema.validate(payload, load_schema())


def test_docs_schema_matches_package():
    docs = json.loads((ROOT / "docs" / "verify_report.schema.json").read_text())
    assert docs == load_schema()


def test_flat_row_and_csv(report):
    row = report.flat()
    assert tuple(row) == CSV_COLUMNS
    text = format_rows([row], "csv", CSV_COLUMNS)
    header, line = text.splitlines()
    assert header.split(",") == list(CSV_COLUMNS)
    assert line.startswith("10000,2500,6,")
    assert "\t" in format_rows([row], "tsv", CSV_COLUMNS)


def test_runs_are_reproducible(report):
    assert reports_to_json([run_verify(10**4)]) == reports_to_json([report])


def test_timings_opt_in():
    r = run_verify(1000, timings=True)
    assert r.timings["ms_count"] > 0


def test_plot_series(report):
    files = plot_series([report])
    assert "ratio_robust.dat" in files
    lines = files["minor_fraction.dat"].splitlines()
    assert lines[0].startswith("#") and lines[1].split()[0] == "10000"


def test_schedule():
    assert schedule(10**4, 10**6, 3) == [10**4, 10**5, 10**6]
    assert all(n % 2 == 0 for n in schedule(100, 10**5, 7))
    assert schedule(100, 200, 3, "arithmetic") == [100, 150, 200]
    assert schedule(100, 104, 10, "arithmetic") == [100, 102, 104]
    with pytest.raises(ValidationError):
        schedule(101, 1000, 3)
    with pytest.raises(ValidationError):
        schedule(100, 1000, 3, "cubic")
