from fractions import Fraction

import numpy as np
import pytest

from charstack.algebra import symbols
from charstack.report import CheckResult, Report, Result, merge_reports


@pytest.fixture(scope="module")
def report():
    (q,) = symbols("q")
    entries = [
        Result("value", 3 * q ** 4 - 2 * q ** 3 - 3 * q ** 2 + 2),
        Result("ratio", Fraction(7, 24)),
        Result("table", np.arange(3)),
        CheckResult("identity", True),
        CheckResult("pattern", False, "odd coefficients", fatal=False),
    ]
    return Report("example", {"rho": 1, "n": 2}, entries)


def test_mapping(report):
    assert len(report) == 5
    assert list(report) == ["value", "ratio", "table", "identity", "pattern"]
    assert report["ratio"] == Fraction(7, 24)
    assert report["identity"].verdict == "pass"
    assert report["pattern"].verdict == "notable"
    with pytest.raises(KeyError):
        report["missing"]


def test_non_fatal_failure_passes(report):
    assert report.passed
    failed = Report("failed", {}, [CheckResult("identity", False, "degree 3")])
    assert not failed.passed


def test_duplicate_names():
    with pytest.raises(ValueError, match=r"must be unique"):
        Report("dup", {}, [Result("a", 1), Result("a", 2)])


def test_json(report):
    payload = report.payload()
    assert payload["inputs"] == {"rho": 1, "n": 2}
    assert payload["results"][0] == {"name": "value", "value": "3*q^4 - 2*q^3 - 3*q^2 + 2"}
    assert payload["results"][1]["value"] == "7/24"
    assert payload["results"][2]["value"] == [0, 1, 2]
    assert report.to_json() == report.to_json()


def test_json_roundtrip(report):
    parsed = Report.from_json(report.to_json())
    assert parsed.subcommand == "example"
    assert parsed["value"] == "3*q^4 - 2*q^3 - 3*q^2 + 2"
    assert parsed["pattern"].verdict == "notable"


def test_text(report):
    text = report.to_text()
    assert "value: 3*q^4 - 2*q^3 - 3*q^2 + 2" in text
    assert "pattern: NOTABLE (odd coefficients)" in text
    single = Report("one", {}, [Result("x", Fraction(1, 2))])
    assert single.to_text() == "1/2"


def test_csv_and_latex(report):
    csv = report.to_csv()
    assert csv.splitlines()[0] == "name,value,verdict,detail"
    assert "identity,,pass," in csv
    latex = report.to_latex()
    assert latex.startswith("\\begin{tabular}")
    assert "\\frac{7}{24}" in latex


def test_render_unknown_format(report):
    with pytest.raises(ValueError, match=r"Unknown output format"):
        report.render("yaml")


def test_repr(report):
    text = repr(report)
    assert "Subcommand: example" in text
    assert "Checks: 1/2 passed" in text


def test_to_frame(report):
    pytest.importorskip("pandas")
    df = report.to_frame()
    assert df.loc["identity", "verdict"] == "pass"
    assert len(df) == 5


def test_merge_reports(report):
    merged = merge_reports("all", [report, Report("other", {}, [Result("value", 1)])])
    assert "example.value" in merged
    assert merged["other.value"] == 1
