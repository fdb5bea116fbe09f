import json
from fractions import Fraction

import pytest

from hyperbell.output import OutputDocument, decimal_string, fraction_cell, render


def make_doc():
    return OutputDocument.build(
        "census", ["k", "count"], [["1", "5"], ["2", "6"]],
        {"n": 3, "m": 2}, "0.0-test",
    )


class TestDecimalString:
    def test_significant_digits(self):
        assert decimal_string(Fraction(1, 3), 3) == "0.333"
        assert decimal_string(Fraction(53172305, 49314926), 6) == "1.07822"
        assert decimal_string(Fraction(2, 1), 4) == "2"

    def test_no_scientific_notation(self):
        rendered = decimal_string(Fraction(45533300), 6)
        assert "e" not in rendered.lower()
        assert rendered == "45533300"

    def test_rejects_zero_digits(self):
        with pytest.raises(ValueError):
            decimal_string(Fraction(1, 2), 0)

    def test_fraction_cell_keeps_exact_form(self):
        cell = fraction_cell(Fraction(12485, 7556), 6)
        assert cell["exact"] == "12485/7556"
        assert cell["decimal"] == "1.65233"


class TestRender:
    def test_csv(self):
        assert render(make_doc(), "csv") == "k,count\n1,5\n2,6\n"

    def test_plain_aligns_columns(self):
        lines = render(make_doc(), "plain").strip().split("\n")
        assert lines[0].split() == ["k", "count"]
        assert all(len(line) == len(lines[0]) for line in lines)

    def test_json_carries_metadata(self):
        doc = json.loads(render(make_doc(), "json"))
        assert doc["kind"] == "census"
        assert doc["metadata"]["generator"] == "hyperbell 0.0-test"
        assert doc["metadata"]["parameters"] == {"n": 3, "m": 2}
        assert "timestamp" in doc["metadata"]
        assert doc["rows"] == [["1", "5"], ["2", "6"]]

    def test_unknown_format_rejected(self):
        with pytest.raises(ValueError):
            render(make_doc(), "xml")
