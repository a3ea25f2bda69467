from fractions import Fraction

import pytest

from polynomials import IntPolynomial
from verdicts import VerdictReport, first_mismatch, to_json_value


def test_passing_report_cannot_carry_witness():
    with pytest.raises(ValueError):
        VerdictReport("x", {}, True, witness={"at": 1})


def test_failing_report_needs_witness():
    with pytest.raises(ValueError):
        VerdictReport("x", {}, False)


def test_to_dict_serializes_big_numbers_as_strings():
    report = VerdictReport.failure("x", {"max_n": 5}, {"value": 10 ** 30, "ratio": Fraction(3, 6)})
    data = report.to_dict()
    assert data["params"] == {"max_n": "5"}
    assert data["witness"]["value"] == "1" + "0" * 30
    assert data["witness"]["ratio"] == {"num": "1", "den": "2"}
    assert data["passed"] is False


def test_from_mismatch():
    assert VerdictReport.from_mismatch("x", {}, None).passed
    assert not VerdictReport.from_mismatch("x", {}, {"at": 0}).passed


def test_first_mismatch_uses_defaults_for_missing_keys():
    assert first_mismatch({1: 2}, {1: 2, 3: 0}) is None
    assert first_mismatch({1: 2}, {1: 3}) == {"at": 1, "expected": 2, "actual": 3}
    zero = IntPolynomial.zero()
    assert first_mismatch({0: IntPolynomial.one()}, {}, default=zero)["at"] == 0


def test_to_json_value_on_polynomials():
    assert to_json_value(IntPolynomial((1, 4, 1))) == ["1", "4", "1"]
