import math
import os
import pathlib

import pytest

import weilflow

DATA = pathlib.Path(os.environ.get("WEILFLOW_TEST_DATA", pathlib.Path(__file__).parent.parent / "data"))
LOG5 = math.log(5.0)
E5A2 = {"q": 5, "g": 1, "weil_poly": [1, -2, 5]}


def test_validate_roots_and_determinant():
    report = weilflow.validate(E5A2)
    assert report["valid"] is True
    assert report["det_F"] == "5"
    roots = sorted((r["re"], r["im"]) for r in report["roots"])
    assert roots == pytest.approx([(1.0, -2.0), (1.0, 2.0)], abs=1e-12)


def test_shorthand_and_json_string():
    assert weilflow.validate('{"q": 5, "trace": 2}')["input"]["weil_poly"] == ["1", "-2", "5"]


def test_errors_carry_kind_and_stage():
    with pytest.raises(weilflow.WeilflowError) as info:
        weilflow.validate({"q": 5, "g": 1, "weil_poly": [1, -5, 5]})
    kind, stage, message = info.value.args
    assert kind == "RiemannHypothesisViolation"
    assert message
    with pytest.raises(weilflow.WeilflowError) as info:
        weilflow.validate({"q": 5, "trace": 0})
    assert info.value.args[0] == "NonOrdinary"
    assert weilflow.validate({"q": 5, "trace": 0}, allow_non_ordinary=True)["ordinary"]["is_ordinary"] is False


def test_zeta_surface():
    report = weilflow.zeta((DATA / "e5_surface.json").read_text())
    assert report["P"][2] == ["1", "-18", "155", "-900", "3875", "-11250", "15625"]
    assert report["functional_equation"]["max_deviation"] <= 1e-8


def test_orbits_match_closed_points():
    table = weilflow.count(E5A2, 4)
    assert table["N"] == {"1": "4", "2": "32", "3": "148", "4": "640"}
    orbits = weilflow.orbits(E5A2, 3)
    assert [orbits[k]["count"] for k in ("1", "2", "3")] == ["4", "14", "48"]
    assert orbits["2"]["length"] == pytest.approx(2 * LOG5, rel=1e-15)


def test_spectrum_window():
    report = weilflow.spectrum(E5A2, 0.0)
    zeros = report["per_j"][2]["zeros"]
    assert len(zeros) == 1


def test_bump_and_phi():
    b = weilflow.Bump(0.0, 1.0)
    assert b(0.0) == pytest.approx(math.exp(-1.0), rel=1e-15)
    assert b(1.0) == 0.0
    assert weilflow.parse_bump("c=0,w=1") == b
    assert weilflow.phi([b], 0j).real == pytest.approx(0.4439938, abs=1e-7)
    tau = 10.0
    assert abs(weilflow.phi([b], complex(0.0, tau))) <= weilflow.tail_majorant([b], 0.0) / tau**2


@pytest.mark.parametrize(
    "alpha, expected",
    [
        (["c=1.6094379124341003,w=0.5"], 4 * LOG5 / math.e),
        ([(2 * LOG5, 0.4)], 32 * LOG5 / math.e),
        ([weilflow.Bump(-LOG5, 0.5)], 0.8 * LOG5 / math.e),
        ([(0.0, 0.5)], 0.0),
    ],
)
def test_verify_examples(alpha, expected):
    report = weilflow.verify(E5A2, alpha, tol=1e-8)
    assert report["pass"] is True
    assert report["geometric"]["total"] == pytest.approx(expected, abs=1e-12)
    assert report["spectral"]["zero_sum"]["re"] == pytest.approx(expected, abs=1e-7)
