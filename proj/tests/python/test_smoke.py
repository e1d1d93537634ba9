import math
import os
from fractions import Fraction
from pathlib import Path

import pytest

import tropinf

CORPUS = Path(os.environ.get("TROPINF_CORPUS", Path(__file__).resolve().parents[2] / "corpus"))


def load(name):
    return tropinf.parse((CORPUS / name).read_text())


def test_parse_and_type():
    p = load("m1.pcfx")
    assert p.params == 1
    assert p.type() == "Bool"
    with pytest.raises(tropinf.ParseError):
        tropinf.parse("(1 +[X1] ")
    with pytest.raises(tropinf.ProgramTypeError):
        tropinf.parse("0 0").type()


def test_enumerate():
    rows, truncated = tropinf.enumerate(load("m1.pcfx"))
    assert not truncated
    ones = sorted(r["monomial"] for r in rows if r["outcome"] == 1)
    assert ones == ["X1^2", "X1^2*~X1", "~X1^3"]


def test_analyze_and_i1():
    r = tropinf.analyze(load("m1.pcfx"))
    assert r.polynomial == "X1^2 + ~X1^3"
    assert r.stable and not r.relative
    a = tropinf.solve_i1(r, [Fraction(1, 2)])
    assert abs(a["value"] - 2 * math.log(2)) < 1e-12
    assert [w["monomial"] for w in a["winners"]] == ["X1^2"]
    b = tropinf.solve_i1(r, ["1/4"])
    assert b["probability"] == Fraction(27, 64)


def test_i2():
    r = tropinf.analyze(load("m1.pcfx"))
    c = tropinf.solve_i2(r, [0, 3])
    assert c.rows == ["3*z~1 <= 2*z1"]
    assert c.contains([0.25])
    assert not c.contains(["1/2"])
    with pytest.raises(tropinf.Error):
        tropinf.solve_i2(r, [1, 1])


def test_report_json_round_trip():
    r = tropinf.analyze(load("m2.pcfx"))
    assert r.degree == 5 and len(r.selected) == 6
    again = tropinf.Report.from_json(r.to_json())
    assert again.polynomial == r.polynomial


def test_unreachable():
    r = tropinf.analyze(load("unreachable.pcfx"))
    assert r.polynomial == "0"
    assert math.isinf(tropinf.solve_i1(r, ["1/2"])["value"])
