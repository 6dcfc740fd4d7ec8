from fractions import Fraction

import pytest

from frusta.errors import InvalidParameters
from frusta.formulas import (
    AlgorithmTrace,
    FormulaId,
    evaluate_formula,
    identity_checks,
    moscow_trace,
    nine_chapters_trace,
    op_count,
    zhang_to_chi,
)

F = Fraction


def _oracle_ft(a, b, h):
    # frustum = big pyramid minus the top pyramid, with apex height from similar triangles
    a, b, h = F(a), F(b), F(h)
    H = h * a / (a - b)
    return (a * a * H - b * b * (H - h)) / 3


@pytest.mark.parametrize("fid,args,expected", [
    (FormulaId.F_T, (4, 2, 6), 56),
    (FormulaId.F_T, (50, 40, 50), F(305000, 3)),
    (FormulaId.F_TA, (4, 2, 6), 56),
    (FormulaId.F_P, (4, None, 6), 32),
    (FormulaId.GUNN_PEET_FACTORED, (4, 2, 6), 56),
])
def test_worked_values(fid, args, expected):
    assert evaluate_formula(fid, *args) == expected


def test_pyramid_limit():
    for a, h in [(3, 2), (F(7, 2), F(1, 3)), (10, 10)]:
        assert evaluate_formula(FormulaId.F_T, a, 0, h) == evaluate_formula(FormulaId.F_P, a, None, h)


def test_rules_match_an_independent_oracle():
    for a, b, h in [(4, 2, 6), (2, 1, 1), (F(9, 4), F(1, 7), F(5, 3)), (100, 99, 1)]:
        want = _oracle_ft(a, b, h)
        for fid in (FormulaId.F_T, FormulaId.F_TA, FormulaId.GUNN_PEET_FACTORED):
            assert evaluate_formula(fid, a, b, h) == want


@pytest.mark.parametrize("args", [(2, 2, 1), (1, 2, 1), (3, 1, 0), (3, -1, 1)])
def test_rejects_bad_parameters(args):
    with pytest.raises(InvalidParameters):
        evaluate_formula(FormulaId.F_T, *args)


def test_string_ids_accepted():
    assert evaluate_formula("F_TA", 2, 1, 1) == F(7, 3)


def test_moscow_trace_steps():
    t = moscow_trace(4, 2, 6, unit="cubit")
    assert t.values == [16, 8, 4, 28, 2, 56]
    assert t.final == 56
    assert t.op_counts == (2, 4, 1)
    text = t.render()
    assert "cubit" in text and text.count("\n") == 6


def test_nine_chapters_trace():
    t = nine_chapters_trace(*(zhang_to_chi(x) for x in (5, 4, 5)))
    assert t.values == [2500, 2000, 1600, 6100, 305000, F(305000, 3)]
    assert t.final == F(305000, 3)
    whole = t.final.numerator // t.final.denominator
    assert (whole, t.final - whole) == (101666, F(2, 3))
    assert "≈ 101666.666667" in t.render()
    assert t.op_counts == (2, 4, 1)


def test_traces_agree_with_rule():
    for a, b, h in [(4, 2, 6), (F(5, 2), F(1, 3), 7)]:
        want = evaluate_formula(FormulaId.F_T, a, b, h)
        assert moscow_trace(a, b, h).final == want == nine_chapters_trace(a, b, h).final


def test_trace_rejects_bad_input():
    with pytest.raises(InvalidParameters):
        moscow_trace(1, 2, 3)
    with pytest.raises(InvalidParameters):
        nine_chapters_trace(2, 1, 0)


def test_empty_trace_counts():
    assert op_count(AlgorithmTrace("empty")) == (0, 0, 0)


def test_identities():
    for a, b in [(4, 2), (F(1, 3), F(-5, 2)), (0, 0)]:
        assert all(r.ok for r in identity_checks(a, b))


def test_zhang_to_chi():
    assert zhang_to_chi(F(1, 2)) == 5
