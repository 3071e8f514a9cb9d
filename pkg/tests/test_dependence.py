from fractions import Fraction

import pytest

from stochlab.colorlab import (
    CylinderMeasure,
    check_k_dependence,
    recursion_measure,
)
from stochlab.colorlab.dependence import marginal_tables

F = Fraction


def test_q4_is_one_dependent_small_windows():
    report = check_k_dependence(recursion_measure(4), k=1, nmax=6)
    assert report.holds
    assert report.witness is None


def test_q4_not_zero_dependent():
    report = check_k_dependence(recursion_measure(4), k=0, nmax=3)
    assert not report.holds
    w = report.witness
    # adjacent equal colors are forbidden, so the joint mass is 0
    assert w.set_a == (1,) and w.set_b == (2,)
    assert w.joint == 0
    assert w.product == F(1, 16)


def test_q3_is_two_dependent_small_windows():
    report = check_k_dependence(recursion_measure(3), k=2, nmax=6)
    assert report.holds


def test_q3_not_one_dependent():
    report = check_k_dependence(recursion_measure(3), k=1, nmax=8)
    assert not report.holds
    w = report.witness
    assert w.window <= 8
    # frozen from the exact measure: P(a*a) = 2/15 vs (1/3)^2
    assert w.set_a == (1,) and w.set_b == (3,)
    assert (w.joint, w.product) == (F(2, 15), F(1, 9))


def test_q2_not_finitely_dependent_at_small_k():
    # the 2-coloring alternates deterministically; any split correlates
    for k in (0, 1, 2, 3):
        report = check_k_dependence(recursion_measure(2), k=k, nmax=k + 2)
        assert not report.holds


def test_q5_not_one_dependent():
    report = check_k_dependence(recursion_measure(5), k=1, nmax=4)
    assert not report.holds


def test_nmax_too_small_rejected():
    with pytest.raises(ValueError):
        check_k_dependence(recursion_measure(4), k=2, nmax=3)


def test_negative_k_rejected():
    with pytest.raises(ValueError):
        check_k_dependence(recursion_measure(4), k=-1, nmax=4)


def test_report_dict_shape():
    report = check_k_dependence(recursion_measure(4), k=0, nmax=3)
    d = report.to_dict()
    assert d["holds"] is False
    assert d["witness"]["A"] == [1]
    assert d["witness"]["joint"] == "0"


def test_marginal_tables_consistency():
    m = CylinderMeasure(4)
    scaled, denom = m.scaled_window(3)
    tables = marginal_tables(scaled, 3, 4)
    # empty-set marginal is the total mass
    assert tables[0][()] == denom
    # singleton marginals are uniform
    for mask in (1, 2, 4):
        vals = tables[mask]
        assert all(4 * v == denom for v in vals.values())
        assert len(vals) == 4
    # pairwise marginal sums back to the singleton
    pair = tables[0b011]
    first = {}
    for (a, b), v in pair.items():
        first[a] = first.get(a, 0) + v
    assert first == {a: tables[0b001][(a,)] for a in range(1, 5)}
