"""Smoke tests for the python bindings."""

import math
from fractions import Fraction

import pytest

import mtasep


def entry(doc, i, j):
    num, den = doc["rows"][i][j]
    return Fraction(num, den)


def test_catalog_labels_and_column_sums():
    labels = mtasep.catalog_labels()
    assert len(labels) == 28
    assert labels[0] == "b1" and labels[-1] == "b28"
    for label in labels:
        doc = mtasep.catalog_matrix(label)
        for j in range(4):
            assert sum(entry(doc, i, j) for i in range(4)) == 1


def test_bar_is_an_involution():
    b6 = mtasep.catalog_matrix("b6")
    bb = mtasep.bar_matrix("b6")
    assert bb["rows"] != b6["rows"]
    assert bb["rows"][3][3] == [0, 1]  # (22,22) entry moved to (11,11)


def test_extension_consistency():
    ok = mtasep.extend_natural("b2", 3)
    assert ok["ok"] and ok["matrix"]["N"] == 3
    bad = mtasep.extend_natural("b6", 3)
    assert not bad["ok"]
    assert bad["conflict"]["cell"] == ["22", "22"]
    assert bad["conflict"]["existing_pair"] == [1, 2]
    assert bad["conflict"]["incoming_pair"] == [2, 3]


def test_yang_baxter_verdicts():
    good = mtasep.check_yang_baxter("b2", N=3, samples=2, seed=1)
    assert good["integrable"]
    bad = mtasep.check_yang_baxter("mix:b2,b3,1/2", N=3, samples=2, seed=1)
    assert not bad["integrable"]
    assert bad["witness"]["relation"] == "c"


def test_kernel_matches_poisson_for_one_particle():
    doc = mtasep.kernel("b2", 2, "backward", Y=[0], X=[2], t=1.0)
    p = doc["entries"][0][0]  # (1,1) entry, re part
    assert abs(p - math.exp(-1) / 2) < 1e-10


def test_conservation_and_simulation_agree_roughly():
    totals = mtasep.conservation("b2", 2, "backward", Y=[0, 1], t=0.5)
    assert all(abs(s - 1) < 1e-8 for s in totals)
    out = mtasep.simulate("b2", 2, "backward", [0, 1], [2, 1], 0.5, 2000, 11)
    assert sum(out["histogram"].values()) == out["trials"]
    again = mtasep.simulate("b2", 2, "backward", [0, 1], [2, 1], 0.5, 2000, 11)
    assert out == again


def test_unknown_label_raises():
    with pytest.raises(mtasep.UnknownLabelError):
        mtasep.catalog_matrix("b99")
