import json
import math

import pytest

import stlab


def zz():
    return stlab.Family("0,1", "0,1")


def test_family():
    fam = zz()
    assert fam.canonical == "f=0,1;g=0,1"
    assert fam.deg_delta == 3
    assert fam.nondeg() == "none"
    assert stlab.Family("0", "0,1").nondeg() == "j_constant"
    with pytest.raises(stlab.DomainError):
        stlab.Family("0", "0")


def test_trace_and_angle():
    fam = zz()
    assert stlab.trace(fam, 5, 1) == -3
    assert stlab.count_points_naive(5, 1, 1) == 9
    assert stlab.angle(-3, 5) == pytest.approx(math.acos(-3 / (2 * math.sqrt(5))))
    with pytest.raises(stlab.HypothesisError):
        stlab.trace(fam, 31, 1)


def test_measure_and_sym():
    assert stlab.mu_st(0.0, math.pi) == pytest.approx(1.0)
    assert stlab.mu_st(math.pi / 3, 2 * math.pi / 3) == pytest.approx(0.608998, abs=1e-6)
    assert stlab.sym(4, 0.0) == 5.0
    assert stlab.sym(2, 1.1) == pytest.approx(math.sin(3.3) / math.sin(1.1))


def test_experiments():
    fam = zz()
    psis = stlab.subgroup_angles(fam, 1009, 1008)
    assert len(psis) == 1007
    assert 0.0 < stlab.star_discrepancy(psis) < 0.1
    rep = stlab.vertical_subgroup(fam, 13, 4)
    assert rep["count"] == rep["sample_size"]
    mixed = stlab.mixed_product(fam, 100, [1, 2, 3], [1, 2, 3], threads=2)
    assert 0.0 < mixed["normalized_average"] <= 1.0
    assert mixed["skipped_primes"] == [2, 3]
    for max_abs, bound in stlab.charsum_max(fam, 101, 3):
        assert max_abs <= bound + 1e-6
    v = stlab.vaughan(fam, 101, 500, surrogate=True)
    assert v["direct_sum"] == pytest.approx(v["chebyshev_psi"])


def test_orders():
    assert stlab.order_sum(20, 2, 1.0) == pytest.approx(1.44722, abs=1e-4)
    assert stlab.divisor_window_count(20, 3) == 6


def test_cli_in_process():
    code, out, _ = stlab.run(["family", "check", "--f", "0,1", "--g", "0,1"])
    assert code == 0
    report = json.loads(out)
    assert report["deg_delta"] == 3
    code, _, err = stlab.run(["family", "check", "--f", "0", "--g", "0,0,0,1"])
    assert code == 2
