import dataclasses
import os
import time

import numpy as np
import pytest

from boolfn.core import TruthTable
from boolfn.counting import CountTable, rho_table
from boolfn.irreducibility import is_canalizing, lambda_degree
from boolfn.oracle import CapacityError, classify_block, compare_census, enumerate_census

from conftest import all_tables, lambda_scan, random_tables


def test_census_k0():
    res = enumerate_census(0)
    assert res.functions_scanned == 2
    assert res.empirical_rho.rho == ((1, 1),)
    assert res.canalizing_count == 0


def test_census_k2_rules():
    res = enumerate_census(2)
    assert res.functions_scanned == 16
    assert res.empirical_rho.row_sums() == [2, 4, 10]
    assert res.canalizing_count == 14
    assert compare_census(res, rho_table(2)) == []


def test_census_k3_rows():
    res = enumerate_census(3)
    assert res.empirical_rho.row_sums() == [2, 6, 30, 218]
    assert res.functions_scanned == 256


@pytest.mark.parametrize("k", range(5))
def test_census_matches_analytic(k):
    res = enumerate_census(k)
    assert compare_census(res, rho_table(k)) == []
    assert sum(res.empirical_rho.row_sums()) == 1 << (1 << k)


def test_canalizing_count_matches_scalar():
    for k in range(4):
        expected = sum(is_canalizing(TruthTable(k, x)).is_canalizing for x in range(1 << (1 << k)))
        assert enumerate_census(k).canalizing_count == expected


def test_classify_block_matches_scalar():
    k = 4
    x = np.arange(1 << 16, dtype=np.uint32)
    lam, omega, canal = classify_block(k, x)
    assert np.array_equal(lam, lambda_scan(all_tables(k)))
    assert np.array_equal(omega, all_tables(k).sum(axis=1))
    sample = range(0, 1 << 16, 97)
    assert [bool(canal[v]) for v in sample] == [is_canalizing(TruthTable(k, v)).is_canalizing for v in sample]


def test_kernel_equivalence_random(rng):
    # 10^5 random tables spread over k = 1..10
    for k in range(1, 11):
        packed, bits = random_tables(rng, k, 10_000)
        expected = lambda_scan(bits)
        got = np.array([lambda_degree(TruthTable(k, v)).lam for v in packed])
        assert np.array_equal(got, expected)


def test_diff_reports_corruption():
    res = enumerate_census(2)
    rows = [list(r) for r in res.empirical_rho.rho]
    rows[1][2] += 1
    bad = dataclasses.replace(res, empirical_rho=CountTable(2, tuple(map(tuple, rows))))
    diffs = compare_census(bad, rho_table(2))
    assert len(diffs) == 1
    assert str(diffs[0]) == "lambda=1 omega=2 expected=4 found=5"
    assert "\n" not in str(diffs[0])


def test_compare_mismatched_k():
    with pytest.raises(ValueError):
        compare_census(enumerate_census(2), rho_table(3))


@pytest.mark.parametrize("k", [6, 7, -1])
def test_capacity(k):
    with pytest.raises(CapacityError):
        enumerate_census(k)


def test_deterministic_across_workers():
    a = enumerate_census(4, workers=1)
    b = enumerate_census(4, workers=4)
    assert a.empirical_rho == b.empirical_rho
    assert a.canalizing_count == b.canalizing_count
    assert a.functions_scanned == b.functions_scanned


def test_progress_reports_total():
    ticks = []
    enumerate_census(3, progress=lambda done, total: ticks.append((done, total)))
    assert ticks[-1] == (256, 256)
    assert [d for d, _ in ticks] == sorted(d for d, _ in ticks)


def test_k4_under_one_second():
    enumerate_census(4)  # warm caches and imports
    t0 = time.perf_counter()
    res = enumerate_census(4)
    assert time.perf_counter() - t0 < 1.0
    assert res.elapsed < 1.0


def test_csv_footer():
    res = enumerate_census(2)
    text = res.to_csv()
    assert text.splitlines()[-1] == "# canalizing_count=14"
    assert CountTable.from_csv(text) == res.empirical_rho


@pytest.mark.slow
def test_census_k5():
    workers = os.cpu_count() or 1
    res = enumerate_census(5, workers=workers)
    assert res.functions_scanned == 1 << 32
    assert compare_census(res, rho_table(5)) == []
