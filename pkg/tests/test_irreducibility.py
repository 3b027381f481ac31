import pytest
from hypothesis import given

from boolfn.core import TruthTable, from_wolfram, negate, weight
from boolfn.irreducibility import (
    canalizing_witnesses_naive,
    f_count,
    f_count_naive,
    is_canalizing,
    is_index_reducible,
    lambda_by_definition,
    lambda_degree,
)

from conftest import all_tables, lambda_scan, random_tables
from test_core import tables

K2_LAMBDA = [0, 2, 2, 1, 2, 1, 2, 2, 2, 2, 1, 2, 1, 2, 2, 0]


def test_rule13_reducible_on_first_argument():
    T = from_wolfram(2, 13)
    assert is_index_reducible(T, 1)
    assert not is_index_reducible(T, 2)


def test_contradiction_reducible_everywhere():
    T = from_wolfram(2, 1)
    assert is_index_reducible(T, 1) and is_index_reducible(T, 2)


def test_xor_irreducible():
    T = from_wolfram(2, 7)
    assert not is_index_reducible(T, 1) and not is_index_reducible(T, 2)


@pytest.mark.parametrize("mu, i, expected", [(7, 1, 2), (1, 1, 0), (11, 2, 0), (11, 1, 2)])
def test_f_count_examples(mu, i, expected):
    assert f_count(from_wolfram(2, mu), i) == expected


@pytest.mark.parametrize("i", [0, 3, -1])
def test_index_range(i):
    with pytest.raises(ValueError):
        f_count(from_wolfram(2, 7), i)
    with pytest.raises(ValueError):
        is_index_reducible(from_wolfram(2, 7), i)


@pytest.mark.parametrize("mu, lam", [(7, 2), (6, 1), (16, 0)])
def test_lambda_examples(mu, lam):
    assert lambda_degree(from_wolfram(2, mu)).lam == lam


def test_k2_lambda_row():
    assert [lambda_degree(from_wolfram(2, mu)).lam for mu in range(1, 17)] == K2_LAMBDA


@given(tables(max_k=8))
def test_report_invariants(T):
    rep = lambda_degree(T)
    assert rep.lam == sum(rep.per_index)
    assert all(flag == (c > 0) for flag, c in zip(rep.per_index, rep.f_counts))
    assert all(0 <= c <= 1 << max(T.k - 1, 0) for c in rep.f_counts)
    assert all(f_count(T, i) == f_count_naive(T, i) for i in range(1, T.k + 1))


def test_kernel_matches_definition_exhaustive():
    for k in range(5):
        bits = all_tables(k)
        expected = lambda_scan(bits)
        got = [lambda_degree(TruthTable(k, mu)).lam for mu in range(len(bits))]
        assert got == expected.tolist()


def test_kernel_matches_naive_random(rng):
    for k in (5, 7, 10):
        packed, bits = random_tables(rng, k, 300)
        expected = lambda_scan(bits)
        for x, lam in zip(packed, expected):
            T = TruthTable(k, x)
            assert lambda_degree(T).lam == lam
            if k <= 7:
                assert lambda_by_definition(T) == lam


def test_kernel_matches_pair_scan_k10(rng):
    packed, _ = random_tables(rng, 10, 200)
    for x in packed:
        T = TruthTable(10, x)
        assert [f_count(T, i) for i in range(1, 11)] == [f_count_naive(T, i) for i in range(1, 11)]


def test_negation_preserves_lambda():
    for k in range(5):
        for x in range(1 << (1 << k)):
            T = TruthTable(k, x)
            assert lambda_degree(T) == lambda_degree(negate(T))


def test_odd_weight_totally_irreducible():
    for k in range(1, 5):
        for x in range(1 << (1 << k)):
            T = TruthTable(k, x)
            if weight(T) % 2:
                assert lambda_degree(T).lam == k


def test_canalizing_examples():
    assert is_canalizing(from_wolfram(2, 15)).is_canalizing
    assert not is_canalizing(from_wolfram(2, 7)).is_canalizing
    assert not is_canalizing(from_wolfram(2, 10)).is_canalizing
    rep = is_canalizing(from_wolfram(2, 1))
    assert {(xi, tau) for _, xi, tau in rep.witnesses} == {(0, 0), (1, 0)}


def test_or_witnesses():
    # OR: S_1 = 1 or S_2 = 1 forces 1
    assert set(is_canalizing(from_wolfram(2, 15)).witnesses) == {(1, 1, 1), (2, 1, 1)}


def test_canalizing_census_k2():
    canal = [mu for mu in range(1, 17) if is_canalizing(from_wolfram(2, mu)).is_canalizing]
    assert len(canal) == 14
    assert set(range(1, 17)) - set(canal) == {7, 10}
    assert sum(lambda_degree(from_wolfram(2, mu)).lam == 2 for mu in range(1, 17)) == 10


def test_canalizing_matches_naive():
    for k in range(4):
        for x in range(1 << (1 << k)):
            T = TruthTable(k, x)
            rep = is_canalizing(T)
            assert set(rep.witnesses) == canalizing_witnesses_naive(T)
            assert rep.is_canalizing == bool(rep.witnesses)


def test_zero_arity():
    for x in (0, 1):
        T = TruthTable(0, x)
        assert lambda_degree(T).lam == 0
        assert not is_canalizing(T).is_canalizing
