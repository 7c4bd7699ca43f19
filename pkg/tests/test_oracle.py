import pytest

from rhpwn.oracle import PolyRepOps, _path_ok, build, check_eq1, check_exchange_seed


def test_build_matrices():
    ops = build(2)
    assert ops.a[0][1] == 1  # d/dx on x
    assert ops.a[1][2] == 2
    assert ops.ad[1][0] == 1 and ops.ad[2][1] == 1
    with pytest.raises(ValueError):
        PolyRepOps(1)


def test_number_operator_diagonal():
    ops = build(10)
    number = ops.word(1, 1)
    for m in range(11):
        column = [number[r][m] for r in range(11)]
        assert column[m] == m
        assert sum(map(abs, column)) == m


def test_build_is_cached():
    assert build(12) is build(12)


@pytest.mark.parametrize(
    "n, k, N, K, D",
    [(0, 1, 1, 0, 8), (0, 2, 2, 0, 12), (2, 2, 2, 2, 16), (1, 3, 2, 1, 14)],
)
def test_check_eq1_examples(n, k, N, K, D):
    assert check_eq1(n, k, N, K, D)


def test_check_eq1_guard():
    with pytest.raises(ValueError):
        check_eq1(2, 2, 2, 2, 8)
    with pytest.raises(ValueError):
        check_eq1(-1, 0, 0, 0, 8)


@pytest.mark.parametrize("m, D", [(1, 6), (0, 6), (4, 10), (6, 12)])
def test_check_exchange_seed_examples(m, D):
    assert check_exchange_seed(m, D)


def test_check_exchange_seed_guard():
    with pytest.raises(ValueError):
        check_exchange_seed(6, 8)


def test_degree_tracking():
    # a^k annihilates low monomials exactly, which is always safe
    assert _path_ok(1, [(3, 10)], 5)
    # otherwise the raised degree must stay within the truncation
    assert _path_ok(3, [(2, 4), (0, 0)], 5)
    assert not _path_ok(4, [(2, 4)], 5)
    assert not _path_ok(0, [(0, 6)], 5)
